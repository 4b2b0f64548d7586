#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "supergeo/errors.hpp"

namespace supergeo::dsl {

struct Span {
  std::size_t line = 1;
  std::size_t col = 1;
};

enum class Tok { ident, integer, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Span span;
};

/// On-demand tokenizer. `#` starts a comment running to end of line.
class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  const Token& peek() {
    if (!has_) {
      cur_ = lex();
      has_ = true;
    }
    return cur_;
  }

  Token next() {
    Token t = peek();
    has_ = false;
    return t;
  }

  /// Whitespace-separated raw words up to (not including) the next ';'.
  std::vector<std::string> raw_words() {
    if (has_) throw ParseError("internal: raw read after lookahead", cur_.span.line, cur_.span.col);
    std::vector<std::string> out;
    std::string word;
    while (pos_ < src_.size() && src_[pos_] != ';') {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 0;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!word.empty()) out.push_back(std::move(word));
        word.clear();
      } else {
        word.push_back(c);
      }
      advance_raw();
    }
    if (!word.empty()) out.push_back(std::move(word));
    return out;
  }

 private:
  void advance_raw() {
    ++pos_;
    ++col_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance_raw();
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance_raw();
      } else {
        break;
      }
    }
  }

  Token lex() {
    skip_space();
    Token t;
    t.span = {line_, col_};
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    const std::size_t start = pos_;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        advance_raw();
      }
      t.kind = Tok::ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance_raw();
      t.kind = Tok::integer;
    } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance_raw();
      advance_raw();
      t.kind = Tok::punct;
    } else if (std::string_view("(){},;:=+-*^/|.").find(c) != std::string_view::npos) {
      advance_raw();
      t.kind = Tok::punct;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token cur_;
  bool has_ = false;
};

}  // namespace supergeo::dsl
