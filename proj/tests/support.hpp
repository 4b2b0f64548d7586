#pragma once

#include <string>

#include "supergeo/dsl/parser.hpp"

namespace testing_support {

/// Parses a session snippet; tests build most objects this way.
inline supergeo::dsl::SymbolTable load(const std::string& text) { return supergeo::dsl::parse(text).symbols; }

inline supergeo::SuperFunction fn(const supergeo::SuperDomain& d, const std::string& expr) {
  return supergeo::dsl::evaluate(supergeo::dsl::parse_expression(expr), d);
}

}  // namespace testing_support
