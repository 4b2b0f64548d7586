#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supergeo/errors.hpp"
#include "supergeo/rational.hpp"

namespace supergeo {

/// Multivariate polynomial with exact rational coefficients in a fixed number
/// of commuting variables. Zero coefficients are never stored, so equality of
/// term maps is equality of polynomials.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t variable_count = 0) : nvars_(variable_count) {}

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0U), c);
    return p;
  }

  /// The coordinate function of variable i (0-based).
  static Polynomial variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw ArgumentError("variable index out of range");
    Exponents e(nvars, 0U);
    e[i] = 1;
    Polynomial p(nvars);
    p.add_term(std::move(e), Rational(1));
    return p;
  }

  std::size_t variable_count() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (unsigned x : e) s += static_cast<int>(x);
      d = std::max(d, s);
    }
    return d;
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponents(nvars_, 0U)); }

  void add_term(Exponents e, const Rational& c) {
    if (e.size() != nvars_) throw DomainMismatch("exponent vector length differs from variable count");
    if (supergeo::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (supergeo::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    if (supergeo::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned k) const {
    Polynomial out = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (k) {
      if (k & 1U) out *= base;
      k >>= 1U;
      if (k) base *= base;
    }
    return out;
  }

  /// Formal partial derivative with respect to variable i (0-based).
  Polynomial partial(std::size_t i) const {
    if (i >= nvars_) throw ArgumentError("partial derivative index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents d = e;
      --d[i];
      out.add_term(std::move(d), c * e[i]);
    }
    return out;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw DomainMismatch("evaluation point has wrong dimension");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < nvars_; ++i) {
        for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
      }
      sum += t;
    }
    return sum;
  }

  /// Substitutes variable i by subs[i]; every substitute has `out_vars` variables.
  Polynomial compose(std::span<const Polynomial> subs, std::size_t out_vars) const {
    if (subs.size() != nvars_) throw DomainMismatch("substitution has wrong arity");
    for (const auto& s : subs) {
      if (s.variable_count() != out_vars) throw DomainMismatch("substitutes have different variable counts");
    }
    // Power cache per variable.
    std::vector<std::vector<Polynomial>> powers(nvars_);
    auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(out_vars, Rational(1)));
      while (cache.size() <= k) cache.push_back(cache.back() * subs[i]);
      return cache[k];
    };
    Polynomial out(out_vars);
    for (const auto& [e, c] : terms_) {
      Polynomial t = constant(out_vars, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i]) t *= power(i, e[i]);
      }
      out += t;
    }
    return out;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw DomainMismatch("polynomials over different variable counts");
  }

  std::size_t nvars_;
  TermMap terms_;
};

}  // namespace supergeo
