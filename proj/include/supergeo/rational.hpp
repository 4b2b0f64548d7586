#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "supergeo/errors.hpp"

namespace supergeo {

/// Exact rational scalar. GMP keeps every result of +,-,*,/ in lowest terms
/// with a positive denominator as long as the operands are canonical.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses `p`, `-p` or `p/q` with decimal integers.
inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0) {
    throw ArgumentError("malformed rational '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw ArgumentError("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

inline Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

/// Z2 grading.
enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

constexpr bool is_odd(Parity p) { return p == Parity::odd; }

constexpr Parity parity_of(unsigned count) { return (count & 1U) ? Parity::odd : Parity::even; }

/// (-1)^{|a||b|}
constexpr int koszul(Parity a, Parity b) { return (is_odd(a) && is_odd(b)) ? -1 : 1; }

inline const char* to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

}  // namespace supergeo
