#pragma once

#include <vector>

#include "supergeo/morphism.hpp"

namespace supergeo {

using Matrix = std::vector<std::vector<Rational>>;

/// The superfunction u^e θ^S for a canonical monomial ū^e θ̄_S.
inline SuperFunction monomial_function(const SuperDomain& d, const GradedMonomial& mono) {
  Polynomial::Exponents e(mono.even.begin(), mono.even.end());
  Polynomial p(d.m());
  p.add_term(std::move(e), Rational(1));
  SuperFunction f(d);
  f.add_term(mono.odd, p);
  return f;
}

/// Rows: u0·α for monomials α of degree ≤ k. Columns: monomial
/// superfunctions of degree ≤ k. Entry: the pairing.
inline Matrix pairing_matrix(const SuperDomain& d, const Point& u0, unsigned k) {
  const auto basis = monomials_up_to(d.space, k);
  Matrix out;
  for (const auto& row : basis) {
    CoalgebraElement e(d.space);
    e.add_term({u0, row}, Rational(1));
    std::vector<Rational> r;
    for (const auto& col : basis) r.push_back(pair(e, monomial_function(d, col)));
    out.push_back(std::move(r));
  }
  return out;
}

/// Exact rank by Gaussian elimination over the rationals.
inline std::size_t exact_rank(Matrix a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && is_zero(a[pivot][c])) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (is_zero(a[r][c])) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace supergeo
