#pragma once

#include <cstdint>
#include <random>

#include "supergeo/linear_map.hpp"
#include "supergeo/morphism.hpp"

namespace supergeo {

/// Seeded source of random algebraic data for property checks.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  bool chance(int percent) { return integer(0, 99) < percent; }

  /// Small nonzero rational, occasionally with denominator 2 or 3.
  Rational rational_nonzero() {
    long num = integer(1, 3) * (chance(50) ? 1 : -1);
    long den = chance(25) ? integer(2, 3) : 1;
    return make_rational(num, den);
  }

  Rational rational() { return chance(15) ? Rational(0) : rational_nonzero(); }

  GradedMonomial monomial(const GradedSpaceSig& s, unsigned max_degree, unsigned min_degree = 0) {
    const unsigned target = static_cast<unsigned>(integer(min_degree, max_degree));
    GradedMonomial m(s.even_dim);
    for (unsigned step = 0, attempts = 0; step < target && attempts < 8 * (target + 1); ++attempts) {
      const std::size_t total = s.even_dim + s.odd_dim;
      if (total == 0) break;
      const std::size_t g = static_cast<std::size_t>(integer(0, static_cast<long>(total) - 1));
      if (g < s.even_dim) {
        ++m.even[g];
        ++step;
      } else if (!m.has_odd(g - s.even_dim)) {
        m.odd |= odd_bit(g - s.even_dim);
        ++step;
      }
    }
    return m;
  }

  AlgebraElement algebra_element(const GradedSpaceSig& s, unsigned max_degree, unsigned max_terms = 4) {
    AlgebraElement a(s);
    const long terms = integer(1, max_terms);
    for (long i = 0; i < terms; ++i) a.add_term(monomial(s, max_degree), rational_nonzero());
    return a;
  }

  Polynomial polynomial(std::size_t nvars, unsigned max_degree, unsigned max_terms = 3, unsigned min_terms = 0) {
    Polynomial p(nvars);
    const long terms = integer(min_terms, max_terms);
    for (long i = 0; i < terms; ++i) {
      Polynomial::Exponents e(nvars, 0U);
      const unsigned d = static_cast<unsigned>(integer(0, max_degree));
      for (unsigned k = 0; k < d && nvars > 0; ++k) ++e[static_cast<std::size_t>(integer(0, static_cast<long>(nvars) - 1))];
      p.add_term(std::move(e), rational_nonzero());
    }
    return p;
  }

  /// Superfunction with random coefficients; restricted to one parity when given.
  SuperFunction superfunction(const SuperDomain& d, unsigned max_degree, std::optional<Parity> parity = std::nullopt,
                              int density = 50) {
    SuperFunction f(d);
    const std::uint64_t count = std::uint64_t{1} << d.n();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      if (parity && parity_of(static_cast<unsigned>(std::popcount(mask))) != *parity) continue;
      if (!chance(density)) continue;
      f.add_term(mask, polynomial(d.m(), max_degree, 3, 1));
    }
    return f;
  }

  /// Morphism with random coordinates of the right parities. No image check.
  SmMorphism morphism(const SuperDomain& source, const SuperDomain& target, unsigned max_degree, int density = 80) {
    SmMorphism F{source, target, {}};
    for (std::size_t J = 0; J < target.m() + target.n(); ++J) {
      F.coords.push_back(superfunction(source, max_degree, J < target.m() ? Parity::even : Parity::odd, density));
    }
    return F;
  }

  Vector direction(const GradedSpaceSig& s, Parity p) {
    Vector v{s, p, {}};
    const std::size_t n = is_odd(p) ? s.odd_dim : s.even_dim;
    for (std::size_t i = 0; i < n; ++i) v.coords.push_back(rational());
    return v;
  }

  Vector homogeneous_vector(const GradedSpaceSig& s) {
    if (s.odd_dim == 0) return direction(s, Parity::even);
    if (s.even_dim == 0) return direction(s, Parity::odd);
    return direction(s, chance(50) ? Parity::odd : Parity::even);
  }

  Point point(const Box& b) {
    const auto grid = b.sample_grid(3);
    return grid[static_cast<std::size_t>(integer(0, static_cast<long>(grid.size()) - 1))];
  }

  /// Random distribution anchored at `points`, filtration degree ≤ max_degree.
  CoalgebraElement coalgebra_element(const GradedSpaceSig& s, const std::vector<Point>& points, unsigned max_degree,
                                     unsigned max_terms = 3) {
    CoalgebraElement e(s);
    const long terms = integer(1, max_terms);
    for (long i = 0; i < terms; ++i) {
      const Point& p = points[static_cast<std::size_t>(integer(0, static_cast<long>(points.size()) - 1))];
      e.add_term({p, monomial(s, max_degree)}, rational_nonzero());
    }
    return e;
  }

  /// Even infinitesimal table S(X)^+ -> Y up to a bound.
  LinearMap infinitesimal(const GradedSpaceSig& source, const GradedSpaceSig& target, unsigned bound, int density = 40) {
    LinearMap phi(source, target, bound);
    for (const auto& m : monomials_up_to(source, bound, 1)) {
      if (!chance(density)) continue;
      phi.set(m, direction(target, m.parity()).to_algebra());
    }
    return phi;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace supergeo
