#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "supergeo/coalgebra.hpp"
#include "supergeo/partitions.hpp"
#include "supergeo/superfunction.hpp"

namespace supergeo {

/// How partition sums are enumerated: unordered set partitions, or the
/// literal ordered sum weighted by 1/i!.
enum class PartitionRoute { unordered, ordered };

/// Whether composable domains must nest (strict) or only share a signature.
enum class BoxPolicy { strict, signature_only };

inline constexpr unsigned kDefaultGrid = 3;

/// A coordinate representation of a morphism of superdomains: one even
/// superfunction per target even coordinate, then one odd superfunction per
/// target odd coordinate.
struct SmMorphism {
  SuperDomain source;
  SuperDomain target;
  std::vector<SuperFunction> coords;

  std::size_t target_even() const { return target.m(); }
  std::size_t target_odd() const { return target.n(); }

  /// F^0 as m' polynomials in u.
  std::vector<Polynomial> underlying() const {
    std::vector<Polynomial> out;
    for (std::size_t j = 0; j < target.m(); ++j) out.push_back(coords[j].underlying());
    return out;
  }

  Point underlying_at(const Point& u) const {
    Point out;
    for (std::size_t j = 0; j < target.m(); ++j) out.push_back(coords[j].underlying().evaluate(u));
    return out;
  }

  /// Largest polynomial degree over all coordinate coefficients (0 when constant or zero).
  unsigned max_degree() const {
    int d = 0;
    for (const auto& f : coords) {
      for (const auto& [mask, p] : f.coeffs()) d = std::max(d, p.degree());
    }
    return static_cast<unsigned>(d);
  }

  friend bool operator==(const SmMorphism&, const SmMorphism&) = default;
};

inline Letter target_letter(std::size_t J, std::size_t target_even) {
  return J < target_even ? even_letter(J) : odd_letter(J - target_even);
}

/// Structural checks: arity, domains and parity pattern.
inline void check_structure(const SmMorphism& F) {
  if (F.coords.size() != F.target.m() + F.target.n()) {
    throw DomainMismatch("morphism needs " + std::to_string(F.target.m() + F.target.n()) + " coordinates, got " +
                         std::to_string(F.coords.size()));
  }
  for (std::size_t J = 0; J < F.coords.size(); ++J) {
    if (!(F.coords[J].domain() == F.source)) throw DomainMismatch("coordinate superfunction on a different domain");
    const Parity want = J < F.target.m() ? Parity::even : Parity::odd;
    if (!has_parity(F.coords[J], want)) {
      const std::string slot =
          J < F.target.m() ? "y" + std::to_string(J + 1) : "e" + std::to_string(J - F.target.m() + 1);
      throw ParityError("coordinate " + slot + " must be " + to_string(want));
    }
  }
}

/// Image condition on a deterministic sample: interior grid points must land in
/// the open target box, box vertices in its closure.
inline void check_image(const SmMorphism& F, unsigned grid = kDefaultGrid) {
  auto describe_point = [](const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
    return s + ")";
  };
  for (const auto& p : F.source.box.sample_grid(grid)) {
    if (!F.target.box.contains(F.underlying_at(p))) {
      throw ImageError("underlying map sends sample point " + describe_point(p) + " outside the target box");
    }
  }
  for (const auto& p : F.source.box.vertices(grid)) {
    if (!F.target.box.closure_contains(F.underlying_at(p))) {
      throw ImageError("underlying map sends box vertex " + describe_point(p) + " outside the target box");
    }
  }
}

/// Validated morphism.
inline SmMorphism morphism_new(SuperDomain source, SuperDomain target, std::vector<SuperFunction> coords,
                               unsigned grid = kDefaultGrid) {
  SmMorphism F{std::move(source), std::move(target), std::move(coords)};
  check_structure(F);
  check_image(F, grid);
  return F;
}

inline SmMorphism identity_morphism(const SuperDomain& d) {
  std::vector<SuperFunction> coords;
  for (std::size_t i = 0; i < d.m(); ++i) coords.push_back(SuperFunction::even_coordinate(d, i));
  for (std::size_t a = 0; a < d.n(); ++a) coords.push_back(SuperFunction::odd_coordinate(d, a));
  return SmMorphism{d, d, std::move(coords)};
}

/// Σ_{J_1..J_l} Π_j w_j^{J_j} · leaf(letters J_1..J_l), where each w_j is a
/// vector of polynomial components over the target basis.
template <class Leaf>
Polynomial expand_multilinear(std::span<const std::vector<Polynomial>> ws, std::size_t target_even, std::size_t nvars,
                              Leaf&& leaf) {
  Polynomial total(nvars);
  std::vector<Letter> word;
  auto recurse = [&](auto&& self, std::size_t j, const Polynomial& weight) -> void {
    if (j == ws.size()) {
      Polynomial v = leaf(word);
      if (!v.is_zero()) total += weight * v;
      return;
    }
    for (std::size_t J = 0; J < ws[j].size(); ++J) {
      if (ws[j][J].is_zero()) continue;
      word.push_back(target_letter(J, target_even));
      self(self, j + 1, weight * ws[j][J]);
      word.pop_back();
    }
  };
  recurse(recurse, 0, Polynomial::constant(nvars, Rational(1)));
  return total;
}

/// Visits the nonempty partitions of {0..k-1} with their weight: every set
/// partition with weight 1, or every ordered partition with weight 1/i!.
inline void for_each_weighted_partition(std::size_t k, PartitionRoute route,
                                        const std::function<void(const BlockList&, const Rational&)>& visit) {
  if (route == PartitionRoute::unordered) {
    for_each_set_partition(k, [&](const BlockList& b) { visit(b, Rational(1)); });
    return;
  }
  if (k == 0) {
    visit(BlockList{}, Rational(1));
    return;
  }
  for (std::size_t i = 1; i <= k; ++i) {
    const Rational w = 1 / factorial(static_cast<unsigned>(i));
    for_each_ordered_partition(k, i, true, [&](const BlockList& b) { visit(b, w); });
  }
}

namespace detail {

/// Memoized D̃^{|P|} F^J(u; letters) for all J.
class ExteriorCache {
 public:
  explicit ExteriorCache(const SmMorphism& F) : F_(F) {}

  const std::vector<Polynomial>& operator()(const std::vector<Letter>& letters) {
    std::vector<std::pair<int, std::size_t>> key;
    for (const auto& l : letters) key.emplace_back(is_odd(l.parity) ? 1 : 0, l.index);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Polynomial> v;
    for (const auto& f : F_.coords) v.push_back(underlying_derivative(f, letters));
    return cache_.emplace(std::move(key), std::move(v)).first->second;
  }

 private:
  const SmMorphism& F_;
  std::map<std::vector<std::pair<int, std::size_t>>, std::vector<Polynomial>> cache_;
};

}  // namespace detail

inline void check_pullback_domains(const SmMorphism& F, const SuperDomain& g_domain, BoxPolicy policy) {
  if (!g_domain.same_signature(F.target)) throw ChainMismatch("superfunction does not live on the morphism's target");
  if (policy == BoxPolicy::strict && !g_domain.box.contains(F.target.box)) {
    throw ChainMismatch("superfunction domain does not contain the morphism's target box");
  }
}

/// F_V g by the Taylor expansion over nonempty partitions of the odd
/// directions. The coefficient at θ^S (S increasing) is D̃^k(F_V g) along the
/// reversed word θ̄_{s_k}..θ̄_{s_1}.
inline SuperFunction pullback(const SmMorphism& F, const SuperFunction& g, PartitionRoute route = PartitionRoute::unordered,
                              BoxPolicy policy = BoxPolicy::strict) {
  check_pullback_domains(F, g.domain(), policy);
  const std::size_t m = F.source.m();
  const std::size_t n = F.source.n();
  const std::size_t tm = F.target.m();
  const std::vector<Polynomial> f0 = F.underlying();
  detail::ExteriorCache ext(F);
  std::map<std::vector<std::pair<int, std::size_t>>, Polynomial> g_cache;
  auto g_leaf = [&](const std::vector<Letter>& word) -> Polynomial {
    std::vector<std::pair<int, std::size_t>> key;
    for (const auto& l : word) key.emplace_back(is_odd(l.parity) ? 1 : 0, l.index);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
    Polynomial d = underlying_derivative(g, word);
    Polynomial v = d.is_zero() ? Polynomial(m) : d.compose(f0, m);
    return g_cache.emplace(std::move(key), std::move(v)).first->second;
  };

  SuperFunction out(F.source);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    GradedMonomial mono(std::vector<unsigned>(m), mask);
    std::vector<std::size_t> idx = mono.odd_indices();
    std::vector<Letter> x;
    for (std::size_t i = idx.size(); i-- > 0;) x.push_back(odd_letter(idx[i]));
    const std::size_t k = x.size();
    const std::vector<Parity> parities(k, Parity::odd);
    Polynomial coeff(m);
    for_each_weighted_partition(k, route, [&](const BlockList& blocks, const Rational& w) {
      std::vector<std::vector<Polynomial>> ws;
      for (const auto& b : blocks) {
        std::vector<Letter> letters;
        for (std::size_t i : b) letters.push_back(x[i]);
        ws.push_back(ext(letters));
      }
      Polynomial term = expand_multilinear(std::span<const std::vector<Polynomial>>(ws), tm, m, g_leaf);
      if (term.is_zero()) return;
      coeff += (w * partition_sign(parities, blocks)) * term;
    });
    out.add_term(mask, coeff);
  }
  return out;
}

/// (G∘F)^K = F_V(G^K).
inline SmMorphism compose_substitution(const SmMorphism& G, const SmMorphism& F,
                                       BoxPolicy policy = BoxPolicy::strict,
                                       PartitionRoute route = PartitionRoute::unordered) {
  check_pullback_domains(F, G.source, policy);
  SmMorphism out{F.source, G.target, {}};
  for (const auto& gk : G.coords) out.coords.push_back(pullback(F, gk, route, policy));
  return out;
}

/// Underlying, infinitesimal and exterior parts of a morphism. The table maps
/// each canonical monomial a_1..a_k (k ≥ 1) of S(X) to the values
/// Φ^+_k(u; a_1..a_k) over the target basis, as polynomials in u. Entries of
/// degree above `order` vanish by declaration.
struct ComponentFamily {
  SuperDomain source;
  SuperDomain target;
  std::vector<Polynomial> underlying;
  unsigned order = 0;
  std::map<GradedMonomial, std::vector<Polynomial>> table;

  std::size_t width() const { return target.m() + target.n(); }

  std::vector<Polynomial> zero_value() const { return std::vector<Polynomial>(width(), Polynomial(source.m())); }

  /// Table entry for a canonical monomial, zero when absent or above the order.
  std::vector<Polynomial> entry(const GradedMonomial& mono) const {
    auto it = table.find(mono);
    return it == table.end() ? zero_value() : it->second;
  }

  /// Φ^+_k(u; letters) on basis letters in any order.
  std::vector<Polynomial> infinitesimal(std::span<const Letter> letters) const {
    auto [s, mono] = canonicalize_letters(source.m(), source.n(), letters);
    if (s == 0 || mono.degree() > order) return zero_value();
    auto v = entry(mono);
    if (s < 0) {
      for (auto& p : v) p = -p;
    }
    return v;
  }

  /// Φ^∧_k(u; θ̄_{i_1}..θ̄_{i_k}).
  std::vector<Polynomial> exterior(std::span<const std::size_t> odd_idx) const {
    std::vector<Letter> letters;
    for (std::size_t i : odd_idx) letters.push_back(odd_letter(i));
    return infinitesimal(letters);
  }

  void set(const GradedMonomial& mono, std::vector<Polynomial> value) {
    if (mono.is_unit()) throw ArgumentError("infinitesimal table is defined on monomials of degree at least one");
    if (value.size() != width()) throw DomainMismatch("component value has wrong width");
    bool zero = true;
    for (const auto& p : value) {
      if (p.variable_count() != source.m()) throw DomainMismatch("component value has wrong variable count");
      zero = zero && p.is_zero();
    }
    if (zero) {
      table.erase(mono);
    } else {
      table.insert_or_assign(mono, std::move(value));
    }
  }

  friend bool operator==(const ComponentFamily&, const ComponentFamily&) = default;
};

inline unsigned family_max_degree(const std::vector<Polynomial>& underlying,
                                  const std::map<GradedMonomial, std::vector<Polynomial>>& entries) {
  int d = 0;
  for (const auto& p : underlying) d = std::max(d, p.degree());
  for (const auto& [mono, v] : entries) {
    for (const auto& p : v) d = std::max(d, p.degree());
  }
  return static_cast<unsigned>(d);
}

/// Fills the full table from the underlying map and the exterior entries by
/// even differentiation: Φ^+(ū^e θ̄_S) = ∂^e Φ^∧(θ̄_S).
inline ComponentFamily family_from_exterior(SuperDomain source, SuperDomain target, std::vector<Polynomial> underlying,
                                            const std::map<std::uint64_t, std::vector<Polynomial>>& exterior) {
  ComponentFamily c{std::move(source), std::move(target), std::move(underlying), 0, {}};
  const std::size_t m = c.source.m();
  std::map<GradedMonomial, std::vector<Polynomial>> pure;
  for (const auto& [mask, v] : exterior) pure.emplace(GradedMonomial(std::vector<unsigned>(m), mask), v);
  c.order = static_cast<unsigned>(c.source.n()) + family_max_degree(c.underlying, pure);
  for (const auto& mono : monomials_up_to(c.source.space, c.order, 1)) {
    std::vector<Polynomial> base;
    if (mono.odd == 0) {
      base = c.zero_value();
      for (std::size_t j = 0; j < c.target.m(); ++j) base[j] = c.underlying[j];
    } else {
      auto it = exterior.find(mono.odd);
      if (it == exterior.end()) continue;
      base = it->second;
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (unsigned e = 0; e < mono.even[i]; ++e) {
        for (auto& p : base) p = p.partial(i);
      }
    }
    c.set(mono, std::move(base));
  }
  return c;
}

/// components(F): underlying map and the full infinitesimal table D̃^k F^J.
inline ComponentFamily components(const SmMorphism& F) {
  ComponentFamily c{F.source, F.target, F.underlying(), 0, {}};
  c.order = static_cast<unsigned>(F.source.n()) + F.max_degree();
  for (const auto& mono : monomials_up_to(F.source.space, c.order, 1)) {
    const auto word = mono.word();
    std::vector<Polynomial> v;
    for (const auto& f : F.coords) v.push_back(underlying_derivative(f, word));
    c.set(mono, std::move(v));
  }
  return c;
}

inline void check_family_parity(const ComponentFamily& c) {
  if (c.underlying.size() != c.target.m()) throw DomainMismatch("underlying map has wrong arity");
  for (const auto& p : c.underlying) {
    if (p.variable_count() != c.source.m()) throw DomainMismatch("underlying map has wrong variable count");
  }
  for (const auto& [mono, v] : c.table) {
    if (mono.odd_count() > c.source.n()) throw StructuralError("exterior component beyond the odd dimension");
    if (mono.degree() > c.order) throw BoundError("component entry above the declared order");
    for (std::size_t J = 0; J < v.size(); ++J) {
      const Parity want = J < c.target.m() ? Parity::even : Parity::odd;
      if (!v[J].is_zero() && mono.parity() != want) {
        throw ParityError("component entry breaks evenness at " + std::to_string(mono.odd_count()) + " odd arguments");
      }
    }
  }
}

/// The unique morphism with the given underlying and exterior components.
inline SmMorphism morphism_from_components(const ComponentFamily& c) {
  check_family_parity(c);
  const std::size_t m = c.source.m();
  const std::size_t n = c.source.n();
  SmMorphism F{c.source, c.target, {}};
  for (std::size_t J = 0; J < c.width(); ++J) F.coords.emplace_back(c.source);
  for (std::size_t j = 0; j < c.target.m(); ++j) F.coords[j].add_term(0, c.underlying[j]);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const GradedMonomial mono(std::vector<unsigned>(m), mask);
    if (mono.degree() > c.order) continue;
    auto it = c.table.find(mono);
    if (it == c.table.end()) continue;
    const unsigned k = mono.odd_count();
    const bool flip = (k * (k - 1) / 2) % 2 == 1;
    for (std::size_t J = 0; J < c.width(); ++J) F.coords[J].add_term(mask, flip ? -it->second[J] : it->second[J]);
  }
  return F;
}

/// Ψ∘Φ by the partition law on exterior components.
inline ComponentFamily compose_components(const ComponentFamily& G, const ComponentFamily& F,
                                          PartitionRoute route = PartitionRoute::unordered,
                                          BoxPolicy policy = BoxPolicy::strict) {
  if (!G.source.same_signature(F.target)) throw ChainMismatch("component families do not chain");
  if (policy == BoxPolicy::strict && !G.source.box.contains(F.target.box)) {
    throw ChainMismatch("target box of the inner family is not inside the source box of the outer one");
  }
  const std::size_t m = F.source.m();
  const std::size_t n = F.source.n();
  const std::size_t mid_even = F.target.m();
  const std::vector<Polynomial>& f0 = F.underlying;

  std::vector<Polynomial> underlying;
  for (const auto& p : G.underlying) underlying.push_back(p.compose(f0, m));

  std::map<GradedMonomial, std::vector<Polynomial>> g_cache;
  std::map<std::uint64_t, std::vector<Polynomial>> exterior;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const GradedMonomial mono(std::vector<unsigned>(m), mask);
    const std::vector<std::size_t> x = mono.odd_indices();
    const std::size_t k = x.size();
    const std::vector<Parity> parities(k, Parity::odd);
    std::vector<Polynomial> value(G.width(), Polynomial(m));
    for_each_weighted_partition(k, route, [&](const BlockList& blocks, const Rational& w) {
      std::vector<std::vector<Polynomial>> ws;
      for (const auto& b : blocks) {
        std::vector<std::size_t> idx;
        for (std::size_t i : b) idx.push_back(x[i]);
        ws.push_back(F.exterior(idx));
      }
      const Rational weight = w * partition_sign(parities, blocks);
      for (std::size_t K = 0; K < G.width(); ++K) {
        auto leaf = [&](const std::vector<Letter>& word) -> Polynomial {
          auto [s, gm] = canonicalize_letters(G.source.m(), G.source.n(), word);
          if (s == 0 || gm.degree() > G.order) return Polynomial(m);
          auto it = g_cache.find(gm);
          if (it == g_cache.end()) {
            std::vector<Polynomial> sub;
            for (const auto& p : G.entry(gm)) sub.push_back(p.is_zero() ? Polynomial(m) : p.compose(f0, m));
            it = g_cache.emplace(gm, std::move(sub)).first;
          }
          return s < 0 ? -it->second[K] : it->second[K];
        };
        Polynomial term = expand_multilinear(std::span<const std::vector<Polynomial>>(ws), mid_even, m, leaf);
        if (!term.is_zero()) value[K] += weight * term;
      }
    });
    bool zero = true;
    for (const auto& p : value) zero = zero && p.is_zero();
    if (!zero) exterior.emplace(mask, std::move(value));
  }
  return family_from_exterior(F.source, G.target, std::move(underlying), exterior);
}

/// Outcome of a report-style check.
struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string why) {
    ok = false;
    failures.push_back(std::move(why));
  }
};

/// Verifies D^1Φ^0(u; ū_μ) = Φ^+_1(u; ū_μ) and ∂_μ Φ^+_k(u; a) = Φ^+_{k+1}(u; a, ū_μ)
/// as polynomial identities, reporting the first violation.
inline CheckReport smoothness_check(const ComponentFamily& c) {
  CheckReport r;
  try {
    check_family_parity(c);
  } catch (const Error& e) {
    r.fail(e.what());
    return r;
  }
  const std::size_t m = c.source.m();
  for (std::size_t mu = 0; mu < m; ++mu) {
    GradedMonomial e(m);
    e.even[mu] = 1;
    const auto v = c.entry(e);
    for (std::size_t J = 0; J < c.width(); ++J) {
      const Polynomial lhs = J < c.target.m() ? c.underlying[J].partial(mu) : Polynomial(m);
      const Polynomial rhs = c.order >= 1 ? v[J] : Polynomial(m);
      if (!(lhs == rhs)) {
        r.fail("defu: d/du" + std::to_string(mu + 1) + " of the underlying map differs from the first component");
        return r;
      }
    }
  }
  for (const auto& mono : monomials_up_to(c.source.space, c.order, 1)) {
    const auto v = c.entry(mono);
    for (std::size_t mu = 0; mu < m; ++mu) {
      GradedMonomial next = mono;
      ++next.even[mu];
      const auto w = next.degree() > c.order ? c.zero_value() : c.entry(next);
      for (std::size_t J = 0; J < c.width(); ++J) {
        if (!(v[J].partial(mu) == w[J])) {
          r.fail("defc: k=" + std::to_string(mono.degree()) + ", d/du" + std::to_string(mu + 1) +
                 " of a degree-" + std::to_string(mono.degree()) + " component differs from the next component");
          return r;
        }
      }
    }
  }
  return r;
}

/// F_*: pushforward of Dirac distributions, Φ(u·α) = φ(u)·∗exp φ^+_u(α).
inline CoalgebraElement apply_coalgebra(const SmMorphism& F, const CoalgebraElement& e) {
  if (e.space().even_dim != F.source.m() || e.space().odd_dim != F.source.n()) {
    throw DomainMismatch("distribution lives on another space");
  }
  const GradedSpaceSig& tspace = F.target.space;
  const std::size_t tm = F.target.m();
  CoalgebraElement out(tspace);
  detail::ExteriorCache ext(F);
  for (const auto& [a, c] : e.terms()) {
    if (!F.source.box.contains(a.point)) throw BoxViolation("distribution anchored outside the source box");
    const Point v = F.underlying_at(a.point);
    const std::vector<Letter> word = a.mono.word();
    std::vector<Parity> parities;
    for (const auto& l : word) parities.push_back(l.parity);
    AlgebraElement image(tspace);
    for_each_set_partition(word.size(), [&](const BlockList& blocks) {
      AlgebraElement prod = AlgebraElement::one(tspace);
      for (const auto& b : blocks) {
        std::vector<Letter> letters;
        for (std::size_t i : b) letters.push_back(word[i]);
        const auto& comps = ext(letters);
        AlgebraElement y(tspace);
        for (std::size_t J = 0; J < comps.size(); ++J) {
          const Rational val = comps[J].evaluate(a.point);
          if (!is_zero(val)) y += val * AlgebraElement::generator(tspace, target_letter(J, tm));
        }
        prod = s_mul(prod, y);
        if (prod.is_zero()) return;
      }
      image += Rational(partition_sign(parities, blocks)) * prod;
    });
    out += c * CoalgebraElement::anchored(v, image);
  }
  return out;
}

/// ⟨u·a_1..a_k, f⟩ = D̃^k f(u; a_1..a_k), extended linearly.
inline Rational pair(const CoalgebraElement& e, const SuperFunction& f) {
  const auto& d = f.domain();
  if (e.space().even_dim != d.m() || e.space().odd_dim != d.n()) throw DomainMismatch("pairing across spaces");
  Rational sum(0);
  for (const auto& [a, c] : e.terms()) {
    require_in_box(d, a.point);
    const auto word = a.mono.word();
    sum += c * underlying_derivative(f, word).evaluate(a.point);
  }
  return sum;
}

}  // namespace supergeo
