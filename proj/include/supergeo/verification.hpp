#pragma once

// The twelve acceptance checks. Shared by `supergeo verify` and the
// acceptance binary so that both run the same code.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "supergeo/duality.hpp"
#include "supergeo/dsl/parser.hpp"
#include "supergeo/dsl/printer.hpp"
#include "supergeo/products.hpp"
#include "supergeo/random.hpp"
#include "supergeo/structured.hpp"

namespace supergeo::verify {

struct Options {
  std::uint64_t seed = 0;
  unsigned cases = 0;  // 0: the count each criterion is defined with
  std::string fixture_dir;
  unsigned grid = kDefaultGrid;
};

struct Outcome {
  int id = 0;
  std::string name;
  bool ok = true;
  std::string detail;
  unsigned checks = 0;

  /// Records one check; only the first failure is kept in the detail.
  void expect(bool cond, const std::function<std::string()>& why) {
    ++checks;
    if (cond) return;
    if (ok) detail = why();
    ok = false;
  }
};

inline unsigned case_count(const Options& o, unsigned dflt) { return o.cases ? o.cases : dflt; }

// ---------------------------------------------------------------- fixtures

/// Three charts on the line. The odd coordinate flips between chart 1 and
/// the other two; charts 2 and 3 glue by the identity.
inline constexpr const char* kLineAtlas = R"(superdomain R(1|1) L = box (-inf,inf);
morphism flip : L -> L {
  y1 = u1;
  e1 = -th1;
}
morphism id : L -> L {
  y1 = u1;
  e1 = th1;
}
cocycle line R(1|1) {
  chart 1 box (0,3);
  chart 2 box (1,4);
  chart 3 box (2,5);
  overlap (1,2) box (1,3) forward flip inverse flip;
  overlap (1,3) box (2,3) forward flip inverse flip;
  overlap (2,3) box (2,4) forward id inverse id;
};
function plus on L = th1;
function minus on L = -th1;
)";

/// Same charts, but (1,3) glues by the identity, so only the triple
/// (1,2,3) is inconsistent.
inline constexpr const char* kTripleBadAtlas = R"(superdomain R(1|1) L = box (-inf,inf);
morphism flip : L -> L {
  y1 = u1;
  e1 = -th1;
}
morphism id : L -> L {
  y1 = u1;
  e1 = th1;
}
cocycle triple_bad R(1|1) {
  chart 1 box (0,3);
  chart 2 box (1,4);
  chart 3 box (2,5);
  overlap (1,2) box (1,3) forward flip inverse flip;
  overlap (1,3) box (2,3) forward id inverse id;
  overlap (2,3) box (2,4) forward id inverse id;
};
)";

/// Points of chart i lying in its overlap with chart j, in chart-i coordinates.
inline std::vector<Point> overlap_points(const AtlasView& a, std::size_t i, std::size_t j, unsigned density) {
  if (auto b = a.overlap_box(i, j)) return b->sample_grid(density);
  std::vector<Point> out;
  if (auto b = a.overlap_box(j, i)) {
    const SmMorphism t = a.transition(j, i);
    for (const auto& p : b->sample_grid(density)) out.push_back(t.underlying_at(p));
  }
  return out;
}

// ------------------------------------------------------------- generators

namespace detail {

/// Random expression tree over u1..u{m}, th1..th{n}. `^` is only put on
/// subtrees that contain no odd variable.
inline dsl::Expr random_expr(RandomSource& rng, std::size_t m, std::size_t n, unsigned depth, bool& even_only) {
  using K = dsl::Expr::Kind;
  if (depth == 0 || rng.chance(30)) {
    const long pick = rng.integer(0, 2);
    if (pick == 0 || (m == 0 && n == 0)) {
      even_only = true;
      const Rational r = abs(rng.rational_nonzero());
      return dsl::Expr::number(r);
    }
    if ((pick == 1 && m > 0) || n == 0) {
      even_only = true;
      return dsl::Expr::var(K::even_var, static_cast<std::size_t>(rng.integer(0, static_cast<long>(m) - 1)));
    }
    even_only = false;
    return dsl::Expr::var(K::odd_var, static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1)));
  }
  const long op = rng.integer(0, 4);
  bool ea = true;
  bool eb = true;
  dsl::Expr a = random_expr(rng, m, n, depth - 1, ea);
  switch (op) {
    case 0:
    case 1:
    case 2: {
      dsl::Expr b = random_expr(rng, m, n, depth - 1, eb);
      even_only = ea && eb;
      const K k = op == 0 ? K::add : op == 1 ? K::sub : K::mul;
      return dsl::Expr::binary(k, std::move(a), std::move(b));
    }
    case 3:
      even_only = ea;
      return dsl::Expr::negate(std::move(a));
    default:
      even_only = ea;
      if (!ea) return dsl::Expr::negate(std::move(a));
      return dsl::Expr::power(std::move(a), static_cast<unsigned>(rng.integer(0, 3)));
  }
}

inline std::vector<Vector> random_dirs(RandomSource& rng, const GradedSpaceSig& s, std::size_t k) {
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i < k; ++i) dirs.push_back(rng.homogeneous_vector(s));
  return dirs;
}

inline Parity random_parity(RandomSource& rng) { return rng.chance(50) ? Parity::odd : Parity::even; }

inline Parity parity_of_vectors(std::span<const Vector> dirs, const std::vector<std::size_t>& block) {
  unsigned odd = 0;
  for (std::size_t i : block) odd += is_odd(dirs[i].parity) ? 1U : 0U;
  return parity_of(odd);
}

inline std::vector<Vector> pick(std::span<const Vector> dirs, const std::vector<std::size_t>& block) {
  std::vector<Vector> out;
  for (std::size_t i : block) out.push_back(dirs[i]);
  return out;
}

inline CoalgebraElement single(const GradedSpaceSig& s, const Anchored& a, const Rational& c = Rational(1)) {
  CoalgebraElement e(s);
  e.add_term(a, c);
  return e;
}

}  // namespace detail

// --------------------------------------------------------------- criteria

/// Hopf axioms on random elements of S(X) up to a degree.
inline Outcome hopf_axioms(const GradedSpaceSig& X, unsigned max_degree, unsigned cases, std::uint64_t seed) {
  Outcome r{1, "Hopf axiom suite"};
  RandomSource rng(seed);
  auto delta_mono = [&](const GradedMonomial& m) { return comultiply_monomial(X, m); };
  auto s_mono = [&](const GradedMonomial& m) { return antipode(AlgebraElement::monomial(X, m)); };
  for (unsigned c = 0; c < cases; ++c) {
    const AlgebraElement a = rng.algebra_element(X, max_degree);
    const AlgebraElement b = rng.algebra_element(X, max_degree);
    const auto da = comultiply(a);
    const std::string tag = "element " + std::to_string(c) + " (" + dsl::to_text(a) + ")";
    r.expect(apply_on_factor(da, 0, 2, Parity::even, delta_mono) == apply_on_factor(da, 1, 2, Parity::even, delta_mono),
             [&] { return "coassociativity fails on " + tag; });
    r.expect(from_single_factor(X, counit_on_factor(da, 0)) == a && from_single_factor(X, counit_on_factor(da, 1)) == a,
             [&] { return "counit law fails on " + tag; });
    r.expect(twist(da) == da, [&] { return "cocommutativity fails on " + tag; });
    r.expect(comultiply(a * b) == tensor_multiply(da, comultiply(b)) && counit(a * b) == counit(a) * counit(b),
             [&] { return "bialgebra compatibility fails on " + tag; });
    const AlgebraElement unit = counit(a) * AlgebraElement::one(X);
    r.expect(multiply_factors(X, map_factor(da, 0, Parity::even, s_mono)) == unit &&
                 multiply_factors(X, map_factor(da, 1, Parity::even, s_mono)) == unit,
             [&] { return "antipode is not a convolution inverse on " + tag; });
  }
  if (r.ok) {
    r.detail = std::to_string(cases) + " elements of degree <= " + std::to_string(max_degree) + " on " +
               dsl::signature_text(X);
  }
  return r;
}

/// 1. Hopf axioms on S(R^{3|3}).
inline Outcome hopf_suite(const Options& o) { return hopf_axioms(GradedSpaceSig{3, 3, "X"}, 5, case_count(o, 200), o.seed); }

/// 2. Δ^k by the partition formula against iterated Δ.
inline Outcome iterated_coproduct(const Options& o) {
  Outcome r{2, "partition coproduct vs iterated coproduct"};
  RandomSource rng(o.seed + 1);
  const GradedSpaceSig X{2, 2, "X"};
  const unsigned per_k = std::max(1U, case_count(o, 100) / 4);
  for (std::size_t k = 1; k <= 4; ++k) {
    for (unsigned c = 0; c < per_k; ++c) {
      const AlgebraElement a = rng.algebra_element(X, 6, 3);
      r.expect(comultiply_k(a, k) == iterated_comultiply(a, k),
               [&] { return "k=" + std::to_string(k) + " differs on " + dsl::to_text(a); });
    }
  }
  if (r.ok) r.detail = std::to_string(4 * per_k) + " elements of degree <= 6, k = 1..4";
  return r;
}

/// 3. star_exp is a coalgebra morphism with the given infinitesimal part;
/// binomial identity for convolution powers.
inline Outcome star_exp_suite(const Options& o) {
  Outcome r{3, "star_exp correctness"};
  RandomSource rng(o.seed + 2);
  const GradedSpaceSig C{2, 2, "C"};
  const GradedSpaceSig Y{1, 2, "Y"};
  const unsigned bound = 4;
  const auto basis = monomials_up_to(C, bound);
  const unsigned n = case_count(o, 50);
  for (unsigned c = 0; c < n; ++c) {
    const LinearMap phi = rng.infinitesimal(C, Y, bound, 30);
    const LinearMap Phi = star_exp(phi);
    const std::string tag = "table " + std::to_string(c);
    for (const auto& m : basis) {
      const std::string where = tag + " at " + dsl::to_text(AlgebraElement::monomial(C, m));
      r.expect(comultiply(Phi.at(m)) == tensor_after_comultiply(Phi, Phi, m),
               [&] { return "not a coalgebra morphism: " + where; });
      r.expect(counit(Phi.at(m)) == (m.is_unit() ? Rational(1) : Rational(0)),
               [&] { return "counit not preserved: " + where; });
      if (!m.is_unit()) {
        r.expect(Phi.at(m).component(1) == phi.at(m), [&] { return "degree-one part differs: " + where; });
      }
    }
    std::vector<LinearMap> powers;
    for (unsigned k = 0; k <= 4; ++k) powers.push_back(convolution_power(phi, k));
    for (unsigned k = 0; k <= 4; ++k) {
      for (const auto& m : basis) {
        Tensor<GradedMonomial> rhs(2);
        for (unsigned i = 0; i <= k; ++i) rhs += binomial(k, i) * tensor_after_comultiply(powers[i], powers[k - i], m);
        r.expect(comultiply(powers[k].at(m)) == rhs, [&] {
          return "binomial identity fails: " + tag + ", k=" + std::to_string(k) + " at " +
                 dsl::to_text(AlgebraElement::monomial(C, m));
        });
      }
    }
  }
  if (r.ok) r.detail = std::to_string(n) + " tables S(R(2|2))^+ -> R(1|2), bound 4";
  return r;
}

namespace detail {

struct ComposeCase {
  SmMorphism F;
  SmMorphism G;
};

/// Morphism pairs R(2|2) -> R(2|2) -> R(1|2) on whole boxes.
inline std::vector<ComposeCase> compose_corpus(std::uint64_t seed, unsigned n) {
  RandomSource rng(seed);
  const SuperDomain U = SuperDomain::whole(2, 2, "U");
  const SuperDomain V = SuperDomain::whole(2, 2, "V");
  const SuperDomain W = SuperDomain::whole(1, 2, "W");
  std::vector<ComposeCase> out;
  for (unsigned c = 0; c < n; ++c) out.push_back({rng.morphism(U, V, 2), rng.morphism(V, W, 2)});
  return out;
}

}  // namespace detail

/// 4. Composition through components against substitution; associativity.
inline Outcome composition_oracle(const Options& o) {
  Outcome r{4, "composition oracle equivalence"};
  const unsigned n = case_count(o, 50);
  const auto corpus = detail::compose_corpus(o.seed + 3, n);
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const auto& [F, G] = corpus[c];
    const SmMorphism subst = compose_substitution(G, F);
    const SmMorphism parts = morphism_from_components(compose_components(components(G), components(F)));
    r.expect(subst.coords == parts.coords, [&] { return "pair " + std::to_string(c) + ": coordinates differ"; });
  }
  RandomSource rng(o.seed + 4);
  const SuperDomain A = SuperDomain::whole(2, 2, "A");
  const SuperDomain B = SuperDomain::whole(2, 2, "B");
  const SuperDomain Cd = SuperDomain::whole(1, 2, "C");
  const SuperDomain D = SuperDomain::whole(1, 1, "D");
  const unsigned triples = std::max(1U, n * 2 / 5);
  for (unsigned c = 0; c < triples; ++c) {
    const SmMorphism F = rng.morphism(A, B, 2);
    const SmMorphism G = rng.morphism(B, Cd, 2);
    const SmMorphism H = rng.morphism(Cd, D, 2);
    const SmMorphism left = compose_substitution(H, compose_substitution(G, F));
    const SmMorphism right = compose_substitution(compose_substitution(H, G), F);
    r.expect(left.coords == right.coords, [&] { return "triple " + std::to_string(c) + ": composition not associative"; });
  }
  if (r.ok) r.detail = std::to_string(n) + " pairs, " + std::to_string(triples) + " triples";
  return r;
}

/// 5. Ordered and unordered partition routes agree.
inline Outcome partition_routes(const Options& o) {
  Outcome r{5, "ordered vs unordered partition routes"};
  const unsigned n = case_count(o, 50);
  const auto corpus = detail::compose_corpus(o.seed + 3, n);
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const auto& [F, G] = corpus[c];
    const auto un = compose_substitution(G, F, BoxPolicy::strict, PartitionRoute::unordered);
    const auto ord = compose_substitution(G, F, BoxPolicy::strict, PartitionRoute::ordered);
    r.expect(un.coords == ord.coords, [&] { return "pair " + std::to_string(c) + ": pullback routes differ"; });
    const auto cg = components(G);
    const auto cf = components(F);
    r.expect(compose_components(cg, cf, PartitionRoute::unordered) == compose_components(cg, cf, PartitionRoute::ordered),
             [&] { return "pair " + std::to_string(c) + ": component routes differ"; });
  }
  if (r.ok) r.detail = std::to_string(n) + " pairs, pullback and component composition";
  return r;
}

/// 6. ⟨F_*ω, g⟩ = ⟨ω, F^*g⟩; pairing against products; ⟨ω, 1⟩ = ε(ω).
inline Outcome duality(const Options& o) {
  Outcome r{6, "duality and pairing compatibility"};
  RandomSource rng(o.seed + 5);
  const SuperDomain U = SuperDomain::whole(2, 2, "U");
  const SuperDomain V = SuperDomain::whole(1, 2, "V");
  const auto points = U.box.sample_grid(3);
  const unsigned n = case_count(o, 100);
  for (unsigned c = 0; c < n; ++c) {
    const SmMorphism F = rng.morphism(U, V, 2);
    const CoalgebraElement w = rng.coalgebra_element(U.space, points, 4);
    const SuperFunction g = rng.superfunction(V, 3);
    const std::string tag = "case " + std::to_string(c);
    r.expect(pair(apply_coalgebra(F, w), g) == pair(w, pullback(F, g)), [&] { return tag + ": duality fails"; });

    const Parity pf = detail::random_parity(rng);
    const SuperFunction f1 = rng.superfunction(U, 2, pf);
    const SuperFunction f2 = rng.superfunction(U, 2, detail::random_parity(rng));
    Rational rhs(0);
    for (const auto& [keys, k] : comultiply(w).terms) {
      const int s = koszul(pf, keys[1].mono.parity());
      rhs += k * s * pair(detail::single(U.space, keys[0]), f1) * pair(detail::single(U.space, keys[1]), f2);
    }
    r.expect(pair(w, f1 * f2) == rhs, [&] { return tag + ": pairing of a product fails"; });
    r.expect(pair(w, SuperFunction::constant(U, Rational(1))) == counit(w), [&] { return tag + ": <w,1> != eps(w)"; });
  }
  if (r.ok) r.detail = std::to_string(n) + " cases R(2|2) -> R(1|2), filtration <= 4";
  return r;
}

/// 7. Multiple Leibniz rule and chain rules for general homogeneous directions.
inline Outcome leibniz_chain(const Options& o) {
  Outcome r{7, "Leibniz and chain rules"};
  RandomSource rng(o.seed + 6);
  const SuperDomain U = SuperDomain::whole(2, 2, "U");
  const SuperDomain V = SuperDomain::whole(2, 2, "V");
  const unsigned n = case_count(o, 40);
  for (unsigned c = 0; c < n; ++c) {
    const std::size_t k = 1 + c % 4;
    const std::string tag = "case " + std::to_string(c) + " (k=" + std::to_string(k) + ")";
    const auto dirs = detail::random_dirs(rng, U.space, k);
    std::vector<Parity> parities;
    for (const auto& d : dirs) parities.push_back(d.parity);

    const Parity pf = detail::random_parity(rng);
    const SuperFunction f = rng.superfunction(U, 3, pf);
    const SuperFunction g = rng.superfunction(U, 3, detail::random_parity(rng));
    SuperFunction rhs(U);
    for_each_ordered_partition(k, 2, false, [&](const BlockList& b) {
      const int s = partition_sign(parities, b) * koszul(pf, detail::parity_of_vectors(dirs, b[1]));
      const auto d1 = detail::pick(dirs, b[0]);
      const auto d2 = detail::pick(dirs, b[1]);
      rhs += Rational(s) * (sf_directional(f, d1) * sf_directional(g, d2));
    });
    r.expect(sf_directional(f * g, dirs) == rhs, [&] { return tag + ": Leibniz rule fails"; });

    // Chain rule by the literal ordered formula, independent of the pullback route.
    const SmMorphism F = rng.morphism(U, V, 2);
    const SuperFunction h = rng.superfunction(V, 2);
    const SuperFunction pulled = pullback(F, h);
    const std::vector<Polynomial> f0 = F.underlying();
    auto leaf = [&](const std::vector<Letter>& word) {
      const Polynomial d = underlying_derivative(h, word);
      return d.is_zero() ? Polynomial(U.m()) : d.compose(f0, U.m());
    };
    Polynomial chain(U.m());
    for_each_weighted_partition(k, PartitionRoute::ordered, [&](const BlockList& blocks, const Rational& w) {
      std::vector<std::vector<Polynomial>> ws;
      for (const auto& b : blocks) {
        const auto db = detail::pick(dirs, b);
        std::vector<Polynomial> comps;
        for (const auto& FJ : F.coords) comps.push_back(sf_directional(FJ, db).underlying());
        ws.push_back(std::move(comps));
      }
      chain += (w * partition_sign(parities, blocks)) *
               expand_multilinear(std::span<const std::vector<Polynomial>>(ws), V.m(), U.m(), leaf);
    });
    r.expect(sf_directional(pulled, dirs).underlying() == chain, [&] { return tag + ": chain rule fails"; });

    // The coalgebra form: (D_{a_1..a_k} F^*h)^0(u) = <h, F_*(u·a_1..a_k)>.
    const Point u = rng.point(U.box);
    const CoalgebraElement ua = CoalgebraElement::anchored(u, product_of_vectors(U.space, dirs));
    r.expect(sf_differentiation(pulled, u, dirs) == pair(apply_coalgebra(F, ua), h),
             [&] { return tag + ": coalgebra chain rule fails"; });
  }
  if (r.ok) r.detail = std::to_string(n) + " cases on R(2|2), k = 1..4";
  return r;
}

/// 8. Universal property of the direct product.
inline Outcome product_property(const Options& o) {
  Outcome r{8, "direct product universal property"};
  RandomSource rng(o.seed + 7);
  const SuperDomain W = SuperDomain::whole(2, 2, "W");
  const ProductDomain P(SuperDomain::whole(1, 1, "A"), SuperDomain::whole(1, 1, "B"));
  const auto [pl, pr] = projections(P);
  const auto points = W.box.sample_grid(3);
  const unsigned n = case_count(o, 20);
  for (unsigned c = 0; c < n; ++c) {
    const std::string tag = "pair " + std::to_string(c);
    const SmMorphism fl = rng.morphism(W, P.left, 2);
    const SmMorphism fr = rng.morphism(W, P.right, 2);
    const SmMorphism phi = pair_into_product(P, fl, fr);
    r.expect(same_coordinates(compose_substitution(pl, phi), fl) && same_coordinates(compose_substitution(pr, phi), fr),
             [&] { return tag + ": projection law fails"; });

    SmMorphism bad = phi;
    const std::size_t J = static_cast<std::size_t>(rng.integer(0, static_cast<long>(bad.coords.size()) - 1));
    bad.coords[J] += J < P.joint.m() ? SuperFunction::constant(W, Rational(1)) : SuperFunction::odd_coordinate(W, 0);
    r.expect(!(same_coordinates(compose_substitution(pl, bad), fl) && same_coordinates(compose_substitution(pr, bad), fr)),
             [&] { return tag + ": perturbed pairing still satisfies both projection laws"; });

    // Components are the direct sum of the factor components.
    const auto cphi = components(phi);
    const auto cl = components(fl);
    const auto cr = components(fr);
    bool sum_ok = true;
    for (const auto& mono : monomials_up_to(W.space, cphi.order, 1)) {
      const auto v = cphi.entry(mono);
      const auto a = cl.entry(mono);
      const auto b = cr.entry(mono);
      const std::vector<Polynomial> want{a[0], b[0], a[1], b[1]};
      sum_ok = sum_ok && v == want;
    }
    r.expect(sum_ok, [&] { return tag + ": components are not the direct sum"; });

    // Element level: Φ_* = (F_left* ⊗ F_right*)∘Δ followed by the product identification.
    const CoalgebraElement w = rng.coalgebra_element(W.space, points, 3);
    CoalgebraElement rhs(P.joint.space);
    for (const auto& [keys, k] : comultiply(w).terms) {
      CoalgebraElement t = tensor_elements(P, apply_coalgebra(fl, detail::single(W.space, keys[0])),
                                           apply_coalgebra(fr, detail::single(W.space, keys[1])));
      t *= k;
      rhs += t;
    }
    r.expect(apply_coalgebra(phi, w) == rhs, [&] { return tag + ": element-level construction differs"; });
  }
  if (r.ok) r.detail = std::to_string(n) + " pairs W=R(2|2) into R(1|1)xR(1|1)";
  return r;
}

/// 9. The line atlas fixtures.
inline Outcome atlas_fixtures(const Options& o) {
  Outcome r{9, "atlas fixtures"};
  const auto good = dsl::parse(kLineAtlas);
  const auto bad = dsl::parse(kTripleBadAtlas);
  const AtlasView line(dsl::to_cocycle(good.symbols.cocycles.at("line"), good.symbols));
  const CheckReport lr = cocycle_validate(line, o.grid);
  r.expect(lr.ok, [&] { return "line atlas rejected: " + (lr.failures.empty() ? std::string() : lr.failures[0]); });
  const CheckReport br =
      cocycle_validate(AtlasView(dsl::to_cocycle(bad.symbols.cocycles.at("triple_bad"), bad.symbols)), o.grid);
  r.expect(!br.ok && br.failures.size() == 1 && br.failures[0].find("triple (1,2,3)") != std::string::npos, [&] {
    std::string all;
    for (const auto& f : br.failures) all += "[" + f + "]";
    return "triple_bad reported " + (all.empty() ? std::string("nothing") : all);
  });
  if (!lr.ok) return r;

  const GluedSupermanifold M = glue(line.cocycle(), o.grid);
  const SuperFunction plus = good.symbols.functions.at("plus");
  const SuperFunction minus = good.symbols.functions.at("minus");
  r.expect(global_superfunction_check(M, {plus, minus, minus}).ok, [] { return "family {th1, -th1} rejected"; });
  r.expect(!global_superfunction_check(M, {plus, plus, plus}).ok, [] { return "family {th1, th1} accepted"; });

  // Random compatible families f_1 = p + q·θ, f_2 = f_3 = p - q·θ and transported pairings.
  RandomSource rng(o.seed + 8);
  const AtlasView& atlas = M.atlas();
  const unsigned n = case_count(o, 50);
  for (unsigned c = 0; c < n; ++c) {
    const Polynomial p = rng.polynomial(1, 3);
    const Polynomial q = rng.polynomial(1, 3);
    GlobalSuperFunction fam;
    for (std::size_t i = 0; i < 3; ++i) {
      SuperFunction f(atlas.domain(i));
      f.add_term(0, p);
      f.add_term(1, i == 0 ? q : -q);
      fam.push_back(std::move(f));
    }
    const std::string tag = "case " + std::to_string(c);
    r.expect(global_superfunction_check(M, fam).ok, [&] { return tag + ": compatible family rejected"; });
    const std::size_t i = static_cast<std::size_t>(rng.integer(0, 2));
    std::size_t j = static_cast<std::size_t>(rng.integer(0, 1));
    if (j >= i) ++j;
    const auto pts = overlap_points(atlas, i, j, 3);
    const Localized x{i, rng.coalgebra_element(atlas.cocycle().space, pts, 3)};
    const Localized y = M.transport(x, j);
    r.expect(M.pair_global(x, fam) == M.pair_global(y, fam), [&] {
      return tag + ": pairing depends on the chart (" + atlas.chart(i).id + " -> " + atlas.chart(j).id + ")";
    });
  }
  if (r.ok) r.detail = "validation, triple (1,2,3), families, " + std::to_string(n) + " transported pairings";
  return r;
}

/// 10. The pairing matrix at a point is square and invertible, m = n = 1.
inline Outcome dual_dimension(const Options&) {
  Outcome r{10, "dual-coalgebra dimension check"};
  const SuperDomain U = SuperDomain::whole(1, 1, "U");
  for (unsigned k = 0; k <= 3; ++k) {
    const Matrix a = pairing_matrix(U, {Rational(1, 2)}, k);
    const bool square = std::all_of(a.begin(), a.end(), [&](const auto& row) { return row.size() == a.size(); });
    r.expect(square && exact_rank(a) == a.size(), [&] { return "k=" + std::to_string(k) + ": matrix is singular"; });
  }
  if (r.ok) r.detail = "k = 0..3 on R(1|1)";
  return r;
}

/// Sorted .sg files of a directory.
inline std::vector<std::filesystem::path> fixture_files(const std::string& dir) {
  std::vector<std::filesystem::path> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(dir, ec)) {
    if (e.is_regular_file() && e.path().extension() == ".sg") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// 11. parse∘print on the fixture corpus and on random expressions.
inline Outcome dsl_round_trip(const Options& o) {
  Outcome r{11, "DSL round-trip"};
  const auto files = fixture_files(o.fixture_dir);
  r.expect(files.size() >= 20, [&] {
    return "only " + std::to_string(files.size()) + " fixture files in '" + o.fixture_dir + "'";
  });
  for (const auto& f : files) {
    try {
      const auto first = dsl::parse(read_file(f), {o.grid});
      const std::string text = dsl::print_canonical(first.ast);
      const auto second = dsl::parse(text, {o.grid});
      r.expect(second.ast == first.ast && dsl::print_canonical(second.ast) == text,
               [&] { return f.filename().string() + ": reparse differs"; });
    } catch (const Error& e) {
      r.expect(false, [&] { return f.filename().string() + ": " + e.what(); });
    }
  }
  RandomSource rng(o.seed + 9);
  const SuperDomain U = SuperDomain::whole(2, 3, "U");
  const unsigned n = case_count(o, 500);
  for (unsigned c = 0; c < n; ++c) {
    bool even = true;
    const dsl::Expr e = detail::random_expr(rng, 2, 3, 4, even);
    const std::string text = dsl::print_expr(e);
    try {
      r.expect(dsl::parse_expression(text) == e, [&] { return "expression reparses differently: " + text; });
      const SuperFunction v = dsl::evaluate(e, U);
      const std::string canon = dsl::to_text(v);
      r.expect(dsl::evaluate(dsl::parse_expression(canon), U) == v,
               [&] { return "canonical form does not round-trip: " + canon; });
    } catch (const Error& ex) {
      r.expect(false, [&] { return text + ": " + ex.what(); });
    }
  }
  if (r.ok) r.detail = std::to_string(files.size()) + " fixture files, " + std::to_string(n) + " expressions";
  return r;
}

// Frozen structured output for the sign conventions.
inline constexpr const char* kFrozenSecondDerivative = R"({
  "command": "derive",
  "result": {
    "at": [],
    "dirs": [
      "o1",
      "o2"
    ],
    "function": {
      "domain": "X",
      "m": 0,
      "n": 2,
      "terms": [
        {
          "coef": {
            "den": 1,
            "num": 1
          },
          "exp": [],
          "odd": [
            1,
            2
          ]
        }
      ],
      "text": "th1*th2"
    },
    "value": {
      "den": 1,
      "num": -1
    }
  },
  "schema": "supergeo/1"
}
)";

inline constexpr const char* kFrozenOddPartial = R"({
  "command": "derive",
  "result": {
    "dirs": [
      "o2"
    ],
    "function": {
      "domain": "X",
      "m": 0,
      "n": 2,
      "terms": [
        {
          "coef": {
            "den": 1,
            "num": 1
          },
          "exp": [],
          "odd": [
            1,
            2
          ]
        }
      ],
      "text": "th1*th2"
    },
    "result": {
      "domain": "X",
      "m": 0,
      "n": 2,
      "terms": [
        {
          "coef": {
            "den": 1,
            "num": -1
          },
          "exp": [],
          "odd": [
            1
          ]
        }
      ],
      "text": "-th1"
    }
  },
  "schema": "supergeo/1"
}
)";

inline constexpr const char* kFrozenAntipode = R"({
  "command": "algebra",
  "result": {
    "input": {
      "space": "X",
      "terms": [
        {
          "coef": {
            "den": 1,
            "num": 1
          },
          "even": [],
          "odd": [
            1,
            2
          ]
        }
      ]
    },
    "op": "antipode",
    "result": {
      "space": "X",
      "terms": [
        {
          "coef": {
            "den": 1,
            "num": -1
          },
          "even": [],
          "odd": [
            1,
            2
          ]
        }
      ]
    }
  },
  "schema": "supergeo/1"
}
)";

inline constexpr const char* kFrozenCoproduct = R"({
  "command": "algebra",
  "result": {
    "input": {
      "space": "X",
      "terms": [
        {
          "coef": {
            "den": 1,
            "num": 1
          },
          "even": [],
          "odd": [
            1,
            2
          ]
        }
      ]
    },
    "op": "coproduct",
    "result": {
      "arity": 2,
      "terms": [
        {
          "coef": {
            "den": 1,
            "num": 1
          },
          "factors": [
            {
              "even": [],
              "odd": []
            },
            {
              "even": [],
              "odd": [
                1,
                2
              ]
            }
          ]
        },
        {
          "coef": {
            "den": 1,
            "num": 1
          },
          "factors": [
            {
              "even": [],
              "odd": [
                1
              ]
            },
            {
              "even": [],
              "odd": [
                2
              ]
            }
          ]
        },
        {
          "coef": {
            "den": 1,
            "num": -1
          },
          "factors": [
            {
              "even": [],
              "odd": [
                2
              ]
            },
            {
              "even": [],
              "odd": [
                1
              ]
            }
          ]
        },
        {
          "coef": {
            "den": 1,
            "num": 1
          },
          "factors": [
            {
              "even": [],
              "odd": [
                1,
                2
              ]
            },
            {
              "even": [],
              "odd": []
            }
          ]
        }
      ]
    }
  },
  "schema": "supergeo/1"
}
)";

/// The four structured outputs pinned by criterion 12, in order.
inline std::vector<std::string> sign_fixture_outputs() {
  using namespace structured;
  const SuperDomain X = SuperDomain::whole(0, 2, "X");
  const SuperFunction f = SuperFunction::odd_coordinate(X, 0) * SuperFunction::odd_coordinate(X, 1);
  const std::vector<Letter> both{odd_letter(0), odd_letter(1)};
  const std::vector<Letter> second{odd_letter(1)};
  const Point origin;
  std::vector<Vector> dirs;
  for (const auto& l : both) dirs.push_back(Vector::basis(X.space, l));
  const Rational d2 = sf_differentiation(f, origin, dirs);
  const AlgebraElement xi = to_algebra_element(f);
  return {
      dump(envelope("derive", derivative_value_json(f, both, origin, d2))),
      dump(envelope("derive", derivative_json(f, second, sf_derivative_word(f, second)))),
      dump(envelope("algebra", algebra_op_json("antipode", xi, to_json(antipode(xi))))),
      dump(envelope("algebra", algebra_op_json("coproduct", xi, to_json(comultiply(xi))))),
  };
}

/// 12. Pinned sign conventions, byte-exact.
inline Outcome sign_fixtures(const Options&) {
  Outcome r{12, "pinned sign fixtures"};
  const std::vector<std::string> want{kFrozenSecondDerivative, kFrozenOddPartial, kFrozenAntipode, kFrozenCoproduct};
  const char* names[] = {"D^2(th1*th2; o1, o2)", "d/dth2 (th1*th2)", "s(x1*x2)", "coproduct(x1*x2)"};
  const auto got = sign_fixture_outputs();
  for (std::size_t i = 0; i < want.size(); ++i) {
    r.expect(got[i] == want[i], [&] {
      std::size_t at = 0;
      while (at < got[i].size() && at < want[i].size() && got[i][at] == want[i][at]) ++at;
      const std::size_t line = static_cast<std::size_t>(std::count(got[i].begin(), got[i].begin() + at, '\n')) + 1;
      auto line_at = [&](const std::string& t) {
        const std::size_t b = t.rfind('\n', at == 0 ? 0 : at - 1);
        const std::size_t from = t.find_first_not_of(' ', b == std::string::npos ? 0 : b + 1);
        return t.substr(from, t.find('\n', from) - from);
      };
      return std::string(names[i]) + " differs from the pinned text at line " + std::to_string(line) + ": got `" +
             line_at(got[i]) + "`, pinned `" + line_at(want[i]) + "`";
    });
  }
  if (r.ok) r.detail = "4 outputs byte-identical";
  return r;
}

using Criterion = Outcome (*)(const Options&);

inline const std::vector<Criterion>& all_criteria() {
  static const std::vector<Criterion> list{hopf_suite,     iterated_coproduct, star_exp_suite,  composition_oracle,
                                           partition_routes, duality,          leibniz_chain,   product_property,
                                           atlas_fixtures, dual_dimension,     dsl_round_trip,  sign_fixtures};
  return list;
}

/// Runs one criterion (1-based), turning library errors into failures.
inline Outcome run_criterion(int id, const Options& o) {
  const auto& list = all_criteria();
  if (id < 1 || id > static_cast<int>(list.size())) throw ArgumentError("no criterion " + std::to_string(id));
  try {
    return list[static_cast<std::size_t>(id - 1)](o);
  } catch (const std::exception& e) {
    Outcome r{id, "criterion " + std::to_string(id)};
    r.ok = false;
    r.detail = std::string("error: ") + e.what();
    return r;
  }
}

}  // namespace supergeo::verify
