#include <gtest/gtest.h>

#include "support.hpp"
#include "supergeo/dsl/printer.hpp"
#include "supergeo/morphism.hpp"
#include "supergeo/random.hpp"

using namespace supergeo;
using testing_support::fn;
using testing_support::load;

namespace {

SuperFunction power(const SuperFunction& f, unsigned k) {
  SuperFunction out = SuperFunction::constant(f.domain(), Rational(1));
  for (unsigned i = 0; i < k; ++i) out = out * f;
  return out;
}

// F^*g by Taylor substitution: g_I(F^0 + N) = Σ_β ∂^β g_I(F^0) N^β / β!,
// then multiply by the odd target coordinates in increasing order.
SuperFunction taylor_pullback(const SmMorphism& F, const SuperFunction& g) {
  const SuperDomain& U = F.source;
  const std::size_t m = F.target.m();
  const std::size_t n = F.target.n();
  const std::vector<Polynomial> f0 = F.underlying();
  std::vector<SuperFunction> nil;
  for (std::size_t j = 0; j < m; ++j) nil.push_back(F.coords[j] - SuperFunction::from_polynomial(U, f0[j]));
  const unsigned cap = static_cast<unsigned>(U.n() / 2);  // N_j has no even-degree-0 part, so N^β = 0 beyond this

  SuperFunction out(U);
  for (const auto& [mask, gI] : g.coeffs()) {
    SuperFunction even_part(U);
    // Enumerate multi-indices β with |β| <= cap.
    std::vector<unsigned> beta(m, 0);
    const auto visit = [&](auto&& self, std::size_t j, unsigned left) -> void {
      if (j == m) {
        Polynomial d = gI;
        Rational weight(1);
        SuperFunction nb = SuperFunction::constant(U, Rational(1));
        for (std::size_t i = 0; i < m; ++i) {
          for (unsigned t = 0; t < beta[i]; ++t) d = d.partial(i);
          weight /= factorial(beta[i]);
          nb = nb * power(nil[i], beta[i]);
        }
        if (d.is_zero()) return;
        even_part += weight * (SuperFunction::from_polynomial(U, d.compose(f0, U.m())) * nb);
        return;
      }
      for (unsigned b = 0; b <= left; ++b) {
        beta[j] = b;
        self(self, j + 1, left - b);
      }
      beta[j] = 0;
    };
    visit(visit, 0, cap);
    SuperFunction odd_part = SuperFunction::constant(U, Rational(1));
    for (std::size_t a = 0; a < n; ++a) {
      if (mask & odd_bit(a)) odd_part = odd_part * F.coords[m + a];
    }
    out += even_part * odd_part;
  }
  return out;
}

const char* kSquare = "superdomain R(1|2) U = box (-inf,inf);\n"
                      "superdomain R(1|1) V = box (-inf,inf);\n"
                      "morphism F : U -> V {\n  y1 = u1^2 + th1*th2;\n  e1 = u1*th1 + th2;\n}\n"
                      "function g on V = u1^3 + u1*th1;\n";

}  // namespace

TEST(Pullback, HandComputedExample) {
  const auto s = load(kSquare);
  const SuperFunction r = pullback(s.morphisms.at("F"), s.functions.at("g"));
  // (u^2 + t1t2)^3 = u^6 + 3u^4 t1t2; (u^2 + t1t2)(u t1 + t2) = u^3 t1 + u^2 t2 + 0.
  EXPECT_EQ(r, fn(s.domains.at("U"), "u1^6 + 3*u1^4*th1*th2 + u1^3*th1 + u1^2*th2"));
}

TEST(Pullback, MatchesTaylorSubstitution) {
  RandomSource rng(41);
  const SuperDomain U = SuperDomain::whole(2, 3, "U");
  const SuperDomain V = SuperDomain::whole(2, 2, "V");
  for (int c = 0; c < 60; ++c) {
    const SmMorphism F = rng.morphism(U, V, 2);
    const SuperFunction g = rng.superfunction(V, 3);
    EXPECT_EQ(pullback(F, g), taylor_pullback(F, g)) << "case " << c;
    EXPECT_EQ(pullback(F, g, PartitionRoute::ordered), pullback(F, g)) << "case " << c;
  }
}

TEST(Pullback, IsAnAlgebraMorphism) {
  RandomSource rng(42);
  const SuperDomain U = SuperDomain::whole(1, 2, "U");
  const SuperDomain V = SuperDomain::whole(2, 2, "V");
  for (int c = 0; c < 50; ++c) {
    const SmMorphism F = rng.morphism(U, V, 2);
    const SuperFunction f = rng.superfunction(V, 2);
    const SuperFunction g = rng.superfunction(V, 2);
    EXPECT_EQ(pullback(F, f * g), pullback(F, f) * pullback(F, g));
  }
}

TEST(Compose, CoordinatesArePullbacks) {
  RandomSource rng(43);
  const SuperDomain U = SuperDomain::whole(2, 2, "U");
  const SuperDomain V = SuperDomain::whole(1, 2, "V");
  const SuperDomain W = SuperDomain::whole(1, 1, "W");
  for (int c = 0; c < 30; ++c) {
    const SmMorphism F = rng.morphism(U, V, 2);
    const SmMorphism G = rng.morphism(V, W, 2);
    const SmMorphism GF = compose_substitution(G, F);
    for (std::size_t J = 0; J < G.coords.size(); ++J) EXPECT_EQ(GF.coords[J], pullback(F, G.coords[J]));
  }
}

TEST(Compose, IdentityIsNeutral) {
  RandomSource rng(44);
  const SuperDomain U = SuperDomain::whole(2, 2, "U");
  const SuperDomain V = SuperDomain::whole(1, 2, "V");
  const SmMorphism F = rng.morphism(U, V, 2);
  EXPECT_EQ(compose_substitution(identity_morphism(V), F).coords, F.coords);
  EXPECT_EQ(compose_substitution(F, identity_morphism(U)).coords, F.coords);
}

TEST(Compose, BoxesMustNest) {
  const auto s = load("superdomain R(1|0) A = box (0,1);\n"
                      "superdomain R(1|0) B = box (0,2);\n"
                      "morphism F : A -> B { y1 = u1; }\n"
                      "morphism G : A -> A { y1 = u1; }\n");
  EXPECT_THROW(compose_substitution(s.morphisms.at("G"), s.morphisms.at("F")), Error);
}

TEST(Morphism, ParityAndImageAreChecked) {
  EXPECT_THROW(load("superdomain R(1|1) U = box (-inf,inf);\nmorphism F : U -> U { y1 = th1; e1 = th1; }\n"), Error);
  EXPECT_THROW(load("superdomain R(1|0) A = box (0,1);\nmorphism F : A -> A { y1 = u1 + 1; }\n"), Error);
  EXPECT_NO_THROW(load("superdomain R(1|0) A = box (0,1);\nmorphism F : A -> A { y1 = u1^2; }\n"));
}

TEST(Components, RoundTripThroughTheTable) {
  RandomSource rng(45);
  const SuperDomain U = SuperDomain::whole(2, 2, "U");
  const SuperDomain V = SuperDomain::whole(1, 2, "V");
  for (int c = 0; c < 40; ++c) {
    const SmMorphism F = rng.morphism(U, V, 3);
    const ComponentFamily cf = components(F);
    EXPECT_TRUE(smoothness_check(cf).ok);
    EXPECT_EQ(morphism_from_components(cf).coords, F.coords);
  }
}

TEST(Components, FirstComponentIsTheJacobian) {
  const auto s = load(kSquare);
  const ComponentFamily c = components(s.morphisms.at("F"));
  const auto v = c.entry(GradedMonomial({1}, 0));
  Polynomial two_u(1);
  two_u.add_term({1}, Rational(2));
  EXPECT_EQ(v[0], two_u);
  EXPECT_TRUE(v[1].is_zero());
}

TEST(Components, ZeroedSecondOrderTermFailsAtFirstOrder) {
  const auto s = load("superdomain R(1|0) L = box (-inf,inf);\nmorphism sq : L -> L { y1 = u1^2; }\n");
  ComponentFamily c = components(s.morphisms.at("sq"));
  ASSERT_GE(c.order, 2U);
  c.table[GradedMonomial({2}, 0)] = c.zero_value();
  const CheckReport r = smoothness_check(c);
  ASSERT_FALSE(r.ok);
  EXPECT_NE(r.failures[0].find("defc: k=1"), std::string::npos) << r.failures[0];
}

TEST(Components, CompositionMatchesSubstitution) {
  const auto s = load("superdomain R(2|2) A = box (-inf,inf) (-inf,inf);\n"
                      "superdomain R(1|2) B = box (-inf,inf);\n"
                      "morphism F : A -> A { y1 = u1*u2 + th1*th2; y2 = u2^2; e1 = u1*th2; e2 = th1 + u2*th2; }\n"
                      "morphism G : A -> B { y1 = u1 + u2*th1*th2; e1 = u1*th1; e2 = th2; }\n");
  const SmMorphism& F = s.morphisms.at("F");
  const SmMorphism& G = s.morphisms.at("G");
  EXPECT_EQ(morphism_from_components(compose_components(components(G), components(F))).coords,
            compose_substitution(G, F).coords);
}
