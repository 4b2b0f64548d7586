#include <gtest/gtest.h>

#include "supergeo/dsl/printer.hpp"
#include "supergeo/linear_map.hpp"
#include "supergeo/random.hpp"
#include "supergeo/verification.hpp"

using namespace supergeo;

namespace {

const GradedSpaceSig kOdd2{0, 2, "X"};

AlgebraElement xi(std::size_t i) { return AlgebraElement::generator(kOdd2, odd_letter(i)); }

GradedMonomial xpow(unsigned n) { return GradedMonomial({n}, 0); }

Rational fact(unsigned n) { return factorial(n); }

}  // namespace

TEST(Coproduct, OddPairHasTheCrossSigns) {
  const AlgebraElement x12 = xi(0) * xi(1);
  EXPECT_EQ(dsl::to_text(comultiply(x12)), "[1 | o1*o2] + [o1 | o2] - [o2 | o1] + [o1*o2 | 1]");
}

TEST(Coproduct, EvenPowerIsBinomial) {
  const GradedSpaceSig X{1, 0, "X"};
  for (unsigned n = 0; n <= 6; ++n) {
    const auto d = comultiply(AlgebraElement::monomial(X, xpow(n)));
    ASSERT_EQ(d.terms.size(), n + 1);
    for (unsigned i = 0; i <= n; ++i) EXPECT_EQ(d.terms.at({xpow(i), xpow(n - i)}), binomial(n, i));
  }
}

TEST(Coproduct, IteratedOnEvenPowerIsMultinomial) {
  const GradedSpaceSig X{1, 0, "X"};
  const unsigned n = 5;
  const auto d = comultiply_k(AlgebraElement::monomial(X, xpow(n)), 2);
  for (unsigned a = 0; a <= n; ++a) {
    for (unsigned b = 0; a + b <= n; ++b) {
      const Rational want = fact(n) / (fact(a) * fact(b) * fact(n - a - b));
      EXPECT_EQ(d.terms.at({xpow(a), xpow(b), xpow(n - a - b)}), want);
    }
  }
}

TEST(Counit, PicksTheScalarPart) {
  const GradedSpaceSig X{2, 2, "X"};
  AlgebraElement a = AlgebraElement::scalar(X, Rational(7, 3));
  a += AlgebraElement::generator(X, even_letter(0));
  EXPECT_EQ(counit(a), Rational(7, 3));
}

TEST(Antipode, NegatesGeneratorsAndReversesProducts) {
  // s(x) = -x on generators and s(ab) = (-1)^{|a||b|} s(b) s(a) pin s down.
  RandomSource rng(21);
  const GradedSpaceSig X{2, 3, "X"};
  for (int c = 0; c < 100; ++c) {
    const GradedMonomial ma = rng.monomial(X, 3);
    const GradedMonomial mb = rng.monomial(X, 3);
    const AlgebraElement a = AlgebraElement::monomial(X, ma);
    const AlgebraElement b = AlgebraElement::monomial(X, mb);
    const AlgebraElement rhs = Rational(koszul(ma.parity(), mb.parity())) * (antipode(b) * antipode(a));
    EXPECT_EQ(antipode(a * b), rhs) << dsl::to_text(a) << " , " << dsl::to_text(b);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto g = AlgebraElement::generator(X, odd_letter(i));
    EXPECT_EQ(antipode(g), Rational(-1) * g);
  }
}

TEST(Antipode, OddPairIsFixed) {
  // m(s ⊗ id)Δ(x1 x2) = ε(x1 x2) = 0 forces s(x1 x2) = +x1 x2.
  const AlgebraElement x12 = xi(0) * xi(1);
  EXPECT_EQ(antipode(x12), x12);
  AlgebraElement conv(kOdd2);
  for (const auto& [keys, c] : comultiply(x12).terms) {
    conv += c * (antipode(AlgebraElement::monomial(kOdd2, keys[0])) * AlgebraElement::monomial(kOdd2, keys[1]));
  }
  EXPECT_TRUE(conv.is_zero());
}

TEST(Hopf, AxiomsOnSmallSpaces) {
  for (const auto& X : {GradedSpaceSig{1, 1, "X"}, GradedSpaceSig{0, 3, "X"}, GradedSpaceSig{2, 2, "X"}}) {
    const auto r = verify::hopf_axioms(X, 4, 40, 5);
    EXPECT_TRUE(r.ok) << r.detail;
  }
}

TEST(StarExp, LinearPartGivesPowers) {
  const GradedSpaceSig X{1, 0, "C"};
  const GradedSpaceSig Y{1, 0, "Y"};
  const Rational a(3, 2);
  LinearMap phi(X, Y, 5);
  phi.set(xpow(1), AlgebraElement::monomial(Y, xpow(1), a));
  const LinearMap Phi = star_exp(phi);
  for (unsigned n = 0; n <= 5; ++n) {
    Rational an(1);
    for (unsigned i = 0; i < n; ++i) an *= a;
    EXPECT_EQ(Phi.at(xpow(n)), AlgebraElement::monomial(Y, xpow(n), an)) << n;
  }
}

TEST(StarExp, QuadraticPartByHand) {
  // Φ^+(x^2) = y only: Φ(x^4) = (1/2)(Φ^+ * Φ^+)(x^4) = (1/2)·C(4,2)·y^2 = 3y^2.
  const GradedSpaceSig X{1, 0, "C"};
  const GradedSpaceSig Y{1, 0, "Y"};
  LinearMap phi(X, Y, 4);
  phi.set(xpow(2), AlgebraElement::monomial(Y, xpow(1)));
  const LinearMap Phi = star_exp(phi);
  EXPECT_EQ(Phi.at(xpow(2)), AlgebraElement::monomial(Y, xpow(1)));
  EXPECT_EQ(Phi.at(xpow(4)), AlgebraElement::monomial(Y, xpow(2), Rational(3)));
  EXPECT_TRUE(Phi.at(xpow(3)).is_zero());
}

TEST(StarExp, PerturbedExtensionIsNotACoalgebraMorphism) {
  RandomSource rng(8);
  const GradedSpaceSig C{1, 1, "C"};
  const GradedSpaceSig Y{1, 1, "Y"};
  const LinearMap phi = rng.infinitesimal(C, Y, 3, 60);
  LinearMap Phi = star_exp(phi);
  const GradedMonomial m({2}, 0);
  AlgebraElement v = Phi.at(m);
  v += AlgebraElement::monomial(Y, GradedMonomial({2}, 0));
  Phi.set(m, v);
  EXPECT_NE(comultiply(Phi.at(m)), tensor_after_comultiply(Phi, Phi, m));
}

TEST(StarExp, RejectsNonInfinitesimalInput) {
  const GradedSpaceSig X{1, 1, "C"};
  LinearMap bad(X, X, 2);
  bad.set(GradedMonomial({1}, 0), AlgebraElement::monomial(X, GradedMonomial({2}, 0)));
  EXPECT_THROW(star_exp(bad), Error);
  LinearMap odd(X, X, 2);
  odd.set(GradedMonomial({1}, 0), AlgebraElement::generator(X, odd_letter(0)));
  EXPECT_THROW(star_exp(odd), ParityError);
}

TEST(SignFixtures, ConsistentOutputsAreByteExact) {
  const auto got = verify::sign_fixture_outputs();
  EXPECT_EQ(got[0], verify::kFrozenSecondDerivative);
  EXPECT_EQ(got[1], verify::kFrozenOddPartial);
  EXPECT_EQ(got[3], verify::kFrozenCoproduct);
}
