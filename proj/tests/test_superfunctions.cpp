#include <gtest/gtest.h>

#include <bit>

#include "support.hpp"
#include "supergeo/duality.hpp"
#include "supergeo/dsl/printer.hpp"
#include "supergeo/random.hpp"

using namespace supergeo;
using testing_support::fn;
using testing_support::load;

namespace {

// Left odd derivative, term by term: strip θ_α after moving it to the front.
SuperFunction left_partial_oracle(const SuperFunction& f, std::size_t alpha) {
  SuperFunction out(f.domain());
  const std::uint64_t bit = std::uint64_t{1} << alpha;
  for (const auto& [mask, p] : f.coeffs()) {
    if (!(mask & bit)) continue;
    const int before = std::popcount(mask & (bit - 1));
    out.add_term(mask & ~bit, before % 2 ? -p : p);
  }
  return out;
}

const SuperDomain kX = SuperDomain::whole(0, 2, "X");

}  // namespace

TEST(OddPartial, ThetaPair) {
  const SuperFunction f = fn(kX, "th1*th2");
  EXPECT_EQ(dsl::to_text(sf_partial(f, odd_letter(1))), "-th1");
  EXPECT_EQ(dsl::to_text(sf_partial(f, odd_letter(0))), "th2");
}

TEST(OddPartial, SecondDerivativeAtOrigin) {
  const SuperFunction f = fn(kX, "th1*th2");
  const std::vector<Vector> dirs{Vector::basis(kX.space, odd_letter(0)), Vector::basis(kX.space, odd_letter(1))};
  EXPECT_EQ(sf_differentiation(f, {}, dirs), Rational(-1));
  const std::vector<Letter> word{odd_letter(0), odd_letter(1)};
  EXPECT_EQ(underlying_derivative(f, word).constant_term(), Rational(-1));
}

TEST(OddPartial, MatchesTermwiseOracle) {
  RandomSource rng(31);
  const SuperDomain U = SuperDomain::whole(2, 3, "U");
  for (int c = 0; c < 100; ++c) {
    const SuperFunction f = rng.superfunction(U, 3);
    for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(sf_partial(f, odd_letter(a)), left_partial_oracle(f, a));
  }
}

TEST(OddPartial, AnticommuteAndSquareToZero) {
  RandomSource rng(32);
  const SuperDomain U = SuperDomain::whole(1, 3, "U");
  for (int c = 0; c < 50; ++c) {
    const SuperFunction f = rng.superfunction(U, 3);
    const auto a = odd_letter(static_cast<std::size_t>(rng.integer(0, 2)));
    const auto b = odd_letter(static_cast<std::size_t>(rng.integer(0, 2)));
    const SuperFunction ab = sf_partial(sf_partial(f, b), a);
    const SuperFunction ba = sf_partial(sf_partial(f, a), b);
    EXPECT_EQ(ab + ba, SuperFunction(U));
  }
}

TEST(EvenPartial, ActsOnTheCoefficients) {
  const SuperDomain U = SuperDomain::whole(2, 1, "U");
  EXPECT_EQ(sf_partial(fn(U, "u1^3*u2*th1 + u2"), even_letter(0)), fn(U, "3*u1^2*u2*th1"));
}

TEST(Leibniz, SingleOddDerivative) {
  RandomSource rng(33);
  const SuperDomain U = SuperDomain::whole(2, 2, "U");
  for (int c = 0; c < 100; ++c) {
    const Parity pf = rng.chance(50) ? Parity::odd : Parity::even;
    const SuperFunction f = rng.superfunction(U, 3, pf);
    const SuperFunction g = rng.superfunction(U, 3);
    const Letter a = odd_letter(static_cast<std::size_t>(rng.integer(0, 1)));
    const SuperFunction rhs = sf_partial(f, a) * g + Rational(is_odd(pf) ? -1 : 1) * (f * sf_partial(g, a));
    EXPECT_EQ(sf_partial(f * g, a), rhs);
  }
}

TEST(Product, OddCoordinatesAnticommute) {
  const SuperDomain U = SuperDomain::whole(0, 2, "U");
  EXPECT_EQ(fn(U, "th2*th1"), fn(U, "-th1*th2"));
  EXPECT_EQ(fn(U, "th1*th1"), SuperFunction(U));
}

TEST(Pairing, PointDerivationOnSquare) {
  const auto s = load("superdomain R(1|0) L = box (-inf,inf);\n"
                      "element delta on L = point(1).e;\n"
                      "function f on L = u1^2;\n");
  EXPECT_EQ(pair(s.elements.at("delta"), s.functions.at("f")), Rational(2));
}

TEST(Pairing, GroupLikeEvaluatesTheUnderlyingFunction) {
  RandomSource rng(34);
  const SuperDomain U = SuperDomain::whole(2, 2, "U");
  for (int c = 0; c < 50; ++c) {
    const SuperFunction f = rng.superfunction(U, 3);
    const Point u = rng.point(U.box);
    EXPECT_EQ(pair(CoalgebraElement::group_like(U.space, u), f), f.underlying().evaluate(u));
  }
}

TEST(Pairing, OddWordGivesTheIteratedDerivative) {
  RandomSource rng(35);
  const SuperDomain U = SuperDomain::whole(1, 3, "U");
  for (int c = 0; c < 50; ++c) {
    const SuperFunction f = rng.superfunction(U, 3);
    const Point u = rng.point(U.box);
    const std::vector<Letter> word{odd_letter(0), odd_letter(2)};
    const auto elem = CoalgebraElement::anchored(u, AlgebraElement::word(U.space, word));
    EXPECT_EQ(pair(elem, f), underlying_derivative(f, word).evaluate(u));
  }
}

TEST(SuperFunction, DomainMismatchIsRejected) {
  const SuperDomain A = SuperDomain::whole(1, 1, "A");
  const SuperDomain B = SuperDomain::whole(1, 2, "B");
  EXPECT_THROW(fn(A, "u1") * fn(B, "u1"), Error);
}
