#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "supergeo/partitions.hpp"
#include "supergeo/polynomial.hpp"
#include "supergeo/random.hpp"

using namespace supergeo;

namespace {

// Stirling numbers of the second kind by the usual recurrence.
long stirling2(long n, long k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0) return 0;
  return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Sign of sorting a sequence of odd letters, by counting inversions.
int inversion_sign(const std::vector<std::size_t>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) inv += seq[i] > seq[j];
  return inv % 2 ? -1 : 1;
}

}  // namespace

TEST(Rational, ParsesAndReduces) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(to_string(parse_rational("-10/5")), "-2");
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Partitions, CountsMatchStirlingNumbers) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const long s = stirling2(static_cast<long>(n), static_cast<long>(k));
      long fact = 1;
      for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<long>(i);
      EXPECT_EQ(static_cast<long>(enumerate_partitions(n, k, true, false).size()), s) << n << "," << k;
      EXPECT_EQ(static_cast<long>(enumerate_partitions(n, k, true, true).size()), fact * s) << n << "," << k;
      EXPECT_EQ(static_cast<long>(enumerate_partitions(n, k, false, true).size()), ipow(static_cast<long>(k), static_cast<long>(n)));
    }
  }
}

TEST(Partitions, UnorderedWithEmptyBlocksIsRejected) {
  EXPECT_THROW(enumerate_partitions(3, 2, false, false), Error);
}

TEST(Partitions, BlocksAreIncreasingAndCoverEverything) {
  for (const auto& p : enumerate_partitions(5, 3, true, true)) {
    std::vector<std::size_t> all;
    for (const auto& b : p.blocks) {
      EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
      all.insert(all.end(), b.begin(), b.end());
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> want(5);
    std::iota(want.begin(), want.end(), 0);
    EXPECT_EQ(all, want);
  }
}

TEST(Partitions, SignIsInversionParityOfOddLetters) {
  RandomSource rng(11);
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    std::vector<Parity> par;
    for (std::size_t i = 0; i < n; ++i) par.push_back(rng.chance(60) ? Parity::odd : Parity::even);
    const auto parts = enumerate_partitions(n, static_cast<std::size_t>(rng.integer(1, static_cast<long>(n))), true, true);
    const Partition& p = parts[static_cast<std::size_t>(rng.integer(0, static_cast<long>(parts.size()) - 1))];
    std::vector<std::size_t> odd_seq;
    for (const auto& b : p.blocks)
      for (std::size_t i : b)
        if (is_odd(par[i])) odd_seq.push_back(i);
    EXPECT_EQ(partition_sign(par, p), inversion_sign(odd_seq)) << to_string(p);
  }
}

TEST(Monomial, OddGeneratorsAnticommute) {
  const GradedMonomial t1({}, odd_bit(0));
  const GradedMonomial t2({}, odd_bit(1));
  const auto [s12, m12] = multiply_monomials(t1, t2);
  const auto [s21, m21] = multiply_monomials(t2, t1);
  EXPECT_EQ(s12, 1);
  EXPECT_EQ(s21, -1);
  EXPECT_EQ(m12, m21);
  EXPECT_EQ(multiply_monomials(t1, t1).first, 0);
}

TEST(Polynomial, ArithmeticAgreesWithEvaluation) {
  RandomSource rng(3);
  for (int c = 0; c < 100; ++c) {
    const Polynomial p = rng.polynomial(2, 3);
    const Polynomial q = rng.polynomial(2, 3);
    const std::vector<Rational> x{rng.rational(), rng.rational()};
    EXPECT_EQ((p * q).evaluate(x), p.evaluate(x) * q.evaluate(x));
    EXPECT_EQ((p - q).evaluate(x), p.evaluate(x) - q.evaluate(x));
    EXPECT_EQ(p.pow(3).evaluate(x), p.evaluate(x) * p.evaluate(x) * p.evaluate(x));
    const std::vector<Polynomial> subs{q, p};
    const std::vector<Rational> inner{q.evaluate(x), p.evaluate(x)};
    EXPECT_EQ(p.compose(subs, 2).evaluate(x), p.evaluate(inner));
  }
}

TEST(Polynomial, PartialOfMonomial) {
  Polynomial p(2);
  p.add_term({3, 1}, Rational(2));
  Polynomial want(2);
  want.add_term({2, 1}, Rational(6));
  EXPECT_EQ(p.partial(0), want);
}

TEST(Box, OpenIntervalsAndIntersection) {
  const Box a({Interval::open(Rational(0), Rational(3))});
  const Box b({Interval::open(Rational(2), Rational(5))});
  EXPECT_TRUE(a.contains(std::vector<Rational>{Rational(1)}));
  EXPECT_FALSE(a.contains(std::vector<Rational>{Rational(3)}));
  EXPECT_TRUE(a.closure_contains(std::vector<Rational>{Rational(3)}));
  const auto ab = a.intersect(b);
  ASSERT_TRUE(ab.has_value());
  EXPECT_TRUE(ab->contains(std::vector<Rational>{Rational(5, 2)}));
  EXPECT_FALSE(a.intersect(Box({Interval::open(Rational(3), Rational(4))})).has_value());
}
