#include <gtest/gtest.h>

#include "support.hpp"
#include "supergeo/duality.hpp"
#include "supergeo/products.hpp"
#include "supergeo/random.hpp"

using namespace supergeo;
using testing_support::fn;

TEST(Product, JointSignatureConcatenates) {
  const ProductDomain P(SuperDomain::whole(1, 2, "A"), SuperDomain::whole(2, 1, "B"));
  EXPECT_EQ(P.joint.m(), 3U);
  EXPECT_EQ(P.joint.n(), 3U);
  const auto [pl, pr] = projections(P);
  // Left factor takes the first even and first odd slots.
  EXPECT_EQ(pl.coords[0], fn(P.joint, "u1"));
  EXPECT_EQ(pl.coords[1], fn(P.joint, "th1"));
  EXPECT_EQ(pl.coords[2], fn(P.joint, "th2"));
  EXPECT_EQ(pr.coords[0], fn(P.joint, "u2"));
  EXPECT_EQ(pr.coords[2], fn(P.joint, "th3"));
}

TEST(Product, DiagonalProjectsToIdentity) {
  const SuperDomain D = SuperDomain::whole(1, 2, "D");
  const SmMorphism d = diagonal(D);
  const auto [pl, pr] = projections(ProductDomain(D, D));
  EXPECT_EQ(compose_substitution(pl, d).coords, identity_morphism(D).coords);
  EXPECT_EQ(compose_substitution(pr, d).coords, identity_morphism(D).coords);
}

TEST(Product, PairingIsUniqueUpToCoordinates) {
  RandomSource rng(51);
  const SuperDomain W = SuperDomain::whole(1, 2, "W");
  const ProductDomain P(SuperDomain::whole(1, 1, "A"), SuperDomain::whole(1, 1, "B"));
  const auto [pl, pr] = projections(P);
  for (int c = 0; c < 20; ++c) {
    const SmMorphism fl = rng.morphism(W, P.left, 2);
    const SmMorphism fr = rng.morphism(W, P.right, 2);
    const SmMorphism phi = pair_into_product(P, fl, fr);
    EXPECT_TRUE(same_coordinates(compose_substitution(pl, phi), fl));
    EXPECT_TRUE(same_coordinates(compose_substitution(pr, phi), fr));
  }
}

TEST(Product, GroupLikeTensorPairsWithProducts) {
  RandomSource rng(52);
  const ProductDomain P(SuperDomain::whole(1, 1, "A"), SuperDomain::whole(2, 0, "B"));
  const auto [pl, pr] = projections(P);
  for (int c = 0; c < 30; ++c) {
    const SuperFunction f = rng.superfunction(P.left, 3);
    const SuperFunction g = rng.superfunction(P.right, 3);
    const Point u = rng.point(P.left.box);
    const Point v = rng.point(P.right.box);
    const CoalgebraElement t = tensor_elements(P, CoalgebraElement::group_like(P.left.space, u),
                                               CoalgebraElement::group_like(P.right.space, v));
    EXPECT_EQ(pair(t, pullback(pl, f) * pullback(pr, g)), f.underlying().evaluate(u) * g.underlying().evaluate(v));
  }
}

TEST(Product, MismatchedFactorsAreRejected) {
  const ProductDomain P(SuperDomain::whole(1, 1, "A"), SuperDomain::whole(1, 1, "B"));
  const SuperDomain W = SuperDomain::whole(1, 1, "W");
  const SuperDomain Z = SuperDomain::whole(1, 1, "Z");
  EXPECT_THROW(pair_into_product(P, identity_morphism(W), identity_morphism(Z)), Error);
}
