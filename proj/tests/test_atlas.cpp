#include <gtest/gtest.h>

#include "supergeo/random.hpp"
#include "supergeo/verification.hpp"

using namespace supergeo;

namespace {

struct Line {
  dsl::ParsedFile file = dsl::parse(verify::kLineAtlas);
  GluedSupermanifold M = glue(dsl::to_cocycle(file.symbols.cocycles.at("line"), file.symbols));
  const SuperFunction& plus() const { return file.symbols.functions.at("plus"); }
  const SuperFunction& minus() const { return file.symbols.functions.at("minus"); }
};

}  // namespace

TEST(Atlas, LineValidates) {
  const Line l;
  EXPECT_EQ(l.M.atlas().chart_count(), 3U);
}

TEST(Atlas, TripleBadNamesOnlyItsTriple) {
  const auto f = dsl::parse(verify::kTripleBadAtlas);
  const Cocycle c = dsl::to_cocycle(f.symbols.cocycles.at("triple_bad"), f.symbols);
  const CheckReport r = cocycle_validate(AtlasView(c));
  ASSERT_EQ(r.failures.size(), 1U);
  EXPECT_NE(r.failures[0].find("triple (1,2,3)"), std::string::npos);
  EXPECT_THROW(glue(c), ValidationError);
}

TEST(Atlas, NonInvertibleTransitionIsReported) {
  const auto f = dsl::parse(R"(superdomain R(1|1) L = box (-inf,inf);
morphism flip : L -> L { y1 = u1; e1 = -th1; }
morphism id : L -> L { y1 = u1; e1 = th1; }
cocycle two R(1|1) {
  chart a box (0,2);
  chart b box (1,3);
  overlap (a,b) box (1,2) forward flip inverse id;
};
)");
  const CheckReport r = cocycle_validate(AtlasView(dsl::to_cocycle(f.symbols.cocycles.at("two"), f.symbols)));
  EXPECT_FALSE(r.ok);
}

TEST(Atlas, GlobalFamilies) {
  const Line l;
  EXPECT_TRUE(global_superfunction_check(l.M, {l.plus(), l.minus(), l.minus()}).ok);
  EXPECT_FALSE(global_superfunction_check(l.M, {l.plus(), l.plus(), l.plus()}).ok);
  EXPECT_FALSE(global_superfunction_check(l.M, {l.plus(), l.minus()}).ok);
}

TEST(Atlas, TransportComposesAlongCharts) {
  // α -> β -> γ lands on the same element as α -> γ directly.
  const Line l;
  const AtlasView& a = l.M.atlas();
  RandomSource rng(61);
  const auto pts = verify::overlap_points(a, 0, 2, 3);  // in (2,3), which all three charts share
  for (int c = 0; c < 30; ++c) {
    const Localized x{0, rng.coalgebra_element(a.cocycle().space, pts, 3)};
    const Localized via = l.M.transport(l.M.transport(x, 1), 2);
    const Localized direct = l.M.transport(x, 2);
    EXPECT_EQ(via.chart, direct.chart);
    EXPECT_EQ(via.element, direct.element);
    EXPECT_TRUE(l.M.equivalent(x, direct));
  }
}

TEST(Atlas, TransportOutsideTheOverlapThrows) {
  const Line l;
  const Localized x{0, CoalgebraElement::group_like(l.M.atlas().cocycle().space, {Rational(1, 2)})};
  EXPECT_THROW(l.M.transport(x, 1), BoxViolation);
}

TEST(Atlas, OddPairingChangesSignAcrossTheFlip) {
  const Line l;
  const GradedSpaceSig& s = l.M.atlas().cocycle().space;
  const Localized x{0, CoalgebraElement::anchored({Rational(5, 2)}, AlgebraElement::generator(s, odd_letter(0)))};
  const Localized y = l.M.transport(x, 1);
  const GlobalSuperFunction fam{l.plus(), l.minus(), l.minus()};
  EXPECT_EQ(l.M.pair_global(x, fam), Rational(1));
  EXPECT_EQ(l.M.pair_global(y, fam), Rational(1));
}

TEST(Atlas, GlobalMorphismFromCharts) {
  const Line l;
  const AtlasView& a = l.M.atlas();
  std::vector<ChartRep> ids;
  for (std::size_t i = 0; i < 3; ++i) ids.push_back({i, i, identity_morphism(a.domain(i))});
  const auto good = global_morphism_from_charts(l.M, l.M, ids);
  ASSERT_TRUE(good.report.ok);
  const GlobalSuperFunction fam{l.plus(), l.minus(), l.minus()};
  const auto pulled = good.morphism->pullback_global(fam);
  EXPECT_TRUE(global_superfunction_check(l.M, pulled).ok);

  std::vector<ChartRep> bad = ids;
  bad[0].map = l.file.symbols.morphisms.at("flip");
  EXPECT_FALSE(global_morphism_from_charts(l.M, l.M, bad).report.ok);
  bad.pop_back();
  EXPECT_FALSE(global_morphism_from_charts(l.M, l.M, bad).report.ok);
}
