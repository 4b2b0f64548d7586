#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supergeo/morphism.hpp"

namespace supergeo {

struct Chart {
  std::string id;
  Box box;

  friend bool operator==(const Chart&, const Chart&) = default;
};

/// A declared overlap of charts a and b. `box` is the overlap in chart-a
/// coordinates; `forward` maps it into chart b and `inverse` maps back.
struct Overlap {
  std::string a;
  std::string b;
  Box box;
  SmMorphism forward;
  SmMorphism inverse;
};

/// Charts of one signature and transition morphisms on declared overlaps.
struct Cocycle {
  std::string name;
  GradedSpaceSig space;
  std::vector<Chart> charts;
  std::vector<Overlap> overlaps;
};

/// Coordinate superfunctions agree as polynomials, domains aside.
inline bool same_coordinates(const SmMorphism& F, const SmMorphism& G) {
  if (F.coords.size() != G.coords.size()) return false;
  for (std::size_t J = 0; J < F.coords.size(); ++J) {
    if (F.coords[J].coeffs() != G.coords[J].coeffs()) return false;
  }
  return true;
}

inline bool same_function(const SuperFunction& f, const SuperFunction& g) { return f.coeffs() == g.coeffs(); }

inline std::string describe_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s + ")";
}

/// Read-only view of a cocycle with chart lookup and transition access.
class AtlasView {
 public:
  explicit AtlasView(Cocycle c) : c_(std::move(c)) {
    for (std::size_t i = 0; i < c_.charts.size(); ++i) {
      if (c_.charts[i].box.dim() != c_.space.even_dim) throw DomainMismatch("chart box has wrong dimension");
      if (!index_.emplace(c_.charts[i].id, i).second) throw ValidationError("chart " + c_.charts[i].id + " declared twice");
    }
    for (auto& ov : c_.overlaps) {
      const std::size_t a = chart_index(ov.a);
      const std::size_t b = chart_index(ov.b);
      ov.forward = rehome(ov.forward, SuperDomain(c_.space, ov.box), domain(b));
      ov.inverse = rehome(ov.inverse, domain(b), domain(a));
    }
  }

  const Cocycle& cocycle() const { return c_; }
  std::size_t chart_count() const { return c_.charts.size(); }
  const Chart& chart(std::size_t i) const { return c_.charts.at(i); }

  std::size_t chart_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ValidationError("unknown chart " + id);
    return it->second;
  }

  SuperDomain domain(std::size_t i) const { return SuperDomain(c_.space, c_.charts.at(i).box); }

  /// The declared overlap record for {i, j} and whether it is stored as (i, j).
  std::optional<std::pair<const Overlap*, bool>> find_overlap(std::size_t i, std::size_t j) const {
    for (const auto& ov : c_.overlaps) {
      const std::size_t a = chart_index(ov.a);
      const std::size_t b = chart_index(ov.b);
      if (a == i && b == j) return std::make_pair(&ov, true);
    }
    for (const auto& ov : c_.overlaps) {
      const std::size_t a = chart_index(ov.a);
      const std::size_t b = chart_index(ov.b);
      if (a == j && b == i) return std::make_pair(&ov, false);
    }
    return std::nullopt;
  }

  bool overlaps(std::size_t i, std::size_t j) const { return i == j || find_overlap(i, j).has_value(); }

  /// F_{ij}: chart-i coordinates to chart-j coordinates.
  SmMorphism transition(std::size_t i, std::size_t j) const {
    if (i == j) return identity_morphism(domain(i));
    auto f = find_overlap(i, j);
    if (!f) throw ValidationError("charts " + chart(i).id + " and " + chart(j).id + " do not overlap");
    return f->second ? f->first->forward : f->first->inverse;
  }

  /// The overlap of i and j in chart-i coordinates, when it is a declared box.
  std::optional<Box> overlap_box(std::size_t i, std::size_t j) const {
    if (i == j) return chart(i).box;
    auto f = find_overlap(i, j);
    if (!f || !f->second) return std::nullopt;
    return f->first->box;
  }

  /// Whether a chart-i point lies in the overlap with chart j.
  bool in_overlap(std::size_t i, std::size_t j, const Point& p) const {
    if (i == j) return chart(i).box.contains(p);
    auto f = find_overlap(i, j);
    if (!f) return false;
    const Overlap& ov = *f->first;
    if (f->second) return ov.box.contains(p);
    const Point q = ov.inverse.underlying_at(p);
    return ov.box.contains(q) && ov.forward.underlying_at(q) == p;
  }

 private:
  static SmMorphism rehome(const SmMorphism& F, const SuperDomain& s, const SuperDomain& t) {
    if (!F.source.same_signature(s) || !F.target.same_signature(t)) {
      throw ValidationError("transition morphism has the wrong signature");
    }
    SmMorphism out{s, t, {}};
    for (const auto& f : F.coords) out.coords.push_back(f.on_domain(s));
    return out;
  }

  Cocycle c_;
  std::map<std::string, std::size_t> index_;
};

/// Identity, two-sided inverse, box and triple conditions.
inline CheckReport cocycle_validate(const AtlasView& atlas, unsigned grid = kDefaultGrid) {
  CheckReport r;
  const auto& c = atlas.cocycle();
  std::map<std::pair<std::size_t, std::size_t>, int> seen;
  for (const auto& ov : c.overlaps) {
    const std::size_t a = atlas.chart_index(ov.a);
    const std::size_t b = atlas.chart_index(ov.b);
    const std::string tag = "(" + ov.a + "," + ov.b + ")";
    if (++seen[{std::min(a, b), std::max(a, b)}] > 1) r.fail("overlap " + tag + ": declared more than once");
    if (a == b) {
      if (!same_coordinates(ov.forward, identity_morphism(ov.forward.source))) {
        r.fail("identity " + tag + ": self transition is not the identity");
      }
      continue;
    }
    if (!atlas.chart(a).box.contains(ov.box)) r.fail("box " + tag + ": overlap box leaves chart " + ov.a);
    const SmMorphism id_a = identity_morphism(ov.forward.source);
    const SmMorphism id_b = identity_morphism(ov.forward.target);
    if (!same_coordinates(compose_substitution(ov.inverse, ov.forward, BoxPolicy::signature_only), id_a)) {
      r.fail("inverse " + tag + ": inverse after forward is not the identity");
    }
    if (!same_coordinates(compose_substitution(ov.forward, ov.inverse, BoxPolicy::signature_only), id_b)) {
      r.fail("inverse " + tag + ": forward after inverse is not the identity");
    }
    for (const auto& p : ov.box.sample_grid(grid)) {
      const Point q = ov.forward.underlying_at(p);
      if (!atlas.chart(b).box.contains(q)) {
        r.fail("image " + tag + ": sample " + describe_point(p) + " leaves chart " + ov.b);
        break;
      }
    }
  }
  const std::size_t N = atlas.chart_count();
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      for (std::size_t k = j + 1; k < N; ++k) {
        if (!atlas.overlaps(i, j) || !atlas.overlaps(j, k) || !atlas.overlaps(i, k)) continue;
        auto bij = atlas.overlap_box(i, j);
        auto bik = atlas.overlap_box(i, k);
        if (bij && bik && !bij->intersect(*bik)) continue;
        const SmMorphism lhs =
            compose_substitution(atlas.transition(j, k), atlas.transition(i, j), BoxPolicy::signature_only);
        if (!same_coordinates(lhs, atlas.transition(i, k))) {
          r.fail("triple (" + atlas.chart(i).id + "," + atlas.chart(j).id + "," + atlas.chart(k).id +
                 "): transitions do not compose");
        }
      }
    }
  }
  return r;
}

/// A distribution element localized in one chart.
struct Localized {
  std::size_t chart = 0;
  CoalgebraElement element;
};

/// Per-chart superfunctions.
using GlobalSuperFunction = std::vector<SuperFunction>;

/// A supermanifold glued from a validated cocycle.
class GluedSupermanifold {
 public:
  const AtlasView& atlas() const { return atlas_; }

  /// Moves an element from its chart into chart j along the transition.
  Localized transport(const Localized& x, std::size_t j) const {
    for (const auto& p : x.element.anchors()) {
      if (!atlas_.in_overlap(x.chart, j, p)) {
        throw BoxViolation("anchor " + describe_point(p) + " is not in the overlap of " + atlas_.chart(x.chart).id +
                           " and " + atlas_.chart(j).id);
      }
    }
    if (x.chart == j) return x;
    return {j, apply_coalgebra(atlas_.transition(x.chart, j), x.element)};
  }

  /// Canonical representative: every anchor component moves to the lowest
  /// chart containing it. Keys are chart indices.
  std::map<std::size_t, CoalgebraElement> normal_form(const Localized& x) const {
    std::map<std::size_t, CoalgebraElement> out;
    for (const auto& [u, alpha] : dx_decompose(x.element)) {
      Localized part{x.chart, CoalgebraElement::anchored(u, alpha)};
      std::size_t best = x.chart;
      for (std::size_t j = 0; j < x.chart; ++j) {
        if (atlas_.in_overlap(x.chart, j, u)) {
          best = j;
          break;
        }
      }
      auto moved = transport(part, best);
      auto it = out.try_emplace(best, CoalgebraElement(atlas_.cocycle().space)).first;
      it->second += moved.element;
    }
    for (auto it = out.begin(); it != out.end();) {
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
  }

  bool equivalent(const Localized& x, const Localized& y) const { return normal_form(x) == normal_form(y); }

  /// ⟨x, f⟩ computed in the chart of x.
  Rational pair_global(const Localized& x, const GlobalSuperFunction& f) const {
    return pair(x.element, f.at(x.chart).on_domain(atlas_.domain(x.chart)));
  }

 private:
  friend GluedSupermanifold glue(Cocycle c, unsigned grid);
  explicit GluedSupermanifold(AtlasView a) : atlas_(std::move(a)) {}

  AtlasView atlas_;
};

/// Validates and wraps a cocycle; throws ValidationError listing failures.
inline GluedSupermanifold glue(Cocycle c, unsigned grid = kDefaultGrid) {
  AtlasView atlas(std::move(c));
  const CheckReport r = cocycle_validate(atlas, grid);
  if (!r.ok) {
    std::string msg = "cocycle " + atlas.cocycle().name + " is invalid";
    for (const auto& f : r.failures) msg += "; " + f;
    throw ValidationError(msg);
  }
  return GluedSupermanifold(std::move(atlas));
}

/// f_i equals the pullback of f_j along F_{ij} on every overlap.
inline CheckReport global_superfunction_check(const GluedSupermanifold& M, const GlobalSuperFunction& family) {
  CheckReport r;
  const AtlasView& atlas = M.atlas();
  if (family.size() != atlas.chart_count()) {
    r.fail("family has " + std::to_string(family.size()) + " members for " + std::to_string(atlas.chart_count()) +
           " charts");
    return r;
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!family[i].domain().same_signature(atlas.domain(i))) {
      r.fail("member for chart " + atlas.chart(i).id + " has the wrong signature");
      return r;
    }
  }
  for (const auto& ov : atlas.cocycle().overlaps) {
    const std::size_t a = atlas.chart_index(ov.a);
    const std::size_t b = atlas.chart_index(ov.b);
    const SuperFunction pulled = pullback(ov.forward, family[b], PartitionRoute::unordered, BoxPolicy::signature_only);
    if (!same_function(pulled, family[a])) {
      r.fail("overlap (" + ov.a + "," + ov.b + "): f_" + ov.a + " differs from the pullback of f_" + ov.b);
    }
  }
  return r;
}

/// A chart representative F_{i i'} of a morphism M -> N.
struct ChartRep {
  std::size_t source_chart = 0;
  std::size_t target_chart = 0;
  SmMorphism map;
};

class GlobalMorphism {
 public:
  GlobalMorphism(const GluedSupermanifold& M, const GluedSupermanifold& N, std::vector<ChartRep> reps)
      : M_(&M), N_(&N), reps_(std::move(reps)) {}

  const std::vector<ChartRep>& reps() const { return reps_; }

  const ChartRep& rep_for(std::size_t chart) const {
    for (const auto& r : reps_) {
      if (r.source_chart == chart) return r;
    }
    throw ValidationError("no representative on chart " + M_->atlas().chart(chart).id);
  }

  GlobalSuperFunction pullback_global(const GlobalSuperFunction& g) const {
    GlobalSuperFunction out;
    for (std::size_t i = 0; i < M_->atlas().chart_count(); ++i) {
      const ChartRep& r = rep_for(i);
      out.push_back(pullback(r.map, g.at(r.target_chart), PartitionRoute::unordered, BoxPolicy::signature_only));
    }
    return out;
  }

  Localized pushforward(const Localized& x) const {
    const ChartRep& r = rep_for(x.chart);
    return {r.target_chart, apply_coalgebra(r.map, x.element)};
  }

 private:
  const GluedSupermanifold* M_;
  const GluedSupermanifold* N_;
  std::vector<ChartRep> reps_;
};

struct GlobalMorphismResult {
  CheckReport report;
  std::optional<GlobalMorphism> morphism;
};

/// Checks F_{jj'}∘T^M_{ij} = T^N_{i'j'}∘F_{ii'} on every overlap of M and
/// returns a handle when all chart representatives are compatible.
inline GlobalMorphismResult global_morphism_from_charts(const GluedSupermanifold& M, const GluedSupermanifold& N,
                                                        std::vector<ChartRep> reps, unsigned grid = kDefaultGrid) {
  GlobalMorphismResult out;
  CheckReport& r = out.report;
  const AtlasView& am = M.atlas();
  const AtlasView& an = N.atlas();
  std::vector<int> seen(am.chart_count(), 0);
  for (auto& rep : reps) {
    if (rep.source_chart >= am.chart_count() || rep.target_chart >= an.chart_count()) {
      r.fail("representative refers to an unknown chart");
      return out;
    }
    ++seen[rep.source_chart];
    const SuperDomain s = am.domain(rep.source_chart);
    const SuperDomain t = an.domain(rep.target_chart);
    if (!rep.map.source.same_signature(s) || !rep.map.target.same_signature(t)) {
      r.fail("representative on chart " + am.chart(rep.source_chart).id + " has the wrong signature");
      return out;
    }
    SmMorphism F{s, t, {}};
    for (const auto& f : rep.map.coords) F.coords.push_back(f.on_domain(s));
    try {
      check_structure(F);
      check_image(F, grid);
    } catch (const Error& e) {
      r.fail("representative on chart " + am.chart(rep.source_chart).id + ": " + e.what());
    }
    rep.map = std::move(F);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != 1) r.fail("chart " + am.chart(i).id + " needs exactly one representative");
  }
  if (!r.ok) return out;
  auto rep_of = [&](std::size_t i) -> const ChartRep& {
    for (const auto& rep : reps) {
      if (rep.source_chart == i) return rep;
    }
    throw ValidationError("missing representative");
  };
  for (const auto& ov : am.cocycle().overlaps) {
    const std::size_t i = am.chart_index(ov.a);
    const std::size_t j = am.chart_index(ov.b);
    if (i == j) continue;
    const ChartRep& fi = rep_of(i);
    const ChartRep& fj = rep_of(j);
    const std::string tag = "(" + ov.a + "," + ov.b + ")";
    if (!an.overlaps(fi.target_chart, fj.target_chart)) {
      r.fail("overlap " + tag + ": target charts " + an.chart(fi.target_chart).id + " and " +
             an.chart(fj.target_chart).id + " do not overlap");
      continue;
    }
    const SmMorphism lhs = compose_substitution(fj.map, ov.forward, BoxPolicy::signature_only);
    const SmMorphism rhs =
        compose_substitution(an.transition(fi.target_chart, fj.target_chart), fi.map, BoxPolicy::signature_only);
    if (!same_coordinates(lhs, rhs)) r.fail("overlap " + tag + ": representatives are not compatible");
  }
  if (r.ok) out.morphism.emplace(M, N, std::move(reps));
  return out;
}

}  // namespace supergeo
