#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supergeo/errors.hpp"
#include "supergeo/rational.hpp"

namespace supergeo {

/// Open interval with rational or infinite ends (nullopt = infinite).
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  friend bool operator==(const Interval&, const Interval&) = default;

  static Interval whole() { return {}; }
  static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b)}; }

  bool empty() const { return lo && hi && !(*lo < *hi); }

  bool contains(const Rational& x) const { return (!lo || *lo < x) && (!hi || x < *hi); }

  bool closure_contains(const Rational& x) const { return (!lo || *lo <= x) && (!hi || x <= *hi); }

  bool contains(const Interval& o) const {
    const bool lo_ok = !lo || (o.lo && *lo <= *o.lo);
    const bool hi_ok = !hi || (o.hi && *o.hi <= *hi);
    return lo_ok && hi_ok;
  }

  Interval intersect(const Interval& o) const {
    Interval out;
    if (lo && o.lo) {
      out.lo = std::max(*lo, *o.lo);
    } else {
      out.lo = lo ? lo : o.lo;
    }
    if (hi && o.hi) {
      out.hi = std::min(*hi, *o.hi);
    } else {
      out.hi = hi ? hi : o.hi;
    }
    return out;
  }

  /// `density` deterministic interior sample points.
  std::vector<Rational> samples(unsigned density) const {
    std::vector<Rational> out;
    for (unsigned j = 1; j <= density; ++j) {
      if (lo && hi) {
        out.push_back(*lo + (*hi - *lo) * Rational(j, density + 1));
      } else if (lo) {
        out.push_back(*lo + j);
      } else if (hi) {
        out.push_back(*hi - j);
      } else {
        Rational c(static_cast<long>(2 * j) - static_cast<long>(density) - 1, 2);
        c.canonicalize();
        out.push_back(c);
      }
    }
    return out;
  }
};

/// Axis-aligned open box in R^m; the model for open subsets of the even space.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> axes) : axes_(std::move(axes)) {
    for (const auto& a : axes_) {
      if (a.empty()) throw ArgumentError("box has an empty side");
    }
  }

  static Box whole(std::size_t dim) { return Box(std::vector<Interval>(dim)); }

  std::size_t dim() const { return axes_.size(); }
  const std::vector<Interval>& axes() const { return axes_; }
  const Interval& axis(std::size_t i) const { return axes_.at(i); }

  friend bool operator==(const Box&, const Box&) = default;

  bool contains(const std::vector<Rational>& p) const {
    if (p.size() != axes_.size()) throw DomainMismatch("point dimension differs from box dimension");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!axes_[i].contains(p[i])) return false;
    }
    return true;
  }

  bool closure_contains(const std::vector<Rational>& p) const {
    if (p.size() != axes_.size()) throw DomainMismatch("point dimension differs from box dimension");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!axes_[i].closure_contains(p[i])) return false;
    }
    return true;
  }

  bool contains(const Box& o) const {
    if (o.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!axes_[i].contains(o.axes_[i])) return false;
    }
    return true;
  }

  /// Intersection, or nullopt when it is empty.
  std::optional<Box> intersect(const Box& o) const {
    if (o.dim() != dim()) throw DomainMismatch("intersecting boxes of different dimension");
    std::vector<Interval> out;
    for (std::size_t i = 0; i < dim(); ++i) {
      Interval s = axes_[i].intersect(o.axes_[i]);
      if (s.empty()) return std::nullopt;
      out.push_back(std::move(s));
    }
    return Box(std::move(out));
  }

  /// Cartesian product of per-axis interior samples.
  std::vector<std::vector<Rational>> sample_grid(unsigned density) const {
    std::vector<std::vector<Rational>> per_axis;
    for (const auto& a : axes_) per_axis.push_back(a.samples(density));
    return cartesian(per_axis);
  }

  /// Corners built from finite endpoints; an axis without finite ends
  /// contributes its interior samples.
  std::vector<std::vector<Rational>> vertices(unsigned density) const {
    std::vector<std::vector<Rational>> per_axis;
    for (const auto& a : axes_) {
      std::vector<Rational> ends;
      if (a.lo) ends.push_back(*a.lo);
      if (a.hi) ends.push_back(*a.hi);
      if (ends.empty()) ends = a.samples(density);
      per_axis.push_back(std::move(ends));
    }
    return cartesian(per_axis);
  }

 private:
  static std::vector<std::vector<Rational>> cartesian(const std::vector<std::vector<Rational>>& per_axis) {
    std::vector<std::vector<Rational>> out{{}};
    for (const auto& choices : per_axis) {
      std::vector<std::vector<Rational>> next;
      for (const auto& prefix : out) {
        for (const auto& c : choices) {
          auto p = prefix;
          p.push_back(c);
          next.push_back(std::move(p));
        }
      }
      out = std::move(next);
    }
    return out;
  }

  std::vector<Interval> axes_;
};

inline std::string to_string(const Interval& i) {
  return "(" + (i.lo ? to_string(*i.lo) : std::string("-inf")) + "," + (i.hi ? to_string(*i.hi) : std::string("inf")) +
         ")";
}

inline std::string to_string(const Box& b) {
  std::string out;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    if (i) out += " ";
    out += to_string(b.axis(i));
  }
  return out;
}

}  // namespace supergeo
