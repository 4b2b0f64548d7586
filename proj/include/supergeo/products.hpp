#pragma once

#include <utility>

#include "supergeo/morphism.hpp"

namespace supergeo {

/// U×V as a superdomain of signature (m+m' | n+n'). Joint even coordinates
/// are the left ones then the right ones, and likewise for odd coordinates.
struct ProductDomain {
  SuperDomain left;
  SuperDomain right;
  SuperDomain joint;

  ProductDomain(SuperDomain l, SuperDomain r) : left(std::move(l)), right(std::move(r)) {
    std::vector<Interval> axes = left.box.axes();
    axes.insert(axes.end(), right.box.axes().begin(), right.box.axes().end());
    joint = SuperDomain(GradedSpaceSig{left.m() + right.m(), left.n() + right.n(), left.space.id + "x" + right.space.id},
                        Box(std::move(axes)));
  }

  std::size_t left_even(std::size_t i) const { return i; }
  std::size_t right_even(std::size_t i) const { return left.m() + i; }
  std::size_t left_odd(std::size_t a) const { return a; }
  std::size_t right_odd(std::size_t a) const { return left.n() + a; }
};

namespace detail {

inline GradedMonomial shift_monomial(const GradedMonomial& mono, std::size_t joint_even, std::size_t even_offset,
                                     std::size_t odd_offset) {
  GradedMonomial out(joint_even);
  for (std::size_t i = 0; i < mono.even.size(); ++i) out.even[even_offset + i] = mono.even[i];
  out.odd = mono.odd << odd_offset;
  return out;
}

}  // namespace detail

/// (u·α)⊗(v·β) ↦ (u,v)·(αβ) with α, β moved onto the joint generators.
inline CoalgebraElement tensor_elements(const ProductDomain& p, const CoalgebraElement& a, const CoalgebraElement& b) {
  if (a.space().even_dim != p.left.m() || a.space().odd_dim != p.left.n()) throw DomainMismatch("left factor space");
  if (b.space().even_dim != p.right.m() || b.space().odd_dim != p.right.n()) throw DomainMismatch("right factor space");
  const std::size_t jm = p.joint.m();
  CoalgebraElement out(p.joint.space);
  for (const auto& [x, cx] : a.terms()) {
    const GradedMonomial lx = detail::shift_monomial(x.mono, jm, 0, 0);
    for (const auto& [y, cy] : b.terms()) {
      const GradedMonomial ry = detail::shift_monomial(y.mono, jm, p.left.m(), p.left.n());
      auto [s, mono] = multiply_monomials(lx, ry);
      if (s == 0) continue;
      Point uv = x.point;
      uv.insert(uv.end(), y.point.begin(), y.point.end());
      out.add_term({std::move(uv), std::move(mono)}, cx * cy * s);
    }
  }
  return out;
}

inline SmMorphism projection_left(const ProductDomain& p) {
  std::vector<SuperFunction> coords;
  for (std::size_t i = 0; i < p.left.m(); ++i) coords.push_back(SuperFunction::even_coordinate(p.joint, p.left_even(i)));
  for (std::size_t a = 0; a < p.left.n(); ++a) coords.push_back(SuperFunction::odd_coordinate(p.joint, p.left_odd(a)));
  return SmMorphism{p.joint, p.left, std::move(coords)};
}

inline SmMorphism projection_right(const ProductDomain& p) {
  std::vector<SuperFunction> coords;
  for (std::size_t i = 0; i < p.right.m(); ++i) {
    coords.push_back(SuperFunction::even_coordinate(p.joint, p.right_even(i)));
  }
  for (std::size_t a = 0; a < p.right.n(); ++a) {
    coords.push_back(SuperFunction::odd_coordinate(p.joint, p.right_odd(a)));
  }
  return SmMorphism{p.joint, p.right, std::move(coords)};
}

inline std::pair<SmMorphism, SmMorphism> projections(const ProductDomain& p) {
  return {projection_left(p), projection_right(p)};
}

/// (F_left, F_right): W -> U×V, coordinates concatenated block by block.
inline SmMorphism pair_into_product(const ProductDomain& p, const SmMorphism& fl, const SmMorphism& fr) {
  if (!(fl.source == fr.source)) throw DomainMismatch("paired morphisms need a common source");
  if (!fl.target.same_signature(p.left) || !fr.target.same_signature(p.right)) {
    throw DomainMismatch("paired morphisms do not land in the product factors");
  }
  SmMorphism out{fl.source, p.joint, {}};
  for (std::size_t i = 0; i < fl.target_even(); ++i) out.coords.push_back(fl.coords[i]);
  for (std::size_t i = 0; i < fr.target_even(); ++i) out.coords.push_back(fr.coords[i]);
  for (std::size_t a = 0; a < fl.target_odd(); ++a) out.coords.push_back(fl.coords[fl.target_even() + a]);
  for (std::size_t a = 0; a < fr.target_odd(); ++a) out.coords.push_back(fr.coords[fr.target_even() + a]);
  check_structure(out);
  return out;
}

/// Δ: U -> U×U, (u, θ) ↦ (u, u, θ, θ).
inline SmMorphism diagonal(const SuperDomain& d) {
  const ProductDomain p(d, d);
  const SmMorphism id = identity_morphism(d);
  return pair_into_product(p, id, id);
}

}  // namespace supergeo
