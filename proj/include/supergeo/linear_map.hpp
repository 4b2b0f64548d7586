#pragma once

#include <array>
#include <functional>
#include <map>
#include <utility>

#include "supergeo/algebra.hpp"

namespace supergeo {

/// A linear map S(X) -> S(Y) stored on the monomial basis of S(X) up to a
/// filtration bound. Monomials without an entry map to zero; monomials above
/// the bound are outside the table's domain.
struct LinearMap {
  GradedSpaceSig source;
  GradedSpaceSig target;
  unsigned bound = 0;
  Parity parity = Parity::even;
  std::map<GradedMonomial, AlgebraElement> table;

  LinearMap(GradedSpaceSig src, GradedSpaceSig tgt, unsigned filtration_bound, Parity p = Parity::even)
      : source(std::move(src)), target(std::move(tgt)), bound(filtration_bound), parity(p) {}

  void set(const GradedMonomial& m, AlgebraElement value) {
    require_same_space(target, value.space(), "linear map value");
    if (m.degree() > bound) throw BoundError("table entry above the filtration bound");
    if (value.is_zero()) {
      table.erase(m);
    } else {
      table.insert_or_assign(m, std::move(value));
    }
  }

  AlgebraElement at(const GradedMonomial& m) const {
    if (m.degree() > bound) {
      throw BoundError("evaluation at degree " + std::to_string(m.degree()) + " beyond bound " +
                       std::to_string(bound));
    }
    auto it = table.find(m);
    return it == table.end() ? AlgebraElement(target) : it->second;
  }

  AlgebraElement operator()(const AlgebraElement& a) const {
    require_same_space(source, a.space(), "linear map argument");
    AlgebraElement out(target);
    for (const auto& [m, c] : a.terms()) out += c * at(m);
    return out;
  }

  friend bool operator==(const LinearMap&, const LinearMap&) = default;
};

/// u∘ε: 1 -> 1, every other monomial -> 0.
inline LinearMap convolution_unit(const GradedSpaceSig& source, const GradedSpaceSig& target, unsigned bound) {
  LinearMap u(source, target, bound);
  u.set(GradedMonomial(source.even_dim), AlgebraElement::one(target));
  return u;
}

using Multiplication = std::function<AlgebraElement(const AlgebraElement&, const AlgebraElement&)>;

/// f∗g = M∘(f⊗g)∘Δ with (f⊗g)(a⊗b) = (-1)^{|g||a|} f(a)⊗g(b).
inline LinearMap convolve(const LinearMap& f, const LinearMap& g, const Multiplication& mul = s_mul) {
  require_same_space(f.source, g.source, "convolution source");
  require_same_space(f.target, g.target, "convolution target");
  LinearMap out(f.source, f.target, std::min(f.bound, g.bound), f.parity + g.parity);
  for (const auto& m : monomials_up_to(f.source, out.bound)) {
    const auto delta = comultiply_monomial(f.source, m);
    AlgebraElement value(f.target);
    for (const auto& [keys, c] : delta.terms) {
      const AlgebraElement fa = f.at(keys[0]);
      if (fa.is_zero()) continue;
      const AlgebraElement gb = g.at(keys[1]);
      if (gb.is_zero()) continue;
      value += (c * koszul(g.parity, keys[0].parity())) * mul(fa, gb);
    }
    out.set(m, std::move(value));
  }
  return out;
}

/// Identity map on S(X) up to a bound.
inline LinearMap identity_map(const GradedSpaceSig& space, unsigned bound) {
  LinearMap id(space, space, bound);
  for (const auto& m : monomials_up_to(space, bound)) id.set(m, AlgebraElement::monomial(space, m));
  return id;
}

/// Antipode as a table up to a bound.
inline LinearMap antipode_map(const GradedSpaceSig& space, unsigned bound) {
  LinearMap s(space, space, bound);
  for (const auto& m : monomials_up_to(space, bound)) s.set(m, antipode(AlgebraElement::monomial(space, m)));
  return s;
}

/// phi∘π^+: the same table with the unit entry removed.
inline LinearMap kill_unit(LinearMap phi) {
  phi.table.erase(GradedMonomial(phi.source.even_dim));
  return phi;
}

/// The k-fold convolution power of phi∘π^+; the 0-th power is u∘ε.
inline LinearMap convolution_power(const LinearMap& phi, unsigned k) {
  LinearMap out = convolution_unit(phi.source, phi.target, phi.bound);
  const LinearMap plus = kill_unit(phi);
  for (unsigned i = 0; i < k; ++i) out = convolve(out, plus);
  return out;
}

/// Checks that an infinitesimal part C^+ -> Y is admissible for star_exp:
/// values are degree-one elements and the map is even.
inline void validate_infinitesimal(const LinearMap& phi_plus) {
  if (is_odd(phi_plus.parity)) throw ParityError("infinitesimal part must be an even map");
  for (const auto& [m, v] : phi_plus.table) {
    if (m.is_unit()) throw ArgumentError("infinitesimal part is defined on C^+ only");
    for (const auto& [vm, c] : v.terms()) {
      if (vm.degree() != 1) throw ArgumentError("infinitesimal part must take values in Y = S^1(Y)");
      if (vm.parity() != m.parity()) throw ParityError("infinitesimal part is not even");
    }
  }
}

/// The universal coalgebra-morphism extension Φ = Σ_k (1/k!) Φ^{+k} of an even
/// map Φ^+ : S(X)^+ -> Y. The sum terminates because Φ^{+k} vanishes on
/// S^{(j)}(X) for k > j.
inline LinearMap star_exp(const LinearMap& phi_plus) {
  validate_infinitesimal(phi_plus);
  LinearMap result = convolution_unit(phi_plus.source, phi_plus.target, phi_plus.bound);
  const LinearMap plus = kill_unit(phi_plus);
  LinearMap power = result;
  for (unsigned k = 1; k <= phi_plus.bound; ++k) {
    power = convolve(power, plus);
    const Rational weight = 1 / factorial(k);
    for (const auto& [m, v] : power.table) {
      AlgebraElement sum = result.at(m);
      sum += weight * v;
      result.set(m, std::move(sum));
    }
  }
  return result;
}

/// Δ∘Φ as a tensor-valued table evaluated on one monomial.
inline Tensor<GradedMonomial> comultiply_after(const LinearMap& phi, const GradedMonomial& m) {
  return comultiply(phi.at(m));
}

/// (Φ⊗Ψ)∘Δ on one monomial.
inline Tensor<GradedMonomial> tensor_after_comultiply(const LinearMap& phi, const LinearMap& psi,
                                                      const GradedMonomial& m) {
  Tensor<GradedMonomial> out(2);
  for (const auto& [keys, c] : comultiply_monomial(phi.source, m).terms) {
    const AlgebraElement a = phi.at(keys[0]);
    if (a.is_zero()) continue;
    const AlgebraElement b = psi.at(keys[1]);
    if (b.is_zero()) continue;
    const std::array<AlgebraElement, 2> parts{a, b};
    out += (c * koszul(psi.parity, keys[0].parity())) * tensor_of(parts);
  }
  return out;
}

}  // namespace supergeo
