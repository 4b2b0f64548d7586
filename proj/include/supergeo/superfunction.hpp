#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "supergeo/algebra.hpp"
#include "supergeo/box.hpp"
#include "supergeo/polynomial.hpp"

namespace supergeo {

/// S^{m,n}_U with U an open rational box.
struct SuperDomain {
  GradedSpaceSig space;
  Box box;

  SuperDomain() = default;
  SuperDomain(GradedSpaceSig s, Box b) : space(std::move(s)), box(std::move(b)) {
    if (box.dim() != space.even_dim) throw DomainMismatch("box dimension differs from the even dimension");
    if (space.odd_dim > kMaxOddDim) throw ArgumentError("odd dimension too large");
  }

  static SuperDomain whole(std::size_t m, std::size_t n, std::string id = "X") {
    return {GradedSpaceSig{m, n, std::move(id)}, Box::whole(m)};
  }

  std::size_t m() const { return space.even_dim; }
  std::size_t n() const { return space.odd_dim; }

  /// Same (m|n) signature, boxes aside.
  bool same_signature(const SuperDomain& o) const { return m() == o.m() && n() == o.n(); }

  friend bool operator==(const SuperDomain&, const SuperDomain&) = default;
};

/// Order on odd multi-indices: by size, then lexicographic on the increasing index list.
struct OddSetLess {
  bool operator()(std::uint64_t a, std::uint64_t b) const {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    while (a != 0 && b != 0) {
      const int ia = std::countr_zero(a);
      const int ib = std::countr_zero(b);
      if (ia != ib) return ia < ib;
      a &= a - 1;
      b &= b - 1;
    }
    return false;
  }
};

/// Sign of sorting an index sequence; 0 if an index repeats.
inline int sort_sign(std::span<const std::size_t> idx, std::uint64_t* mask_out = nullptr) {
  std::uint64_t mask = 0;
  unsigned inversions = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= kMaxOddDim || (mask & odd_bit(idx[i]))) return 0;
    mask |= odd_bit(idx[i]);
    for (std::size_t j = 0; j < i; ++j) inversions += idx[j] > idx[i] ? 1U : 0U;
  }
  if (mask_out) *mask_out = mask;
  return inversions % 2 ? -1 : 1;
}

/// f = Σ_{α1<…<αk} f_{α1…αk}(u) θ^{α1}…θ^{αk} with polynomial coefficients.
class SuperFunction {
 public:
  using CoeffMap = std::map<std::uint64_t, Polynomial, OddSetLess>;

  SuperFunction() = default;
  explicit SuperFunction(SuperDomain d) : domain_(std::move(d)) {}

  static SuperFunction constant(const SuperDomain& d, const Rational& c) {
    SuperFunction f(d);
    f.add_term(0, Polynomial::constant(d.m(), c));
    return f;
  }

  static SuperFunction from_polynomial(const SuperDomain& d, const Polynomial& p) {
    SuperFunction f(d);
    f.add_term(0, p);
    return f;
  }

  static SuperFunction even_coordinate(const SuperDomain& d, std::size_t mu) {
    return from_polynomial(d, Polynomial::variable(d.m(), mu));
  }

  static SuperFunction odd_coordinate(const SuperDomain& d, std::size_t alpha) {
    if (alpha >= d.n()) throw ArgumentError("odd coordinate index out of range");
    SuperFunction f(d);
    f.add_term(odd_bit(alpha), Polynomial::constant(d.m(), Rational(1)));
    return f;
  }

  /// p · θ^{i1}…θ^{ik} for indices in any order.
  static SuperFunction term(const SuperDomain& d, const Polynomial& p, std::span<const std::size_t> odd_idx) {
    SuperFunction f(d);
    std::uint64_t mask = 0;
    const int s = sort_sign(odd_idx, &mask);
    if (s != 0) f.add_term(mask, s > 0 ? p : -p);
    return f;
  }

  const SuperDomain& domain() const { return domain_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  void add_term(std::uint64_t mask, const Polynomial& p) {
    if (p.variable_count() != domain_.m()) throw DomainMismatch("coefficient has wrong variable count");
    if (domain_.n() < 64 && (mask >> domain_.n()) != 0) throw ArgumentError("odd index out of range");
    if (p.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(mask, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  Polynomial coefficient(std::uint64_t mask) const {
    auto it = coeffs_.find(mask);
    return it == coeffs_.end() ? Polynomial(domain_.m()) : it->second;
  }

  /// Antisymmetric coefficient access f_{i1…ik} for indices in any order.
  Polynomial coefficient(std::span<const std::size_t> odd_idx) const {
    std::uint64_t mask = 0;
    const int s = sort_sign(odd_idx, &mask);
    if (s == 0) return Polynomial(domain_.m());
    return s > 0 ? coefficient(mask) : -coefficient(mask);
  }

  Polynomial underlying() const { return coefficient(std::uint64_t{0}); }

  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [mask, c] : coeffs_) {
      const Parity q = parity_of(static_cast<unsigned>(std::popcount(mask)));
      if (p && *p != q) return std::nullopt;
      p = q;
    }
    return p ? p : std::optional<Parity>(Parity::even);
  }

  SuperFunction parity_part(Parity p) const {
    SuperFunction out(domain_);
    for (const auto& [mask, c] : coeffs_) {
      if (parity_of(static_cast<unsigned>(std::popcount(mask))) == p) out.coeffs_.emplace(mask, c);
    }
    return out;
  }

  /// Same coefficients on another domain of the same signature.
  SuperFunction on_domain(const SuperDomain& d) const {
    if (!d.same_signature(domain_)) throw DomainMismatch("moving a superfunction between signatures");
    SuperFunction out(d);
    out.coeffs_ = coeffs_;
    return out;
  }

  SuperFunction& operator+=(const SuperFunction& o) {
    check(o);
    for (const auto& [mask, c] : o.coeffs_) add_term(mask, c);
    return *this;
  }

  SuperFunction& operator-=(const SuperFunction& o) {
    check(o);
    for (const auto& [mask, c] : o.coeffs_) add_term(mask, -c);
    return *this;
  }

  SuperFunction& operator*=(const Rational& s) {
    if (supergeo::is_zero(s)) coeffs_.clear();
    for (auto& [mask, c] : coeffs_) c *= s;
    return *this;
  }

  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
  friend SuperFunction operator-(SuperFunction a) { return a *= Rational(-1); }
  friend SuperFunction operator*(SuperFunction a, const Rational& s) { return a *= s; }
  friend SuperFunction operator*(const Rational& s, SuperFunction a) { return a *= s; }

  friend bool operator==(const SuperFunction&, const SuperFunction&) = default;

  void check(const SuperFunction& o) const {
    if (!(o.domain_ == domain_)) throw DomainMismatch("superfunctions on different domains");
  }

 private:
  SuperDomain domain_;
  CoeffMap coeffs_;
};

/// Graded product; odd parts wedge with the sort sign.
inline SuperFunction sf_mul(const SuperFunction& f, const SuperFunction& g) {
  f.check(g);
  const std::size_t m = f.domain().m();
  SuperFunction out(f.domain());
  for (const auto& [ma, pa] : f.coeffs()) {
    for (const auto& [mb, pb] : g.coeffs()) {
      auto [s, mono] = multiply_monomials(GradedMonomial(std::vector<unsigned>(m), ma),
                                          GradedMonomial(std::vector<unsigned>(m), mb));
      if (s == 0) continue;
      Polynomial p = pa * pb;
      if (s < 0) p = -p;
      out.add_term(mono.odd, p);
    }
  }
  return out;
}

inline SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) { return sf_mul(a, b); }

inline bool has_parity(const SuperFunction& f, Parity p) {
  auto q = f.parity();
  return f.is_zero() || (q && *q == p);
}

/// ∂/∂u^μ or the left derivative ∂/∂θ^α, selected by a letter.
inline SuperFunction sf_partial(const SuperFunction& f, Letter l) {
  SuperFunction out(f.domain());
  if (!is_odd(l.parity)) {
    if (l.index >= f.domain().m()) throw ArgumentError("even partial index out of range");
    for (const auto& [mask, p] : f.coeffs()) out.add_term(mask, p.partial(l.index));
    return out;
  }
  if (l.index >= f.domain().n()) throw ArgumentError("odd partial index out of range");
  const std::uint64_t bit = odd_bit(l.index);
  for (const auto& [mask, p] : f.coeffs()) {
    if (!(mask & bit)) continue;
    const int below = std::popcount(mask & (bit - 1));
    out.add_term(mask & ~bit, below % 2 ? -p : p);
  }
  return out;
}

/// ∂_I with I over 0..m+n-1: even coordinates first, then odd.
inline SuperFunction sf_partial(const SuperFunction& f, std::size_t I) {
  const std::size_t m = f.domain().m();
  if (I >= m + f.domain().n()) throw ArgumentError("partial derivative index out of range");
  return sf_partial(f, I < m ? even_letter(I) : odd_letter(I - m));
}

/// D_a g = Σ_I a^I ∂_I g for one homogeneous direction.
inline SuperFunction sf_directional_one(const SuperFunction& g, const Vector& a) {
  a.validate();
  const auto& d = g.domain();
  if (a.space.even_dim != d.m() || a.space.odd_dim != d.n()) throw DomainMismatch("direction from another space");
  SuperFunction out(d);
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (is_zero(a.coords[i])) continue;
    out += a.coords[i] * sf_partial(g, Letter{a.parity, i});
  }
  return out;
}

/// D^k f(·; a_1..a_k) = ∂_{a_1}(…∂_{a_k} f).
inline SuperFunction sf_directional(const SuperFunction& f, std::span<const Vector> dirs) {
  SuperFunction g = f;
  for (std::size_t i = dirs.size(); i-- > 0;) g = sf_directional_one(g, dirs[i]);
  return g;
}

/// D^k along basis letters, applied right to left.
inline SuperFunction sf_derivative_word(const SuperFunction& f, std::span<const Letter> word) {
  SuperFunction g = f;
  for (std::size_t i = word.size(); i-- > 0;) {
    g = sf_partial(g, word[i]);
    if (g.is_zero()) break;
  }
  return g;
}

/// Symbolic D̃^k f(u; letters) as a polynomial in u.
inline Polynomial underlying_derivative(const SuperFunction& f, std::span<const Letter> word) {
  return sf_derivative_word(f, word).underlying();
}

inline void require_in_box(const SuperDomain& d, const Point& u) {
  if (!d.box.contains(u)) throw BoxViolation("point lies outside the domain box");
}

/// D̃^k f(u; a_1..a_k).
inline Rational sf_differentiation(const SuperFunction& f, const Point& u, std::span<const Vector> dirs) {
  require_in_box(f.domain(), u);
  return sf_directional(f, dirs).underlying().evaluate(u);
}

/// Reads a polynomial superfunction as an element of S(X): u_i ↦ ū_i, θ_α ↦ θ̄_α.
inline AlgebraElement to_algebra_element(const SuperFunction& f) {
  const auto& d = f.domain();
  AlgebraElement a(d.space);
  for (const auto& [mask, p] : f.coeffs()) {
    for (const auto& [e, c] : p.terms()) a.add_term(GradedMonomial(e, mask), c);
  }
  return a;
}

}  // namespace supergeo
