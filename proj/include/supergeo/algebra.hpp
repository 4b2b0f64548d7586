#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "supergeo/errors.hpp"
#include "supergeo/monomial.hpp"
#include "supergeo/partitions.hpp"
#include "supergeo/rational.hpp"

namespace supergeo {

inline Parity key_parity(const GradedMonomial& m) { return m.parity(); }

/// Adds c to terms[key], dropping the entry when it cancels.
template <class Key>
void accumulate(std::map<Key, Rational>& terms, const Key& key, const Rational& c) {
  if (is_zero(c)) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) terms.erase(it);
  }
}

/// An element of the graded tensor power V^{⊗r}, stored on the tensor basis
/// of a basis `Key` of V.
template <class Key>
struct Tensor {
  std::size_t factors = 2;
  std::map<std::vector<Key>, Rational> terms;

  Tensor() = default;
  explicit Tensor(std::size_t r) : factors(r) {}

  void add(const std::vector<Key>& key, const Rational& c) {
    if (key.size() != factors) throw StructuralError("tensor key has the wrong number of factors");
    accumulate(terms, key, c);
  }

  Tensor& operator+=(const Tensor& o) {
    if (o.factors != factors) throw DomainMismatch("tensors with different numbers of factors");
    for (const auto& [k, c] : o.terms) accumulate(terms, k, c);
    return *this;
  }

  Tensor& operator-=(const Tensor& o) {
    if (o.factors != factors) throw DomainMismatch("tensors with different numbers of factors");
    for (const auto& [k, c] : o.terms) accumulate(terms, k, Rational(-c));
    return *this;
  }

  Tensor& operator*=(const Rational& s) {
    if (supergeo::is_zero(s)) terms.clear();
    for (auto& [k, c] : terms) c *= s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Rational& s, Tensor a) { return a *= s; }
  friend bool operator==(const Tensor&, const Tensor&) = default;

  bool is_zero() const { return terms.empty(); }
};

/// Koszul sign for moving an object of parity p past the factors keys[0..j).
template <class Key>
int koszul_prefix(Parity p, const std::vector<Key>& keys, std::size_t j) {
  if (!is_odd(p)) return 1;
  unsigned odd = 0;
  for (std::size_t i = 0; i < j; ++i) odd += is_odd(key_parity(keys[i])) ? 1U : 0U;
  return (odd & 1U) ? -1 : 1;
}

/// (id ⊗ ... ⊗ f ⊗ ... ⊗ id) applied at factor j, where f maps a basis key to a
/// tensor of `f_factors` factors; the result has factors-1+f_factors factors.
/// f has parity p, which produces the Koszul sign of the graded tensor product.
template <class Key, class F>
Tensor<Key> apply_on_factor(const Tensor<Key>& t, std::size_t j, std::size_t f_factors, Parity p, F&& f) {
  if (j >= t.factors) throw ArgumentError("tensor factor index out of range");
  Tensor<Key> out(t.factors - 1 + f_factors);
  for (const auto& [keys, c] : t.terms) {
    const int s = koszul_prefix(p, keys, j);
    const Tensor<Key> image = f(keys[j]);
    for (const auto& [ikeys, ic] : image.terms) {
      std::vector<Key> nk;
      nk.reserve(out.factors);
      nk.insert(nk.end(), keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(j));
      nk.insert(nk.end(), ikeys.begin(), ikeys.end());
      nk.insert(nk.end(), keys.begin() + static_cast<std::ptrdiff_t>(j) + 1, keys.end());
      out.add(nk, c * ic * s);
    }
  }
  return out;
}

/// Graded twist T(a ⊗ b) = (-1)^{|a||b|} b ⊗ a on a two-factor tensor.
template <class Key>
Tensor<Key> twist(const Tensor<Key>& t) {
  if (t.factors != 2) throw ArgumentError("twist needs exactly two factors");
  Tensor<Key> out(2);
  for (const auto& [k, c] : t.terms) {
    out.add({k[1], k[0]}, c * koszul(key_parity(k[0]), key_parity(k[1])));
  }
  return out;
}

/// An element of the symmetric algebra S(X), a finite rational combination of
/// canonical graded monomials.
class AlgebraElement {
 public:
  using TermMap = std::map<GradedMonomial, Rational>;

  AlgebraElement() = default;
  explicit AlgebraElement(GradedSpaceSig space) : space_(std::move(space)) {}

  static AlgebraElement scalar(const GradedSpaceSig& space, const Rational& c) {
    AlgebraElement a(space);
    a.add_term(GradedMonomial(space.even_dim), c);
    return a;
  }

  static AlgebraElement one(const GradedSpaceSig& space) { return scalar(space, Rational(1)); }

  static AlgebraElement monomial(const GradedSpaceSig& space, const GradedMonomial& m,
                                 const Rational& c = Rational(1)) {
    AlgebraElement a(space);
    a.add_term(m, c);
    return a;
  }

  static AlgebraElement generator(const GradedSpaceSig& space, Letter l) {
    auto [s, m] = canonicalize_letters(space.even_dim, space.odd_dim, std::span<const Letter>(&l, 1));
    return monomial(space, m, Rational(s));
  }

  /// Canonicalized product of a letter word with coefficient c.
  static AlgebraElement word(const GradedSpaceSig& space, std::span<const Letter> w, const Rational& c = Rational(1)) {
    auto [s, m] = canonicalize_letters(space.even_dim, space.odd_dim, w);
    AlgebraElement a(space);
    if (s != 0) a.add_term(m, c * s);
    return a;
  }

  const GradedSpaceSig& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const GradedMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const GradedMonomial& m, const Rational& c) {
    if (m.even.size() != space_.even_dim || (space_.odd_dim < 64 && (m.odd >> space_.odd_dim) != 0)) {
      throw DomainMismatch("monomial does not belong to " + describe(space_));
    }
    accumulate(terms_, m, c);
  }

  /// Parity if homogeneous (nullopt for mixed; zero counts as even).
  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
      if (p && *p != m.parity()) return std::nullopt;
      p = m.parity();
    }
    return p.value_or(Parity::even);
  }

  /// Z+-homogeneous component of the given degree.
  AlgebraElement component(unsigned degree) const {
    AlgebraElement out(space_);
    for (const auto& [m, c] : terms_) {
      if (m.degree() == degree) out.terms_.emplace(m, c);
    }
    return out;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    require_same_space(space_, o.space_, "algebra sum");
    for (const auto& [m, c] : o.terms_) accumulate(terms_, m, c);
    return *this;
  }

  AlgebraElement& operator-=(const AlgebraElement& o) {
    require_same_space(space_, o.space_, "algebra difference");
    for (const auto& [m, c] : o.terms_) accumulate(terms_, m, Rational(-c));
    return *this;
  }

  AlgebraElement& operator*=(const Rational& s) {
    if (supergeo::is_zero(s)) terms_.clear();
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }
  friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  GradedSpaceSig space_;
  TermMap terms_;
};

inline bool has_parity(const AlgebraElement& a, Parity p) {
  for (const auto& [m, c] : a.terms()) {
    if (m.parity() != p) return false;
  }
  return true;
}

/// Graded-commutative product in S(X).
inline AlgebraElement s_mul(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_space(a.space(), b.space(), "s_mul");
  AlgebraElement out(a.space());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto [s, m] = multiply_monomials(ma, mb);
      if (s != 0) out.add_term(m, ca * cb * s);
    }
  }
  return out;
}

inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return s_mul(a, b); }

/// A homogeneous element of the model space X = R^{m|n}.
struct Vector {
  GradedSpaceSig space;
  Parity parity = Parity::even;
  std::vector<Rational> coords;

  static Vector basis(const GradedSpaceSig& space, Letter l) {
    Vector v{space, l.parity, {}};
    v.coords.assign(is_odd(l.parity) ? space.odd_dim : space.even_dim, Rational(0));
    if (l.index >= v.coords.size()) throw ArgumentError("basis index out of range");
    v.coords[l.index] = 1;
    return v;
  }

  void validate() const {
    std::size_t want = is_odd(parity) ? space.odd_dim : space.even_dim;
    if (coords.size() != want) throw ParityError("vector coordinates do not match its parity block");
  }

  /// The degree-one element of S(X).
  AlgebraElement to_algebra() const {
    validate();
    AlgebraElement a(space);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (is_zero(coords[i])) continue;
      a += AlgebraElement::generator(space, {parity, i}) * AlgebraElement::scalar(space, coords[i]);
    }
    return a;
  }

  friend bool operator==(const Vector&, const Vector&) = default;
};

/// Graded product of the vectors a_1 ... a_k as an element of S^k(X).
inline AlgebraElement product_of_vectors(const GradedSpaceSig& space, std::span<const Vector> vs) {
  AlgebraElement out = AlgebraElement::one(space);
  for (const auto& v : vs) out = s_mul(out, v.to_algebra());
  return out;
}

/// Iterated comultiplication Δ^k(a) as a (k+1)-fold tensor via the partition
/// expansion over all, possibly empty, ordered (k+1)-partitions.
inline Tensor<GradedMonomial> comultiply_k(const AlgebraElement& a, std::size_t k) {
  if (k < 1) throw ArgumentError("comultiply_k needs k >= 1");
  const auto& space = a.space();
  Tensor<GradedMonomial> out(k + 1);
  for (const auto& [mono, c] : a.terms()) {
    const std::vector<Letter> w = mono.word();
    std::vector<Parity> parities;
    for (const auto& l : w) parities.push_back(l.parity);
    for_each_ordered_partition(w.size(), k + 1, false, [&](const BlockList& blocks) {
      const int sigma = partition_sign(parities, blocks);
      std::vector<GradedMonomial> key;
      key.reserve(k + 1);
      std::vector<Letter> sub;
      for (const auto& b : blocks) {
        sub.clear();
        for (std::size_t i : b) sub.push_back(w[i]);
        key.push_back(canonicalize_letters(space.even_dim, space.odd_dim, sub).second);
      }
      out.add(key, c * sigma);
    });
  }
  return out;
}

inline Tensor<GradedMonomial> comultiply(const AlgebraElement& a) { return comultiply_k(a, 1); }

/// Δ on a single basis monomial as a two-factor tensor.
inline Tensor<GradedMonomial> comultiply_monomial(const GradedSpaceSig& space, const GradedMonomial& m) {
  return comultiply(AlgebraElement::monomial(space, m));
}

/// Δ^k computed as k-fold application of Δ to the last factor.
inline Tensor<GradedMonomial> iterated_comultiply(const AlgebraElement& a, std::size_t k) {
  if (k < 1) throw ArgumentError("iterated_comultiply needs k >= 1");
  Tensor<GradedMonomial> t = comultiply(a);
  for (std::size_t step = 1; step < k; ++step) {
    t = apply_on_factor(t, t.factors - 1, 2, Parity::even,
                        [&](const GradedMonomial& m) { return comultiply_monomial(a.space(), m); });
  }
  return t;
}

inline Rational counit(const AlgebraElement& a) { return a.coefficient(GradedMonomial(a.space().even_dim)); }

/// Antipode: the extension of a ↦ -a into the opposite algebra, so
/// s(a_1...a_n) = (-1)^n a_n ·op ... ·op a_1. Reversing in the opposite product
/// costs the same Koszul sign as reordering back, hence s(m) = (-1)^deg(m) m.
inline AlgebraElement antipode(const AlgebraElement& a) {
  AlgebraElement out(a.space());
  for (const auto& [m, c] : a.terms()) out.add_term(m, m.degree() % 2 == 0 ? c : -c);
  return out;
}

/// Max Z+-degree of the support; 0 for the zero element.
inline unsigned filtration_degree(const AlgebraElement& a) {
  unsigned d = 0;
  for (const auto& [m, c] : a.terms()) d = std::max(d, m.degree());
  return d;
}

/// Tensor of algebra elements a_1 ⊗ ... ⊗ a_r.
inline Tensor<GradedMonomial> tensor_of(std::span<const AlgebraElement> parts) {
  Tensor<GradedMonomial> out(parts.size());
  std::vector<GradedMonomial> key(parts.size());
  auto recurse = [&](auto&& self, std::size_t i, Rational c) -> void {
    if (i == parts.size()) {
      out.add(key, c);
      return;
    }
    for (const auto& [m, mc] : parts[i].terms()) {
      key[i] = m;
      self(self, i + 1, c * mc);
    }
  };
  recurse(recurse, 0, Rational(1));
  return out;
}

/// Product in the graded tensor algebra S(X)^{⊗r}:
/// (a_1⊗..⊗a_r)(b_1⊗..⊗b_r) = Π_{i>j}(-1)^{|a_i||b_j|} a_1b_1 ⊗ .. ⊗ a_rb_r.
inline Tensor<GradedMonomial> tensor_multiply(const Tensor<GradedMonomial>& a, const Tensor<GradedMonomial>& b) {
  if (a.factors != b.factors) throw DomainMismatch("tensor product of different arities");
  Tensor<GradedMonomial> out(a.factors);
  std::vector<GradedMonomial> key(a.factors);
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      int sign = 1;
      for (std::size_t j = 0; j < a.factors && sign != 0; ++j) {
        if (!is_odd(kb[j].parity())) continue;
        for (std::size_t i = j + 1; i < a.factors; ++i) {
          if (is_odd(ka[i].parity())) sign = -sign;
        }
      }
      for (std::size_t i = 0; i < a.factors && sign != 0; ++i) {
        auto [s, m] = multiply_monomials(ka[i], kb[i]);
        sign *= s;
        key[i] = std::move(m);
      }
      if (sign != 0) out.add(key, ca * cb * sign);
    }
  }
  return out;
}

/// M: multiplies the factors of a tensor in order.
inline AlgebraElement multiply_factors(const GradedSpaceSig& space, const Tensor<GradedMonomial>& t) {
  AlgebraElement out(space);
  for (const auto& [keys, c] : t.terms) {
    int sign = 1;
    GradedMonomial acc(space.even_dim);
    for (const auto& k : keys) {
      auto [s, m] = multiply_monomials(acc, k);
      sign *= s;
      acc = std::move(m);
      if (sign == 0) break;
    }
    if (sign != 0) out.add_term(acc, c * sign);
  }
  return out;
}

/// Applies a linear map on factor j (map given on basis monomials).
template <class F>
Tensor<GradedMonomial> map_factor(const Tensor<GradedMonomial>& t, std::size_t j, Parity p, F&& f) {
  return apply_on_factor(t, j, 1, p, [&](const GradedMonomial& m) {
    const AlgebraElement img = f(m);
    Tensor<GradedMonomial> one(1);
    for (const auto& [im, ic] : img.terms()) one.add({im}, ic);
    return one;
  });
}

/// ε applied at factor j, dropping that factor.
inline Tensor<GradedMonomial> counit_on_factor(const Tensor<GradedMonomial>& t, std::size_t j) {
  if (j >= t.factors || t.factors < 2) throw ArgumentError("counit factor index out of range");
  Tensor<GradedMonomial> out(t.factors - 1);
  for (const auto& [keys, c] : t.terms) {
    if (!keys[j].is_unit()) continue;
    std::vector<GradedMonomial> nk;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i != j) nk.push_back(keys[i]);
    }
    out.add(nk, c);
  }
  return out;
}

/// Collapses a one-factor tensor back to an algebra element.
inline AlgebraElement from_single_factor(const GradedSpaceSig& space, const Tensor<GradedMonomial>& t) {
  if (t.factors != 1) throw ArgumentError("expected a one-factor tensor");
  AlgebraElement out(space);
  for (const auto& [k, c] : t.terms) out.add_term(k[0], c);
  return out;
}

/// The unique graded algebra morphism S(X) -> A extending an assignment of
/// the generators of X. `Target` must provide +, *, scalar * and
/// has_parity(Target, Parity).
template <class Target>
class AlgebraMorphism {
 public:
  AlgebraMorphism(GradedSpaceSig source, std::vector<Target> even_images, std::vector<Target> odd_images, Target unit)
      : source_(std::move(source)),
        even_(std::move(even_images)),
        odd_(std::move(odd_images)),
        unit_(std::move(unit)) {
    if (even_.size() != source_.even_dim || odd_.size() != source_.odd_dim) {
      throw DomainMismatch("generator assignment does not cover the source space");
    }
    for (const auto& t : even_) {
      if (!has_parity(t, Parity::even)) throw ParityError("even generator mapped to a non-even element");
    }
    for (const auto& t : odd_) {
      if (!has_parity(t, Parity::odd)) throw ParityError("odd generator mapped to a non-odd element");
    }
  }

  const GradedSpaceSig& source() const { return source_; }

  Target operator()(const AlgebraElement& a) const {
    require_same_space(source_, a.space(), "algebra morphism argument");
    Target out = unit_ * Rational(0);
    for (const auto& [m, c] : a.terms()) {
      Target t = unit_;
      for (const Letter& l : m.word()) t = t * (is_odd(l.parity) ? odd_[l.index] : even_[l.index]);
      out = out + t * c;
    }
    return out;
  }

 private:
  GradedSpaceSig source_;
  std::vector<Target> even_;
  std::vector<Target> odd_;
  Target unit_;
};

inline AlgebraElement operator*(AlgebraElement a, const Rational& s) { return a *= s; }

/// universal_algebra_extension for S(X) -> S(Y).
inline AlgebraMorphism<AlgebraElement> universal_algebra_extension(const GradedSpaceSig& source,
                                                                    const GradedSpaceSig& target,
                                                                    std::vector<AlgebraElement> even_images,
                                                                    std::vector<AlgebraElement> odd_images) {
  for (const auto& e : even_images) require_same_space(target, e.space(), "generator image");
  for (const auto& e : odd_images) require_same_space(target, e.space(), "generator image");
  return AlgebraMorphism<AlgebraElement>(source, std::move(even_images), std::move(odd_images),
                                         AlgebraElement::one(target));
}

}  // namespace supergeo
