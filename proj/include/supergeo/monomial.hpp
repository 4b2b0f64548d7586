#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supergeo/errors.hpp"
#include "supergeo/rational.hpp"

namespace supergeo {

/// The Z2-graded model space R^{m|n}. Basis generators are
/// even 0..m-1 and odd 0..n-1 (rendered 1-based in text).
struct GradedSpaceSig {
  std::size_t even_dim = 0;
  std::size_t odd_dim = 0;
  std::string id = "X";

  friend bool operator==(const GradedSpaceSig&, const GradedSpaceSig&) = default;

  std::size_t dim() const { return even_dim + odd_dim; }
};

inline std::string describe(const GradedSpaceSig& s) {
  return s.id + "=R(" + std::to_string(s.even_dim) + "|" + std::to_string(s.odd_dim) + ")";
}

inline void require_same_space(const GradedSpaceSig& a, const GradedSpaceSig& b, const char* what) {
  if (!(a == b)) {
    throw DomainMismatch(std::string(what) + ": " + describe(a) + " vs " + describe(b));
  }
}

inline constexpr std::size_t kMaxOddDim = 64;

/// A basis vector of one graded space, identified by (space, parity, index).
struct Generator {
  std::string space_id;
  std::size_t index = 0;
  Parity parity = Parity::even;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Space-free generator used on hot paths.
struct Letter {
  Parity parity = Parity::even;
  std::size_t index = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
};

constexpr Letter even_letter(std::size_t i) { return {Parity::even, i}; }
constexpr Letter odd_letter(std::size_t i) { return {Parity::odd, i}; }

/// A canonical monomial of S(X): an exponent vector over the even generators
/// and a set of odd generators (bit i = odd generator i). The empty monomial is 1.
struct GradedMonomial {
  std::vector<unsigned> even;
  std::uint64_t odd = 0;

  GradedMonomial() = default;
  explicit GradedMonomial(std::size_t even_dim) : even(even_dim, 0U) {}
  GradedMonomial(std::vector<unsigned> exps, std::uint64_t odd_mask) : even(std::move(exps)), odd(odd_mask) {}

  unsigned odd_count() const { return static_cast<unsigned>(std::popcount(odd)); }

  unsigned degree() const {
    unsigned d = odd_count();
    for (unsigned e : even) d += e;
    return d;
  }

  Parity parity() const { return parity_of(odd_count()); }

  bool is_unit() const { return degree() == 0; }

  bool has_odd(std::size_t i) const { return (odd >> i) & 1U; }

  /// Odd generator indices in increasing order.
  std::vector<std::size_t> odd_indices() const {
    std::vector<std::size_t> out;
    for (std::uint64_t rest = odd; rest != 0; rest &= rest - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
    }
    return out;
  }

  /// The generator word in canonical order: evens by index (with
  /// multiplicity), then odds increasing.
  std::vector<Letter> word() const {
    std::vector<Letter> w;
    for (std::size_t i = 0; i < even.size(); ++i) {
      for (unsigned k = 0; k < even[i]; ++k) w.push_back(even_letter(i));
    }
    for (std::size_t j : odd_indices()) w.push_back(odd_letter(j));
    return w;
  }

  friend bool operator==(const GradedMonomial&, const GradedMonomial&) = default;
  friend bool operator<(const GradedMonomial& a, const GradedMonomial& b) {
    if (a.even != b.even) return a.even < b.even;
    return a.odd < b.odd;
  }
};

inline std::uint64_t odd_bit(std::size_t i) { return std::uint64_t{1} << i; }

/// Number of set bits of `mask` strictly above position i.
inline unsigned odd_bits_above(std::uint64_t mask, std::size_t i) {
  if (i + 1 >= 64) return 0;
  return static_cast<unsigned>(std::popcount(mask >> (i + 1)));
}

/// Sign of a graded product of canonical monomials, and the product itself.
/// Sign is 0 when an odd generator repeats.
inline std::pair<int, GradedMonomial> multiply_monomials(const GradedMonomial& a, const GradedMonomial& b) {
  if (a.even.size() != b.even.size()) throw DomainMismatch("monomials over different even dimensions");
  if ((a.odd & b.odd) != 0) return {0, GradedMonomial(a.even.size())};
  unsigned swaps = 0;
  for (std::uint64_t rest = b.odd; rest != 0; rest &= rest - 1) {
    swaps += odd_bits_above(a.odd, static_cast<std::size_t>(std::countr_zero(rest)));
  }
  GradedMonomial out = a;
  for (std::size_t i = 0; i < out.even.size(); ++i) out.even[i] += b.even[i];
  out.odd |= b.odd;
  return {(swaps & 1U) ? -1 : 1, std::move(out)};
}

/// Graded bubble sort of a letter word: even letters commute freely, each odd-odd
/// transposition contributes -1, a repeated odd letter gives sign 0.
inline std::pair<int, GradedMonomial> canonicalize_letters(std::size_t even_dim, std::size_t odd_dim,
                                                           std::span<const Letter> word) {
  GradedMonomial out(even_dim);
  unsigned swaps = 0;
  bool vanishes = false;
  for (const Letter& l : word) {
    if (is_odd(l.parity)) {
      if (l.index >= odd_dim) throw ArgumentError("odd generator index out of range");
      if (out.has_odd(l.index)) vanishes = true;
      swaps += odd_bits_above(out.odd, l.index);
      out.odd |= odd_bit(l.index);
    } else {
      if (l.index >= even_dim) throw ArgumentError("even generator index out of range");
      ++out.even[l.index];
    }
  }
  if (vanishes) return {0, GradedMonomial(even_dim)};
  return {(swaps & 1U) ? -1 : 1, std::move(out)};
}

/// canonicalize(word) -> (sign, monomial) for a word of generators of one space.
inline std::pair<int, GradedMonomial> canonicalize(const GradedSpaceSig& space, std::span<const Generator> word) {
  std::vector<Letter> letters;
  letters.reserve(word.size());
  for (const Generator& g : word) {
    if (g.space_id != space.id) {
      throw DomainMismatch("generator of space '" + g.space_id + "' in a word over '" + space.id + "'");
    }
    letters.push_back({g.parity, g.index});
  }
  return canonicalize_letters(space.even_dim, space.odd_dim, letters);
}

/// All canonical monomials of S(X) with degree in [min_degree, max_degree],
/// ordered by degree and then by the monomial order.
inline std::vector<GradedMonomial> monomials_up_to(const GradedSpaceSig& space, unsigned max_degree,
                                                   unsigned min_degree = 0) {
  if (space.odd_dim > kMaxOddDim) throw ArgumentError("odd dimension exceeds 64");
  std::vector<std::vector<GradedMonomial>> by_degree(max_degree + 1);
  std::vector<unsigned> exps(space.even_dim, 0U);
  // Recursive enumeration of even exponent vectors of total degree <= max_degree.
  auto visit_even = [&](auto&& self, std::size_t pos, unsigned used) -> void {
    if (pos == space.even_dim) {
      const std::uint64_t limit = space.odd_dim == 0 ? 1 : (std::uint64_t{1} << space.odd_dim);
      for (std::uint64_t mask = 0; mask < limit; ++mask) {
        unsigned d = used + static_cast<unsigned>(std::popcount(mask));
        if (d <= max_degree && d >= min_degree) by_degree[d].emplace_back(exps, mask);
      }
      return;
    }
    for (unsigned e = 0; used + e <= max_degree; ++e) {
      exps[pos] = e;
      self(self, pos + 1, used + e);
    }
    exps[pos] = 0;
  };
  visit_even(visit_even, 0, 0);
  std::vector<GradedMonomial> out;
  for (auto& group : by_degree) {
    std::sort(group.begin(), group.end());
    for (auto& m : group) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace supergeo
