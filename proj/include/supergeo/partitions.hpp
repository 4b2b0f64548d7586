#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "supergeo/errors.hpp"
#include "supergeo/rational.hpp"

namespace supergeo {

/// A sequence of disjoint, possibly empty, blocks covering the positions
/// 0..n-1 of a word. Each block lists its positions in increasing order.
struct Partition {
  std::vector<std::vector<std::size_t>> blocks;

  friend bool operator==(const Partition&, const Partition&) = default;

  bool nonempty() const {
    for (const auto& b : blocks) {
      if (b.empty()) return false;
    }
    return true;
  }
};

/// Text form with 1-based positions, e.g. "({1,3},{2})".
inline std::string to_string(const Partition& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    if (i) out += ",";
    out += "{";
    for (std::size_t j = 0; j < p.blocks[i].size(); ++j) {
      if (j) out += ",";
      out += std::to_string(p.blocks[i][j] + 1);
    }
    out += "}";
  }
  return out + ")";
}

using BlockList = std::vector<std::vector<std::size_t>>;

/// Visits every ordered k-partition of {0..n-1}. The assignment of position 0
/// is the most significant digit, so output order is deterministic.
inline void for_each_ordered_partition(std::size_t n, std::size_t k, bool nonempty,
                                       const std::function<void(const BlockList&)>& visit) {
  if (k < 1) throw ArgumentError("partition needs at least one block");
  if (nonempty && k > n) return;
  std::vector<std::size_t> assign(n, 0);
  BlockList blocks(k);
  while (true) {
    for (auto& b : blocks) b.clear();
    for (std::size_t i = 0; i < n; ++i) blocks[assign[i]].push_back(i);
    bool ok = true;
    if (nonempty) {
      for (const auto& b : blocks) {
        if (b.empty()) {
          ok = false;
          break;
        }
      }
    }
    if (ok) visit(blocks);
    // Increment the base-k counter, least significant digit = last position.
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++assign[pos] < k) break;
      assign[pos] = 0;
      if (pos == 0) return;
    }
    if (n == 0) return;
  }
}

/// Visits every set partition of {0..n-1} into nonempty blocks (any number of
/// blocks), blocks ordered by least element. Restricted growth strings.
inline void for_each_set_partition(std::size_t n, const std::function<void(const BlockList&)>& visit) {
  if (n == 0) {
    visit(BlockList{});
    return;
  }
  std::vector<std::size_t> rgs(n, 0);
  BlockList blocks;
  auto recurse = [&](auto&& self, std::size_t pos, std::size_t used) -> void {
    if (pos == n) {
      blocks.assign(used, {});
      for (std::size_t i = 0; i < n; ++i) blocks[rgs[i]].push_back(i);
      visit(blocks);
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      rgs[pos] = b;
      self(self, pos + 1, b == used ? used + 1 : used);
    }
  };
  rgs[0] = 0;
  recurse(recurse, 1, 1);
}

/// enumerate_partitions(n, k, nonempty, ordered).
/// Unordered enumeration is only defined for nonempty blocks.
inline std::vector<Partition> enumerate_partitions(std::size_t n, std::size_t k, bool nonempty, bool ordered) {
  if (k < 1) throw ArgumentError("partition needs at least one block");
  std::vector<Partition> out;
  if (ordered) {
    for_each_ordered_partition(n, k, nonempty, [&](const BlockList& b) { out.push_back({b}); });
    return out;
  }
  if (!nonempty) throw ArgumentError("unordered partitions with empty blocks are not supported");
  for_each_set_partition(n, [&](const BlockList& b) {
    if (b.size() == k) out.push_back({b});
  });
  return out;
}

/// The sign sigma relating a_1...a_n to a_{P_1}...a_{P_k} in a graded-commutative
/// algebra: the parity of odd-odd inversions of the block concatenation.
inline int partition_sign(std::span<const Parity> parities, const BlockList& blocks) {
  const std::size_t n = parities.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (const auto& b : blocks) {
    for (std::size_t i : b) {
      if (i >= n || seen[i]) throw StructuralError("partition blocks are not disjoint or out of range");
      seen[i] = 1;
      order.push_back(i);
    }
  }
  if (order.size() != n) throw StructuralError("partition does not cover the index set");
  unsigned inversions = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (!is_odd(parities[order[a]])) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (is_odd(parities[order[b]]) && order[b] < order[a]) ++inversions;
    }
  }
  return (inversions & 1U) ? -1 : 1;
}

inline int partition_sign(std::span<const Parity> parities, const Partition& p) {
  return partition_sign(parities, p.blocks);
}

}  // namespace supergeo
