#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace coble {

/// Index sets I = {i1 < ... < ik} in {0,...,n-1} are bitmasks (n <= 16).
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline std::vector<int> mask_bits(Mask m) {
  std::vector<int> out;
  while (m) {
    int b = std::countr_zero(m);
    out.push_back(b);
    m &= m - 1;
  }
  return out;
}

inline Mask bits_mask(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << i;
  return m;
}

inline std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * std::uint64_t(n - i) / std::uint64_t(i + 1);
  return r;
}

/// Sign of sorting the concatenation (A, B) of two disjoint sorted sets:
/// (-1)^{#{(a,b) in A x B : a > b}}.
inline int sign_merge(Mask a, Mask b) {
  int inv = 0;
  Mask bb = b;
  while (bb) {
    int j = std::countr_zero(bb);
    bb &= bb - 1;
    inv += std::popcount(a >> (j + 1));
  }
  return (inv & 1) ? -1 : 1;
}

/// Sign of inserting index j in front of the sorted set m, i.e. of sorting
/// (j, m): (-1)^{#{i in m : i < j}}.
inline int sign_insert_front(int j, Mask m) {
  int c = std::popcount(m & ((Mask(1) << j) - 1));
  return (c & 1) ? -1 : 1;
}

/// Sign of appending index j after the sorted set m: (-1)^{#{i in m : i > j}}.
inline int sign_append(Mask m, int j) {
  int c = std::popcount(m >> (j + 1));
  return (c & 1) ? -1 : 1;
}

/// Lex-ordered list of all k-subsets of {0..n-1} plus a rank lookup.
struct IndexTable {
  int n = 0, k = 0;
  std::vector<Mask> masks;          // lex order of sorted index tuples
  std::vector<int> rank_of;         // size 2^n, -1 if popcount != k

  IndexTable() = default;
  IndexTable(int n_, int k_) : n(n_), k(k_) {
    rank_of.assign(std::size_t(1) << n, -1);
    for (Mask m = 0; m < (Mask(1) << n); ++m)
      if (std::popcount(m) == k) masks.push_back(m);
    // bitmask order on sorted tuples coincides with colex; re-sort to lex.
    std::sort(masks.begin(), masks.end(), [](Mask a, Mask b) {
      std::vector<int> va = mask_bits(a), vb = mask_bits(b);
      return va < vb;
    });
    for (std::size_t i = 0; i < masks.size(); ++i) rank_of[masks[i]] = int(i);
  }

  int rank(Mask m) const {
    int r = rank_of[m];
    if (r < 0) throw std::invalid_argument("IndexTable: wrong cardinality");
    return r;
  }
  std::size_t size() const { return masks.size(); }
};

inline const IndexTable& index_table(int n, int k) {
  static std::map<std::pair<int, int>, IndexTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, IndexTable(n, k)).first;
  return it->second;
}

}  // namespace coble
