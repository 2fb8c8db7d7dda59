#pragma once
// Small combinatorial enumerators shared across the library: nested families
// of subsets, ordered set partitions, chain splittings, integer compositions,
// second-order Eulerian numbers.

#include <cstdint>
#include <vector>

#include "labels.hpp"
#include "rational.hpp"

namespace cgkw {

// All families (possibly empty) of subsets of `ls`, each subset of size >= 2,
// pairwise nested-or-disjoint.  Deterministic order: families are produced by
// a DFS over the (cardinality, lex)-ordered subset list.
inline std::vector<std::vector<Subset>> enumerate_nested_families(const LabelSet& ls) {
  std::vector<Subset> cand = subsets_of_size_at_least(ls, 2);
  std::vector<std::vector<Subset>> out;
  std::vector<Subset> cur;
  auto rec = [&](auto&& self, size_t start) -> void {
    out.push_back(cur);
    for (size_t i = start; i < cand.size(); ++i) {
      bool ok = true;
      for (const Subset& s : cur)
        if (crossing(s, cand[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(cand[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Ordered partitions of `s` into exactly `q` nonempty blocks.
inline std::vector<std::vector<Subset>> ordered_set_partitions(const Subset& s, int q) {
  std::vector<std::vector<Subset>> out;
  if (q < 0) return out;
  if (q == 0) {
    if (s.empty()) out.push_back({});
    return out;
  }
  const int n = static_cast<int>(s.size());
  if (n < q) return out;
  // Assign each element a block index in [0, q); keep only surjective maps.
  std::vector<int> assign(n, 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      std::vector<Subset> blocks(q);
      for (int i = 0; i < n; ++i) blocks[assign[i]].push_back(s[i]);
      for (const Subset& b : blocks)
        if (b.empty()) return;
      out.push_back(std::move(blocks));
      return;
    }
    for (int b = 0; b < q; ++b) {
      assign[pos] = b;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Ordered splittings S_1 u ... u S_q of `ls` into nonempty blocks with both
// `i` and `j` in S_1.
inline std::vector<std::vector<Subset>> chain_splittings(const LabelSet& ls, Label i, Label j,
                                                         int q) {
  std::vector<std::vector<Subset>> out;
  for (auto& part : ordered_set_partitions(ls, q)) {
    if (contains(part[0], i) && contains(part[0], j)) out.push_back(part);
  }
  return out;
}

// All (p_1, ..., p_parts) with p_t >= 0 and sum == total.
inline std::vector<std::vector<int>> nonneg_compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (parts < 0 || total < 0) return out;
  if (parts == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == parts - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

// Second-order Eulerian numbers, row n (1-indexed): T(n,k) for k = 0..n-1,
// T(n,k) = (k+1) T(n-1,k) + (2n-1-k) T(n-1,k-1), T(1,0) = 1.
// Row sums are (2n-1)!!.
inline std::vector<Int> eulerian2_row(int n) {
  std::vector<Int> row{1};
  for (int m = 2; m <= n; ++m) {
    std::vector<Int> next(m, 0);
    for (int k = 0; k < m; ++k) {
      Int a = (k < static_cast<int>(row.size())) ? (k + 1) * row[k] : Int(0);
      Int b = (k >= 1 && k - 1 < static_cast<int>(row.size())) ? (2 * m - 1 - k) * row[k - 1]
                                                               : Int(0);
      next[k] = a + b;
    }
    row = std::move(next);
  }
  return row;
}

inline Int double_factorial_odd(int n) {  // (2n-1)!!
  Int out = 1;
  for (int k = 1; k <= 2 * n - 1; k += 2) out *= k;
  return out;
}

// Supersets of `base` inside ground set `ls` (including `base` itself).
inline std::vector<Subset> supersets_within(const Subset& base, const LabelSet& ls) {
  Subset rest = set_minus(ls, base);
  std::vector<Subset> out;
  const int m = static_cast<int>(rest.size());
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    Subset s = base;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) s.push_back(rest[i]);
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace cgkw
