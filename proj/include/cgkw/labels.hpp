#pragma once
// Finite ordered label sets for points / operad inputs.  A label is a small
// integer; the distinguished gluing slot (printed "*") sorts after every
// numeric label so that star-augmented sets K u {*} order the star last.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace cgkw {

using Label = int32_t;
inline constexpr Label kStar = 1000000000;  // sorts last among labels in use

using LabelSet = std::vector<Label>;  // sorted, no duplicates
using Subset = std::vector<Label>;    // sorted, no duplicates

inline LabelSet make_labels(int n) {
  LabelSet out(n);
  for (int i = 0; i < n; ++i) out[i] = i + 1;
  return out;
}

inline LabelSet with_star(const LabelSet& ls) {
  LabelSet out = ls;
  out.push_back(kStar);
  return out;  // star sorts last by construction
}

inline bool is_sorted_unique(const Subset& s) {
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) return false;
  return true;
}

inline bool contains(const Subset& s, Label x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline bool subset_of(const Subset& a, const Subset& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool intersects(const Subset& a, const Subset& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else return true;
  }
  return false;
}

// Neither nested nor disjoint.
inline bool crossing(const Subset& a, const Subset& b) {
  return intersects(a, b) && !subset_of(a, b) && !subset_of(b, a);
}

inline bool nested_or_disjoint(const Subset& a, const Subset& b) { return !crossing(a, b); }

inline Subset set_union(const Subset& a, const Subset& b) {
  Subset out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Subset set_minus(const Subset& a, const Subset& b) {
  Subset out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Subset set_intersect(const Subset& a, const Subset& b) {
  Subset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::string label_str(Label l) { return l == kStar ? "*" : std::to_string(l); }

inline std::string subset_str(const Subset& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += label_str(s[i]);
  }
  out += "}";
  return out;
}

// All subsets of `ls` with at least `min_size` elements, ordered by
// (cardinality, lexicographic) — this is also the generator order used by the
// presented cohomology rings.
inline std::vector<Subset> subsets_of_size_at_least(const LabelSet& ls, int min_size) {
  std::vector<Subset> out;
  const int n = static_cast<int>(ls.size());
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) < min_size) continue;
    Subset s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(ls[i]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace cgkw
