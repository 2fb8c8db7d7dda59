#pragma once
// Incremental exact row reduction over the rationals with arbitrary ordered
// column keys.  Rows are sparse vectors sorted leading-key-first; pivot rows
// are stored monic.  Supports rank and span-membership queries.

#include <map>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace cgkw {

template <class Key, class Less>
class RowSpace {
 public:
  using Row = std::vector<std::pair<Key, Rat>>;  // sorted descending by Less

  explicit RowSpace(Less less = {}) : less_(less), rows_(Greater{less}) {}

  // Sort + combine an arbitrary term list into row form.
  Row make_row(std::vector<std::pair<Key, Rat>> terms) const {
    std::sort(terms.begin(), terms.end(),
              [&](const auto& a, const auto& b) { return less_(b.first, a.first); });
    Row out;
    for (auto& kv : terms) {
      if (!out.empty() && !less_(out.back().first, kv.first) && !less_(kv.first, out.back().first))
        out.back().second += kv.second;
      else
        out.push_back(std::move(kv));
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

  Row reduce(Row r) const {
    while (!r.empty()) {
      auto it = rows_.find(r.front().first);
      if (it == rows_.end()) break;
      r = axpy(std::move(r), it->second, -r.front().second);
    }
    return r;
  }

  // Returns true if the row was independent (rank grew).
  bool insert(Row r) {
    r = reduce(std::move(r));
    if (r.empty()) return false;
    Rat inv = Rat(1) / r.front().second;
    for (auto& kv : r) kv.second *= inv;
    Key pivot = r.front().first;
    rows_.emplace(std::move(pivot), std::move(r));
    return true;
  }

  bool member(Row r) const { return reduce(std::move(r)).empty(); }

  size_t rank() const { return rows_.size(); }

 private:
  struct Greater {
    Less less;
    bool operator()(const Key& a, const Key& b) const { return less(b, a); }
  };

  // r + c * s, rows sorted descending.
  Row axpy(Row r, const Row& s, const Rat& c) const {
    Row out;
    size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
      if (j == s.size()) out.push_back(std::move(r[i++]));
      else if (i == r.size()) out.emplace_back(s[j].first, s[j].second * c), ++j;
      else if (less_(s[j].first, r[i].first)) out.push_back(std::move(r[i++]));
      else if (less_(r[i].first, s[j].first)) out.emplace_back(s[j].first, s[j].second * c), ++j;
      else {
        Rat v = r[i].second + s[j].second * c;
        if (v != 0) out.emplace_back(r[i].first, std::move(v));
        ++i, ++j;
      }
    }
    return out;
  }

  Less less_;
  std::map<Key, Row, Greater> rows_;
};

}  // namespace cgkw
