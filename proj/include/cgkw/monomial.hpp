#pragma once
// Sparse commutative monomials over indexed variables x_0, x_1, ... with the
// convention that x_0 is the LARGEST variable (x_0 > x_1 > ...).  Monomials
// are sorted vectors of (variable index, exponent > 0).

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cgkw {

using Monomial = std::vector<std::pair<int, int>>;  // sorted by var index

enum class MonoOrder { DegLex, DegRevLex };

inline int mono_degree(const Monomial& m) {
  int d = 0;
  for (auto& [v, e] : m) d += e;
  return d;
}

inline Monomial mono_one() { return {}; }

inline Monomial mono_var(int v, int e = 1) { return {{v, e}}; }

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return out;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
  size_t j = 0;
  for (auto& [v, e] : a) {
    while (j < b.size() && b[j].first < v) ++j;
    if (j == b.size() || b[j].first != v || b[j].second < e) return false;
  }
  return true;
}

// b / a, assuming a | b.
inline Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial out;
  size_t i = 0;
  for (auto& [v, e] : b) {
    int sub = 0;
    if (i < a.size() && a[i].first == v) sub = a[i++].second;
    if (e - sub > 0) out.emplace_back(v, e - sub);
  }
  return out;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, std::max(a[i].second, b[j].second));
      ++i, ++j;
    }
  }
  return out;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (a[i].first > b[j].first) ++j;
    else return false;
  }
  return true;
}

// Returns <0, 0, >0 for a < b, a == b, a > b.
inline int mono_cmp(const Monomial& a, const Monomial& b, MonoOrder ord) {
  int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db ? -1 : 1;
  if (ord == MonoOrder::DegLex) {
    // Scan variables in increasing index (x_0 first, the biggest variable);
    // first difference: larger exponent wins.
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first != b[j].first)
        // The smaller index has a positive exponent on one side, zero on the
        // other; positive exponent on the bigger variable wins.
        return a[i].first < b[j].first ? 1 : -1;
      if (a[i].second != b[j].second) return a[i].second < b[j].second ? -1 : 1;
      ++i, ++j;
    }
    return 0;  // equal degree forces both exhausted together
  }
  // DegRevLex: scan variables in decreasing index; first difference: the
  // monomial with the SMALLER exponent there is larger.
  auto ri = a.rbegin();
  auto rj = b.rbegin();
  while (ri != a.rend() && rj != b.rend()) {
    if (ri->first != rj->first) return ri->first > rj->first ? -1 : 1;
    if (ri->second != rj->second) return ri->second < rj->second ? 1 : -1;
    ++ri, ++rj;
  }
  return 0;
}

inline std::string mono_str(const Monomial& m, const std::vector<std::string>& names) {
  if (m.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out += "*";
    out += names[m[i].first];
    if (m[i].second > 1) out += "^" + std::to_string(m[i].second);
  }
  return out;
}

}  // namespace cgkw
