#pragma once
// Commutative polynomials with exact rational coefficients.  Terms are kept
// sorted in DESCENDING monomial order (leading term first), no zero
// coefficients.

#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace cgkw {

struct Poly {
  std::vector<std::pair<Monomial, Rat>> t;  // descending, nonzero coefficients

  bool zero() const { return t.empty(); }
  const Monomial& lm() const { return t.front().first; }
  const Rat& lc() const { return t.front().second; }
  int degree() const { return t.empty() ? -1 : mono_degree(t.front().first); }
};

inline Poly poly_normalize(std::vector<std::pair<Monomial, Rat>> terms, MonoOrder ord) {
  std::sort(terms.begin(), terms.end(),
            [&](const auto& x, const auto& y) { return mono_cmp(x.first, y.first, ord) > 0; });
  Poly out;
  for (auto& tm : terms) {
    if (!out.t.empty() && out.t.back().first == tm.first) out.t.back().second += tm.second;
    else out.t.push_back(std::move(tm));
  }
  std::erase_if(out.t, [](const auto& tm) { return tm.second == 0; });
  return out;
}

inline Poly poly_zero() { return {}; }

inline Poly poly_const(const Rat& c) {
  Poly p;
  if (c != 0) p.t.emplace_back(mono_one(), c);
  return p;
}

inline Poly poly_term(Monomial m, Rat c) {
  Poly p;
  if (c != 0) p.t.emplace_back(std::move(m), std::move(c));
  return p;
}

inline Poly poly_add(const Poly& a, const Poly& b, MonoOrder ord) {
  Poly out;
  size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size()) out.t.push_back(a.t[i++]);
    else if (i == a.t.size()) out.t.push_back(b.t[j++]);
    else {
      int c = mono_cmp(a.t[i].first, b.t[j].first, ord);
      if (c > 0) out.t.push_back(a.t[i++]);
      else if (c < 0) out.t.push_back(b.t[j++]);
      else {
        Rat s = a.t[i].second + b.t[j].second;
        if (s != 0) out.t.emplace_back(a.t[i].first, std::move(s));
        ++i, ++j;
      }
    }
  }
  return out;
}

inline Poly poly_scale(Poly p, const Rat& c) {
  if (c == 0) return {};
  for (auto& tm : p.t) tm.second *= c;
  return p;
}

inline Poly poly_sub(const Poly& a, const Poly& b, MonoOrder ord) {
  return poly_add(a, poly_scale(b, Rat(-1)), ord);
}

// p * (c * m); preserves term order, so no re-sort needed.
inline Poly poly_mul_term(const Poly& p, const Monomial& m, const Rat& c) {
  Poly out;
  if (c == 0) return out;
  out.t.reserve(p.t.size());
  for (auto& tm : p.t) out.t.emplace_back(mono_mul(tm.first, m), tm.second * c);
  return out;
}

inline Poly poly_mul(const Poly& a, const Poly& b, MonoOrder ord) {
  std::vector<std::pair<Monomial, Rat>> terms;
  terms.reserve(a.t.size() * b.t.size());
  for (auto& x : a.t)
    for (auto& y : b.t) terms.emplace_back(mono_mul(x.first, y.first), x.second * y.second);
  return poly_normalize(std::move(terms), ord);
}

inline Poly poly_monic(Poly p) {
  if (!p.zero()) p = poly_scale(std::move(p), Rat(1) / p.lc());
  return p;
}

inline bool poly_eq(const Poly& a, const Poly& b) { return a.t == b.t; }

inline std::string poly_str(const Poly& p, const std::vector<std::string>& names) {
  if (p.zero()) return "0";
  std::string out;
  for (size_t i = 0; i < p.t.size(); ++i) {
    const auto& [m, c] = p.t[i];
    std::string cs = rat_str(c >= 0 ? c : Rat(-c));
    if (i == 0) out += (c < 0 ? "-" : "");
    else out += (c < 0 ? " - " : " + ");
    if (m.empty()) out += cs;
    else {
      if (cs != "1") out += cs + "*";
      out += mono_str(m, names);
    }
  }
  return out;
}

}  // namespace cgkw
