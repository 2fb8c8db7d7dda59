// Weighted noncommutative rewriting for the truncated circle model.
//
// The algebra under study has generators c_1, ..., c_d of weight k for c_k
// and relations
//   c_i c_j = c_{i+j}          for i + j <= d,
//   c_i c_j = c_k c_l          for d+1 <= i + j = k + l <= 2d,
// which identify it with the one-variable polynomial ring (one normal form
// per weight, namely c_d^l c_k).  This header builds the oriented rewriting
// system, verifies by bounded overlap completion that it is already a
// noncommutative Groebner basis, counts normal forms per weight, and checks
// the square-zero consistency of the companion differential graded Lie
// algebra on odd generators D_1, ..., D_d with |D_k| = 2k - 1.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgkw/rational.hpp"

namespace cgkw {

// A word in the generators; letter k stands for the k-th generator.  The
// weight is the sum of the letters.
using NCWord = std::vector<int>;

inline int nc_weight(const NCWord& w) {
  int s = 0;
  for (int k : w) s += k;
  return s;
}

// Weight-graded order: first by total weight, then by length (longer words
// are greater), then letterwise from the right with higher indices greater.
// Under this order the unique irreducible word of each weight is the one
// whose letters are as large as possible as early as possible: c_d^l c_k.
struct NCOrder {
  bool operator()(const NCWord& a, const NCWord& b) const {
    const int wa = nc_weight(a), wb = nc_weight(b);
    if (wa != wb) return wa < wb;
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t t = a.size(); t-- > 0;)
      if (a[t] != b[t]) return a[t] < b[t];
    return false;
  }
};

using NCPoly = std::map<NCWord, Rat, NCOrder>;

inline NCWord nc_concat(const NCWord& a, const NCWord& b) {
  NCWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline void nc_add_term(NCPoly& p, const NCWord& w, const Rat& c) {
  auto [it, fresh] = p.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  } else if (it->second == 0) {
    p.erase(it);
  }
}

inline NCPoly nc_add(const NCPoly& a, const NCPoly& b) {
  NCPoly r = a;
  for (const auto& [w, c] : b) nc_add_term(r, w, c);
  return r;
}

inline NCPoly nc_scale(const NCPoly& a, const Rat& c) {
  NCPoly r;
  if (c == 0) return r;
  for (const auto& [w, x] : a) r.emplace(w, x * c);
  return r;
}

inline NCPoly nc_sub(const NCPoly& a, const NCPoly& b) { return nc_add(a, nc_scale(b, Rat(-1))); }

inline NCPoly nc_mul(const NCPoly& a, const NCPoly& b) {
  NCPoly r;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) nc_add_term(r, nc_concat(u, v), x * y);
  return r;
}

inline NCPoly nc_monomial(const NCWord& w, const Rat& c = Rat(1)) {
  NCPoly p;
  if (c != 0) p.emplace(w, c);
  return p;
}

inline std::string nc_word_str(const NCWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t) s += '*';
    s += 'c';
    s += std::to_string(w[t]);
  }
  return s;
}

// A monic oriented rule lead -> tail where every tail word is smaller than
// the lead.
struct NCRule {
  NCWord lead;
  NCPoly tail;
};

struct NCRewriteSystem {
  int d = 0;
  std::vector<NCRule> rules;
};

// Orients a polynomial by its greatest word; returns false for the zero
// polynomial.
inline bool nc_make_rule(const NCPoly& p, NCRule& out) {
  if (p.empty()) return false;
  auto it = std::prev(p.end());
  out.lead = it->first;
  const Rat lc = it->second;
  out.tail.clear();
  for (auto jt = p.begin(); jt != it; ++jt) out.tail.emplace(jt->first, -jt->second / lc);
  return true;
}

// Fully reduces a polynomial: any occurrence of a lead word as a contiguous
// subword is replaced by the corresponding tail.  Terminates because every
// step replaces a word by strictly smaller ones in a finite weight class.
inline NCPoly nc_reduce(NCPoly p, const std::vector<NCRule>& rules) {
  for (;;) {
    // Locate the greatest reducible term before mutating the map.
    NCWord w;
    Rat c;
    std::size_t rule_idx = 0, pos = 0;
    bool found = false;
    for (auto it = p.rbegin(); it != p.rend() && !found; ++it) {
      for (std::size_t ri = 0; ri < rules.size() && !found; ++ri) {
        const NCWord& lead = rules[ri].lead;
        if (lead.size() > it->first.size()) continue;
        for (std::size_t at = 0; at + lead.size() <= it->first.size(); ++at) {
          if (!std::equal(lead.begin(), lead.end(), it->first.begin() + at)) continue;
          w = it->first;
          c = it->second;
          rule_idx = ri;
          pos = at;
          found = true;
          break;
        }
      }
    }
    if (!found) return p;
    const NCRule& r = rules[rule_idx];
    const NCWord pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    const NCWord post(w.begin() + static_cast<std::ptrdiff_t>(pos + r.lead.size()), w.end());
    nc_add_term(p, w, -c);
    for (const auto& [tw, tc] : r.tail)
      nc_add_term(p, nc_concat(pre, nc_concat(tw, post)), c * tc);
  }
}

inline bool nc_word_reducible(const NCWord& w, const std::vector<NCRule>& rules) {
  for (const NCRule& r : rules) {
    if (r.lead.size() > w.size()) continue;
    for (std::size_t pos = 0; pos + r.lead.size() <= w.size(); ++pos)
      if (std::equal(r.lead.begin(), r.lead.end(), w.begin() + pos)) return true;
  }
  return false;
}

// The defining relations, oriented under the weight-graded order.
inline NCRewriteSystem build_A_tilde(int d) {
  if (d < 1) throw std::invalid_argument("build_A_tilde: d must be positive");
  NCRewriteSystem rs;
  rs.d = d;
  // c_i c_j - c_{i+j} for i + j <= d.
  for (int i = 1; i <= d; ++i)
    for (int j = 1; i + j <= d; ++j) {
      NCPoly p = nc_monomial({i, j});
      nc_add_term(p, {i + j}, Rat(-1));
      NCRule r;
      nc_make_rule(p, r);
      rs.rules.push_back(std::move(r));
    }
  // c_i c_j - c_k c_l for all distinct two-letter words of equal weight m,
  // d+1 <= m <= 2d.
  for (int m = d + 1; m <= 2 * d; ++m) {
    std::vector<NCWord> words;
    for (int i = std::max(1, m - d); i <= std::min(d, m - 1); ++i) words.push_back({i, m - i});
    for (std::size_t a = 0; a < words.size(); ++a)
      for (std::size_t b = a + 1; b < words.size(); ++b) {
        NCPoly p = nc_monomial(words[a]);
        nc_add_term(p, words[b], Rat(-1));
        NCRule r;
        nc_make_rule(p, r);
        rs.rules.push_back(std::move(r));
      }
  }
  return rs;
}

struct NCCompletionReport {
  int overlaps_checked = 0;
  std::vector<NCPoly> new_elements;
  bool complete = true;  // no new elements within the weight bound
};

// Bounded Buchberger completion: resolves every overlap and containment
// ambiguity of weight <= weight_max, appending any nonzero reduced
// S-polynomial as a new rule.  On return rs.rules is closed under ambiguity
// resolution up to the bound.
inline NCCompletionReport nc_complete_bounded(NCRewriteSystem& rs, int weight_max) {
  if (weight_max < 2 * rs.d) throw std::invalid_argument("nc_complete_bounded: bound below 2d");
  NCCompletionReport rep;
  // Pair queue over rule indices; new rules enqueue pairs with all others.
  std::vector<std::pair<std::size_t, std::size_t>> queue;
  for (std::size_t a = 0; a < rs.rules.size(); ++a)
    for (std::size_t b = 0; b < rs.rules.size(); ++b) queue.emplace_back(a, b);
  while (!queue.empty()) {
    auto [a, b] = queue.back();
    queue.pop_back();
    const NCWord u = rs.rules[a].lead;
    const NCWord v = rs.rules[b].lead;
    std::vector<NCPoly> spolys;
    // Proper overlaps: a nonempty proper suffix of u equals a prefix of v.
    const std::size_t omax = std::min(u.size(), v.size()) - 1;
    for (std::size_t o = 1; o <= omax; ++o) {
      if (!std::equal(u.end() - static_cast<std::ptrdiff_t>(o), u.end(), v.begin())) continue;
      const NCWord amb = nc_concat(u, NCWord(v.begin() + static_cast<std::ptrdiff_t>(o), v.end()));
      if (nc_weight(amb) > weight_max) continue;
      const NCWord left(u.begin(), u.end() - static_cast<std::ptrdiff_t>(o));
      const NCWord right(v.begin() + static_cast<std::ptrdiff_t>(o), v.end());
      spolys.push_back(nc_sub(nc_mul(rs.rules[a].tail, nc_monomial(right)),
                              nc_mul(nc_monomial(left), rs.rules[b].tail)));
    }
    // Containments: v occurs strictly inside u.
    if (v.size() < u.size()) {
      for (std::size_t pos = 0; pos + v.size() <= u.size(); ++pos) {
        if (!std::equal(v.begin(), v.end(), u.begin() + static_cast<std::ptrdiff_t>(pos)))
          continue;
        if (nc_weight(u) > weight_max) continue;
        const NCWord pre(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(pos));
        const NCWord post(u.begin() + static_cast<std::ptrdiff_t>(pos + v.size()), u.end());
        spolys.push_back(nc_sub(rs.rules[a].tail,
                                nc_mul(nc_monomial(pre), nc_mul(rs.rules[b].tail, nc_monomial(post)))));
      }
    }
    for (const NCPoly& s : spolys) {
      ++rep.overlaps_checked;
      NCPoly rem = nc_reduce(s, rs.rules);
      if (rem.empty()) continue;
      rep.new_elements.push_back(rem);
      rep.complete = false;
      NCRule nr;
      nc_make_rule(rem, nr);
      rs.rules.push_back(std::move(nr));
      const std::size_t idx = rs.rules.size() - 1;
      for (std::size_t t = 0; t < rs.rules.size(); ++t) {
        queue.emplace_back(t, idx);
        if (t != idx) queue.emplace_back(idx, t);
      }
    }
  }
  return rep;
}

// All words of a given weight with letters in 1..d, in lexicographic
// generation order.
inline void nc_words_of_weight(int d, int weight, NCWord& cur, std::vector<NCWord>& out) {
  if (weight == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = 1; k <= std::min(d, weight); ++k) {
    cur.push_back(k);
    nc_words_of_weight(d, weight - k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<NCWord> nc_words_of_weight(int d, int weight) {
  std::vector<NCWord> out;
  NCWord cur;
  nc_words_of_weight(d, weight, cur, out);
  return out;
}

// Number of irreducible words per weight 0..weight_max.
inline std::map<int, long> normal_form_census(const NCRewriteSystem& rs, int weight_max) {
  std::map<int, long> census;
  for (int w = 0; w <= weight_max; ++w) {
    long count = 0;
    for (const NCWord& word : nc_words_of_weight(rs.d, w))
      if (!nc_word_reducible(word, rs.rules)) ++count;
    census[w] = count;
  }
  return census;
}

// The irreducible words themselves, for goldens and spot checks.
inline std::vector<NCWord> normal_forms_of_weight(const NCRewriteSystem& rs, int weight) {
  std::vector<NCWord> out;
  for (const NCWord& word : nc_words_of_weight(rs.d, weight))
    if (!nc_word_reducible(word, rs.rules)) out.push_back(word);
  return out;
}

// ---------------------------------------------------------------------------
// Square-zero consistency of the companion differential graded Lie algebra.
//
// Generators D_1, ..., D_d are odd (|D_k| = 2k - 1); the boundary acts by
//   del(D_k) = - sum_{a+b=k} D_a D_b
// in the associative shadow (the graded bracket of odd elements x, y is
// x y + y x, so this normalization makes the total element square to zero on
// the nose).  The consistency statement is that
//   [del + D, del + D]  with  D = D_1 + ... + D_d
// decomposes exactly into the defining relation families: the weight
// components through d vanish identically (they restate the boundary
// formula), and the components in weights d+1..2d are precisely the bracket
// sums  sum_{a+b=m} [D_a, D_b]  that present the truncation.

inline NCPoly mc_boundary_of_generator(int d, int k) {
  NCPoly p;
  (void)d;
  for (int a = 1; a < k; ++a) nc_add_term(p, {a, k - a}, Rat(-1));
  return p;
}

// Extends the boundary as an odd derivation: crossing an odd letter flips
// the sign of the remaining action.
inline NCPoly mc_apply_boundary(int d, const NCPoly& p) {
  NCPoly out;
  for (const auto& [w, c] : p) {
    Rat sign = c;
    for (std::size_t t = 0; t < w.size(); ++t) {
      const NCPoly db = mc_boundary_of_generator(d, w[t]);
      const NCWord pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
      const NCWord post(w.begin() + static_cast<std::ptrdiff_t>(t) + 1, w.end());
      for (const auto& [bw, bc] : db)
        nc_add_term(out, nc_concat(pre, nc_concat(bw, post)), sign * bc);
      sign = -sign;
    }
  }
  return out;
}

struct McReport {
  bool boundary_squares_to_zero = false;
  bool low_components_vanish = false;
  bool high_components_match = false;
  bool ok() const { return boundary_squares_to_zero && low_components_vanish && high_components_match; }
};

inline McReport mc_square_zero_report(int d) {
  if (d < 1) throw std::invalid_argument("mc_square_zero_report: d must be positive");
  McReport rep;
  // del^2 = 0 on every generator, already in the free algebra.
  rep.boundary_squares_to_zero = true;
  for (int k = 1; k <= d; ++k)
    if (!mc_apply_boundary(d, mc_boundary_of_generator(d, k)).empty())
      rep.boundary_squares_to_zero = false;
  // E = del(D) + D^2, graded by weight.
  NCPoly D;
  for (int k = 1; k <= d; ++k) nc_add_term(D, {k}, Rat(1));
  NCPoly E = nc_add(mc_apply_boundary(d, D), nc_mul(D, D));
  std::map<int, NCPoly> components;
  for (const auto& [w, c] : E) nc_add_term(components[nc_weight(w)], w, c);
  rep.low_components_vanish = true;
  for (int m = 0; m <= d; ++m)
    if (components.count(m) && !components[m].empty()) rep.low_components_vanish = false;
  rep.high_components_match = true;
  for (int m = d + 1; m <= 2 * d; ++m) {
    // The doubled component must be exactly the bracket sum of weight m,
    // and the component itself must be a nonzero element of the free algebra.
    NCPoly bracket_sum;
    for (int a = std::max(1, m - d); a <= std::min(d, m - 1); ++a) {
      nc_add_term(bracket_sum, {a, m - a}, Rat(1));
      nc_add_term(bracket_sum, {m - a, a}, Rat(1));
    }
    auto it = components.find(m);
    const NCPoly comp = it == components.end() ? NCPoly{} : it->second;
    if (comp.empty() || !nc_sub(nc_scale(comp, Rat(2)), bracket_sum).empty())
      rep.high_components_match = false;
  }
  for (const auto& [m, comp] : components)
    if (m > 2 * d && !comp.empty()) rep.high_components_match = false;
  return rep;
}

inline bool verify_mc_square_zero(int d) { return mc_square_zero_report(d).ok(); }

}  // namespace cgkw
