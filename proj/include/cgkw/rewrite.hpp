#pragma once
// Rewriting for shuffle operads: oriented rules, full reduction, overlap
// S-polynomials, arity-bounded Buchberger completion, and normal-monomial
// census.  All Koszul signs flow through compose_trees: a reduction step
// rebuilds the divisible monomial as an explicit composition expression
// around the rule and substitutes the rule element linearly.

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "operad_element.hpp"
#include "rng.hpp"

namespace cgkw {

struct Rule {
  Tree lead;     // monic leading monomial
  Element tail;  // rule element = lead + tail; rewriting sends lead to -tail
};

inline Element rule_element(const Rule& r) {
  Element e = r.tail;
  el_add_term(e, r.lead, Rat(1));
  return e;
}

// Orient a nonzero homogeneous element: leading term becomes monic.
inline Rule orient(const Element& e, const OrderSpec& os, const SymbolTable& tab) {
  if (el_zero(e)) throw std::invalid_argument("orient: zero element");
  const auto& [lt, lc] = el_lead(e, os, tab);
  Rule r;
  r.lead = lt;
  Element rest = e;
  rest.erase(lt);
  r.tail = el_scale(std::move(rest), Rat(1) / lc);
  return r;
}

namespace detail {

inline const Tree& subtree_at(const Tree& host, const std::vector<int>& path) {
  const Tree* cur = &host;
  for (int i : path) cur = &cur->kids[i];
  return *cur;
}

inline Tree replace_at(const Tree& host, const std::vector<int>& path, size_t depth,
                       const Tree& replacement) {
  if (depth == path.size()) return replacement;
  Tree out = host;
  out.kids[path[depth]] = replace_at(host.kids[path[depth]], path, depth + 1, replacement);
  return out;  // minima unchanged (replacement keeps the min), so order is intact
}

}  // namespace detail

// The composition expression E[x] determined by an occurrence: the matched
// subtree of `host` is cut out and x (relabeled to the stump minima, with the
// stumps composed back in) is grafted where it stood.  Linear in x; applied
// to the rule's leading monomial it reproduces host up to sign.
inline Element context_apply(const Tree& host, const Occurrence& occ, const LabelSet& pat_leaves,
                             const Element& x, const SymbolTable& tab) {
  const Tree& matched = detail::subtree_at(host, occ.path);
  Label mu = min_leaf(matched);
  Tree U = detail::replace_at(host, occ.path, 0, leaf_tree(mu));

  std::map<Label, Label> to_mins;
  std::vector<std::pair<Label, const Tree*>> plugs;  // (stump min, stump) for real stumps
  for (size_t i = 0; i < pat_leaves.size(); ++i) {
    Label m = min_leaf(occ.stumps[i]);
    to_mins[pat_leaves[i]] = m;
    if (!occ.stumps[i].is_leaf()) plugs.emplace_back(m, &occ.stumps[i]);
  }
  std::sort(plugs.begin(), plugs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Element out;
  for (const auto& [t, c] : x) {
    Element cur = el_single(relabel_tree(t, to_mins), c);
    for (const auto& [m, stump] : plugs) cur = el_compose(cur, m, el_single(*stump), tab);
    if (U.is_leaf()) {
      // Pattern matched the whole host at the root: no outer context.
      for (const auto& [tt, cc] : cur) el_add_term(out, tt, cc);
    } else {
      Element glued = el_compose(el_single(U), mu, cur, tab);
      for (const auto& [tt, cc] : glued) el_add_term(out, tt, cc);
    }
  }
  return out;
}

// Sign s with E[lead] == s * host.
inline int occurrence_sign(const Tree& host, const Occurrence& occ, const Tree& lead,
                           const SymbolTable& tab) {
  Element probe = context_apply(host, occ, tree_leaves(lead), el_single(lead), tab);
  if (probe.size() != 1 || probe.begin()->first != host ||
      (probe.begin()->second != 1 && probe.begin()->second != -1))
    throw std::logic_error("occurrence_sign: context does not reproduce the host monomial");
  return probe.begin()->second == 1 ? 1 : -1;
}

// One reduction step of term (m, c) of e by `rule` at `occ`:
// subtract (c/s) * E[rule element].
inline Element rewrite_step(const Element& e, const Tree& m, const Rat& c, const Rule& rule,
                            const Occurrence& occ, const SymbolTable& tab) {
  LabelSet pl = tree_leaves(rule.lead);
  Element ce = context_apply(m, occ, pl, rule_element(rule), tab);
  auto it = ce.find(m);
  if (it == ce.end() || (it->second != 1 && it->second != -1))
    throw std::logic_error("rewrite_step: bad context sign");
  Rat s = it->second;
  return el_add(e, el_scale(std::move(ce), -c / s));
}

// Full reduction: repeatedly rewrite the greatest divisible term.
inline Element reduce(Element e, const std::vector<Rule>& rules, const OrderSpec& os,
                      const SymbolTable& tab, long step_cap = 2000000) {
  long steps = 0;
  while (true) {
    const Tree* best = nullptr;
    Rat best_c;
    const Rule* best_rule = nullptr;
    std::optional<Occurrence> best_occ;
    for (const auto& [t, c] : e) {
      if (best && tree_cmp(t, *best, os, tab) <= 0) continue;
      for (const Rule& r : rules) {
        auto occs = find_occurrences(r.lead, t, tab);
        if (!occs.empty()) {
          best = &t;
          best_c = c;
          best_rule = &r;
          best_occ = occs.front();
          break;
        }
      }
    }
    if (!best) return e;
    e = rewrite_step(e, *best, best_c, *best_rule, *best_occ, tab);
    if (++steps > step_cap) throw std::runtime_error("reduce: step cap exceeded (order not admissible?)");
  }
}

// Path-randomized reduction; on a completed system the result must agree
// with reduce().
inline Element reduce_random(Element e, const std::vector<Rule>& rules, const OrderSpec& os,
                             const SymbolTable& tab, Rng& rng, long step_cap = 2000000) {
  long steps = 0;
  while (true) {
    struct Redex {
      const Tree* t;
      Rat c;
      const Rule* r;
      Occurrence occ;
    };
    std::vector<Redex> redexes;
    for (const auto& [t, c] : e)
      for (const Rule& r : rules)
        for (Occurrence& o : find_occurrences(r.lead, t, tab)) redexes.push_back({&t, c, &r, o});
    if (redexes.empty()) return e;
    const Redex& pick = redexes[rng.below(static_cast<int64_t>(redexes.size()))];
    e = rewrite_step(e, *pick.t, pick.c, *pick.r, pick.occ, tab);
    if (++steps > step_cap) throw std::runtime_error("reduce_random: step cap exceeded");
  }
}

// ---------------------------------------------------------------------------
// Overlap S-polynomials.

struct CommonMultiple {
  Tree monomial;
  Occurrence occ1, occ2;
};

// All minimal common multiples of the leading monomials of r1, r2 up to
// max_arity: monomials M whose internal vertices are covered jointly by an
// occurrence of each lead, with nonempty overlap.  The vertex-count bound
// w1 + w2 - 1 forces the overlap once the union covers everything.
inline std::vector<CommonMultiple> common_multiples(const Rule& r1, const Rule& r2, int max_arity,
                                                    const SymbolTable& tab) {
  std::vector<CommonMultiple> out;
  const int a1 = tree_arity(r1.lead), a2 = tree_arity(r2.lead);
  const int w1 = tree_weight(r1.lead), w2 = tree_weight(r2.lead);
  std::vector<int> alpha;
  collect_symbols(r1.lead, alpha);
  collect_symbols(r2.lead, alpha);
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());

  const bool same = (&r1 == &r2);
  for (int n = std::max(a1, a2); n <= std::min(max_arity, a1 + a2 - 1); ++n) {
    for (const Tree& M : enumerate_trees(make_labels(n), alpha, tab, w1 + w2 - 1)) {
      const int wM = tree_weight(M);
      if (wM < std::max(w1, w2)) continue;
      auto occs1 = find_occurrences(r1.lead, M, tab);
      if (occs1.empty()) continue;
      auto occs2 = same ? occs1 : find_occurrences(r2.lead, M, tab);
      if (occs2.empty()) continue;
      for (size_t i = 0; i < occs1.size(); ++i)
        for (size_t j = same ? i + 1 : 0; j < occs2.size(); ++j) {
          Subset uni = set_union(occs1[i].covered, occs2[j].covered);
          if (static_cast<int>(uni.size()) != wM) continue;
          if (!intersects(occs1[i].covered, occs2[j].covered)) continue;
          out.push_back({M, occs1[i], occs2[j]});
        }
    }
  }
  return out;
}

// S-polynomial of one common multiple: E1[r1]/s1 - E2[r2]/s2 (the shared
// monomial cancels).
inline Element s_polynomial(const Rule& r1, const Rule& r2, const CommonMultiple& cm,
                            const SymbolTable& tab) {
  auto sign_at = [&](const Element& e) -> int {
    auto it = e.find(cm.monomial);
    if (it == e.end() || (it->second != 1 && it->second != -1))
      throw std::logic_error("s_polynomial: context does not hit the common multiple with sign 1");
    return it->second == 1 ? 1 : -1;
  };
  Element e1 = context_apply(cm.monomial, cm.occ1, tree_leaves(r1.lead), rule_element(r1), tab);
  const int s1 = sign_at(e1);
  Element e2 = context_apply(cm.monomial, cm.occ2, tree_leaves(r2.lead), rule_element(r2), tab);
  const int s2 = sign_at(e2);
  // s1, s2 are +-1, so dividing by them is the same as multiplying.
  return el_sub(el_scale(std::move(e1), Rat(s1)), el_scale(std::move(e2), Rat(s2)));
}

inline std::vector<Element> s_polynomials(const Rule& r1, const Rule& r2, int max_arity,
                                          const SymbolTable& tab) {
  std::vector<Element> out;
  for (const CommonMultiple& cm : common_multiples(r1, r2, max_arity, tab))
    out.push_back(s_polynomial(r1, r2, cm, tab));
  return out;
}

// ---------------------------------------------------------------------------
// Bounded completion.

struct NewRuleEvent {
  size_t i, j;    // rule pair indices at the time of processing
  Tree multiple;  // the overlap monomial
  Rule added;
};

struct CompletionReport {
  int max_arity = 0;
  int max_abs_hdeg = -1;  // negative: no degree bound
  long pairs_processed = 0;
  long multiples_checked = 0;
  std::vector<NewRuleEvent> added;
  bool truncated = true;  // completion is arity-bounded by construction
};

// Completes `input` considering overlaps of arity <= max_arity.  Relations
// homogeneous in arity make the truncation exact: normal monomials in arity
// <= max_arity are unaffected by rules of larger arity.  When max_abs_hdeg
// is nonnegative, overlaps whose |homological degree| exceeds it are skipped
// as well; for alphabets whose generator degrees all have the same sign this
// keeps normal-monomial counts exact for |degree| <= max_abs_hdeg, and it is
// what makes completion terminate for alphabets that are infinite in the
// degree direction (fixed arity, unbounded superscripts).
inline std::pair<std::vector<Rule>, CompletionReport> buchberger_bounded(
    const std::vector<Element>& input, const OrderSpec& os, const SymbolTable& tab,
    int max_arity, int max_abs_hdeg = -1) {
  std::vector<Rule> rules;
  for (const Element& e : input) {
    if (el_zero(e)) continue;
    Element r = reduce(e, rules, os, tab);
    if (!el_zero(r)) rules.push_back(orient(r, os, tab));
  }
  CompletionReport rep;
  rep.max_arity = max_arity;
  rep.max_abs_hdeg = max_abs_hdeg;

  for (size_t j = 0; j < rules.size(); ++j) {
    for (size_t i = 0; i <= j; ++i) {
      rep.pairs_processed++;
      if (el_zero(rules[i].tail) && el_zero(rules[j].tail)) continue;  // monomial pair
      for (const CommonMultiple& cm : common_multiples(rules[i], rules[j], max_arity, tab)) {
        if (max_abs_hdeg >= 0) {
          int h = tree_hdeg(cm.monomial, tab);
          if ((h < 0 ? -h : h) > max_abs_hdeg) continue;
        }
        rep.multiples_checked++;
        Element s = s_polynomial(rules[i], rules[j], cm, tab);
        s = reduce(std::move(s), rules, os, tab);
        if (!el_zero(s)) {
          Rule nr = orient(s, os, tab);
          rep.added.push_back({i, j, cm.monomial, nr});
          rules.push_back(std::move(nr));
        }
      }
    }
  }
  return {std::move(rules), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Normal monomials: trees over the alphabet with no divisible subtree.

inline std::vector<Tree> normal_monomials(const std::vector<Rule>& rules, int arity,
                                          const std::vector<int>& alphabet,
                                          const SymbolTable& tab) {
  std::vector<Tree> out;
  for (const Tree& t : enumerate_trees(make_labels(arity), alphabet, tab)) {
    bool normal = true;
    for (const Rule& r : rules)
      if (divides_tree(r.lead, t, tab)) {
        normal = false;
        break;
      }
    if (normal) out.push_back(t);
  }
  return out;
}

// Graded census: (homological degree, weight) -> count.
inline std::map<std::pair<int, int>, long> graded_census(const std::vector<Tree>& trees,
                                                         const SymbolTable& tab) {
  std::map<std::pair<int, int>, long> out;
  for (const Tree& t : trees) out[{tree_hdeg(t, tab), tree_weight(t)}]++;
  return out;
}

}  // namespace cgkw
