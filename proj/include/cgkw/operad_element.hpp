#pragma once
// Linear combinations of canonical shuffle tree monomials with rational
// coefficients, and their bilinear signed composition.

#include <map>
#include <stdexcept>

#include "rational.hpp"
#include "shuffle_tree.hpp"
#include "tree_order.hpp"

namespace cgkw {

using Element = std::map<Tree, Rat>;  // canonical trees -> nonzero coefficients

inline Element el_single(Tree t, Rat c = Rat(1)) {
  Element e;
  if (c != 0) e.emplace(std::move(t), std::move(c));
  return e;
}

inline void el_add_term(Element& e, const Tree& t, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = e.emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

inline Element el_add(const Element& a, const Element& b) {
  Element out = a;
  for (const auto& [t, c] : b) el_add_term(out, t, c);
  return out;
}

inline Element el_scale(Element e, const Rat& c) {
  if (c == 0) return {};
  for (auto& [t, v] : e) v *= c;
  return e;
}

inline Element el_sub(const Element& a, const Element& b) {
  return el_add(a, el_scale(b, Rat(-1)));
}

inline bool el_zero(const Element& e) { return e.empty(); }

inline Element el_compose(const Element& a, Label s, const Element& b, const SymbolTable& tab) {
  Element out;
  for (const auto& [ta, ca] : a)
    for (const auto& [tb, cb] : b) {
      SignedTree st = compose_trees(ta, s, tb, tab);
      el_add_term(out, st.tree, ca * cb * st.sign);
    }
  return out;
}

// Greatest term under the order; element must be nonzero.
inline const std::pair<const Tree, Rat>& el_lead(const Element& e, const OrderSpec& os,
                                                 const SymbolTable& tab) {
  auto best = e.begin();
  for (auto it = std::next(e.begin()); it != e.end(); ++it)
    if (tree_cmp(it->first, best->first, os, tab) > 0) best = it;
  return *best;
}

inline std::string el_str(const Element& e, const SymbolTable& tab) {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [t, c] : e) {
    std::string cs = rat_str(c >= 0 ? c : Rat(-c));
    if (first) out += (c < 0 ? "-" : "");
    else out += (c < 0 ? " - " : " + ");
    if (cs != "1") out += cs + "*";
    out += tree_str(t, tab);
    first = false;
  }
  return out;
}

// Homological degree of a nonzero element (read off its first term; callers
// are expected to pass homogeneous elements).
inline int el_hdeg(const Element& e, const SymbolTable& tab) {
  if (e.empty()) throw std::invalid_argument("el_hdeg: zero element");
  return tree_hdeg(e.begin()->first, tab);
}

// All terms share arity (leaf set), homological degree, and weight.
inline bool el_homogeneous(const Element& e, const SymbolTable& tab) {
  if (e.empty()) return true;
  const Tree& t0 = e.begin()->first;
  LabelSet ls = tree_leaves(t0);
  int hd = tree_hdeg(t0, tab), w = tree_weight(t0);
  for (const auto& [t, c] : e)
    if (tree_leaves(t) != ls || tree_hdeg(t, tab) != hd || tree_weight(t) != w) return false;
  return true;
}

}  // namespace cgkw
