#pragma once
// Relation catalogs for the graded operads attached to the fiber
// compactifications: the odd gravity-type presentation, its even quadratic
// partner, the full hypercommutative-type presentation with chain-splitting
// relations, the inductive spanning trees of the latter, and the binary
// limit family.  Everything is expressed in the shuffle-tree calculus of
// shuffle_tree.hpp / operad_element.hpp, plus a bridge that interprets even
// tree monomials as cohomology classes of the presented rings.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cgk_ring.hpp"
#include "combinat.hpp"
#include "labels.hpp"
#include "linalg.hpp"
#include "operad_element.hpp"
#include "rewrite.hpp"
#include "shuffle_tree.hpp"

namespace cgkw {

// ---------------------------------------------------------------------------
// Symbol catalogs.  Interning is idempotent, so the accessors can be called
// freely; each catalog pins the homological-degree law of its family.

// Odd totally symmetric generators g^a of arity k (0 <= a < d, k >= 2), of
// homological degree -1 - 2d(k-1) + 2d - 2a.
class GravSymbols {
 public:
  GravSymbols(int d, SymbolTable& tab) : d_(d), tab_(&tab) {
    if (d < 1) throw std::invalid_argument("GravSymbols: d >= 1 required");
  }
  int d() const { return d_; }
  SymbolTable& table() const { return *tab_; }
  int operator()(int a, int k) const {
    if (a < 0 || a >= d_ || k < 2) throw std::invalid_argument("GravSymbols: bad (a, k)");
    return tab_->intern("g", a, k, -1 - 2 * d_ * (k - 1) + 2 * d_ - 2 * a);
  }

 private:
  int d_;
  SymbolTable* tab_;
};

inline std::vector<int> grav_alphabet(const GravSymbols& G, int max_arity) {
  std::vector<int> out;
  for (int k = 2; k <= max_arity; ++k)
    for (int a = 0; a < G.d(); ++a) out.push_back(G(a, k));
  return out;
}

// Even totally symmetric generators m^p of arity k, of homological degree
// 2(d(k-1) - 1 - p).  The quadratic partner presentation uses 0 <= p < d
// (the minimal generators); the full presentation admits 0 <= p up to the
// top degree d(k-1) - 1 of the arity-k component, beyond which the
// corresponding class vanishes.
class HyperSymbols {
 public:
  HyperSymbols(int d, SymbolTable& tab) : d_(d), tab_(&tab) {
    if (d < 1) throw std::invalid_argument("HyperSymbols: d >= 1 required");
  }
  int d() const { return d_; }
  SymbolTable& table() const { return *tab_; }
  bool valid(int p, int k) const { return p >= 0 && k >= 2 && p <= d_ * (k - 1) - 1; }
  int operator()(int p, int k) const {
    if (!valid(p, k)) throw std::invalid_argument("HyperSymbols: bad (p, k)");
    return tab_->intern("m", p, k, 2 * (d_ * (k - 1) - 1 - p));
  }

 private:
  int d_;
  SymbolTable* tab_;
};

// Minimal-generator alphabet: exponents below d only.
inline std::vector<int> hyper_alphabet(const HyperSymbols& M, int max_arity) {
  std::vector<int> out;
  for (int k = 2; k <= max_arity; ++k)
    for (int p = 0; p < M.d(); ++p) out.push_back(M(p, k));
  return out;
}

// Commutative binary family v^{(p)} of homological degree 2p, p >= 0.
class BinarySymbols {
 public:
  explicit BinarySymbols(SymbolTable& tab) : tab_(&tab) {}
  SymbolTable& table() const { return *tab_; }
  int operator()(int p) const {
    if (p < 0) throw std::invalid_argument("BinarySymbols: p >= 0 required");
    return tab_->intern("v", p, 2, 2 * p);
  }

 private:
  SymbolTable* tab_;
};

inline std::vector<int> binary_alphabet(const BinarySymbols& N, int max_sup) {
  std::vector<int> out;
  for (int p = 0; p <= max_sup; ++p) out.push_back(N(p));
  return out;
}

// ---------------------------------------------------------------------------
// Monomial builders; node_tree keeps children sorted by minimum, so these
// produce canonical shuffle trees directly.

inline Tree corolla(int sym, const Subset& s) {
  std::vector<Tree> kids;
  kids.reserve(s.size());
  for (Label l : s) kids.push_back(leaf_tree(l));
  return node_tree(sym, std::move(kids));
}

// Corolla on s with one subtree adjoined as an extra child.
inline Tree corolla_with(int sym, const Subset& s, Tree sub) {
  std::vector<Tree> kids;
  kids.reserve(s.size() + 1);
  for (Label l : s) kids.push_back(leaf_tree(l));
  kids.push_back(std::move(sub));
  return node_tree(sym, std::move(kids));
}

// Two-vertex monomial on the label set L: outer vertex on (L \ J) plus the
// inner corolla on J.
inline Tree two_level(int outer_sym, int inner_sym, const LabelSet& L, const Subset& J) {
  return corolla_with(outer_sym, set_minus(L, J), corolla(inner_sym, J));
}

// ---------------------------------------------------------------------------
// Odd presentation.  All defining relations living in arity n (none exist
// below arity 3), with L = [n] and exponents in [0, d):
//   (i)   sum_{{i,j} in J} g^k_{L\{i,j} u *}(g^0_{ij}) = g^k_{(L\J) u *}(g^0_J)
//                                  for L = I u J, |J| >= 3, I nonempty;
//   (ii)  sum_{{i,j} in L} g^k_{L\{i,j} u *}(g^0_{ij}) = 0;
//   (iii) g^a_{(L\J) u *}(g^b_J) = g^{a+b}_{(L\J) u *}(g^0_J)
//                                  for b >= 1, a + b < d;
//   (iv)  g^a_{(L\J) u *}(g^b_J) = 0  for a + b >= d.
// Two-vertex compositions of odd generators carry no sign, so every
// displayed coefficient is +1 (and -1 for the sides moved across).
inline std::vector<Element> grav_relations(const GravSymbols& G, int n) {
  std::vector<Element> out;
  if (n < 3) return out;
  const int d = G.d();
  const LabelSet L = make_labels(n);

  for (const Subset& J : subsets_of_size_at_least(L, 3)) {
    if (static_cast<int>(J.size()) == n) continue;
    const int ko = n - static_cast<int>(J.size()) + 1;
    for (int k = 0; k < d; ++k) {
      Element e;
      for (size_t u = 0; u < J.size(); ++u)
        for (size_t v = u + 1; v < J.size(); ++v)
          el_add_term(e, two_level(G(k, n - 1), G(0, 2), L, {J[u], J[v]}), Rat(1));
      el_add_term(e, two_level(G(k, ko), G(0, static_cast<int>(J.size())), L, J), Rat(-1));
      out.push_back(std::move(e));
    }
  }

  for (int k = 0; k < d; ++k) {
    Element e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        el_add_term(e, two_level(G(k, n - 1), G(0, 2), L, {L[u], L[v]}), Rat(1));
    out.push_back(std::move(e));
  }

  for (const Subset& J : subsets_of_size_at_least(L, 2)) {
    if (static_cast<int>(J.size()) == n) continue;
    const int ko = n - static_cast<int>(J.size()) + 1;
    const int ki = static_cast<int>(J.size());
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (a + b < d) {
          if (b == 0) continue;  // both sides coincide
          Element e;
          el_add_term(e, two_level(G(a, ko), G(b, ki), L, J), Rat(1));
          el_add_term(e, two_level(G(a + b, ko), G(0, ki), L, J), Rat(-1));
          out.push_back(std::move(e));
        } else {
          out.push_back(el_single(two_level(G(a, ko), G(b, ki), L, J)));
        }
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Even quadratic partner.

// Pair-transfer sum T_{ij}(p): over splittings L = I u J with {i,j} in J and
// I nonempty, and over p = a + b with both exponents in [0, d):
//   m^a_{I u *}(m^b_J).
inline Element pair_transfer_sum(const HyperSymbols& M, int n, Label i, Label j, int p) {
  const int d = M.d();
  const LabelSet L = make_labels(n);
  Element e;
  for (const Subset& J : subsets_of_size_at_least(L, 2)) {
    if (static_cast<int>(J.size()) == n) continue;
    if (!contains(J, i) || !contains(J, j)) continue;
    const int ko = n - static_cast<int>(J.size()) + 1;
    const int ki = static_cast<int>(J.size());
    for (int b = std::max(0, p - d + 1); b < d && b <= p; ++b)
      el_add_term(e, two_level(M(p - b, ko), M(b, ki), L, J), Rat(1));
  }
  return e;
}

// Relations of the quadratic partner in arity n: the differences
//   T_{ij}(p) - T_{n-1,n}(p)  for {i,j} != {n-1, n},
// with p running over [p_lo, p_hi].
inline std::vector<Element> hyper_quadratic_relations(const HyperSymbols& M, int n, int p_lo,
                                                      int p_hi) {
  std::vector<Element> out;
  if (n < 3) return out;
  for (int p = p_lo; p <= p_hi; ++p)
    for (Label i = 1; i <= n; ++i)
      for (Label j = i + 1; j <= n; ++j) {
        if (i == n - 1 && j == n) continue;
        out.push_back(el_sub(pair_transfer_sum(M, n, i, j, p),
                             pair_transfer_sum(M, n, n - 1, n, p)));
      }
  return out;
}

// Default exponent window [d-1, 2d-2]: the windows whose sums use every
// minimal generator and match the quadratic parts of the full presentation.
inline std::vector<Element> hyper_quadratic_relations(const HyperSymbols& M, int n) {
  return hyper_quadratic_relations(M, n, M.d() - 1, 2 * M.d() - 2);
}

// ---------------------------------------------------------------------------
// Shape-diagonal pairing between the two quadratic presentations: replace
// every odd symbol g^a by the even symbol m^{d-1-a} on the same underlying
// tree, and extract coefficients along this identification.

inline Tree dual_tree(const Tree& t, const GravSymbols& G, const HyperSymbols& M) {
  if (t.is_leaf()) return t;
  std::vector<Tree> kids;
  kids.reserve(t.kids.size());
  for (const Tree& k : t.kids) kids.push_back(dual_tree(k, G, M));
  const GenSymbol& s = G.table()[t.sym];
  return node_tree(M(G.d() - 1 - s.sup, s.arity), std::move(kids));
}

inline Element dual_element(const Element& e, const GravSymbols& G, const HyperSymbols& M) {
  Element out;
  for (const auto& [t, c] : e) el_add_term(out, dual_tree(t, G, M), c);
  return out;
}

struct PairingReport {
  long monomials = 0;      // weight-2 monomials of the even side in arity n
  long odd_rank = 0;       // rank of the dualized odd relation span
  long even_rank = 0;      // rank of the even relation span
  bool orthogonal = true;  // every odd relation pairs to zero with every even one
  bool complementary = false;  // odd_rank + even_rank == monomials
};

// The two relation spans, read in the same weight-2 coordinates via the
// shape-diagonal identification, must be orthogonal complements.
inline PairingReport pairing_check(const GravSymbols& G, const HyperSymbols& M, int n) {
  if (G.d() != M.d()) throw std::invalid_argument("pairing_check: mismatched d");
  if (&G.table() != &M.table())
    throw std::invalid_argument("pairing_check: catalogs must share a symbol table");
  const SymbolTable& tab = M.table();

  std::vector<Element> odd;
  for (const Element& r : grav_relations(G, n)) odd.push_back(dual_element(r, G, M));
  std::vector<Element> even = hyper_quadratic_relations(M, n);

  PairingReport rep;
  for (const Tree& t : enumerate_trees(make_labels(n), hyper_alphabet(M, n), tab, 2))
    if (tree_weight(t) == 2) rep.monomials++;

  for (const Element& x : odd)
    for (const Element& y : even) {
      Rat dot(0);
      for (const auto& [t, c] : x) {
        auto it = y.find(t);
        if (it != y.end()) dot += c * it->second;
      }
      if (dot != 0) rep.orthogonal = false;
    }

  RowSpace<Tree, std::less<Tree>> ro, re;
  for (const Element& x : odd) ro.insert(ro.make_row({x.begin(), x.end()}));
  for (const Element& y : even) re.insert(re.make_row({y.begin(), y.end()}));
  rep.odd_rank = static_cast<long>(ro.rank());
  rep.even_rank = static_cast<long>(re.rank());
  rep.complementary = rep.odd_rank + rep.even_rank == rep.monomials;
  return rep;
}

// ---------------------------------------------------------------------------
// Full presentation: chain-splitting sums.

// For blocks S_1 u ... u S_q = [n] with {i,j} in S_1 and exponents p_1 + ...
// + p_q = m - q + 1 >= 0, the caterpillar monomial
//   m^{p_q}_{S_q u *}( ... m^{p_2}_{S_2 u *}( m^{p_1}_{S_1} ) ... ),
// summed over all chains and exponent splittings; terms containing a vertex
// whose exponent exceeds the top degree of its component are dropped (those
// classes vanish).  Interpreted in the cohomology ring, the sum equals the
// m-th power class of the pair {i,j}; in particular it is a relation for
// m >= d.
inline Element chain_splitting_sum(const HyperSymbols& M, int n, Label i, Label j, int m) {
  const LabelSet L = make_labels(n);
  Element out;
  for (int q = 1; q <= n - 1 && q <= m + 1; ++q)
    for (const auto& blocks : chain_splittings(L, i, j, q)) {
      if (blocks[0].size() < 2) continue;
      for (const auto& ps : nonneg_compositions(m - q + 1, q)) {
        bool ok = M.valid(ps[0], static_cast<int>(blocks[0].size()));
        for (int t = 1; t < q && ok; ++t)
          ok = M.valid(ps[t], static_cast<int>(blocks[t].size()) + 1);
        if (!ok) continue;
        Tree cur = corolla(M(ps[0], static_cast<int>(blocks[0].size())), blocks[0]);
        for (int t = 1; t < q; ++t)
          cur = corolla_with(M(ps[t], static_cast<int>(blocks[t].size()) + 1), blocks[t],
                             std::move(cur));
        el_add_term(out, cur, Rat(1));
      }
    }
  return out;
}

// Weight-2 terms whose vertices all carry minimal-generator exponents
// (below d): the quadratic part with respect to the minimal generators.
inline Element quadratic_minimal_part(const Element& e, const HyperSymbols& M) {
  const SymbolTable& tab = M.table();
  Element out;
  for (const auto& [t, c] : e) {
    if (tree_weight(t) != 2) continue;
    std::vector<int> syms;
    collect_symbols(t, syms);
    bool minimal = true;
    for (int s : syms)
      if (tab[s].sup >= M.d()) minimal = false;
    if (minimal) el_add_term(out, t, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inductive spanning trees for the full presentation: over the minimal
// alphabet, a monomial qualifies iff no internal vertex has, among its
// children other than the last (the child with the largest minimum), a
// subtree rooted at the binary top-exponent symbol m^{d-1}.
inline bool hyper_basis_admissible(const Tree& t, const HyperSymbols& M) {
  if (t.is_leaf()) return true;
  const int banned = M(M.d() - 1, 2);
  for (size_t c = 0; c + 1 < t.kids.size(); ++c)
    if (!t.kids[c].is_leaf() && t.kids[c].sym == banned) return false;
  for (const Tree& k : t.kids)
    if (!hyper_basis_admissible(k, M)) return false;
  return true;
}

inline std::vector<Tree> hyper_basis_trees(const HyperSymbols& M, int n) {
  std::vector<Tree> out;
  for (const Tree& t : enumerate_trees(make_labels(n), hyper_alphabet(M, n), M.table()))
    if (hyper_basis_admissible(t, M)) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------
// Binary limit family: commutative binary generators v^{(p)} of degree 2p
// subject to generalized associativity.

// V_{ij}(m) = sum_{p+q=m} v^{(p)}( v^{(q)}(i,j), k ) on the labels {1,2,3}.
inline Element binary_pair_sum(const BinarySymbols& N, Label i, Label j, int m) {
  if (i < 1 || j > 3 || i >= j) throw std::invalid_argument("binary_pair_sum: bad pair");
  const LabelSet L = make_labels(3);
  Element e;
  for (int p = 0; p <= m; ++p)
    el_add_term(e, two_level(N(p), N(m - p), L, {i, j}), Rat(1));
  return e;
}

// The translates of generalized associativity in degree parameter m:
//   V_12(m) - V_23(m)  and  V_13(m) - V_23(m).
inline std::vector<Element> binary_limit_relations(const BinarySymbols& N, int m) {
  return {el_sub(binary_pair_sum(N, 1, 2, m), binary_pair_sum(N, 2, 3, m)),
          el_sub(binary_pair_sum(N, 1, 3, m), binary_pair_sum(N, 2, 3, m))};
}

inline std::vector<Element> binary_limit_relations_upto(const BinarySymbols& N, int m_max) {
  std::vector<Element> out;
  for (int m = 0; m <= m_max; ++m)
    for (Element& e : binary_limit_relations(N, m)) out.push_back(std::move(e));
  return out;
}

// ---------------------------------------------------------------------------
// Rank-based graded dimensions of presented components.

// Ideal span of a homogeneous relation list inside the weight-w component of
// arity n: all context applications of the relations into weight-w hosts.
// `rels` must be the complete catalog over every arity <= n - the ideal in
// arity n contains embeddings of the lower-arity relations as well.
inline std::vector<Element> ideal_component(const std::vector<Element>& rels, int n, int w,
                                            const std::vector<int>& alphabet,
                                            const SymbolTable& tab) {
  std::vector<Element> out;
  std::vector<Tree> hosts;
  for (const Tree& t : enumerate_trees(make_labels(n), alphabet, tab, w))
    if (tree_weight(t) == w) hosts.push_back(t);
  for (const Element& r : rels) {
    if (el_zero(r)) continue;
    const Tree& pat = r.begin()->first;
    const LabelSet pl = tree_leaves(pat);
    for (const Tree& h : hosts)
      for (const Occurrence& occ : find_occurrences(pat, h, tab)) {
        Element e = context_apply(h, occ, pl, r, tab);
        if (!el_zero(e)) out.push_back(std::move(e));
      }
  }
  return out;
}

// Graded dimensions of free-modulo-ideal components, weights 1 .. n-1.
struct GradedDims {
  std::map<int, long> by_hdeg;
  std::map<std::pair<int, int>, long> by_hdeg_weight;  // (hdeg, weight)
};

inline GradedDims quotient_dims(const std::vector<Element>& rels, int n,
                                const std::vector<int>& alphabet, const SymbolTable& tab) {
  GradedDims out;
  for (int w = 1; w <= n - 1; ++w) {
    std::map<int, long> count;
    for (const Tree& t : enumerate_trees(make_labels(n), alphabet, tab, w))
      if (tree_weight(t) == w) count[tree_hdeg(t, tab)]++;
    std::map<int, RowSpace<Tree, std::less<Tree>>> spans;
    for (const Element& e : ideal_component(rels, n, w, alphabet, tab)) {
      auto& sp = spans.try_emplace(el_hdeg(e, tab)).first->second;
      sp.insert(sp.make_row({e.begin(), e.end()}));
    }
    for (const auto& [h, c] : count) {
      auto it = spans.find(h);
      long dim = c - (it == spans.end() ? 0 : static_cast<long>(it->second.rank()));
      if (dim != 0) {
        out.by_hdeg[h] += dim;
        out.by_hdeg_weight[{h, w}] += dim;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ring interpretation of even tree monomials: a vertex becomes the power
// class of its full input set, and children are plugged in with compose_at.
// All classes involved are even, so no signs arise and slot order is
// immaterial.

inline CohClass tree_class(const Tree& t, const HyperSymbols& M, int d, MonoOrder ord) {
  if (t.is_leaf()) throw std::invalid_argument("tree_class: bare leaf");
  LabelSet vertex_labels;
  for (const Tree& k : t.kids) vertex_labels.push_back(min_leaf(k));
  const CGKRing& R = ring_registry(d, vertex_labels, ord);
  const GenSymbol& s = M.table()[t.sym];
  CohClass acc = mu_class(R, s.sup);
  for (const Tree& k : t.kids)
    if (!k.is_leaf()) acc = compose_at(acc, min_leaf(k), tree_class(k, M, d, ord));
  return acc;
}

inline CohClass element_class(const Element& e, const HyperSymbols& M, const CGKRing& R) {
  CohClass acc{&R, poly_zero()};
  for (const auto& [t, c] : e) {
    if (tree_leaves(t) != R.labels())
      throw std::invalid_argument("element_class: leaf set differs from ring labels");
    acc = class_add(acc, class_scale(tree_class(t, M, R.d(), R.order()), c));
  }
  return acc;
}

}  // namespace cgkw
