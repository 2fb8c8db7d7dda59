#pragma once
// Admissible orderings on shuffle tree monomials, built as a stack of
// comparison stages.  A stage either decides (returns +/-1) or defers.
// The stack always ends with a total tie-break, so the comparison is a
// total order on canonical tree monomials with equal leaf sets.
//
// Stages:
//   WeightSupPositive — compare the count of vertices with superscript > 0
//                       (more = greater);
//   WeightArityBig    — compare the count of vertices of arity > 2
//                       (more = greater);
//   QM                — per-leaf path words in the quantum-monomial monoid
//                       <x,y,q | xq=qx, yq=qy, yx=xyq>: arity>2 symbols map
//                       to x, arity-2 symbols to y; words are compared by
//                       (fewer x, then more y, then more q); the stage
//                       decides only when all leaves agree weakly with at
//                       least one strict;
//   RPlex             — root-weighted path lexicographic: leaf path words
//                       read in increasing leaf label order, words compared
//                       by (shorter wins; ties from the root side with
//                       symbol order: smaller superscript wins, then larger
//                       arity, then family name); if all words agree, the
//                       planar leaf sequences are compared lexicographically
//                       (larger wins); a structural comparison closes any
//                       remaining tie.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "shuffle_tree.hpp"

namespace cgkw {

struct OrderSpec {
  enum class Stage { WeightSupPositive, WeightArityBig, QM, RPlex };
  std::string name;
  std::vector<Stage> stages;

  static OrderSpec gravd() {
    return {"gravd",
            {Stage::WeightSupPositive, Stage::WeightArityBig, Stage::QM, Stage::RPlex}};
  }
  static OrderSpec rplex() { return {"rplex", {Stage::RPlex}}; }
  static OrderSpec by_name(const std::string& n) {
    if (n == "gravd") return gravd();
    if (n == "rplex") return rplex();
    throw std::invalid_argument("unknown order preset: " + n);
  }
};

namespace detail {

inline int count_sup_positive(const Tree& t, const SymbolTable& tab) {
  if (t.is_leaf()) return 0;
  int c = tab[t.sym].sup > 0 ? 1 : 0;
  for (const Tree& k : t.kids) c += count_sup_positive(k, tab);
  return c;
}

inline int count_arity_big(const Tree& t, const SymbolTable& tab) {
  if (t.is_leaf()) return 0;
  int c = tab[t.sym].arity > 2 ? 1 : 0;
  for (const Tree& k : t.kids) c += count_arity_big(k, tab);
  return c;
}

inline void path_words(const Tree& t, std::vector<int>& path,
                       std::map<Label, std::vector<int>>& out) {
  if (t.is_leaf()) {
    out[t.leaf] = path;
    return;
  }
  path.push_back(t.sym);
  for (const Tree& k : t.kids) path_words(k, path, out);
  path.pop_back();
}

struct QMTriple {
  long k = 0, l = 0, m = 0;  // normal form x^k y^l q^m
};

// Append one letter on the right: x = (1,0,0), y = (0,1,0);
// product rule (k,l,m)(k',l',m') = (k+k', l+l', m+m'+l*k').
inline QMTriple qm_of_word(const std::vector<int>& word, const SymbolTable& tab) {
  QMTriple w;
  for (int sym : word) {
    if (tab[sym].arity > 2) {
      w.m += w.l;  // y's jump over the new x, each producing a q
      w.k += 1;
    } else {
      w.l += 1;
    }
  }
  return w;
}

// Word order: fewer x greater; then more y; then more q.
inline int qm_cmp(const QMTriple& a, const QMTriple& b) {
  if (a.k != b.k) return a.k < b.k ? 1 : -1;
  if (a.l != b.l) return a.l > b.l ? 1 : -1;
  if (a.m != b.m) return a.m > b.m ? 1 : -1;
  return 0;
}

// Symbol order for the RPlex stage: smaller superscript greater, then larger
// arity, then lexicographically smaller family name.
inline int rplex_sym_cmp(int a, int b, const SymbolTable& tab) {
  const GenSymbol &sa = tab[a], &sb = tab[b];
  if (sa.sup != sb.sup) return sa.sup < sb.sup ? 1 : -1;
  if (sa.arity != sb.arity) return sa.arity > sb.arity ? 1 : -1;
  if (sa.family != sb.family) return sa.family < sb.family ? 1 : -1;
  return 0;
}

// Shorter words are greater (a leaf closer to the root dominates); ties are
// broken symbol-by-symbol from the root side.  Shorter-greater is what makes
// the leafwise scan compatible with compositions: appending a common suffix
// or prepending a common prefix preserves both the length comparison and the
// first symbol difference.
inline int rplex_word_cmp(const std::vector<int>& a, const std::vector<int>& b,
                          const SymbolTable& tab) {
  if (a.size() != b.size()) return a.size() < b.size() ? 1 : -1;
  for (size_t i = 0; i < a.size(); ++i)
    if (int c = rplex_sym_cmp(a[i], b[i], tab)) return c;
  return 0;
}

inline void planar_leaves(const Tree& t, std::vector<Label>& out) {
  if (t.is_leaf()) out.push_back(t.leaf);
  else
    for (const Tree& k : t.kids) planar_leaves(k, out);
}

}  // namespace detail

// Total comparison of tree monomials with equal leaf sets: +1 if a > b,
// -1 if a < b, 0 iff equal trees.
inline int tree_cmp(const Tree& a, const Tree& b, const OrderSpec& os, const SymbolTable& tab) {
  if (a == b) return 0;

  std::map<Label, std::vector<int>> wa, wb;
  bool words_ready = false;
  auto ensure_words = [&] {
    if (words_ready) return;
    std::vector<int> path;
    detail::path_words(a, path, wa);
    detail::path_words(b, path, wb);
    if (wa.size() != wb.size() ||
        !std::equal(wa.begin(), wa.end(), wb.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first; }))
      throw std::invalid_argument("tree_cmp: different leaf sets");
    words_ready = true;
  };

  for (OrderSpec::Stage st : os.stages) {
    switch (st) {
      case OrderSpec::Stage::WeightSupPositive: {
        int ca = detail::count_sup_positive(a, tab), cb = detail::count_sup_positive(b, tab);
        if (ca != cb) return ca > cb ? 1 : -1;
        break;
      }
      case OrderSpec::Stage::WeightArityBig: {
        int ca = detail::count_arity_big(a, tab), cb = detail::count_arity_big(b, tab);
        if (ca != cb) return ca > cb ? 1 : -1;
        break;
      }
      case OrderSpec::Stage::QM: {
        ensure_words();
        bool some_gt = false, some_lt = false;
        for (auto& [leaf, word] : wa) {
          auto it = wb.find(leaf);
          if (it == wb.end()) throw std::invalid_argument("tree_cmp: leaf sets differ");
          int c = detail::qm_cmp(detail::qm_of_word(word, tab),
                                 detail::qm_of_word(it->second, tab));
          if (c > 0) some_gt = true;
          if (c < 0) some_lt = true;
        }
        if (some_gt && !some_lt) return 1;
        if (some_lt && !some_gt) return -1;
        break;  // equal or incomparable: defer
      }
      case OrderSpec::Stage::RPlex: {
        ensure_words();
        // Scan leaves in increasing label order.  Composition leaves the
        // words of labels below the slot untouched and extends the others by
        // common prefixes/suffixes, so the first deciding leaf is stable.
        for (auto it = wa.begin(); it != wa.end(); ++it) {
          int c = detail::rplex_word_cmp(it->second, wb.at(it->first), tab);
          if (c) return c;
        }
        std::vector<Label> pa, pb;
        detail::planar_leaves(a, pa);
        detail::planar_leaves(b, pb);
        if (pa != pb) return pa > pb ? 1 : -1;
        break;
      }
    }
  }
  return tree_cmp_structural(a, b);
}

}  // namespace cgkw
