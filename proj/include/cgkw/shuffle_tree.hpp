#pragma once
// Shuffle tree monomials for free graded shuffle operads.
//
// A tree monomial is a rooted tree whose leaves carry distinct labels and
// whose internal vertices carry generator symbols; at every vertex the
// children are ordered by their minimal leaf label (the shuffle condition).
// The canonical vertex enumeration is depth-first (pre-order) following that
// child order.  Composition grafts one tree into a leaf of another,
// re-canonicalizes, and picks up the Koszul sign of the induced permutation
// of odd generator symbols.

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "labels.hpp"

namespace cgkw {

struct GenSymbol {
  std::string family;  // print prefix: "g", "m", "mu", "nu", ...
  int sup;             // superscript
  int arity;           // >= 2
  int hdeg;            // homological degree
  bool odd() const { return ((hdeg % 2) + 2) % 2 == 1; }
  std::string name() const { return family + std::to_string(sup); }
};

class SymbolTable {
 public:
  int intern(const std::string& family, int sup, int arity, int hdeg) {
    auto key = std::make_tuple(family, sup, arity);
    auto it = index_.find(key);
    if (it != index_.end()) {
      if (syms_[it->second].hdeg != hdeg)
        throw std::logic_error("symbol " + family + std::to_string(sup) +
                               " re-interned with a different degree");
      return it->second;
    }
    syms_.push_back({family, sup, arity, hdeg});
    int id = static_cast<int>(syms_.size()) - 1;
    index_.emplace(std::move(key), id);
    return id;
  }

  int find(const std::string& family, int sup, int arity) const {
    auto it = index_.find(std::make_tuple(family, sup, arity));
    return it == index_.end() ? -1 : it->second;
  }

  const GenSymbol& operator[](int id) const { return syms_.at(id); }
  int size() const { return static_cast<int>(syms_.size()); }

 private:
  std::vector<GenSymbol> syms_;
  std::map<std::tuple<std::string, int, int>, int> index_;
};

struct Tree {
  int sym = -1;  // -1 = leaf
  Label leaf = 0;
  std::vector<Tree> kids;

  bool is_leaf() const { return sym < 0; }
};

inline Label min_leaf(const Tree& t) {
  if (t.is_leaf()) return t.leaf;
  Label m = min_leaf(t.kids.front());  // children sorted by min leaf
  return m;
}

inline Tree leaf_tree(Label l) {
  Tree t;
  t.leaf = l;
  return t;
}

// Builds an internal node, sorting children into canonical shuffle order.
inline Tree node_tree(int sym, std::vector<Tree> kids) {
  Tree t;
  t.sym = sym;
  t.kids = std::move(kids);
  std::sort(t.kids.begin(), t.kids.end(),
            [](const Tree& a, const Tree& b) { return min_leaf(a) < min_leaf(b); });
  return t;
}

inline int tree_cmp_structural(const Tree& a, const Tree& b) {
  if (a.sym != b.sym) return a.sym < b.sym ? -1 : 1;
  if (a.is_leaf()) return a.leaf == b.leaf ? 0 : (a.leaf < b.leaf ? -1 : 1);
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (int c = tree_cmp_structural(a.kids[i], b.kids[i])) return c;
  return 0;
}

inline bool operator==(const Tree& a, const Tree& b) { return tree_cmp_structural(a, b) == 0; }
inline bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }
inline bool operator<(const Tree& a, const Tree& b) { return tree_cmp_structural(a, b) < 0; }

inline void collect_leaves(const Tree& t, LabelSet& out) {
  if (t.is_leaf()) out.push_back(t.leaf);
  else
    for (const Tree& k : t.kids) collect_leaves(k, out);
}

inline LabelSet tree_leaves(const Tree& t) {
  LabelSet out;
  collect_leaves(t, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline int tree_arity(const Tree& t) {
  if (t.is_leaf()) return 1;
  int a = 0;
  for (const Tree& k : t.kids) a += tree_arity(k);
  return a;
}

inline int tree_weight(const Tree& t) {  // number of internal vertices
  if (t.is_leaf()) return 0;
  int w = 1;
  for (const Tree& k : t.kids) w += tree_weight(k);
  return w;
}

inline int tree_hdeg(const Tree& t, const SymbolTable& tab) {
  if (t.is_leaf()) return 0;
  int h = tab[t.sym].hdeg;
  for (const Tree& k : t.kids) h += tree_hdeg(k, tab);
  return h;
}

inline void collect_symbols(const Tree& t, std::vector<int>& out) {
  if (t.is_leaf()) return;
  out.push_back(t.sym);
  for (const Tree& k : t.kids) collect_symbols(k, out);
}

inline bool tree_canonical(const Tree& t) {
  if (t.is_leaf()) return true;
  for (size_t i = 1; i < t.kids.size(); ++i)
    if (min_leaf(t.kids[i - 1]) >= min_leaf(t.kids[i])) return false;
  for (const Tree& k : t.kids)
    if (!tree_canonical(k)) return false;
  return true;
}

inline std::string tree_str(const Tree& t, const SymbolTable& tab) {
  if (t.is_leaf()) return label_str(t.leaf);
  std::string out = tab[t.sym].name() + "[";
  for (size_t i = 0; i < t.kids.size(); ++i) {
    if (i) out += ",";
    out += tree_str(t.kids[i], tab);
  }
  out += "]";
  return out;
}

// Parses the textual format: tree := leaf | family sup "[" tree {"," tree} "]",
// leaf := integer | "*".  Symbols are resolved against `tab` by
// (family, superscript, arity); unknown symbols are an error.
inline Tree parse_tree(const std::string& s, const SymbolTable& tab) {
  size_t pos = 0;
  auto fail = [&](const std::string& why) -> Tree {
    throw std::invalid_argument("parse_tree: " + why + " at position " + std::to_string(pos) +
                                " in \"" + s + "\"");
  };
  auto rec = [&](auto&& self) -> Tree {
    if (pos >= s.size()) return fail("unexpected end");
    if (s[pos] == '*') {
      ++pos;
      return leaf_tree(kStar);
    }
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return leaf_tree(std::stoi(s.substr(start, pos - start)));
    }
    if (!std::isalpha(static_cast<unsigned char>(s[pos]))) return fail("expected leaf or symbol");
    size_t fs = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string family = s.substr(fs, pos - fs);
    size_t ds = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (ds == pos) return fail("symbol missing superscript");
    int sup = std::stoi(s.substr(ds, pos - ds));
    if (pos >= s.size() || s[pos] != '[') return fail("expected '['");
    ++pos;
    std::vector<Tree> kids;
    kids.push_back(self(self));
    while (pos < s.size() && s[pos] == ',') {
      ++pos;
      kids.push_back(self(self));
    }
    if (pos >= s.size() || s[pos] != ']') return fail("expected ']'");
    ++pos;
    int id = tab.find(family, sup, static_cast<int>(kids.size()));
    if (id < 0)
      return fail("unknown symbol " + family + std::to_string(sup) + "/" +
                  std::to_string(kids.size()));
    return node_tree(id, std::move(kids));
  };
  Tree t = rec(rec);
  if (pos != s.size()) fail("trailing characters");
  LabelSet ls = tree_leaves(t);
  if (!is_sorted_unique(ls)) fail("duplicate leaf labels");
  return t;
}

// ---------------------------------------------------------------------------
// Composition with Koszul signs.
//
// Vertices of `outer` are tagged 0..k-1 in canonical order, vertices of
// `inner` k..k+l-1.  After grafting and re-canonicalizing, the new canonical
// order reads off a permutation of tags; the sign is the product over
// inversions of (-1)^{parity * parity}.

namespace detail {

struct TTree {
  int sym = -1;
  Label leaf = 0;
  int tag = -1;
  std::vector<TTree> kids;
  bool is_leaf() const { return sym < 0; }
};

inline TTree tag_copy(const Tree& t, int& counter) {
  TTree out;
  out.sym = t.sym;
  out.leaf = t.leaf;
  if (!t.is_leaf()) {
    out.tag = counter++;
    out.kids.reserve(t.kids.size());
    for (const Tree& k : t.kids) out.kids.push_back(tag_copy(k, counter));
  }
  return out;
}

inline Label tmin(const TTree& t) {
  if (t.is_leaf()) return t.leaf;
  Label m = kStar + 1;
  for (const TTree& k : t.kids) m = std::min(m, tmin(k));
  return m;
}

inline bool graft(TTree& t, Label s, const TTree& inner) {
  if (t.is_leaf()) {
    if (t.leaf == s) {
      t = inner;
      return true;
    }
    return false;
  }
  for (TTree& k : t.kids)
    if (graft(k, s, inner)) return true;
  return false;
}

inline void canon(TTree& t) {
  if (t.is_leaf()) return;
  for (TTree& k : t.kids) canon(k);
  std::sort(t.kids.begin(), t.kids.end(),
            [](const TTree& a, const TTree& b) { return tmin(a) < tmin(b); });
}

inline void dfs_tags(const TTree& t, const SymbolTable& tab, std::vector<std::pair<int, bool>>& out) {
  if (t.is_leaf()) return;
  out.emplace_back(t.tag, tab[t.sym].odd());
  for (const TTree& k : t.kids) dfs_tags(k, tab, out);
}

inline Tree strip(const TTree& t) {
  Tree out;
  out.sym = t.sym;
  out.leaf = t.leaf;
  out.kids.reserve(t.kids.size());
  for (const TTree& k : t.kids) out.kids.push_back(strip(k));
  return out;
}

}  // namespace detail

struct SignedTree {
  Tree tree;
  int sign = 1;
};

inline SignedTree compose_trees(const Tree& outer, Label s, const Tree& inner,
                                const SymbolTable& tab) {
  LabelSet lo = tree_leaves(outer);
  if (!contains(lo, s)) throw std::invalid_argument("compose_trees: slot is not a leaf of outer");
  LabelSet li = tree_leaves(inner);
  if (intersects(li, set_minus(lo, {s})))
    throw std::invalid_argument("compose_trees: leaf label clash");

  int counter = 0;
  detail::TTree o = detail::tag_copy(outer, counter);
  detail::TTree i = detail::tag_copy(inner, counter);
  if (!detail::graft(o, s, i)) throw std::logic_error("compose_trees: graft failed");
  detail::canon(o);

  std::vector<std::pair<int, bool>> seq;
  detail::dfs_tags(o, tab, seq);
  int sign = 1;
  for (size_t a = 0; a < seq.size(); ++a)
    for (size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a].first > seq[b].first && seq[a].second && seq[b].second) sign = -sign;
  return {detail::strip(o), sign};
}

// Order-preserving leaf relabeling (no sign, no reordering).
inline Tree relabel_tree(const Tree& t, const std::map<Label, Label>& m) {
  if (t.is_leaf()) {
    auto it = m.find(t.leaf);
    return leaf_tree(it == m.end() ? t.leaf : it->second);
  }
  std::vector<Tree> kids;
  kids.reserve(t.kids.size());
  for (const Tree& k : t.kids) kids.push_back(relabel_tree(k, m));
  return node_tree(t.sym, std::move(kids));
}

// ---------------------------------------------------------------------------
// Enumeration of all canonical tree monomials with a given leaf set over an
// alphabet of generator symbols, with an optional cap on internal vertices.

namespace detail {

// Unordered partitions of the sorted set s into exactly k nonempty blocks,
// blocks listed in increasing order of their minima.
inline std::vector<std::vector<Subset>> partitions_into(const Subset& s, int k) {
  std::vector<std::vector<Subset>> out;
  const int n = static_cast<int>(s.size());
  if (k < 1 || n < k) return out;
  std::vector<int> assign(n, 0);
  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (pos == n) {
      if (used != k) return;
      std::vector<Subset> blocks(k);
      for (int t = 0; t < n; ++t) blocks[assign[t]].push_back(s[t]);
      out.push_back(std::move(blocks));
      return;
    }
    for (int b = 0; b <= used && b < k; ++b) {
      assign[pos] = b;
      self(self, pos + 1, used + (b == used ? 1 : 0));
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace detail

inline std::vector<Tree> enumerate_trees(const LabelSet& labels, const std::vector<int>& alphabet,
                                         const SymbolTable& tab, int max_weight = -1) {
  if (labels.size() == 1) return {leaf_tree(labels[0])};
  std::vector<Tree> out;
  if (max_weight == 0) return out;
  for (int sym : alphabet) {
    const int k = tab[sym].arity;
    if (k < 2 || k > static_cast<int>(labels.size())) continue;
    for (const auto& blocks : detail::partitions_into(labels, k)) {
      // Recursive subtree choices per block with a shared weight budget.
      std::vector<std::vector<Tree>> choices(k);
      bool ok = true;
      for (int b = 0; b < k && ok; ++b) {
        int budget = max_weight < 0 ? -1 : max_weight - 1;
        choices[b] = enumerate_trees(blocks[b], alphabet, tab, budget);
        if (choices[b].empty()) ok = false;
      }
      if (!ok) continue;
      std::vector<Tree> kids(k);
      auto rec = [&](auto&& self, int b, int used) -> void {
        if (max_weight >= 0 && used > max_weight) return;
        if (b == k) {
          Tree t = node_tree(sym, kids);
          if (max_weight < 0 || tree_weight(t) <= max_weight) out.push_back(std::move(t));
          return;
        }
        for (const Tree& c : choices[b]) {
          int w = tree_weight(c);
          if (max_weight >= 0 && used + w > max_weight) continue;
          kids[b] = c;
          self(self, b + 1, used + w);
        }
      };
      rec(rec, 0, 1);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Occurrences: embeddings of a pattern tree monomial into a host monomial.
//
// Matching is positional at every vertex (both sides are canonically sorted),
// followed by the global condition that pattern leaf -> minimum of assigned
// host stump is strictly order-preserving.  The positional step is complete:
// if the global monotonicity holds, subtree minima appear in the same
// relative order on both sides.

struct Occurrence {
  std::vector<int> path;     // child indices from host root to the matched vertex
  std::vector<Tree> stumps;  // host subtrees per pattern leaf, in pattern-leaf sorted order
  std::vector<int> covered;  // pre-order ids of matched host internal vertices
};

namespace detail {

inline void index_vertices(const Tree& t, std::map<const Tree*, int>& ids, int& counter) {
  if (t.is_leaf()) return;
  ids[&t] = counter++;
  for (const Tree& k : t.kids) index_vertices(k, ids, counter);
}

inline bool match_positional(const Tree& pat, const Tree& host,
                             const std::map<const Tree*, int>& ids,
                             std::map<Label, const Tree*>& stumps, std::vector<int>& covered) {
  if (pat.is_leaf()) {
    stumps[pat.leaf] = &host;
    return true;
  }
  if (host.is_leaf() || pat.sym != host.sym) return false;
  covered.push_back(ids.at(&host));
  for (size_t i = 0; i < pat.kids.size(); ++i)
    if (!match_positional(pat.kids[i], host.kids[i], ids, stumps, covered)) return false;
  return true;
}

}  // namespace detail

inline std::vector<Occurrence> find_occurrences(const Tree& pattern, const Tree& host,
                                                const SymbolTable&) {
  std::vector<Occurrence> out;
  if (pattern.is_leaf()) return out;
  std::map<const Tree*, int> ids;
  int counter = 0;
  detail::index_vertices(host, ids, counter);
  LabelSet pat_leaves = tree_leaves(pattern);

  std::vector<int> path;
  auto visit = [&](auto&& self, const Tree& h) -> void {
    if (!h.is_leaf()) {
      std::map<Label, const Tree*> stumps;
      std::vector<int> covered;
      if (detail::match_positional(pattern, h, ids, stumps, covered)) {
        bool mono = true;
        Label prev_min = -1;
        std::vector<Tree> st;
        for (Label pl : pat_leaves) {
          Label m = min_leaf(*stumps.at(pl));
          if (m <= prev_min) {
            mono = false;
            break;
          }
          prev_min = m;
          st.push_back(*stumps.at(pl));
        }
        if (mono) {
          std::sort(covered.begin(), covered.end());
          out.push_back({path, std::move(st), std::move(covered)});
        }
      }
      for (size_t i = 0; i < h.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        self(self, h.kids[i]);
        path.pop_back();
      }
    }
  };
  visit(visit, host);
  return out;
}

inline bool divides_tree(const Tree& pattern, const Tree& host, const SymbolTable& tab) {
  return !find_occurrences(pattern, host, tab).empty();
}

}  // namespace cgkw
