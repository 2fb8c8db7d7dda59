#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cgkw/combinat.hpp"
#include "cgkw/rewrite.hpp"

using namespace cgkw;

namespace {

// Table with one even binary generator b0.
SymbolTable table_b() {
  SymbolTable tab;
  tab.intern("b", 0, 2, 0);
  return tab;
}

// Even binary b0 + even ternary t0.
SymbolTable table_bt() {
  SymbolTable tab;
  tab.intern("b", 0, 2, 0);
  tab.intern("t", 0, 3, 0);
  return tab;
}

// Odd binary generator g0 (degree -1), as in genus-zero gravity for d=1.
SymbolTable table_g() {
  SymbolTable tab;
  tab.intern("g", 0, 2, -1);
  return tab;
}

Tree T(const std::string& s, const SymbolTable& tab) { return parse_tree(s, tab); }

// Order-preserving relabeling of the leaves 1..n of t onto `target` (sorted).
Tree onto_labels(const Tree& t, const LabelSet& target) {
  LabelSet src = tree_leaves(t);
  REQUIRE(src.size() == target.size());
  std::map<Label, Label> m;
  for (size_t i = 0; i < src.size(); ++i) m[src[i]] = target[i];
  return relabel_tree(t, m);
}

LabelSet shifted_labels(int n, Label base) {
  LabelSet out;
  for (int i = 1; i <= n; ++i) out.push_back(base + i);
  return out;
}

}  // namespace

TEST_CASE("tree construction and canonical form") {
  SymbolTable tab = table_b();
  int b = tab.find("b", 0, 2);
  Tree t = node_tree(b, {leaf_tree(3), node_tree(b, {leaf_tree(2), leaf_tree(1)})});
  // Children re-sorted by minimal leaf at every vertex.
  CHECK(tree_canonical(t));
  CHECK(tree_str(t, tab) == "b0[b0[1,2],3]");
  CHECK(min_leaf(t) == 1);
  CHECK(tree_arity(t) == 3);
  CHECK(tree_weight(t) == 2);
  CHECK(tree_leaves(t) == make_labels(3));
  CHECK(tree_hdeg(t, tab) == 0);

  SymbolTable tg = table_g();
  Tree u = T("g0[g0[1,3],2]", tg);
  CHECK(tree_hdeg(u, tg) == -2);
  CHECK(tree_canonical(u));
}

TEST_CASE("parse and print round-trip") {
  SymbolTable tab = table_bt();
  for (const std::string& s :
       {"b0[1,2]", "b0[b0[1,2],3]", "b0[b0[1,3],2]", "b0[1,b0[2,3]]", "t0[1,2,3]",
        "t0[1,b0[2,4],3]", "b0[b0[1,4],b0[2,3]]", "b0[1,*]", "b0[b0[1,*],2]"}) {
    Tree t = T(s, tab);
    CHECK(tree_str(t, tab) == s);
    CHECK(tree_canonical(t));
  }
  // Non-canonical input is re-sorted on construction.
  CHECK(tree_str(T("b0[2,1]", tab), tab) == "b0[1,2]");
  CHECK(tree_str(T("b0[*,1]", tab), tab) == "b0[1,*]");

  CHECK_THROWS_AS(T("b0[1,2", tab), std::invalid_argument);       // missing bracket
  CHECK_THROWS_AS(T("b0[1,2]x", tab), std::invalid_argument);     // trailing characters
  CHECK_THROWS_AS(T("q7[1,2]", tab), std::invalid_argument);      // unknown symbol
  CHECK_THROWS_AS(T("b0[1,2,3]", tab), std::invalid_argument);    // wrong arity
  CHECK_THROWS_AS(T("b0[1,1]", tab), std::invalid_argument);      // duplicate leaves
  CHECK_THROWS_AS(T("b0[b0[1,2],2]", tab), std::invalid_argument);
  CHECK_THROWS_AS(T("b[1,2]", tab), std::invalid_argument);       // missing superscript
}

TEST_CASE("tree enumeration counts") {
  SymbolTable tab = table_bt();
  std::vector<int> bin{tab.find("b", 0, 2)};
  std::vector<int> both{tab.find("b", 0, 2), tab.find("t", 0, 3)};

  // Binary shuffle trees with n leaves: (2n-3)!!.
  for (int n = 2; n <= 6; ++n) {
    auto trees = enumerate_trees(make_labels(n), bin, tab);
    CHECK(Int(static_cast<long>(trees.size())) == double_factorial_odd(n - 1));
    std::set<std::string> seen;
    for (const Tree& t : trees) {
      CHECK(tree_canonical(t));
      CHECK(tree_leaves(t) == make_labels(n));
      CHECK(seen.insert(tree_str(t, tab)).second);
    }
  }

  // One binary plus one ternary generator: 4 trees on 3 leaves,
  // 15 + 6 + 4 = 25 on 4 leaves.
  CHECK(enumerate_trees(make_labels(3), both, tab).size() == 4);
  CHECK(enumerate_trees(make_labels(4), both, tab).size() == 25);

  // Weight caps.
  CHECK(enumerate_trees(make_labels(4), bin, tab, 2).empty());
  CHECK(enumerate_trees(make_labels(4), both, tab, 1).empty());
  CHECK(enumerate_trees(make_labels(3), both, tab, 1).size() == 1);  // ternary corolla
  // Two vertices on 4 leaves: t0 over one b0 (6 block choices) or b0 over
  // one t0 (4 block choices).
  CHECK(enumerate_trees(make_labels(4), both, tab, 2).size() == 10);
}

TEST_CASE("composition grafts and relabels") {
  SymbolTable tab = table_b();
  Tree outer = T("b0[1,*]", tab);
  Tree inner = T("b0[2,3]", tab);
  auto [t1, s1] = compose_trees(outer, kStar, inner, tab);
  CHECK(tree_str(t1, tab) == "b0[1,b0[2,3]]");
  CHECK(s1 == 1);

  // Grafting at a non-minimal slot re-sorts children; even symbols: sign 1.
  auto [t2, s2] = compose_trees(T("b0[2,*]", tab), kStar, T("b0[1,3]", tab), tab);
  CHECK(tree_str(t2, tab) == "b0[b0[1,3],2]");
  CHECK(s2 == 1);

  CHECK_THROWS_AS(compose_trees(outer, 7, inner, tab), std::invalid_argument);  // no such leaf
  CHECK_THROWS_AS(compose_trees(T("b0[1,2]", tab), 2, T("b0[1,3]", tab), tab),
                  std::invalid_argument);  // label clash
}

TEST_CASE("two-vertex compositions of odd generators have sign 1") {
  SymbolTable tab = table_g();
  Tree g12 = T("g0[1,2]", tab);
  auto [t, s] = compose_trees(T("g0[3,*]", tab), kStar, g12, tab);
  CHECK(tree_str(t, tab) == "g0[g0[1,2],3]");
  CHECK(s == 1);
  auto [t2, s2] = compose_trees(T("g0[1,*]", tab), kStar, T("g0[2,3]", tab), tab);
  CHECK(s2 == 1);
  auto [t3, s3] = compose_trees(T("g0[1,2]", tab), 1, T("g0[3,4]", tab), tab);
  CHECK(tree_str(t3, tab) == "g0[2,g0[3,4]]");
  CHECK(s3 == 1);
}

TEST_CASE("operad axioms with signs, brute force") {
  SymbolTable tab;
  tab.intern("b", 0, 2, 0);    // even binary
  tab.intern("c", 1, 2, -1);   // odd binary
  tab.intern("e", 0, 3, -1);   // odd ternary
  tab.intern("f", 0, 3, 0);    // even ternary
  std::vector<int> alpha{0, 1, 2, 3};

  Rng rng(20260815);
  auto random_tree = [&](int arity, Label base) {
    auto pool = enumerate_trees(make_labels(arity), alpha, tab);
    const Tree& pick = pool[rng.below(static_cast<int64_t>(pool.size()))];
    return onto_labels(pick, shifted_labels(arity, base));
  };

  int negative_parallel = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int na = rng.between(2, 4), nb = rng.between(2, 4), nc = rng.between(2, 4);
    Tree a = random_tree(na, 0);
    Tree b = random_tree(nb, 100);
    Tree c = random_tree(nc, 200);
    LabelSet la = tree_leaves(a), lb = tree_leaves(b);

    // Sequential: (a o_s b) o_t c == a o_s (b o_t c) for t inside b.
    {
      Label s = la[rng.below(static_cast<int64_t>(la.size()))];
      Label t = lb[rng.below(static_cast<int64_t>(lb.size()))];
      auto ab = compose_trees(a, s, b, tab);
      auto lhs = compose_trees(ab.tree, t, c, tab);
      auto bc = compose_trees(b, t, c, tab);
      auto rhs = compose_trees(a, s, bc.tree, tab);
      REQUIRE(lhs.tree == rhs.tree);
      REQUIRE(ab.sign * lhs.sign == bc.sign * rhs.sign);
    }

    // Parallel: (a o_s b) o_t c == (-1)^{|b||c|} (a o_t c) o_s b for s != t in a.
    if (la.size() >= 2) {
      Label s = la[rng.below(static_cast<int64_t>(la.size()))];
      Label t = s;
      while (t == s) t = la[rng.below(static_cast<int64_t>(la.size()))];
      auto ab = compose_trees(a, s, b, tab);
      auto lhs = compose_trees(ab.tree, t, c, tab);
      auto ac = compose_trees(a, t, c, tab);
      auto rhs = compose_trees(ac.tree, s, b, tab);
      int koszul = (tree_hdeg(b, tab) % 2 != 0 && tree_hdeg(c, tab) % 2 != 0) ? -1 : 1;
      REQUIRE(lhs.tree == rhs.tree);
      REQUIRE(ab.sign * lhs.sign == koszul * ac.sign * rhs.sign);
      if (ab.sign * lhs.sign != ac.sign * rhs.sign) negative_parallel++;
    }
  }
  // The trials genuinely exercised anticommuting odd factors.
  CHECK(negative_parallel > 10);
}

TEST_CASE("element algebra") {
  SymbolTable tab = table_g();
  OrderSpec os = OrderSpec::rplex();
  Element x = el_single(T("g0[1,2]", tab), Rat(2));
  Element y = el_single(T("g0[1,2]", tab), Rat(-2));
  CHECK(el_zero(el_add(x, y)));
  Element z = el_compose(x, 2, el_single(T("g0[3,4]", tab)), tab);
  REQUIRE(z.size() == 1);
  CHECK(tree_str(z.begin()->first, tab) == "g0[1,g0[3,4]]");
  CHECK(z.begin()->second == 2);
  CHECK(el_homogeneous(z, tab));

  Element mix = el_add(el_single(T("g0[g0[1,2],3]", tab), Rat(1, 2)),
                       el_single(T("g0[1,g0[2,3]]", tab), Rat(3)));
  CHECK(el_lead(mix, os, tab).first == T("g0[1,g0[2,3]]", tab));
  CHECK(el_str(mix, tab) == "3*g0[1,g0[2,3]] + 1/2*g0[g0[1,2],3]");
  CHECK(el_homogeneous(mix, tab));
  Element bad = el_add(x, el_single(T("g0[g0[1,2],3]", tab)));
  CHECK_FALSE(el_homogeneous(bad, tab));
}

TEST_CASE("occurrences: counts and the order-isomorphism constraint") {
  SymbolTable tab = table_b();
  Tree pat = T("b0[1,2]", tab);

  // A 2-leaf pattern occurs at every internal vertex of a binary host.
  std::vector<int> bin{tab.find("b", 0, 2)};
  for (int n = 3; n <= 5; ++n)
    for (const Tree& host : enumerate_trees(make_labels(n), bin, tab))
      CHECK(find_occurrences(pat, host, tab).size() == static_cast<size_t>(tree_weight(host)));

  Tree comb = T("b0[b0[1,2],3]", tab);
  CHECK(find_occurrences(pat, T("b0[b0[1,3],2]", tab), tab).size() == 2);

  // The left comb divides itself but not the (1,3)(2) comb: the induced leaf
  // relabeling 1,2,3 -> 1,3,2 is not order-preserving.
  CHECK(find_occurrences(comb, comb, tab).size() == 1);
  CHECK_FALSE(divides_tree(comb, T("b0[b0[1,3],2]", tab), tab));
  CHECK(divides_tree(comb, T("b0[b0[1,2],3]", tab), tab));
  CHECK(divides_tree(comb, T("b0[b0[b0[1,2],3],4]", tab), tab));
  CHECK(divides_tree(comb, T("b0[b0[1,2],b0[3,4]]", tab), tab));
  CHECK_FALSE(divides_tree(comb, T("b0[b0[1,4],b0[2,3]]", tab), tab));

  // Occurrence bookkeeping on a concrete embedding.
  auto occs = find_occurrences(pat, comb, tab);
  REQUIRE(occs.size() == 2);
  // Root occurrence: stumps are b0[1,2] and the leaf 3.
  bool found_root = false, found_inner = false;
  for (const Occurrence& o : occs) {
    if (o.path.empty()) {
      found_root = true;
      REQUIRE(o.stumps.size() == 2);
      CHECK(tree_str(o.stumps[0], tab) == "b0[1,2]");
      CHECK(tree_str(o.stumps[1], tab) == "3");
      CHECK(o.covered == std::vector<int>{0});
    } else {
      found_inner = true;
      CHECK(o.path == std::vector<int>{0});
      CHECK(o.covered == std::vector<int>{1});
    }
  }
  CHECK(found_root);
  CHECK(found_inner);
}

TEST_CASE("positional matching agrees with all-bijections matching") {
  SymbolTable tab = table_bt();
  std::vector<int> alpha{tab.find("b", 0, 2), tab.find("t", 0, 3)};

  // All-bijections matcher: at each vertex try every assignment of pattern
  // children to host children, then keep embeddings with strictly increasing
  // stump minima.  Exponential but fine at this size.
  auto slow_occurrences = [&](const Tree& pat, const Tree& host) {
    std::set<std::string> sigs;
    LabelSet pat_leaves = tree_leaves(pat);

    std::function<void(const Tree&, const Tree&, std::map<Label, const Tree*>&,
                       const std::function<void(std::map<Label, const Tree*>&)>&)>
        match = [&](const Tree& p, const Tree& h, std::map<Label, const Tree*>& st,
                    const std::function<void(std::map<Label, const Tree*>&)>& k) {
          if (p.is_leaf()) {
            st[p.leaf] = &h;
            k(st);
            st.erase(p.leaf);
            return;
          }
          if (h.is_leaf() || p.sym != h.sym) return;
          std::vector<size_t> order(h.kids.size());
          for (size_t z = 0; z < order.size(); ++z) order[z] = z;
          std::sort(order.begin(), order.end());
          do {
            std::function<void(size_t)> step = [&](size_t idx) {
              if (idx == p.kids.size()) {
                k(st);
                return;
              }
              match(p.kids[idx], h.kids[order[idx]], st,
                    [&](std::map<Label, const Tree*>&) { step(idx + 1); });
            };
            step(0);
          } while (std::next_permutation(order.begin(), order.end()));
        };

    std::vector<int> path;
    std::function<void(const Tree&)> visit = [&](const Tree& h) {
      if (h.is_leaf()) return;
      std::map<Label, const Tree*> st;
      match(pat, h, st, [&](std::map<Label, const Tree*>& full) {
        if (full.size() != pat_leaves.size()) return;
        Label prev = -1;
        for (Label pl : pat_leaves) {
          Label m = min_leaf(*full.at(pl));
          if (m <= prev) return;
          prev = m;
        }
        std::string sig;
        for (int p : path) sig += std::to_string(p) + ".";
        sig += "|";
        for (Label pl : pat_leaves) sig += tree_str(*full.at(pl), tab) + ";";
        sigs.insert(sig);
      });
      for (size_t i = 0; i < h.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        visit(h.kids[i]);
        path.pop_back();
      }
    };
    visit(host);
    return sigs;
  };

  auto fast_sigs = [&](const Tree& pat, const Tree& host) {
    std::set<std::string> sigs;
    for (const Occurrence& o : find_occurrences(pat, host, tab)) {
      std::string sig;
      for (int p : o.path) sig += std::to_string(p) + ".";
      sig += "|";
      for (const Tree& s : o.stumps) sig += tree_str(s, tab) + ";";
      REQUIRE(sigs.insert(sig).second);  // no duplicate occurrences
    }
    return sigs;
  };

  auto patterns = enumerate_trees(make_labels(3), alpha, tab);
  {
    auto pats2 = enumerate_trees(make_labels(2), alpha, tab);
    patterns.insert(patterns.end(), pats2.begin(), pats2.end());
  }
  long checked = 0;
  for (int n = 3; n <= 5; ++n)
    for (const Tree& host : enumerate_trees(make_labels(n), alpha, tab))
      for (const Tree& pat : patterns) {
        CHECK(slow_occurrences(pat, host) == fast_sigs(pat, host));
        ++checked;
      }
  CHECK(checked > 500);
}

TEST_CASE("order presets resolve by name") {
  CHECK(OrderSpec::by_name("gravd").stages.size() == 4);
  CHECK(OrderSpec::by_name("rplex").stages.size() == 1);
  CHECK_THROWS_AS(OrderSpec::by_name("nope"), std::invalid_argument);
}

TEST_CASE("rplex pins the expected arity-3 comparisons") {
  SymbolTable tab = table_b();
  OrderSpec os = OrderSpec::rplex();
  Tree a1 = T("b0[b0[1,2],3]", tab);
  Tree a2 = T("b0[b0[1,3],2]", tab);
  Tree a3 = T("b0[1,b0[2,3]]", tab);
  CHECK(tree_cmp(a3, a2, os, tab) > 0);
  CHECK(tree_cmp(a2, a1, os, tab) > 0);
  CHECK(tree_cmp(a3, a1, os, tab) > 0);
  CHECK(tree_cmp(a1, a3, os, tab) < 0);
  CHECK(tree_cmp(a1, a1, os, tab) == 0);
  CHECK_THROWS_AS(tree_cmp(a1, T("b0[b0[1,2],4]" , tab), os, tab), std::invalid_argument);
}

TEST_CASE("graded order pins the gravity leading terms") {
  // Symbols named g<sup> with the degrees used by the d=2 gravity structure:
  // arity-2 generators of superscript a have degree -1-2a; the arity-3
  // generator of superscript a has degree -5-2a.
  SymbolTable tab;
  tab.intern("g", 0, 2, -1);
  tab.intern("g", 1, 2, -3);
  tab.intern("h", 0, 3, -5);  // distinct family letter for the arity-3 layer
  tab.intern("h", 1, 3, -7);
  OrderSpec os = OrderSpec::gravd();

  // Relation sum over pairs {i,j} in [3] of g^k( g^0(i,j), rest ): the
  // leading monomial is the (2,3) term.
  {
    Tree t12 = T("g1[g0[1,2],3]", tab);
    Tree t13 = T("g1[g0[1,3],2]", tab);
    Tree t23 = T("g1[g0[2,3],1]", tab);
    CHECK(tree_cmp(t23, t13, os, tab) > 0);
    CHECK(tree_cmp(t13, t12, os, tab) > 0);
  }

  // Arity 4 version: the maximum is the term grouping {3,4} under g^0.
  {
    Tree t34 = T("h1[1,2,g0[3,4]]", tab);
    for (const std::string& other :
         {"h1[1,3,g0[2,4]]", "h1[1,4,g0[2,3]]", "h1[2,3,g0[1,4]]", "h1[2,4,g0[1,3]]",
          "h1[3,4,g0[1,2]]"})
      CHECK(tree_cmp(t34, T(other, tab), os, tab) > 0);
  }

  // Superscript-additivity relation g^a(g^a'(J)) = g^{a+a'}(g^0(J)): for a>0
  // the left side wins on the count of positive superscripts; for a=0 it wins
  // in the root-lexicographic stage.
  {
    Tree lhs = T("g1[g1[2,3],1]", tab);  // a = 1, a' = 1 (degrees match d=3 setup)
    SymbolTable tab3;                     // separate table: d=3 degrees
    tab3.intern("g", 0, 2, -1);
    tab3.intern("g", 1, 2, -3);
    tab3.intern("g", 2, 2, -5);
    Tree l = T("g1[g1[2,3],1]", tab3);
    Tree r = T("g2[g0[2,3],1]", tab3);
    CHECK(tree_cmp(l, r, os, tab3) > 0);
    (void)lhs;

    // a = 0: g^0(g^1(2,3),1) vs g^1(g^0(2,3),1) decided by the symbol order
    // at the root (smaller superscript is greater).
    Tree l0 = T("g0[g1[2,3],1]", tab3);
    Tree r0 = T("g1[g0[2,3],1]", tab3);
    CHECK(tree_cmp(l0, r0, os, tab3) > 0);
  }

  // Mixed-arity relation: g^k(1, h^0(2,3,4)) beats every term
  // g^k(h-free pair grouping) because it has more large-arity vertices at
  // stake -- here both sides have one, so the per-leaf word stage decides.
  {
    Tree rhs = T("g1[1,h0[2,3,4]]", tab);
    for (const std::string& other : {"h1[1,2,g0[3,4]]", "h1[1,3,g0[2,4]]", "h1[1,4,g0[2,3]]",
                                     "h1[2,3,g0[1,4]]", "h1[2,4,g0[1,3]]", "h1[3,4,g0[1,2]]"})
      CHECK(tree_cmp(rhs, T(other, tab), os, tab) > 0);
  }
}

TEST_CASE("order properties: antisymmetry, transitivity, context admissibility") {
  SymbolTable tab = table_bt();
  std::vector<int> alpha{tab.find("b", 0, 2), tab.find("t", 0, 3)};
  for (const OrderSpec& os : {OrderSpec::gravd(), OrderSpec::rplex()}) {
    auto trees = enumerate_trees(make_labels(4), alpha, tab);

    // Total order: trichotomy + antisymmetry on all pairs.
    for (size_t i = 0; i < trees.size(); ++i)
      for (size_t j = 0; j < trees.size(); ++j) {
        int c = tree_cmp(trees[i], trees[j], os, tab);
        CHECK(c == -tree_cmp(trees[j], trees[i], os, tab));
        CHECK((c == 0) == (i == j));
      }

    // Transitivity on random triples.
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
      const Tree& a = trees[rng.below(static_cast<int64_t>(trees.size()))];
      const Tree& b = trees[rng.below(static_cast<int64_t>(trees.size()))];
      const Tree& c = trees[rng.below(static_cast<int64_t>(trees.size()))];
      if (tree_cmp(a, b, os, tab) <= 0 && tree_cmp(b, c, os, tab) <= 0)
        CHECK(tree_cmp(a, c, os, tab) <= 0);
    }

    // Admissibility: a < b is preserved by the structure compositions.  The
    // inserted tree takes over the slot: its minimal leaf inherits the
    // slot's place in the label order and its remaining leaves interleave
    // anywhere above the slot.
    auto small = enumerate_trees(make_labels(3), alpha, tab);
    const LabelSet base{1, 10, 20};
    auto pick_upper = [&](Label slot, Rng& r) {
      std::vector<Label> cand;
      for (Label v = slot + 1; v < 30; ++v)
        if (v != 1 && v != 10 && v != 20) cand.push_back(v);
      Label x = cand[r.below(static_cast<int64_t>(cand.size()))];
      Label y = x;
      while (y == x) y = cand[r.below(static_cast<int64_t>(cand.size()))];
      LabelSet out{slot, std::min(x, y), std::max(x, y)};
      return out;
    };
    for (int trial = 0; trial < 300; ++trial) {
      Tree a = onto_labels(small[rng.below(static_cast<int64_t>(small.size()))], base);
      Tree b = onto_labels(small[rng.below(static_cast<int64_t>(small.size()))], base);
      int c0 = tree_cmp(a, b, os, tab);
      if (c0 == 0) continue;

      // Outer context: u o_s a vs u o_s b with a, b relabeled into the slot.
      {
        Tree u = onto_labels(small[rng.below(static_cast<int64_t>(small.size()))], base);
        Label s = base[rng.below(3)];
        LabelSet target = pick_upper(s, rng);
        Tree a2 = onto_labels(a, target), b2 = onto_labels(b, target);
        Tree ua = compose_trees(u, s, a2, tab).tree;
        Tree ub = compose_trees(u, s, b2, tab).tree;
        CHECK(tree_cmp(ua, ub, os, tab) == c0);
      }

      // Inner context: a o_sl w vs b o_sl w with w relabeled into the slot.
      {
        Label sl = base[rng.below(3)];
        Tree w = onto_labels(small[rng.below(static_cast<int64_t>(small.size()))],
                             pick_upper(sl, rng));
        Tree aw = compose_trees(a, sl, w, tab).tree;
        Tree bw = compose_trees(b, sl, w, tab).tree;
        CHECK(tree_cmp(aw, bw, os, tab) == c0);
      }
    }
  }
}

TEST_CASE("context application and single rewrite steps") {
  SymbolTable tab = table_b();
  OrderSpec os = OrderSpec::rplex();
  Tree a1 = T("b0[b0[1,2],3]", tab);
  Tree a3 = T("b0[1,b0[2,3]]", tab);
  Rule r = orient(el_sub(el_single(a3), el_single(a1)), os, tab);  // a3 -> a1
  CHECK(r.lead == a3);
  CHECK(rule_element(r) == el_sub(el_single(a3), el_single(a1)));

  // Host containing the pattern: rewrite eliminates the redex.
  Tree host = T("b0[1,b0[2,b0[3,4]]]", tab);  // pattern at root with stump b0[3,4]
  auto occs = find_occurrences(r.lead, host, tab);
  REQUIRE_FALSE(occs.empty());
  CHECK(occurrence_sign(host, occs.front(), r.lead, tab) == 1);
  Element e = el_single(host, Rat(5));
  Element stepped = rewrite_step(e, host, Rat(5), r, occs.front(), tab);
  CHECK(stepped.find(host) == stepped.end());
  // One step of a3 -> a1 at the root: b0[b0[1,2],...] shape appears.
  REQUIRE(stepped.size() == 1);
  CHECK(stepped.begin()->second == 5);

  // Full reduction to the left-comb normal form.
  Rule r2 = orient(el_sub(el_single(T("b0[b0[1,3],2]", tab)), el_single(a1)), os, tab);
  Element nf = reduce(el_single(host), {r, r2}, os, tab);
  REQUIRE(nf.size() == 1);
  CHECK(tree_str(nf.begin()->first, tab) == "b0[b0[b0[1,2],3],4]");
  CHECK(nf.begin()->second == 1);

  // Idempotence and linearity.
  CHECK(reduce(nf, {r, r2}, os, tab) == nf);
  Element sum = el_add(el_single(host, Rat(2)), el_single(T("b0[b0[1,4],b0[2,3]]", tab), Rat(-7)));
  Element red = reduce(sum, {r, r2}, os, tab);
  REQUIRE(red.size() == 1);
  CHECK(red.begin()->second == -5);
}

TEST_CASE("self-overlap of the left comb yields exactly one common multiple") {
  SymbolTable tab = table_b();
  OrderSpec os = OrderSpec::rplex();
  Tree comb = T("b0[b0[1,2],3]", tab);
  Rule r = orient(el_single(comb), os, tab);
  auto cms = common_multiples(r, r, 4, tab);
  REQUIRE(cms.size() == 1);
  CHECK(tree_str(cms[0].monomial, tab) == "b0[b0[b0[1,2],3],4]");
  Subset inter = set_intersect(cms[0].occ1.covered, cms[0].occ2.covered);
  CHECK(inter.size() == 1);
  CHECK(set_union(cms[0].occ1.covered, cms[0].occ2.covered).size() == 3);
}

TEST_CASE("completion of the commutative-associative relations") {
  SymbolTable tab = table_b();
  OrderSpec os = OrderSpec::rplex();
  Tree a1 = T("b0[b0[1,2],3]", tab);
  Tree a2 = T("b0[b0[1,3],2]", tab);
  Tree a3 = T("b0[1,b0[2,3]]", tab);

  std::vector<Element> input{el_sub(el_single(a1), el_single(a3)),
                             el_sub(el_single(a2), el_single(a3))};
  auto [rules, rep] = buchberger_bounded(input, os, tab, 6);
  CHECK(rules.size() == 2);
  CHECK(rep.added.empty());
  CHECK(rep.pairs_processed == 3);
  CHECK(rules[0].lead == a3);
  CHECK(rules[1].lead == a2);

  // Normal monomials: one per arity (the left combs).
  std::vector<int> alpha{tab.find("b", 0, 2)};
  for (int n = 3; n <= 6; ++n) {
    auto nm = normal_monomials(rules, n, alpha, tab);
    REQUIRE(nm.size() == 1);
    CHECK(tree_weight(nm[0]) == n - 1);
  }
  auto census = graded_census(normal_monomials(rules, 4, alpha, tab), tab);
  CHECK(census == std::map<std::pair<int, int>, long>{{{0, 3}, 1}});

  // Confluence: randomized reduction paths agree with the deterministic one.
  std::vector<int> bin{tab.find("b", 0, 2)};
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    auto pool = enumerate_trees(make_labels(5), bin, tab);
    Element e;
    for (int k = 0; k < 4; ++k)
      el_add_term(e, pool[rng.below(static_cast<int64_t>(pool.size()))],
                  Rat(rng.between(-5, 5)));
    Element nf = reduce(e, rules, os, tab);
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      Rng r2(seed * 1000 + trial);
      CHECK(reduce_random(e, rules, os, tab, r2) == nf);
    }
  }

  // Every input relation reduces to zero modulo the completed system.
  for (const Element& e : input) CHECK(el_zero(reduce(e, rules, os, tab)));

  // Consequence of the relations in arity 4, built by composition: it must
  // also reduce to zero.
  Element lhs = el_compose(input[0], 3, el_single(T("b0[4,5]", tab)), tab);
  CHECK(el_zero(reduce(lhs, rules, os, tab)));
}

TEST_CASE("monomial ideals complete without new rules") {
  SymbolTable tab = table_b();
  OrderSpec os = OrderSpec::rplex();
  Tree a3 = T("b0[1,b0[2,3]]", tab);
  auto [rules, rep] = buchberger_bounded({el_single(a3, Rat(4))}, os, tab, 5);
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].lead == a3);
  CHECK(el_zero(rules[0].tail));
  CHECK(rep.added.empty());
  std::vector<int> alpha{tab.find("b", 0, 2)};
  // The pattern b0[1,b0[2,3]] occurs at every vertex whose second child is
  // internal, so the normal arity-4 monomials are the 3! trees of left-comb
  // shape.
  auto nm = normal_monomials(rules, 4, alpha, tab);
  for (const Tree& t : nm) CHECK_FALSE(divides_tree(a3, t, tab));
  CHECK(nm.size() == 6);
  CHECK(normal_monomials({}, 4, alpha, tab).size() == 15);
}

TEST_CASE("completion with odd generators: gravity relations in low arity") {
  // d=1 gravity: one odd binary generator, relations = sum over pairs in [3]
  // (arity 3) of g(g(i,j), k).  The bracket is odd, so the shuffle relations
  // carry signs produced by the composition machinery itself.
  SymbolTable tab = table_g();
  OrderSpec os = OrderSpec::gravd();
  Element rel;  // sum over pairs {i,j} of [3]: g( g(i,j), rest )
  {
    Tree outer12 = T("g0[3,*]", tab);
    Tree outer13 = T("g0[2,*]", tab);
    Tree outer23 = T("g0[1,*]", tab);
    rel = el_add(el_compose(el_single(outer12), kStar, el_single(T("g0[1,2]", tab)), tab),
                 el_add(el_compose(el_single(outer13), kStar, el_single(T("g0[1,3]", tab)), tab),
                        el_compose(el_single(outer23), kStar, el_single(T("g0[2,3]", tab)), tab)));
  }
  REQUIRE(rel.size() == 3);
  CHECK(el_lead(rel, os, tab).first == T("g0[g0[2,3],1]", tab));

  auto [rules, rep] = buchberger_bounded({rel}, os, tab, 6);
  // Dimensions of the quotient: arity n has 2 normal monomials for n = 3 and
  // n-1 combinations... (checked against independent census below).
  std::vector<int> alpha{tab.find("g", 0, 2)};
  std::vector<size_t> dims;
  for (int n = 2; n <= 6; ++n) dims.push_back(normal_monomials(rules, n, alpha, tab).size());
  // The d=1 gravity operad has dimension (n-1)! in arity n.
  CHECK(dims == std::vector<size_t>{1, 2, 6, 24, 120});
}
