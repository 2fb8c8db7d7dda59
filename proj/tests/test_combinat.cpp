#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "cgkw/combinat.hpp"
#include "cgkw/labels.hpp"
#include "cgkw/rational.hpp"

using namespace cgkw;

TEST_CASE("subset predicates") {
  Subset a{1, 2}, b{1, 3}, c{2, 3}, abc{1, 2, 3}, d{4, 5};
  CHECK(crossing(a, b));
  CHECK(crossing(a, c));
  CHECK(crossing(b, c));
  CHECK_FALSE(crossing(a, abc));
  CHECK_FALSE(crossing(a, d));
  CHECK(nested_or_disjoint(a, abc));
  CHECK(nested_or_disjoint(a, d));
  CHECK(subset_of(a, abc));
  CHECK_FALSE(subset_of(abc, a));
  CHECK(intersects(a, b));
  CHECK_FALSE(intersects(a, d));
}

TEST_CASE("subsets ordered by cardinality then lex") {
  auto subs = subsets_of_size_at_least(make_labels(4), 2);
  REQUIRE(subs.size() == 11);  // 2^4 - 1 - 4
  CHECK(subs.front() == Subset{1, 2});
  CHECK(subs.back() == Subset{1, 2, 3, 4});
  for (size_t i = 1; i < subs.size(); ++i) {
    bool ordered = subs[i - 1].size() < subs[i].size() ||
                   (subs[i - 1].size() == subs[i].size() && subs[i - 1] < subs[i]);
    CHECK(ordered);
  }
}

TEST_CASE("nested families of subsets of size >= 2") {
  auto fams3 = enumerate_nested_families(make_labels(3));
  CHECK(fams3.size() == 8);  // empty + 4 singletons + 3 chains {I, [3]}
  for (auto& f : fams3)
    for (size_t i = 0; i < f.size(); ++i)
      for (size_t j = i + 1; j < f.size(); ++j) CHECK(nested_or_disjoint(f[i], f[j]));

  // n = 2: only candidate subset is {1,2}; families: empty and {{1,2}}.
  CHECK(enumerate_nested_families(make_labels(2)).size() == 2);

  // Sanity at n = 4: every family valid, count strictly larger than n = 3.
  auto fams4 = enumerate_nested_families(make_labels(4));
  CHECK(fams4.size() > fams3.size());
  for (auto& f : fams4)
    for (size_t i = 0; i < f.size(); ++i)
      for (size_t j = i + 1; j < f.size(); ++j) CHECK(nested_or_disjoint(f[i], f[j]));
}

TEST_CASE("ordered set partitions") {
  // q! * Stirling2(n, q): n=4,q=2 -> 14; n=3,q=3 -> 6; n=3,q=1 -> 1.
  CHECK(ordered_set_partitions(make_labels(4), 2).size() == 14);
  CHECK(ordered_set_partitions(make_labels(3), 3).size() == 6);
  CHECK(ordered_set_partitions(make_labels(3), 1).size() == 1);
  CHECK(ordered_set_partitions(make_labels(2), 3).empty());
  CHECK(ordered_set_partitions(Subset{}, 0).size() == 1);

  for (auto& part : ordered_set_partitions(make_labels(4), 3)) {
    Subset u;
    for (auto& b : part) {
      CHECK_FALSE(b.empty());
      u = set_union(u, b);
    }
    CHECK(u == make_labels(4));
  }
}

TEST_CASE("chain splittings keep the marked pair in the first block") {
  auto sp = chain_splittings(make_labels(4), 1, 2, 2);
  CHECK(sp.size() == 3);  // S1 in {{1,2},{1,2,3},{1,2,4}}
  for (auto& part : sp) {
    CHECK(contains(part[0], 1));
    CHECK(contains(part[0], 2));
  }
  CHECK(chain_splittings(make_labels(3), 1, 2, 1).size() == 1);
  CHECK(chain_splittings(make_labels(3), 1, 2, 3).empty());  // needs >= 4 points
}

TEST_CASE("integer compositions with nonnegative parts") {
  CHECK(nonneg_compositions(3, 2).size() == 4);
  CHECK(nonneg_compositions(0, 3).size() == 1);
  CHECK(nonneg_compositions(2, 0).empty());
  CHECK(nonneg_compositions(0, 0).size() == 1);
  for (auto& c : nonneg_compositions(5, 3)) {
    int s = 0;
    for (int v : c) {
      CHECK(v >= 0);
      s += v;
    }
    CHECK(s == 5);
  }
}

TEST_CASE("second-order Eulerian rows") {
  CHECK(eulerian2_row(1) == std::vector<Int>{1});
  CHECK(eulerian2_row(2) == std::vector<Int>{1, 2});
  CHECK(eulerian2_row(3) == std::vector<Int>{1, 8, 6});
  CHECK(eulerian2_row(4) == std::vector<Int>{1, 22, 58, 24});
  for (int n = 1; n <= 7; ++n) {
    Int sum = 0;
    for (const Int& t : eulerian2_row(n)) sum += t;
    CHECK(sum == double_factorial_odd(n));
  }
}

TEST_CASE("superset Moebius inversion round-trips") {
  LabelSet ls = make_labels(4);
  for (const Subset& base : subsets_of_size_at_least(ls, 2)) {
    // x_I := sum over J >= I of (-1)^{|J|-|I|} sigma_J, with sigma_J := sum over K >= J of x_K,
    // must collapse back to x_I.
    std::map<Subset, long> acc;
    for (const Subset& j : supersets_within(base, ls)) {
      long sgn = ((j.size() - base.size()) % 2 == 0) ? 1 : -1;
      for (const Subset& k : supersets_within(j, ls)) acc[k] += sgn;
    }
    for (auto& [k, v] : acc) {
      if (k == base) CHECK(v == 1);
      else CHECK(v == 0);
    }
  }
}

TEST_CASE("binomial and factorial helpers") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(factorial(6) == 720);
  CHECK(rat_str(make_rat(6, -4)) == "-3/2");
  Rat r = rat_from_strings("10", "4");
  CHECK(rat_json(r) == nlohmann::json::array({"5", "2"}));
  CHECK(rat_from_json(rat_json(r)) == r);
}
