#pragma once
// Buchberger completion for commutative polynomial ideals, full normal forms,
// and standard-monomial counting for graded quotients.

#include <algorithm>
#include <optional>
#include <vector>

#include "poly.hpp"

namespace cgkw {

// Full reduction of p modulo `rules` (each nonzero): every term of the result
// is divisible by no rule leading monomial.
inline Poly normal_form(Poly p, const std::vector<Poly>& rules, MonoOrder ord) {
  Poly out;  // accumulated irreducible terms, all > every term still in p
  while (!p.zero()) {
    bool reduced = false;
    for (const Poly& r : rules) {
      if (r.zero()) continue;
      if (mono_divides(r.lm(), p.lm())) {
        Monomial q = mono_div(p.lm(), r.lm());
        p = poly_sub(p, poly_mul_term(r, q, p.lc() / r.lc()), ord);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      out.t.push_back(p.t.front());
      p.t.erase(p.t.begin());
    }
  }
  return out;
}

// Buchberger with normal pair selection, the coprime criterion, and an
// optional total-degree cap on S-pair lcm degree (degree_cap < 0 disables the
// cap).  Returns the reduced Groebner basis (monic, tails fully reduced).
inline std::vector<Poly> buchberger(std::vector<Poly> gens, MonoOrder ord, int degree_cap = -1) {
  std::vector<Poly> g;
  for (Poly& p : gens)
    if (!p.zero()) g.push_back(poly_monic(std::move(p)));

  struct Pair {
    size_t i, j;
    Monomial lcm;
    int deg;
  };
  std::vector<Pair> queue;
  auto push_pairs = [&](size_t j) {
    for (size_t i = 0; i < j; ++i) {
      if (mono_coprime(g[i].lm(), g[j].lm())) continue;
      Monomial l = mono_lcm(g[i].lm(), g[j].lm());
      int deg = mono_degree(l);
      if (degree_cap >= 0 && deg > degree_cap) continue;
      queue.push_back({i, j, std::move(l), deg});
    }
  };
  for (size_t j = 0; j < g.size(); ++j) push_pairs(j);

  while (!queue.empty()) {
    auto it = std::min_element(queue.begin(), queue.end(), [&](const Pair& a, const Pair& b) {
      if (a.deg != b.deg) return a.deg < b.deg;
      return mono_cmp(a.lcm, b.lcm, ord) < 0;
    });
    Pair pr = *it;
    queue.erase(it);
    Poly s = poly_sub(poly_mul_term(g[pr.i], mono_div(pr.lcm, g[pr.i].lm()), Rat(1)),
                      poly_mul_term(g[pr.j], mono_div(pr.lcm, g[pr.j].lm()), Rat(1)), ord);
    s = normal_form(std::move(s), g, ord);
    if (!s.zero()) {
      g.push_back(poly_monic(std::move(s)));
      push_pairs(g.size() - 1);
    }
  }

  // Minimalize: drop elements whose leading monomial another leading monomial divides.
  std::vector<Poly> minimal;
  for (size_t i = 0; i < g.size(); ++i) {
    bool keep = true;
    for (size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      if (mono_divides(g[j].lm(), g[i].lm()) &&
          (g[i].lm() != g[j].lm() || j < i)) {
        keep = false;
        break;
      }
    }
    if (keep) minimal.push_back(g[i]);
  }
  // Reduce: replace each element by its normal form against the others.
  std::vector<Poly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly r = normal_form(minimal[i], others, ord);
    if (!r.zero()) reduced.push_back(poly_monic(std::move(r)));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Poly& a, const Poly& b) { return mono_cmp(a.lm(), b.lm(), ord) < 0; });
  return reduced;
}

// Count standard monomials (divisible by no Groebner leading monomial) by
// total degree 0..max_degree.  DFS over monomials built with non-decreasing
// variable index; divisors of standard monomials are standard, so pruning on
// first divisibility is exhaustive.
inline std::vector<long> quotient_dims(const std::vector<Poly>& gb, int nvars, int max_degree) {
  std::vector<Monomial> lts;
  for (const Poly& p : gb)
    if (!p.zero()) lts.push_back(p.lm());
  std::vector<long> dims(max_degree + 1, 0);
  auto divisible = [&](const Monomial& m) {
    for (const Monomial& l : lts)
      if (mono_divides(l, m)) return true;
    return false;
  };
  auto rec = [&](auto&& self, const Monomial& m, int minvar, int deg) -> void {
    dims[deg]++;
    if (deg == max_degree) return;
    for (int v = minvar; v < nvars; ++v) {
      Monomial m2 = mono_mul(m, mono_var(v));
      if (!divisible(m2)) self(self, m2, v, deg + 1);
    }
  };
  if (!divisible(mono_one())) rec(rec, mono_one(), 0, 0);
  return dims;
}

// Enumerate the standard monomials themselves, by degree.
inline std::vector<Monomial> standard_monomials(const std::vector<Poly>& gb, int nvars,
                                                int max_degree) {
  std::vector<Monomial> lts;
  for (const Poly& p : gb)
    if (!p.zero()) lts.push_back(p.lm());
  std::vector<Monomial> out;
  auto divisible = [&](const Monomial& m) {
    for (const Monomial& l : lts)
      if (mono_divides(l, m)) return true;
    return false;
  };
  auto rec = [&](auto&& self, const Monomial& m, int minvar, int deg) -> void {
    out.push_back(m);
    if (deg == max_degree) return;
    for (int v = minvar; v < nvars; ++v) {
      Monomial m2 = mono_mul(m, mono_var(v));
      if (!divisible(m2)) self(self, m2, v, deg + 1);
    }
  };
  if (!divisible(mono_one())) rec(rec, mono_one(), 0, 0);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

template <class T>
inline bool is_palindrome(const std::vector<T>& v) {
  std::vector<T> r(v.rbegin(), v.rend());
  return r == v;
}

}  // namespace cgkw
