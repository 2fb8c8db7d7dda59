// Large-d limit computations: the Stanley-Reisner ring of the nested-set
// complex (the limiting cohomology ring), its Hilbert series against the
// second-order Eulerian triangle, dimension comparison with the binary-limit
// operad, and stabilization of Betti numbers in low degrees.
#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cgkw/cgk_ring.hpp"
#include "cgkw/combinat.hpp"
#include "cgkw/groebner.hpp"
#include "cgkw/presentations.hpp"

namespace cgkw {

// Stanley-Reisner ring of the nested-set complex on [n]: one generator x_I
// per subset I with |I| >= 2, and the squarefree monomial relations x_I x_J
// for crossing pairs (I and J intersect but neither contains the other).
// No power relations appear; any generating set of a monomial ideal is
// already a Groebner basis.
struct SRRing {
  int n = 0;
  std::vector<Subset> vars;
  std::vector<Poly> gb;
};

inline SRRing build_sr_ring(int n) {
  if (n < 2) throw std::invalid_argument("build_sr_ring: n >= 2 required");
  SRRing R;
  R.n = n;
  R.vars = subsets_of_size_at_least(make_labels(n), 2);
  for (std::size_t i = 0; i < R.vars.size(); ++i)
    for (std::size_t j = i + 1; j < R.vars.size(); ++j)
      if (crossing(R.vars[i], R.vars[j]))
        R.gb.push_back(poly_term(mono_mul(mono_var(static_cast<int>(i)),
                                          mono_var(static_cast<int>(j))),
                                 Rat(1)));
  return R;
}

// Dimensions of the quotient per degree 0..deg_max, counted by the
// standard-monomial search on the monomial ideal.
inline std::vector<long> sr_series(int n, int deg_max) {
  const SRRing R = build_sr_ring(n);
  return quotient_dims(R.gb, static_cast<int>(R.vars.size()), deg_max);
}

// Independent count: standard monomials of degree m biject with pairs of a
// nested family F and a positive exponent vector on F, giving
// sum_F binom(m-1, |F|-1).
inline std::vector<long> sr_series_by_families(int n, int deg_max) {
  std::vector<long> dims(static_cast<std::size_t>(deg_max) + 1, 0);
  for (const auto& family : enumerate_nested_families(make_labels(n))) {
    const int f = static_cast<int>(family.size());
    if (f == 0) {
      dims[0] += 1;
      continue;
    }
    for (int m = f; m <= deg_max; ++m) dims[m] += binomial(m - 1, f - 1).get_si();
  }
  return dims;
}

// ---------------------------------------------------------------------------
// Dimensions of the binary-limit operad components by the rank method.

// All decorated binary trees of the given shape, with vertex superscripts
// summing to at most sup_max, grouped by the superscript total.
inline Tree redecorate_binary(const Tree& shape, const BinarySymbols& N,
                              const std::vector<int>& ps, std::size_t& at) {
  if (shape.is_leaf()) return shape;
  const int p = ps[at++];
  std::vector<Tree> kids;
  kids.reserve(shape.kids.size());
  for (const Tree& k : shape.kids) kids.push_back(redecorate_binary(k, N, ps, at));
  return node_tree(N(p), std::move(kids));
}

inline std::map<int, std::vector<Tree>> binary_hosts(const BinarySymbols& N, int n, int sup_max) {
  const std::vector<int> base = {N(0)};
  std::map<int, std::vector<Tree>> hosts;
  for (const Tree& shape : enumerate_trees(make_labels(n), base, N.table())) {
    const int verts = tree_weight(shape);
    for (int m = 0; m <= sup_max; ++m)
      for (const std::vector<int>& ps : nonneg_compositions(m, verts)) {
        std::size_t at = 0;
        hosts[m].push_back(redecorate_binary(shape, N, ps, at));
      }
  }
  return hosts;
}

// Graded dimensions of the arity-n component in homological degrees
// 0, 2, ..., hdeg_max: free span of decorated binary trees modulo the span
// of all embeddings of the generalized-associativity relations.
inline std::map<int, long> one_hypercom_dims(int n, int hdeg_max) {
  if (n < 2) throw std::invalid_argument("one_hypercom_dims: n >= 2 required");
  const int m_max = hdeg_max / 2;
  SymbolTable tab;
  BinarySymbols N(tab);
  const std::vector<Element> rels = binary_limit_relations_upto(N, m_max);
  std::map<int, std::vector<Tree>> hosts = binary_hosts(N, n, m_max);
  std::map<int, long> dims;
  for (const auto& [m, bucket] : hosts) {
    RowSpace<Tree, std::less<Tree>> span;
    for (const Element& r : rels) {
      if (el_zero(r)) continue;
      const Tree& pat = r.begin()->first;
      const LabelSet pl = tree_leaves(pat);
      for (const Tree& h : bucket)
        for (const Occurrence& occ : find_occurrences(pat, h, tab)) {
          Element e = context_apply(h, occ, pl, r, tab);
          if (!el_zero(e)) span.insert(span.make_row({e.begin(), e.end()}));
        }
    }
    dims[2 * m] = static_cast<long>(bucket.size()) - static_cast<long>(span.rank());
  }
  return dims;
}

// The limiting ring series and the operad dimensions, displayed side by side
// in the even homological grading of the operad.
struct LimitComparison {
  int n = 0;
  std::vector<long> sr;      // ring dims per degree m, i.e. per hdeg 2m
  std::vector<long> operad;  // operad dims at hdeg 2m
  bool equal = false;
};

inline LimitComparison compare_one_hypercom(int n, int hdeg_max) {
  LimitComparison rep;
  rep.n = n;
  const int m_max = hdeg_max / 2;
  rep.sr = sr_series(n, m_max);
  std::map<int, long> od = one_hypercom_dims(n, hdeg_max);
  rep.operad.resize(static_cast<std::size_t>(m_max) + 1, 0);
  for (int m = 0; m <= m_max; ++m) {
    auto it = od.find(2 * m);
    rep.operad[static_cast<std::size_t>(m)] = it == od.end() ? 0 : it->second;
  }
  rep.equal = rep.sr == rep.operad;
  return rep;
}

// ---------------------------------------------------------------------------
// Betti stabilization: in polynomial degrees <= k the presented cohomology
// ring has the same dimensions as the limiting ring once d exceeds k.

// Quotient dimensions of the presented ring in degrees 0..deg_max only.  The
// defining ideal is homogeneous, so a degree-capped completion knows every
// leading term through the cap and the counts are exact there.
inline std::vector<long> betti_through_degree(int d, int n, int deg_max) {
  const LabelSet labels = make_labels(n);
  const std::vector<Poly> gb =
      buchberger(cgk_ideal_generators(d, labels, MonoOrder::DegLex), MonoOrder::DegLex, deg_max);
  return quotient_dims(gb, static_cast<int>(cgk_variables(labels).size()), deg_max);
}

struct StabilizationReport {
  int n = 0, k = 0;
  std::vector<int> ds;                   // the d values checked (k+1 and k+2)
  std::vector<long> sr;                  // limiting dims, degrees 0..k
  std::vector<std::vector<long>> betti;  // per d, degrees 0..k
  bool equal = false;
};

inline StabilizationReport stabilization_report(int n, int k) {
  StabilizationReport rep;
  rep.n = n;
  rep.k = k;
  rep.sr = sr_series(n, k);
  rep.equal = true;
  for (int d : {k + 1, k + 2}) {
    rep.ds.push_back(d);
    std::vector<long> head = betti_through_degree(d, n, k);
    if (head != rep.sr) rep.equal = false;
    rep.betti.push_back(std::move(head));
  }
  return rep;
}

inline bool stabilization_check(int n, int k) { return stabilization_report(n, k).equal; }

// ---------------------------------------------------------------------------
// Eulerian fit: determines which row of the second-order Eulerian triangle
// and which denominator exponent reproduce the ring series, rather than
// assuming an indexing.

struct EulerianFit {
  int n = 0;
  int row = 0;       // row index r with numerator P_r
  int exponent = 0;  // denominator exponent e in P_r(q) / (1-q)^e
};

// Coefficient of q^m in P(q) / (1-q)^e for a numerator with Int entries.
inline Int rational_series_coeff(const std::vector<Int>& P, int e, int m) {
  Int s = 0;
  for (int k = 0; k < static_cast<int>(P.size()) && k <= m; ++k)
    s += P[static_cast<std::size_t>(k)] * binomial(m - k + e - 1, e - 1);
  return s;
}

inline std::vector<EulerianFit> eulerian_offset(int n_max) {
  if (n_max < 3) throw std::invalid_argument("eulerian_offset: n_max >= 3 required");
  std::vector<EulerianFit> fits;
  for (int n = 3; n <= n_max; ++n) {
    const int deg_max = 2 * n;
    const std::vector<long> s = sr_series(n, deg_max);
    std::vector<EulerianFit> candidates;
    for (int r = 1; r <= n + 1; ++r) {
      const std::vector<Int> row = eulerian2_row(r);
      for (int e = 1; e <= n + 1; ++e) {
        bool ok = true;
        for (int m = 0; m <= deg_max && ok; ++m)
          if (rational_series_coeff(row, e, m) != Int(s[static_cast<std::size_t>(m)])) ok = false;
        if (ok) candidates.push_back({n, r, e});
      }
    }
    if (candidates.empty())
      throw std::runtime_error("eulerian_offset: no Eulerian row fits at n = " + std::to_string(n));
    if (candidates.size() > 1)
      throw std::runtime_error("eulerian_offset: ambiguous fit at n = " + std::to_string(n));
    fits.push_back(candidates.front());
  }
  return fits;
}

}  // namespace cgkw
