#pragma once
// Presented cohomology rings of the brick-compactified configuration spaces:
//
//   R_d(L) = Q[x_I : I subset of L, |I| >= 2] / ( x_I x_J for crossing I,J;
//                                                 (sigma_ij)^d for pairs i<j )
//
// where sigma_K = sum_{M >= K} x_M.  The quotient is Artinian with top degree
// d(n-1)-1 and one-dimensional top component.  Composition plugs a class over
// J into the slot s of a class over L, lands in the ring over (L \ s) u J,
// and is multiplication by x_J of lifted sigma-representatives.

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "combinat.hpp"
#include "groebner.hpp"
#include "labels.hpp"
#include "poly.hpp"

namespace cgkw {

inline Poly poly_pow(const Poly& p, int e, MonoOrder ord) {
  Poly out = poly_const(1);
  for (int i = 0; i < e; ++i) out = poly_mul(out, p, ord);
  return out;
}

// Variable list shared by the ring and by truncated ideal computations:
// all subsets of size >= 2, indexed with the (size, lex)-largest first.
inline std::vector<Subset> cgk_variables(const LabelSet& labels) {
  std::vector<Subset> vars = subsets_of_size_at_least(labels, 2);
  std::reverse(vars.begin(), vars.end());
  return vars;
}

// Defining ideal: crossing products x_I x_J plus the d-th powers of every
// pairwise linear form sigma_ab = sum of x_M over supersets M of {a, b}.
inline std::vector<Poly> cgk_ideal_generators(int d, const LabelSet& labels, MonoOrder ord) {
  const std::vector<Subset> vars = cgk_variables(labels);
  std::vector<Poly> gens;
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (crossing(vars[i], vars[j]))
        gens.push_back(poly_term(
            mono_mul(mono_var(static_cast<int>(i)), mono_var(static_cast<int>(j))), Rat(1)));
  std::map<Subset, int> index;
  for (size_t i = 0; i < vars.size(); ++i) index[vars[i]] = static_cast<int>(i);
  for (size_t a = 0; a < labels.size(); ++a)
    for (size_t b = a + 1; b < labels.size(); ++b) {
      std::vector<std::pair<Monomial, Rat>> t;
      for (const Subset& M : supersets_within({labels[a], labels[b]}, labels))
        t.emplace_back(mono_var(index.at(M)), 1);
      gens.push_back(poly_pow(poly_normalize(std::move(t), ord), d, ord));
    }
  return gens;
}

class CGKRing {
 public:
  CGKRing(int d, LabelSet labels, MonoOrder ord = MonoOrder::DegLex)
      : d_(d), labels_(std::move(labels)), ord_(ord) {
    if (d_ < 1) throw std::invalid_argument("d must be >= 1");
    if (labels_.size() < 2) throw std::invalid_argument("need at least two labels");
    if (!is_sorted_unique(labels_)) throw std::invalid_argument("labels must be sorted unique");

    vars_ = cgk_variables(labels_);
    for (size_t i = 0; i < vars_.size(); ++i) {
      index_[vars_[i]] = static_cast<int>(i);
      names_.push_back("x" + subset_str(vars_[i]));
    }

    gb_ = buchberger(cgk_ideal_generators(d_, labels_, ord_), ord_);
    top_ = d_ * (n() - 1) - 1;
  }

  int d() const { return d_; }
  const LabelSet& labels() const { return labels_; }
  int n() const { return static_cast<int>(labels_.size()); }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<Subset>& vars() const { return vars_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Poly>& gb() const { return gb_; }
  MonoOrder order() const { return ord_; }
  int top_degree() const { return top_; }

  int var_of(const Subset& I) const {
    auto it = index_.find(I);
    if (it == index_.end()) throw std::invalid_argument("no generator for " + subset_str(I));
    return it->second;
  }

  Poly nf(const Poly& p) const { return normal_form(p, gb_, ord_); }

  std::vector<long> betti() const { return quotient_dims(gb_, nvars(), top_); }

  Poly x_gen(const Subset& I) const { return poly_term(mono_var(var_of(I)), Rat(1)); }

  // sigma_K = sum of x_M over supersets M of K inside the label set.
  Poly sigma(const Subset& K) const {
    std::vector<std::pair<Monomial, Rat>> t;
    for (const Subset& M : supersets_within(K, labels_)) t.emplace_back(mono_var(var_of(M)), 1);
    return poly_normalize(std::move(t), ord_);
  }

  // Coordinate change on coefficients (no normal form): reinterpret an
  // x-polynomial as a sigma-polynomial via x_I = sum_{J >= I} (-1)^{|J|-|I|} sigma_J.
  Poly x_to_sigma(const Poly& p) const { return substitute(p, [&](int v) { return x_in_sigma(v); }); }

  // Inverse change: sigma_I = sum_{J >= I} x_J.
  Poly sigma_to_x(const Poly& p) const {
    return substitute(p, [&](int v) { return sigma(vars_[v]); });
  }

  // Generic variable substitution, expanding products.
  template <class F>
  Poly substitute(const Poly& p, F&& image_of_var) const {
    Poly out = poly_zero();
    for (const auto& [m, c] : p.t) {
      Poly term = poly_const(c);
      for (const auto& [v, e] : m) term = poly_mul(term, poly_pow(image_of_var(v), e, ord_), ord_);
      out = poly_add(out, term, ord_);
    }
    return out;
  }

 private:
  Poly x_in_sigma(int v) const {
    std::vector<std::pair<Monomial, Rat>> t;
    const Subset& I = vars_[v];
    for (const Subset& J : supersets_within(I, labels_)) {
      Rat sgn = ((J.size() - I.size()) % 2 == 0) ? 1 : -1;
      t.emplace_back(mono_var(var_of(J)), sgn);
    }
    return poly_normalize(std::move(t), ord_);
  }

  int d_;
  LabelSet labels_;
  MonoOrder ord_;
  std::vector<Subset> vars_;
  std::map<Subset, int> index_;
  std::vector<std::string> names_;
  std::vector<Poly> gb_;
  int top_;
};

// Shared immutable ring cache.
inline const CGKRing& ring_registry(int d, const LabelSet& labels,
                                    MonoOrder ord = MonoOrder::DegLex) {
  static std::map<std::tuple<int, LabelSet, MonoOrder>, std::unique_ptr<CGKRing>> cache;
  static std::mutex mx;
  std::lock_guard<std::mutex> lock(mx);
  auto key = std::make_tuple(d, labels, ord);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(std::move(key), std::make_unique<CGKRing>(d, labels, ord)).first;
  return *it->second;
}

// A cohomology class: normal-form x-coordinate polynomial over a cached ring.
struct CohClass {
  const CGKRing* ring = nullptr;
  Poly value;

  bool zero() const { return value.zero(); }
};

inline CohClass make_class(const CGKRing& R, const Poly& raw) { return {&R, R.nf(raw)}; }

inline bool class_eq(const CohClass& a, const CohClass& b) {
  if (a.ring != b.ring) throw std::invalid_argument("class_eq: different rings");
  return poly_eq(a.value, b.value);
}

inline CohClass class_add(const CohClass& a, const CohClass& b) {
  if (a.ring != b.ring) throw std::invalid_argument("class_add: different rings");
  return {a.ring, poly_add(a.value, b.value, a.ring->order())};
}

inline CohClass class_scale(const CohClass& a, const Rat& c) {
  return {a.ring, poly_scale(a.value, c)};
}

inline CohClass class_mul(const CohClass& a, const CohClass& b) {
  if (a.ring != b.ring) throw std::invalid_argument("class_mul: different rings");
  return make_class(*a.ring, poly_mul(a.value, b.value, a.ring->order()));
}

// Operadic composition: alpha over L with slot s, beta over J, |J| >= 2,
// J disjoint from L \ {s}.  Result over (L \ s) u J equals
// nf( x_J * phi(alpha) * incl(beta) ) where phi relabels sigma-generators
// containing s and incl is the sigma-generator inclusion.
inline CohClass compose_at(const CohClass& alpha, Label s, const CohClass& beta) {
  const CGKRing& A = *alpha.ring;
  const CGKRing& B = *beta.ring;
  if (A.d() != B.d()) throw std::invalid_argument("compose_at: mismatched d");
  if (!contains(A.labels(), s)) throw std::invalid_argument("compose_at: slot not a label");
  const Subset J = B.labels();
  const Subset rest = set_minus(A.labels(), {s});
  if (intersects(J, rest)) throw std::invalid_argument("compose_at: label clash");
  const CGKRing& C = ring_registry(A.d(), set_union(rest, J), A.order());

  auto phi = [&](const Subset& M) -> Subset {
    if (!contains(M, s)) return M;
    return set_union(set_minus(M, {s}), J);
  };
  Poly a_sig = A.x_to_sigma(alpha.value);
  Poly a_x = C.substitute(a_sig, [&](int v) { return C.sigma(phi(A.vars()[v])); });
  Poly b_sig = B.x_to_sigma(beta.value);
  Poly b_x = C.substitute(b_sig, [&](int v) { return C.sigma(B.vars()[v]); });

  Poly prod = poly_mul(C.x_gen(J), poly_mul(a_x, b_x, C.order()), C.order());
  return make_class(C, prod);
}

// Unary composition: plug c * identity over the single label j into slot s.
// Pure relabeling of generators (times the scalar).
inline CohClass compose_unary_at(const CohClass& alpha, Label s, Label j, const Rat& c) {
  const CGKRing& A = *alpha.ring;
  if (!contains(A.labels(), s)) throw std::invalid_argument("compose_unary_at: slot not a label");
  LabelSet nl = set_union(set_minus(A.labels(), {s}), {j});
  if (static_cast<int>(nl.size()) != A.n())
    throw std::invalid_argument("compose_unary_at: label clash");
  const CGKRing& C = ring_registry(A.d(), nl, A.order());
  std::vector<std::pair<Monomial, Rat>> t;
  for (const auto& [m, coef] : alpha.value.t) {
    Monomial m2;
    std::vector<std::pair<int, int>> parts;
    for (const auto& [v, e] : m) {
      Subset M = A.vars()[v];
      if (contains(M, s)) M = set_union(set_minus(M, {s}), {j});
      parts.emplace_back(C.var_of(M), e);
    }
    std::sort(parts.begin(), parts.end());
    for (auto& pr : parts) m2.push_back(pr);
    t.emplace_back(std::move(m2), coef * c);
  }
  return make_class(C, poly_normalize(std::move(t), C.order()));
}

inline CohClass unit_class(const CGKRing& R) { return {&R, poly_const(1)}; }

// mu^{(m)} = nf(sigma_L^m);  nu_{i,j}^{(m)} = nf(sigma_{ij}^m).
inline CohClass mu_class(const CGKRing& R, int m) {
  return make_class(R, poly_pow(R.sigma(R.labels()), m, R.order()));
}

inline CohClass nu_class(const CGKRing& R, Label i, Label j, int m) {
  Subset ij = i < j ? Subset{i, j} : Subset{j, i};
  return make_class(R, poly_pow(R.sigma(ij), m, R.order()));
}

// psi_out = -x_L;  psi_in(i) = sum over generators I containing i of x_I.
inline CohClass psi_out(const CGKRing& R) {
  return {&R, poly_scale(R.x_gen(R.labels()), Rat(-1))};
}

inline CohClass psi_in(const CGKRing& R, Label i) {
  std::vector<std::pair<Monomial, Rat>> t;
  for (int v = 0; v < R.nvars(); ++v)
    if (contains(R.vars()[v], i)) t.emplace_back(mono_var(v), 1);
  return make_class(R, poly_normalize(std::move(t), R.order()));
}

// Chain-splitting sum: for blocks S_1 u ... u S_q = L with {i,j} in S_1 and
// exponents p_1 + ... + p_q = m - q + 1 >= 0, the iterated composite
//   mu^{(p_q)}_{S_q u *} o_* ( ... o_* mu^{(p_1)}_{S_1} ).
// Equals nu^{(m)}_{ij}; vanishes when m >= d.
inline CohClass nu_expansion_sum(const CGKRing& R, Label i, Label j, int m) {
  CohClass total = {&R, poly_zero()};
  const int n = R.n();
  for (int q = 1; q <= n - 1 && q <= m + 1; ++q) {
    for (const auto& blocks : chain_splittings(R.labels(), i, j, q)) {
      if (blocks[0].size() < 2) continue;  // {i,j} already forces this
      for (const auto& ps : nonneg_compositions(m - q + 1, q)) {
        const CGKRing& R1 = ring_registry(R.d(), blocks[0], R.order());
        CohClass acc = mu_class(R1, ps[0]);
        for (int t = 1; t < q; ++t) {
          const CGKRing& Rt = ring_registry(R.d(), with_star(blocks[t]), R.order());
          acc = compose_at(mu_class(Rt, ps[t]), kStar, acc);
        }
        if (acc.ring != &R) throw std::logic_error("nu_expansion_sum: wrong target ring");
        total = class_add(total, acc);
      }
    }
  }
  return total;
}

inline bool verify_nu_expansion(const CGKRing& R, Label i, Label j, int m) {
  return class_eq(nu_expansion_sum(R, i, j, m), nu_class(R, i, j, m));
}

inline bool verify_hypercom_relation(const CGKRing& R, Label i, Label j, int m) {
  if (m < R.d()) throw std::invalid_argument("verify_hypercom_relation: need m >= d");
  return nu_expansion_sum(R, i, j, m).zero();
}

// Generator-preserving restriction from parameter d' to d < d' (same labels):
// x_G -> x_G, a ring homomorphism on the presented quotients.
inline CohClass restrict_to(const CGKRing& small, const CohClass& big) {
  if (small.labels() != big.ring->labels())
    throw std::invalid_argument("restrict_to: labels differ");
  if (small.d() > big.ring->d()) throw std::invalid_argument("restrict_to: need smaller d");
  // Variable index spaces coincide (same labels, same ordering).
  return make_class(small, big.value);
}

}  // namespace cgkw
