#pragma once
// Flows on spaces of operad morphisms out of the presented hypercommutative
// family.  A derivation series sum D_p z^p (|z| = -2) induces a vector field
// on the morphism space; unary target elements give the adjoint special case,
// whose degree-2i series exponentiate to an exact group flow.  The same
// machinery specializes to the differential-order criterion: a homotopy
// circle action on a graded commutative algebra has fractional order at most
// (d+1)/d exactly when the associated field vanishes at the morphism that
// sends every top-superscript generator to the (signed) iterated product.
// Koszul braces provide the independent order measurement.

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cgk_ring.hpp"
#include "combinat.hpp"
#include "labels.hpp"
#include "presentations.hpp"
#include "rational.hpp"

namespace cgkw {

// ---------------------------------------------------------------------------
// Endomorphism operads of small graded vector spaces.

struct GradedSpace {
  std::vector<int> degs;  // degree of each basis vector
  int dim() const { return static_cast<int>(degs.size()); }
};

using Vec = std::vector<Rat>;

inline bool vec_zero(const Vec& v) {
  for (const Rat& c : v)
    if (c != 0) return false;
  return true;
}

inline Vec vec_add(Vec a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec vec_scale(Vec a, const Rat& c) {
  for (Rat& x : a) x *= c;
  return a;
}

// A multilinear map V^S -> V, homogeneous of degree hdeg.  Values are stored
// sparsely: basis-index tuple (aligned with the sorted labels) -> output
// coordinates.
struct EndElem {
  LabelSet labels;
  int hdeg = 0;
  std::map<std::vector<int>, Vec> vals;
};

// A linear endomorphism of V, homogeneous of degree hdeg; the unary part of
// the endomorphism operad (independent of the slot label).
struct EndUnary {
  std::vector<Vec> cols;  // cols[i] = image of basis vector i
  int hdeg = 0;
};

class EndOperad {
 public:
  explicit EndOperad(GradedSpace space) : space_(std::move(space)) {}

  using Elem = EndElem;
  using Unary = EndUnary;

  const GradedSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }

  Elem zero(LabelSet ls, int hdeg = 0) const { return {std::move(ls), hdeg, {}}; }

  static void trim(Elem& a) {
    for (auto it = a.vals.begin(); it != a.vals.end();)
      it = vec_zero(it->second) ? a.vals.erase(it) : std::next(it);
  }

  bool is_zero(const Elem& a) const {
    for (const auto& [t, v] : a.vals)
      if (!vec_zero(v)) return false;
    return true;
  }

  Elem add(Elem a, const Elem& b) const {
    if (a.labels != b.labels) throw std::invalid_argument("add: label sets differ");
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    if (a.hdeg != b.hdeg) throw std::invalid_argument("add: degrees differ");
    for (const auto& [t, v] : b.vals) {
      auto [it, fresh] = a.vals.try_emplace(t, v);
      if (!fresh) it->second = vec_add(std::move(it->second), v);
    }
    trim(a);
    return a;
  }

  Elem scale(Elem a, const Rat& c) const {
    if (c == 0) return zero(a.labels, a.hdeg);
    for (auto& [t, v] : a.vals) v = vec_scale(std::move(v), c);
    return a;
  }

  Elem sub(Elem a, const Elem& b) const { return add(std::move(a), scale(b, Rat(-1))); }

  bool eq(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }

  // Degree consistency: every stored value must live in the degree forced by
  // the inputs and the element's own degree.
  bool degree_consistent(const Elem& a) const {
    for (const auto& [t, v] : a.vals) {
      int in = 0;
      for (int i : t) in += space_.degs[i];
      for (int out = 0; out < dim(); ++out)
        if (v[out] != 0 && space_.degs[out] != a.hdeg + in) return false;
    }
    return true;
  }

  Elem from_unary(const Unary& r, Label slot) const {
    Elem out = zero({slot}, r.hdeg);
    for (int i = 0; i < dim(); ++i)
      if (!vec_zero(r.cols[i])) out.vals[{i}] = r.cols[i];
    return out;
  }

  // Order-preserving relabeling: sorted positions are unchanged, so the value
  // table carries over verbatim.
  Elem relabel(const Elem& a, const std::map<Label, Label>& m) const {
    LabelSet nl;
    for (Label l : a.labels) {
      auto it = m.find(l);
      nl.push_back(it == m.end() ? l : it->second);
    }
    if (!is_sorted_unique(nl)) throw std::invalid_argument("relabel: not order-preserving");
    return {std::move(nl), a.hdeg, a.vals};
  }

  // Partial composition (a o_s b): substitute b into slot s of a, with the
  // Koszul sign of moving b and the b-arguments into place.
  Elem compose_at(const Elem& a, Label s, const Elem& b) const {
    if (!contains(a.labels, s)) throw std::invalid_argument("compose_at: slot not a label");
    const LabelSet nl = set_union(set_minus(a.labels, {s}), b.labels);
    if (nl.size() != a.labels.size() - 1 + b.labels.size())
      throw std::invalid_argument("compose_at: labels not disjoint");
    Elem out = zero(nl, a.hdeg + b.hdeg);

    // Positions of the composite's arguments in the evaluation order of
    // a(.., b(..), ..): a-labels below s, then b-labels, then a-labels above.
    std::vector<Label> eval_order;
    for (Label l : a.labels)
      if (l < s) eval_order.push_back(l);
    for (Label l : b.labels) eval_order.push_back(l);
    for (Label l : a.labels)
      if (l > s) eval_order.push_back(l);
    // eval_pos[i] = where the i-th sorted composite argument sits in
    // evaluation order.
    std::vector<int> eval_pos(nl.size());
    for (size_t i = 0; i < nl.size(); ++i) {
      auto it = std::find(eval_order.begin(), eval_order.end(), nl[i]);
      eval_pos[i] = static_cast<int>(it - eval_order.begin());
    }
    const size_t s_pos = static_cast<size_t>(
        std::lower_bound(a.labels.begin(), a.labels.end(), s) - a.labels.begin());

    for (const auto& [tb, wb] : b.vals) {
      for (const auto& [ta, wa] : a.vals) {
        // The composite tuple in sorted order.
        std::vector<int> tuple(nl.size());
        for (size_t i = 0; i < nl.size(); ++i) {
          int p = eval_pos[i];
          if (p < static_cast<int>(s_pos))
            tuple[i] = ta[p];
          else if (p < static_cast<int>(s_pos + tb.size()))
            tuple[i] = tb[p - s_pos];
          else
            tuple[i] = ta[p - tb.size() + 1];
        }
        // Koszul sign of reordering the graded inputs from sorted order to
        // evaluation order: inversions between odd-degree arguments.
        int sign = 1;
        for (size_t i = 0; i < nl.size(); ++i)
          for (size_t j = i + 1; j < nl.size(); ++j)
            if (eval_pos[i] > eval_pos[j] && (space_.degs[tuple[i]] & 1) &&
                (space_.degs[tuple[j]] & 1))
              sign = -sign;
        // Sign of moving b itself past the a-arguments below its slot.
        if (b.hdeg & 1) {
          int below = 0;
          for (size_t p = 0; p < s_pos; ++p) below += space_.degs[ta[p]];
          if (below & 1) sign = -sign;
        }
        // Contract b's output against slot s of a.
        const int inner = ta[s_pos];
        const Rat& coef = wb[inner];
        if (coef == 0) continue;
        auto [it, fresh] = out.vals.try_emplace(tuple, Vec(dim(), Rat(0)));
        it->second = vec_add(std::move(it->second), vec_scale(wa, coef * sign));
      }
    }
    trim(out);
    return out;
  }

  Elem apply_unary_out(const Unary& r, const Elem& g) const {
    Elem out = zero(g.labels, g.hdeg + r.hdeg);
    for (const auto& [t, v] : g.vals) {
      Vec nv(dim(), Rat(0));
      for (int i = 0; i < dim(); ++i)
        if (v[i] != 0) nv = vec_add(std::move(nv), vec_scale(r.cols[i], v[i]));
      if (!vec_zero(nv)) out.vals[t] = std::move(nv);
    }
    return out;
  }

  Elem apply_unary_in(const Elem& g, Label slot, const Unary& r) const {
    Elem rel = from_unary(r, slot);
    return compose_at(g, slot, rel);
  }

  // Operadic commutator with a unary element:
  //   [r, g] = r o g - (-1)^{|r||g|} sum_i g o_i r.
  Elem bracket_unary(const Unary& r, const Elem& g) const {
    Elem out = apply_unary_out(r, g);
    const int sgn = ((r.hdeg & 1) && (g.hdeg & 1)) ? -1 : 1;
    for (Label l : g.labels) out = sub(std::move(out), scale(apply_unary_in(g, l, r), Rat(sgn)));
    return out;
  }

  Unary unary_zero(int hdeg = 0) const { return {std::vector<Vec>(dim(), Vec(dim(), Rat(0))), hdeg}; }

  bool unary_is_zero(const Unary& r) const {
    for (const Vec& c : r.cols)
      if (!vec_zero(c)) return false;
    return true;
  }

  Unary unary_scale(Unary r, const Rat& c) const {
    for (Vec& col : r.cols) col = vec_scale(std::move(col), c);
    return r;
  }

  Unary unary_compose(const Unary& r, const Unary& s) const {  // r after s
    Unary out = unary_zero(r.hdeg + s.hdeg);
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (s.cols[i][j] != 0)
          out.cols[i] = vec_add(std::move(out.cols[i]), vec_scale(r.cols[j], s.cols[i][j]));
    return out;
  }

  Unary unary_bracket(const Unary& r, const Unary& s) const {
    Unary rs = unary_compose(r, s), sr = unary_compose(s, r);
    const int sgn = ((r.hdeg & 1) && (s.hdeg & 1)) ? -1 : 1;
    Unary out = unary_zero(r.hdeg + s.hdeg);
    for (int i = 0; i < dim(); ++i)
      out.cols[i] = vec_add(rs.cols[i], vec_scale(sr.cols[i], Rat(-sgn)));
    return out;
  }

 private:
  GradedSpace space_;
};

// ---------------------------------------------------------------------------
// The symbolic target: components are presented cohomology classes.

// Transport of a class along a bijective relabeling of the underlying set.
inline CohClass transport_class(const CohClass& a, const std::map<Label, Label>& m) {
  const CGKRing& R1 = *a.ring;
  LabelSet nl;
  for (Label l : R1.labels()) {
    auto it = m.find(l);
    nl.push_back(it == m.end() ? l : it->second);
  }
  LabelSet sorted_nl = nl;
  std::sort(sorted_nl.begin(), sorted_nl.end());
  const CGKRing& R2 = ring_registry(R1.d(), sorted_nl, R1.order());
  auto map_subset = [&](const Subset& I) {
    Subset out;
    for (Label l : I) {
      auto it = m.find(l);
      out.push_back(it == m.end() ? l : it->second);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<std::pair<Monomial, Rat>> terms;
  for (const auto& [mono, c] : a.value.t) {
    Monomial nm;
    for (const auto& [v, e] : mono) nm = mono_mul(nm, mono_var(R2.var_of(map_subset(R1.vars()[v])), e));
    terms.emplace_back(std::move(nm), c);
  }
  return make_class(R2, poly_normalize(std::move(terms), R2.order()));
}

class SymbolicTarget {
 public:
  explicit SymbolicTarget(int d, MonoOrder ord = MonoOrder::DegLex) : d_(d), ord_(ord) {}

  using Elem = CohClass;
  using Unary = Rat;  // the unary component is spanned by the identity

  int d() const { return d_; }
  MonoOrder order() const { return ord_; }

  Elem zero(const LabelSet& ls, int = 0) const {
    return {&ring_registry(d_, ls, ord_), poly_zero()};
  }
  bool is_zero(const Elem& a) const { return a.zero(); }
  Elem add(const Elem& a, const Elem& b) const { return class_add(a, b); }
  Elem scale(const Elem& a, const Rat& c) const { return class_scale(a, c); }
  Elem sub(const Elem& a, const Elem& b) const { return class_add(a, class_scale(b, Rat(-1))); }
  bool eq(const Elem& a, const Elem& b) const { return class_eq(a, b); }
  Elem compose_at(const Elem& a, Label s, const Elem& b) const { return cgkw::compose_at(a, s, b); }
  Elem relabel(const Elem& a, const std::map<Label, Label>& m) const {
    return transport_class(a, m);
  }

  Elem bracket_unary(const Unary& r, const Elem& g) const {
    // [r, g] = r g - g (sum over inputs) r = (1 - arity) r g for scalars.
    const long arity = static_cast<long>(g.ring->labels().size());
    return class_scale(g, r * Rat(1 - arity));
  }

  Unary unary_zero(int = 0) const { return Rat(0); }
  bool unary_is_zero(const Unary& r) const { return r == 0; }
  Unary unary_scale(const Unary& r, const Rat& c) const { return r * c; }
  Unary unary_bracket(const Unary&, const Unary&) const { return Rat(0); }  // commutative

 private:
  int d_;
  MonoOrder ord_;
};

// ---------------------------------------------------------------------------
// Morphisms out of the presented family.

// Superscript range of the arity-n generator family: 0 <= k <= d(n-1)-1.
inline int top_sup(int d, int n) { return d * (n - 1) - 1; }

template <class T>
struct Morphism {
  const T* target = nullptr;
  int d = 0;
  int max_arity = 0;
  // Images of the generators on the canonical label sets {1..n}.
  std::map<std::pair<int, int>, typename T::Elem> images;

  typename T::Elem image(const LabelSet& S, int k) const {
    const int n = static_cast<int>(S.size());
    if (n > max_arity) throw std::out_of_range("morphism: arity above cap");
    if (k < 0 || k > top_sup(d, n)) return target->zero(S);
    auto it = images.find({n, k});
    if (it == images.end()) return target->zero(S);
    const LabelSet canon = make_labels(n);
    if (S == canon) return it->second;
    std::map<Label, Label> m;
    for (int i = 0; i < n; ++i) m[canon[i]] = S[i];
    return target->relabel(it->second, m);
  }
};

// The canonical point of the symbolic morphism space: each generator goes to
// its own cohomology class.
inline Morphism<SymbolicTarget> canonical_morphism(const SymbolicTarget& tgt, int max_arity) {
  Morphism<SymbolicTarget> f{&tgt, tgt.d(), max_arity, {}};
  for (int n = 2; n <= max_arity; ++n) {
    const CGKRing& R = ring_registry(tgt.d(), make_labels(n), tgt.order());
    for (int k = 0; k <= top_sup(tgt.d(), n); ++k) f.images[{n, k}] = mu_class(R, k);
  }
  return f;
}

// Evaluation of canonical-form tree monomials and their linear combinations
// under a morphism (vertex superscripts read off the symbol table).
template <class T>
typename T::Elem eval_tree(const Tree& t, const SymbolTable& tab, const Morphism<T>& f) {
  LabelSet vl;
  for (const Tree& k : t.kids) vl.push_back(min_leaf(k));
  typename T::Elem acc = f.image(vl, tab[t.sym].sup);
  for (const Tree& k : t.kids)
    if (!k.is_leaf()) acc = f.target->compose_at(acc, min_leaf(k), eval_tree(k, tab, f));
  return acc;
}

template <class T>
typename T::Elem eval_element(const Element& e, const SymbolTable& tab, const Morphism<T>& f,
                              const LabelSet& ls) {
  typename T::Elem acc = f.target->zero(ls);
  for (const auto& [t, c] : e) acc = f.target->add(acc, f.target->scale(eval_tree(t, tab, f), c));
  return acc;
}

// Tangent evaluation: extend a generator assignment g (the value of a vector
// field at f) to a tree monomial by the Leibniz rule - the sum over vertices
// of "g at this vertex, f everywhere else".  Returns (value, tangent).
template <class T, class G>
std::pair<typename T::Elem, typename T::Elem> eval_tree_jet(const Tree& t, const SymbolTable& tab,
                                                            const Morphism<T>& f, G&& g) {
  LabelSet vl;
  for (const Tree& k : t.kids) vl.push_back(min_leaf(k));
  const int sup = tab[t.sym].sup;
  typename T::Elem base = f.image(vl, sup);
  typename T::Elem tang = g(vl, sup);
  for (const Tree& k : t.kids) {
    if (k.is_leaf()) continue;
    auto [kb, kt] = eval_tree_jet(k, tab, f, g);
    tang = f.target->add(f.target->compose_at(tang, min_leaf(k), kb),
                         f.target->compose_at(base, min_leaf(k), kt));
    base = f.target->compose_at(base, min_leaf(k), kb);
  }
  return {std::move(base), std::move(tang)};
}

// Morphism validity: every vanishing chain sum up to the arity cap maps to
// zero.  Total superscripts are capped by the per-vertex ranges, so the check
// is finite: m runs over [d, d(n-1)-1]; beyond that every chain term dies.
template <class T>
bool morphism_valid(const Morphism<T>& f) {
  SymbolTable tab;
  HyperSymbols M(f.d, tab);
  for (int n = 3; n <= f.max_arity; ++n) {
    const LabelSet L = make_labels(n);
    for (int m = f.d; m <= top_sup(f.d, n); ++m)
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          Element rel = chain_splitting_sum(M, n, i, j, m);
          if (!f.target->is_zero(eval_element(rel, tab, f, L))) return false;
        }
  }
  return true;
}

// ---------------------------------------------------------------------------
// The tangent fields.

template <class T>
struct Derivation {
  int hdeg = 0;
  std::function<typename T::Elem(const typename T::Elem&)> act;
};

template <class T>
Derivation<T> inner_derivation(const T& tgt, typename T::Unary r, int hdeg = 0) {
  return {hdeg, [&tgt, r = std::move(r)](const typename T::Elem& g) {
            return tgt.bracket_unary(r, g);
          }};
}

// A slot placeholder avoiding every label of S (the evaluation set may itself
// contain the default star when fields are probed at star-bearing vertices).
inline Label fresh_star(const LabelSet& S) {
  Label s = kStar;
  while (contains(S, s)) ++s;
  return s;
}

// The field attached to D z^p, evaluated at the morphism f on the generator
// with label set L and superscript k:
//   sum over ordered partitions S_0 | ... | S_q of L (|S_0| >= 2, others
//   nonempty) and p_0 + ... + p_q = p - q of
//   f(mu^{(k+p_q)}_{S_q u *}) o_* ... o_* f(mu^{(p_1)}_{S_1 u *}) o_* D(f(mu^{(p_0)}_{S_0})) ,
// with the superscript shift +k landing on the single factor when q = 0.
template <class T>
typename T::Elem y_field(const Morphism<T>& f, const Derivation<T>& D, int p, const LabelSet& L,
                         int k, bool drop_q0 = false) {
  const T& tgt = *f.target;
  typename T::Elem total = tgt.zero(L);
  const int n = static_cast<int>(L.size());
  const Label star = fresh_star(L);
  for (int q = 0; q <= p && q <= n - 1; ++q) {
    if (drop_q0 && q == 0) continue;
    for (const auto& parts : ordered_set_partitions(L, q + 1)) {
      if (parts[0].size() < 2) continue;
      for (const auto& ps : nonneg_compositions(p - q, q + 1)) {
        typename T::Elem img0 = f.image(parts[0], ps[0] + (q == 0 ? k : 0));
        if (tgt.is_zero(img0)) continue;
        typename T::Elem acc = D.act(img0);
        bool dead = tgt.is_zero(acc);
        for (int t = 1; t <= q && !dead; ++t) {
          typename T::Elem img =
              f.image(set_union(parts[t], {star}), ps[t] + (t == q ? k : 0));
          if (tgt.is_zero(img)) {
            dead = true;
            break;
          }
          acc = tgt.compose_at(img, star, acc);
          dead = tgt.is_zero(acc);
        }
        if (!dead) total = tgt.add(total, acc);
      }
    }
  }
  return total;
}

template <class T>
typename T::Elem x_field(const Morphism<T>& f, const typename T::Unary& r, int r_hdeg, int p,
                         const LabelSet& L, int k) {
  return y_field(f, inner_derivation(*f.target, r, r_hdeg), p, L, k);
}

// Does the f-derivation extension of the field annihilate every vanishing
// chain sum at the given arity and total superscript?
template <class T>
bool vanishes_on_relations(const Morphism<T>& f, const Derivation<T>& D, int p, int n, int m,
                           bool drop_q0 = false) {
  if (m < f.d) throw std::invalid_argument("vanishes_on_relations: need m >= d");
  SymbolTable tab;
  HyperSymbols M(f.d, tab);
  const LabelSet L = make_labels(n);
  std::map<std::pair<LabelSet, int>, typename T::Elem> cache;
  auto g = [&](const LabelSet& S, int k) -> typename T::Elem {
    auto it = cache.find({S, k});
    if (it == cache.end())
      it = cache.emplace(std::make_pair(S, k), y_field(f, D, p, S, k, drop_q0)).first;
    return it->second;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Element rel = chain_splitting_sum(M, n, i, j, m);
      typename T::Elem tang = f.target->zero(L);
      for (const auto& [t, c] : rel) {
        auto [base, dt] = eval_tree_jet(t, tab, f, g);
        (void)base;
        tang = f.target->add(tang, f.target->scale(dt, c));
      }
      if (!f.target->is_zero(tang)) return false;
    }
  return true;
}

// Directional derivative of the field along a tangent assignment G of
// homogeneous degree gdeg: the same sum with exactly one f-image factor
// replaced by its G-image.  Morphism images are even, so the only Koszul
// sign from extracting the perturbation parameter arises when it crosses the
// derivation itself (the innermost factor differentiates through D).
template <class T, class G>
typename T::Elem y_field_jet(const Morphism<T>& f, const Derivation<T>& D, int p,
                             const LabelSet& L, int k, G&& gdir, int gdeg = 0) {
  const T& tgt = *f.target;
  typename T::Elem total = tgt.zero(L);
  const int n = static_cast<int>(L.size());
  const Label star = fresh_star(L);
  const Rat inner_sign((D.hdeg & 1) && (gdeg & 1) ? -1 : 1);
  for (int q = 0; q <= p && q <= n - 1; ++q) {
    for (const auto& parts : ordered_set_partitions(L, q + 1)) {
      if (parts[0].size() < 2) continue;
      for (const auto& ps : nonneg_compositions(p - q, q + 1)) {
        for (int u = 0; u <= q; ++u) {
          typename T::Elem acc =
              u == 0 ? tgt.scale(D.act(gdir(parts[0], ps[0] + (q == 0 ? k : 0))), inner_sign)
                     : D.act(f.image(parts[0], ps[0] + (q == 0 ? k : 0)));
          bool dead = tgt.is_zero(acc);
          for (int t = 1; t <= q && !dead; ++t) {
            const int sup = ps[t] + (t == q ? k : 0);
            const LabelSet block = set_union(parts[t], {star});
            typename T::Elem img = t == u ? gdir(block, sup) : f.image(block, sup);
            if (tgt.is_zero(img)) {
              dead = true;
              break;
            }
            acc = tgt.compose_at(img, star, acc);
            dead = tgt.is_zero(acc);
          }
          if (!dead) total = tgt.add(total, acc);
        }
      }
    }
  }
  return total;
}

// Graded commutator of two homogeneous fields a = D z^p, a' = D' z^p',
// compared against the field of the commutator derivation at z^{p+p'}.
// The assignment a |-> Y(a) reverses brackets (it is a right action):
//   [Y(a), Y(a')] = dir_{Y(a)} Y(a') - (-1)^{|a||a'|} dir_{Y(a')} Y(a)
//                 = -Y([a, a']) = Y([a', a]).
// The field degrees |a| = |D| - 2p differ from |D| by even amounts, so all
// signs use the derivation parities |D|, |D'|.
template <class T>
bool lie_bracket_check(const Morphism<T>& f, const Derivation<T>& D, int p,
                       const Derivation<T>& Dp, int pp, const Derivation<T>& Dcomm, int n_max) {
  const T& tgt = *f.target;
  std::map<std::pair<LabelSet, int>, typename T::Elem> cache_a, cache_b;
  auto ga = [&](const LabelSet& S, int k) -> typename T::Elem {
    auto it = cache_a.find({S, k});
    if (it == cache_a.end()) it = cache_a.emplace(std::make_pair(S, k), y_field(f, D, p, S, k)).first;
    return it->second;
  };
  auto gb = [&](const LabelSet& S, int k) -> typename T::Elem {
    auto it = cache_b.find({S, k});
    if (it == cache_b.end())
      it = cache_b.emplace(std::make_pair(S, k), y_field(f, Dp, pp, S, k)).first;
    return it->second;
  };
  const int sgn = ((D.hdeg & 1) && (Dp.hdeg & 1)) ? -1 : 1;
  for (int n = 2; n <= n_max; ++n) {
    const LabelSet L = make_labels(n);
    for (int k = 0; k <= top_sup(f.d, n); ++k) {
      typename T::Elem lhs = tgt.sub(y_field_jet(f, Dp, pp, L, k, ga, D.hdeg),
                                     tgt.scale(y_field_jet(f, D, p, L, k, gb, Dp.hdeg), Rat(sgn)));
      typename T::Elem rhs = tgt.scale(y_field(f, Dcomm, p + pp, L, k), Rat(-1));
      if (!tgt.is_zero(tgt.sub(lhs, rhs))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// The group flow: exact exponential of the adjoint field of a unary series
// phi = sum_{i >= 1} r_i z^i.  The flow is integrated as a formal Taylor
// series in time; the per-generator superscript budget makes it terminate.

template <class T>
using UnarySeries = std::map<int, typename T::Unary>;  // p -> r_p

// Coefficient of s^j in X(phi) evaluated at the s-jet morphism
// f(s) = jets[0] + jets[1] s + ... : each chain factor picks one jet order.
template <class T>
typename T::Elem x_series_coeff(const std::vector<Morphism<T>>& jets, const UnarySeries<T>& phi,
                                int j, const LabelSet& L, int k) {
  const T& tgt = *jets[0].target;
  typename T::Elem total = tgt.zero(L);
  const int n = static_cast<int>(L.size());
  const Label star = fresh_star(L);
  for (const auto& [p, r] : phi) {
    for (int q = 0; q <= p && q <= n - 1; ++q) {
      for (const auto& parts : ordered_set_partitions(L, q + 1)) {
        if (parts[0].size() < 2) continue;
        for (const auto& ps : nonneg_compositions(p - q, q + 1)) {
          for (const auto& js : nonneg_compositions(j, q + 1)) {
            bool feasible = true;
            for (int t = 0; t <= q; ++t)
              if (js[t] >= static_cast<int>(jets.size())) feasible = false;
            if (!feasible) continue;
            typename T::Elem img0 = jets[js[0]].image(parts[0], ps[0] + (q == 0 ? k : 0));
            if (tgt.is_zero(img0)) continue;
            typename T::Elem acc = tgt.bracket_unary(r, img0);
            bool dead = tgt.is_zero(acc);
            for (int t = 1; t <= q && !dead; ++t) {
              typename T::Elem img =
                  jets[js[t]].image(set_union(parts[t], {star}), ps[t] + (t == q ? k : 0));
              if (tgt.is_zero(img)) {
                dead = true;
                break;
              }
              acc = tgt.compose_at(img, star, acc);
              dead = tgt.is_zero(acc);
            }
            if (!dead) total = tgt.add(total, acc);
          }
        }
      }
    }
  }
  return total;
}

template <class T>
Morphism<T> group_flow(const Morphism<T>& f, const UnarySeries<T>& phi, int max_terms = 64) {
  for (const auto& [p, r] : phi)
    if (p < 1) throw std::invalid_argument("group_flow: series must start at z^1");
  const T& tgt = *f.target;
  std::vector<Morphism<T>> jets = {f};
  for (int j = 0; j < max_terms; ++j) {
    Morphism<T> next{f.target, f.d, f.max_arity, {}};
    bool all_zero = true;
    for (int n = 2; n <= f.max_arity; ++n) {
      const LabelSet L = make_labels(n);
      for (int k = 0; k <= top_sup(f.d, n); ++k) {
        typename T::Elem c = x_series_coeff(jets, phi, j, L, k);
        c = tgt.scale(c, make_rat(1, j + 1));
        if (!tgt.is_zero(c)) {
          all_zero = false;
          next.images[{n, k}] = std::move(c);
        }
      }
    }
    if (all_zero) break;
    jets.push_back(std::move(next));
    if (j == max_terms - 1) throw std::runtime_error("group_flow: series did not terminate");
  }
  Morphism<T> out{f.target, f.d, f.max_arity, {}};
  for (int n = 2; n <= f.max_arity; ++n) {
    const LabelSet L = make_labels(n);
    for (int k = 0; k <= top_sup(f.d, n); ++k) {
      typename T::Elem acc = tgt.zero(L);
      for (const auto& jet : jets) {
        auto it = jet.images.find({n, k});
        if (it != jet.images.end()) acc = tgt.add(acc, it->second);
      }
      if (!tgt.is_zero(acc)) out.images[{n, k}] = std::move(acc);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The psi-class form of the adjoint field on the symbolic target, at the
// canonical morphism:
//   X(r z^p)(f)(mu_n^{(k)}) = r mu^{(k+p)} - sum_i psi_i^p mu^{(k)} r
//     + sum_{s+t=p-1} sum_{I u J = [n]} psi_*^s mu^{(k)}_{I u *} o_* (r mu^{(t)}_J).
inline CohClass x_field_psi(const SymbolicTarget& tgt, const Rat& r, int p, int n, int k) {
  const LabelSet L = make_labels(n);
  const CGKRing& R = ring_registry(tgt.d(), L, tgt.order());
  CohClass total = class_scale(mu_class(R, k + p), r);
  for (int i = 1; i <= n; ++i) {
    CohClass psi_pow = unit_class(R);
    for (int e = 0; e < p; ++e) psi_pow = class_mul(psi_pow, psi_in(R, L[i - 1]));
    total = class_add(total, class_scale(class_mul(psi_pow, mu_class(R, k)), -r));
  }
  for (int s = 0; s + 1 <= p; ++s) {
    const int t = p - 1 - s;
    for (const Subset& J : subsets_of_size_at_least(L, 2)) {
      if (J.size() == L.size()) continue;  // I nonempty
      const LabelSet outer = with_star(set_minus(L, J));
      const CGKRing& Ro = ring_registry(tgt.d(), outer, tgt.order());
      const CGKRing& Ri = ring_registry(tgt.d(), J, tgt.order());
      CohClass psi_pow = unit_class(Ro);
      for (int e = 0; e < s; ++e) psi_pow = class_mul(psi_pow, psi_in(Ro, kStar));
      CohClass head = class_mul(psi_pow, mu_class(Ro, k));
      total = class_add(total, compose_at(head, kStar, class_scale(mu_class(Ri, t), r)));
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Koszul braces and differential order on a finite graded commutative
// associative algebra given by structure constants.

struct CommAlgebra {
  std::vector<int> degs;                       // basis degrees
  std::vector<std::vector<Vec>> mult;          // mult[i][j] = e_i * e_j
  int dim() const { return static_cast<int>(degs.size()); }

  Vec mul(const Vec& a, const Vec& b) const {
    Vec out(dim(), Rat(0));
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (a[i] != 0 && b[j] != 0) out = vec_add(std::move(out), vec_scale(mult[i][j], a[i] * b[j]));
    return out;
  }

  Vec basis(int i) const {
    Vec v(dim(), Rat(0));
    v[i] = 1;
    return v;
  }

  bool graded_commutative() const {
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) {
        Vec lhs = mult[i][j];
        Vec rhs = vec_scale(mult[j][i], Rat((degs[i] & 1) && (degs[j] & 1) ? -1 : 1));
        if (!vec_zero(vec_add(std::move(lhs), vec_scale(std::move(rhs), Rat(-1))))) return false;
      }
    return true;
  }

  bool associative() const {
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        for (int k = 0; k < dim(); ++k) {
          Vec lhs = mul(mult[i][j], basis(k));
          Vec rhs = mul(basis(i), mult[j][k]);
          if (!vec_zero(vec_add(std::move(lhs), vec_scale(std::move(rhs), Rat(-1))))) return false;
        }
    return true;
  }
};

struct Operator {
  std::vector<Vec> cols;  // cols[i] = Delta(e_i)
  int hdeg = 0;

  Vec apply(const Vec& v) const {
    Vec out(cols.size(), Rat(0));
    for (size_t i = 0; i < cols.size(); ++i)
      if (v[i] != 0) out = vec_add(std::move(out), vec_scale(cols[i], v[i]));
    return out;
  }
};

// The truncated polynomial line k[a]/(a^dim) with the generator in degree
// gdeg; for odd gdeg this is the exterior line (the square already vanishes).
inline CommAlgebra truncated_line(int dim, int gdeg) {
  CommAlgebra A;
  for (int i = 0; i < dim; ++i) A.degs.push_back(i * gdeg);
  A.mult.assign(dim, std::vector<Vec>(dim, Vec(dim, Rat(0))));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (i + j < dim) A.mult[i][j][i + j] = 1;
  return A;
}

// Free graded-commutative algebra on odd generators; the basis is indexed by
// subsets of the generators via bitmasks, with Koszul reordering signs.
inline CommAlgebra exterior_algebra(const std::vector<int>& gdegs) {
  const int k = static_cast<int>(gdegs.size()), dim = 1 << k;
  CommAlgebra A;
  A.degs.assign(dim, 0);
  for (int m = 0; m < dim; ++m)
    for (int i = 0; i < k; ++i)
      if (m >> i & 1) A.degs[m] += gdegs[i];
  A.mult.assign(dim, std::vector<Vec>(dim, Vec(dim, Rat(0))));
  for (int s = 0; s < dim; ++s)
    for (int t = 0; t < dim; ++t) {
      if (s & t) continue;
      int sign = 0;  // inversions between the two sorted generator lists
      for (int i = 0; i < k; ++i)
        if (s >> i & 1)
          for (int j = 0; j < i; ++j)
            if (t >> j & 1) sign ^= 1;
      A.mult[s][t][s | t] = sign ? -1 : 1;
    }
  return A;
}

inline Operator op_compose(const Operator& a, const Operator& b) {  // a after b
  const int dim = static_cast<int>(a.cols.size());
  Operator out{std::vector<Vec>(dim, Vec(dim, Rat(0))), a.hdeg + b.hdeg};
  for (int i = 0; i < dim; ++i) out.cols[i] = a.apply(b.cols[i]);
  return out;
}

inline Operator op_mult(const CommAlgebra& A, int cidx) {
  const int dim = A.dim();
  Operator out{std::vector<Vec>(dim, Vec(dim, Rat(0))), A.degs[cidx]};
  for (int i = 0; i < dim; ++i) out.cols[i] = A.mul(A.basis(cidx), A.basis(i));
  return out;
}

// Left contraction with the i-th odd generator of an exterior algebra.
inline Operator ext_partial(const CommAlgebra& A, int gens, int i) {
  const int dim = 1 << gens;
  Operator out{std::vector<Vec>(dim, Vec(dim, Rat(0))), -A.degs[1 << i]};
  for (int m = 0; m < dim; ++m) {
    if (!(m >> i & 1)) continue;
    int sign = 0;
    for (int j = 0; j < i; ++j)
      if (m >> j & 1) sign ^= 1;
    out.cols[m][m ^ (1 << i)] = sign ? -1 : 1;
  }
  return out;
}

// Homogeneous vector with tracked degree, for sign bookkeeping in braces.
struct HVec {
  Vec v;
  int deg = 0;
};

// The Koszul brace hierarchy:
//   <a>            = Delta(a),
//   <a_1,...,a_k>  = <a_1,...,a_{k-2}, a_{k-1} a_k>
//                    - <a_1,...,a_{k-1}> a_k
//                    - (-1)^{|a_{k-1}||a_k|} <a_1,...,a_{k-2}, a_k> a_{k-1}.
// Delta has differential order <= r exactly when the (r+1)-brace vanishes.
inline Vec koszul_brace(const CommAlgebra& A, const Operator& Delta, std::vector<HVec> args) {
  if (args.empty()) throw std::invalid_argument("koszul_brace: need at least one argument");
  if (args.size() == 1) return Delta.apply(args[0].v);
  HVec a = args[args.size() - 2], b = args.back();
  std::vector<HVec> head(args.begin(), args.end() - 2);

  std::vector<HVec> merged = head;
  merged.push_back({A.mul(a.v, b.v), a.deg + b.deg});
  Vec out = koszul_brace(A, Delta, std::move(merged));

  std::vector<HVec> left = head;
  left.push_back(a);
  out = vec_add(std::move(out), vec_scale(A.mul(koszul_brace(A, Delta, std::move(left)), b.v), Rat(-1)));

  std::vector<HVec> right = head;
  right.push_back(b);
  const Rat sgn((a.deg & 1) && (b.deg & 1) ? 1 : -1);
  out = vec_add(std::move(out), vec_scale(A.mul(koszul_brace(A, Delta, std::move(right)), a.v), sgn));
  return out;
}

inline bool order_at_most(const CommAlgebra& A, const Operator& Delta, int r) {
  if (r < 0) return false;
  const int k = r + 1;
  std::vector<int> idx(k, 0);
  while (true) {
    std::vector<HVec> args;
    for (int i : idx) args.push_back({A.basis(i), A.degs[i]});
    if (!vec_zero(koszul_brace(A, Delta, std::move(args)))) return false;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == A.dim() - 1) idx[pos--] = 0;
    if (pos < 0) break;
    idx[pos]++;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Homotopy circle actions and the fractional-order criterion.

struct CircleAction {
  std::vector<Operator> ops;  // Delta_0 .. Delta_N; |Delta_i| = 2i - 1

  bool valid(const CommAlgebra& A) const {
    const int N = static_cast<int>(ops.size()) - 1;
    for (int i = 0; i <= N; ++i) {
      if (ops[i].hdeg != 2 * i - 1) return false;
      for (int b = 0; b < A.dim(); ++b)
        for (int out = 0; out < A.dim(); ++out)
          if (ops[i].cols[b][out] != 0 && A.degs[out] != A.degs[b] + ops[i].hdeg) return false;
    }
    for (int n = 0; n <= 2 * N; ++n) {
      std::vector<Vec> comp(A.dim(), Vec(A.dim(), Rat(0)));
      for (int i = 0; i <= n; ++i) {
        if (i > N || n - i > N) continue;
        for (int b = 0; b < A.dim(); ++b)
          comp[b] = vec_add(std::move(comp[b]), ops[i].apply(ops[n - i].cols[b]));
      }
      for (int b = 0; b < A.dim(); ++b)
        if (!vec_zero(comp[b])) return false;
    }
    return true;
  }
};

// The n-fold product of an algebra as a multilinear endomorphism-operad
// element over the given labels.
inline EndElem product_elem(const EndOperad& tgt, const CommAlgebra& A, const LabelSet& ls) {
  EndElem out = tgt.zero(ls, 0);
  const int n = static_cast<int>(ls.size());
  std::vector<int> idx(n, 0);
  while (true) {
    Vec v = A.basis(idx[0]);
    for (int t = 1; t < n; ++t) v = A.mul(v, A.basis(idx[t]));
    if (!vec_zero(v)) out.vals[idx] = v;
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == A.dim() - 1) idx[pos--] = 0;
    if (pos < 0) break;
    idx[pos]++;
  }
  return out;
}

// The morphism that kills every generator except at the top superscript,
// where it is the (-1)^n-signed iterated product.
inline Morphism<EndOperad> top_product_morphism(const EndOperad& tgt, const CommAlgebra& A, int d,
                                                int max_arity) {
  Morphism<EndOperad> f{&tgt, d, max_arity, {}};
  for (int n = 2; n <= max_arity; ++n) {
    EndElem e = product_elem(tgt, A, make_labels(n));
    f.images[{n, top_sup(d, n)}] = tgt.scale(std::move(e), Rat(n % 2 == 0 ? 1 : -1));
  }
  return f;
}

struct FractionalOrderReport {
  bool field_vanishes = true;
  bool braces_bounded = true;
  bool agree() const { return field_vanishes == braces_bounded; }
};

// Two independent verdicts: does X(Delta)(f) vanish at the top-product
// morphism, and is each Delta_i of differential order <= floor(i/d) + 1?
inline FractionalOrderReport fractional_order_check(const CommAlgebra& A,
                                                    const CircleAction& action, int d,
                                                    int max_arity = 0) {
  const int N = static_cast<int>(action.ops.size()) - 1;
  if (max_arity == 0) max_arity = std::max(3, N / d + 2);
  FractionalOrderReport rep;
  for (int i = 0; i <= N; ++i)
    if (!order_at_most(A, action.ops[i], i / d + 1)) rep.braces_bounded = false;

  EndOperad tgt{GradedSpace{A.degs}};
  Morphism<EndOperad> f = top_product_morphism(tgt, A, d, max_arity);
  for (int i = 0; i <= N && rep.field_vanishes; ++i) {
    EndUnary r{action.ops[i].cols, action.ops[i].hdeg};
    for (int n = 2; n <= max_arity && rep.field_vanishes; ++n) {
      const LabelSet L = make_labels(n);
      for (int k = 0; k <= top_sup(d, n); ++k)
        if (!tgt.is_zero(x_field(f, r, r.hdeg, i, L, k))) {
          rep.field_vanishes = false;
          break;
        }
    }
  }
  return rep;
}

}  // namespace cgkw
