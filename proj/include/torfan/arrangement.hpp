#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "torfan/lattice.hpp"
#include "torfan/numeric.hpp"

namespace torfan {

/// A point of the value group (Q/Z) x Q^k: a root of unity e^{2 pi i t}
/// times a monomial in k declared multiplicatively independent parameters.
/// Exact and divisible, which is what the extension counting needs.
struct TorusValue {
  Rat torsion;     // in [0,1)
  RatVec generic;  // exponent of each parameter

  TorusValue() : torsion(0) {}
  TorusValue(Rat t, RatVec g) : torsion(mod1(t)), generic(std::move(g)) {}

  static TorusValue one(std::size_t params) { return TorusValue(Rat(0), RatVec(params, Rat(0))); }

  bool is_one() const {
    if (torsion != 0) return false;
    for (const auto& g : generic)
      if (g != 0) return false;
    return true;
  }

  bool operator==(const TorusValue& o) const {
    if (generic.size() != o.generic.size())
      throw DimensionMismatchError("values use different parameter counts");
    return torsion == o.torsion && generic == o.generic;
  }
  bool operator<(const TorusValue& o) const {
    if (torsion != o.torsion) return torsion < o.torsion;
    return generic < o.generic;
  }
};

inline bool value_eq(const TorusValue& a, const TorusValue& b) { return a == b; }

inline TorusValue value_mul(const TorusValue& a, const TorusValue& b) {
  if (a.generic.size() != b.generic.size())
    throw DimensionMismatchError("values use different parameter counts");
  TorusValue r;
  r.torsion = mod1(a.torsion + b.torsion);
  r.generic.resize(a.generic.size());
  for (std::size_t i = 0; i < a.generic.size(); ++i) r.generic[i] = a.generic[i] + b.generic[i];
  return r;
}

/// Canonical branch of the power map: exponents scale, torsion scales mod 1.
inline TorusValue value_pow(const TorusValue& a, const Rat& e) {
  TorusValue r;
  r.torsion = mod1(a.torsion * e);
  r.generic.resize(a.generic.size());
  for (std::size_t i = 0; i < a.generic.size(); ++i) r.generic[i] = a.generic[i] * e;
  return r;
}

inline TorusValue value_pow(const TorusValue& a, const Int& e) { return value_pow(a, Rat(e)); }

/// A layer: the solution set of x_chi = phi(chi) for chi in a split direct
/// summand gamma, phi recorded by its values on the basis rows.
struct Layer {
  std::size_t rank = 0;    // ambient lattice rank
  std::size_t params = 0;  // parameter count of the value group
  Sublattice gamma;
  std::vector<TorusValue> values;  // one per basis row of gamma

  Layer() = default;
  Layer(std::size_t n, std::size_t k, Sublattice g, std::vector<TorusValue> vals)
      : rank(n), params(k), gamma(std::move(g)), values(std::move(vals)) {
    if (gamma.ambient != rank) throw DimensionMismatchError("gamma ambient differs from rank");
    if (values.size() != gamma.rank())
      throw DimensionMismatchError("one value per basis character required");
    for (const auto& v : values)
      if (v.generic.size() != params)
        throw DimensionMismatchError("value parameter count differs from arrangement");
    if (!is_split_summand(gamma))
      throw NotSplitSummandError("layer lattice must be a split direct summand");
  }

  static Layer trivial(std::size_t n, std::size_t k) {
    return Layer(n, k, Sublattice(n, IntMat(0, n)), {});
  }

  std::size_t codim() const { return gamma.rank(); }
};

/// phi evaluated at an arbitrary character of gamma.
inline std::optional<TorusValue> layer_value_at(const Layer& l, const IntVec& chi) {
  auto coords = solve_in_lattice(l.gamma.basis, chi);
  if (!coords) return std::nullopt;
  TorusValue v = TorusValue::one(l.params);
  for (std::size_t i = 0; i < coords->size(); ++i)
    v = value_mul(v, value_pow(l.values[i], (*coords)[i]));
  return v;
}

/// Subvariety containment: inner is contained in outer iff outer's lattice
/// sits inside inner's and the value assignments agree there.
inline bool layer_contains(const Layer& outer, const Layer& inner) {
  if (outer.rank != inner.rank) throw DimensionMismatchError("layers in different tori");
  for (std::size_t i = 0; i < outer.gamma.basis.rows(); ++i) {
    IntVec chi = outer.gamma.basis.row(i);
    auto v = layer_value_at(inner, chi);
    if (!v || !(*v == outer.values[i])) return false;
  }
  return true;
}

inline bool layer_eq(const Layer& a, const Layer& b) {
  return a.gamma.rank() == b.gamma.rank() && layer_contains(a, b) && layer_contains(b, a);
}

namespace detail {

/// All extensions of phi from the lattice spanned by `basis` to its
/// saturation `target` (same rational span, index m): one canonical
/// extension by rational division along an SNF-adapted pair of bases, then
/// the m torsion twists. Returns value rows for the rows of `target`.
inline std::vector<std::vector<TorusValue>> extend_values(const IntMat& basis,
                                                          const std::vector<TorusValue>& values,
                                                          const IntMat& target,
                                                          std::size_t params) {
  const std::size_t r = basis.rows();
  if (target.rows() != r) throw DimensionMismatchError("saturation changed the rank");
  if (r == 0) return {std::vector<TorusValue>{}};

  // C with basis = C * target (integral since target spans the saturation).
  IntMat c(r, r);
  std::vector<IntVec> target_cols;
  for (std::size_t i = 0; i < r; ++i) target_cols.push_back(target.row(i));
  for (std::size_t i = 0; i < r; ++i) {
    RatVec rhs(basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) rhs[j] = Rat(basis.at(i, j));
    auto sol = solve_rational_combination(target_cols, rhs);
    if (!sol) throw Error("saturation basis does not span the layer lattice");
    for (std::size_t j = 0; j < r; ++j) {
      if (denominator((*sol)[j]) != 1) throw Error("non-integral coordinates in saturation");
      c.at(i, j) = numerator((*sol)[j]);
    }
  }
  SmithDecomposition s = smith_normal_form(c);  // u c v = d
  IntMat vinv = inverse_unimodular(s.v);

  // Adapted bases: row i of (u * basis) equals d_i times row i of
  // (vinv * target); phi is known on the former.
  std::vector<TorusValue> phi_adapted(r, TorusValue::one(params));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      phi_adapted[i] = value_mul(phi_adapted[i], value_pow(values[j], s.u.at(i, j)));

  std::vector<Int> d(r);
  for (std::size_t i = 0; i < r; ++i) d[i] = s.d.at(i, i);

  std::vector<TorusValue> canonical(r);
  for (std::size_t i = 0; i < r; ++i) canonical[i] = value_pow(phi_adapted[i], Rat(1, d[i]));

  // Enumerate the torsion twists k_i / d_i.
  std::vector<std::vector<TorusValue>> out;
  std::vector<Int> k(r, 0);
  for (;;) {
    std::vector<TorusValue> on_adapted(r);
    for (std::size_t i = 0; i < r; ++i) {
      TorusValue twist(Rat(k[i], d[i]), RatVec(params, Rat(0)));
      on_adapted[i] = value_mul(canonical[i], twist);
    }
    // Convert from the adapted basis (rows of vinv * target) back to the
    // rows of target: target = v * (vinv * target).
    std::vector<TorusValue> on_target(r, TorusValue::one(params));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        on_target[i] = value_mul(on_target[i], value_pow(on_adapted[j], s.v.at(i, j)));
    out.push_back(std::move(on_target));

    std::size_t pos = 0;
    while (pos < r) {
      ++k[pos];
      if (k[pos] < d[pos]) break;
      k[pos] = 0;
      ++pos;
    }
    if (pos == r) break;
  }
  return out;
}

}  // namespace detail

/// Saturates a (possibly non-split) lattice-with-values and splits it into
/// its connected components. Input rows must be independent.
inline std::vector<Layer> normalize_layer(std::size_t rank, std::size_t params,
                                          const IntMat& basis,
                                          const std::vector<TorusValue>& values) {
  for (std::size_t i = 0; i < basis.rows(); ++i)
    if (vec_is_zero(basis.row(i))) throw ZeroCharacterError("zero character in layer basis");
  Sublattice gamma(rank, basis);
  Sublattice sat = saturate(gamma);
  auto exts = detail::extend_values(basis, values, sat.basis, params);
  std::vector<Layer> out;
  for (auto& vals : exts) out.emplace_back(rank, params, sat, std::move(vals));
  return out;
}

/// A finite set of layers in a common torus.
struct Arrangement {
  std::size_t rank = 0;
  std::size_t params = 0;
  std::vector<Layer> layers;

  Arrangement() = default;
  Arrangement(std::size_t n, std::size_t k) : rank(n), params(k) {}

  void add_layer(const Layer& l) {
    if (l.rank != rank || l.params != params)
      throw DimensionMismatchError("layer does not match the arrangement");
    layers.push_back(l);
  }
};

/// The defining character set: all basis characters of all layers,
/// deduplicated up to sign, in first-seen order.
inline std::vector<IntVec> xi_of(const Arrangement& a) {
  std::vector<IntVec> out;
  std::set<IntVec> seen;
  for (const auto& l : a.layers)
    for (std::size_t i = 0; i < l.gamma.basis.rows(); ++i) {
      IntVec chi = l.gamma.basis.row(i);
      IntVec key = chi;
      for (const auto& x : key) {
        if (x > 0) break;
        if (x < 0) {
          key = vec_neg(key);
          break;
        }
      }
      if (seen.insert(key).second) out.push_back(chi);
    }
  return out;
}

/// Connected components of the intersection of two layers. Empty when the
/// value assignments disagree on the common sublattice; otherwise one layer
/// per extension of phi to the saturation of gamma1 + gamma2.
inline std::vector<Layer> intersect_layers(const Layer& l1, const Layer& l2) {
  if (l1.rank != l2.rank || l1.params != l2.params)
    throw DimensionMismatchError("layers in different tori");
  const std::size_t n = l1.rank, k = l1.params;
  const std::size_t r1 = l1.gamma.rank(), r2 = l2.gamma.rank();

  IntMat stacked(r1 + r2, n);
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < n; ++j) stacked.at(i, j) = l1.gamma.basis.at(i, j);
  for (std::size_t i = 0; i < r2; ++i)
    for (std::size_t j = 0; j < n; ++j) stacked.at(r1 + i, j) = l2.gamma.basis.at(i, j);

  // Compatibility on gamma1 n gamma2: phi must kill the left kernel of the
  // stacked basis.
  SmithDecomposition s = smith_normal_form(stacked);
  const std::size_t rk = invariant_factors(s).size();
  for (std::size_t i = rk; i < r1 + r2; ++i) {
    TorusValue v = TorusValue::one(k);
    for (std::size_t j = 0; j < r1; ++j) v = value_mul(v, value_pow(l1.values[j], s.u.at(i, j)));
    for (std::size_t j = 0; j < r2; ++j)
      v = value_mul(v, value_pow(l2.values[j], s.u.at(i, r1 + j)));
    if (!v.is_one()) return {};
  }

  // Basis of gamma1 + gamma2 from the nonzero part of the normal form,
  // with phi transported through u.
  IntMat vinv = inverse_unimodular(s.v);
  IntMat sum_basis(rk, n);
  std::vector<TorusValue> sum_values(rk, TorusValue::one(k));
  for (std::size_t i = 0; i < rk; ++i) {
    for (std::size_t j = 0; j < n; ++j) sum_basis.at(i, j) = s.d.at(i, i) * vinv.at(i, j);
    for (std::size_t j = 0; j < r1; ++j)
      sum_values[i] = value_mul(sum_values[i], value_pow(l1.values[j], s.u.at(i, j)));
    for (std::size_t j = 0; j < r2; ++j)
      sum_values[i] = value_mul(sum_values[i], value_pow(l2.values[j], s.u.at(i, r1 + j)));
  }
  return normalize_layer(n, k, sum_basis, sum_values);
}

/// The poset of A-layers: all connected components of intersections of
/// arrangement layers, plus the ambient torus as top element. Order is by
/// containment of the layers as subvarieties.
struct LayerPoset {
  std::vector<Layer> elements;            // elements[0] is the ambient torus
  std::vector<std::vector<char>> leq;     // leq[i][j]: element i inside element j
};

inline LayerPoset all_A_layers(const Arrangement& a) {
  LayerPoset p;
  p.elements.push_back(Layer::trivial(a.rank, a.params));
  auto find = [&](const Layer& l) -> int {
    for (std::size_t i = 0; i < p.elements.size(); ++i)
      if (p.elements[i].gamma.rank() == l.gamma.rank() && layer_eq(p.elements[i], l))
        return static_cast<int>(i);
    return -1;
  };
  for (const auto& l : a.layers)
    if (find(l) < 0) p.elements.push_back(l);

  // Close under pairwise intersection.
  for (std::size_t i = 0; i < p.elements.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      for (const auto& comp : intersect_layers(p.elements[i], p.elements[j]))
        if (find(comp) < 0) p.elements.push_back(comp);
    }

  const std::size_t m = p.elements.size();
  p.leq.assign(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      p.leq[i][j] = layer_contains(p.elements[j], p.elements[i]) ? 1 : 0;
  return p;
}

/// Divisorial arrangement of a directed graph on `vertices` nodes, living
/// in the adjoint torus of type A_{vertices-1}: the arrow i -> j becomes
/// the character e_i - e_j written in the simple-root basis.
inline Arrangement from_digraph(std::size_t vertices,
                                const std::vector<std::pair<std::size_t, std::size_t>>& arrows,
                                const std::vector<TorusValue>& values) {
  if (vertices == 0) throw Error("digraph needs at least one vertex");
  if (values.size() != arrows.size())
    throw DimensionMismatchError("one value per arrow required");
  const std::size_t n = vertices - 1;
  std::size_t k = values.empty() ? 0 : values[0].generic.size();
  Arrangement a(n, k);
  for (std::size_t ai = 0; ai < arrows.size(); ++ai) {
    auto [i, j] = arrows[ai];
    if (i >= vertices || j >= vertices) throw Error("arrow endpoint out of range");
    if (i == j) throw Error("self-loops have no incidence vector");
    IntVec chi(n, 0);
    if (i < j)
      for (std::size_t l = i; l < j; ++l) chi[l] = 1;
    else
      for (std::size_t l = j; l < i; ++l) chi[l] = -1;
    a.add_layer(Layer(n, k, Sublattice::from_rows(n, {chi}), {values[ai]}));
  }
  return a;
}

/// Rewrites the arrangement in a basis whose first r vectors span the
/// saturation of span(Xi), and truncates to that rank-r torus factor.
/// Returns the new arrangement and the unimodular basis matrix (rows are
/// the new basis in the old coordinates).
inline std::pair<Arrangement, IntMat> reduce_span(const Arrangement& a) {
  std::vector<IntVec> chars = xi_of(a);
  // xi rows need not be independent; take the saturated row span.
  IntMat raw = chars.empty() ? IntMat(0, a.rank) : IntMat::from_rows(chars);
  SmithDecomposition s = smith_normal_form(raw);
  const std::size_t span_rank = invariant_factors(s).size();
  if (span_rank == a.rank) return {a, IntMat::identity(a.rank)};  // nothing to reduce
  IntMat vinv = inverse_unimodular(s.v);
  IntMat b(span_rank, a.rank);
  for (std::size_t i = 0; i < span_rank; ++i)
    for (std::size_t j = 0; j < a.rank; ++j) b.at(i, j) = vinv.at(i, j);
  Sublattice span(a.rank, std::move(b));
  const std::size_t r = span.rank();
  IntMat basis = complete_to_basis(span);
  IntMat binv = inverse_unimodular(basis);
  Arrangement out(r, a.params);
  for (const auto& l : a.layers) {
    IntMat g(l.gamma.rank(), r);
    for (std::size_t i = 0; i < l.gamma.rank(); ++i) {
      IntVec chi = l.gamma.basis.row(i);
      for (std::size_t j = 0; j < a.rank; ++j) {
        Int cj = 0;
        for (std::size_t t = 0; t < a.rank; ++t) cj += chi[t] * binv.at(t, j);
        if (j < r)
          g.at(i, j) = cj;
        else if (cj != 0)
          throw Error("character escapes the span; reduction is wrong");
      }
    }
    out.add_layer(Layer(r, a.params, Sublattice(r, std::move(g)), l.values));
  }
  return {std::move(out), std::move(basis)};
}

}  // namespace torfan
