#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "torfan/arrangement.hpp"
#include "torfan/fan.hpp"
#include "torfan/feasibility.hpp"
#include "torfan/subdiv.hpp"

namespace torfan {

/// Basis of the cocharacter lattice of the subtorus H cut out by the layer:
/// the saturated kernel {v : <chi,v> = 0 for all chi in gamma}.
inline IntMat subtorus_space_basis(const Layer& l) { return right_kernel(l.gamma.basis); }

namespace detail {

inline IntMat pairing_matrix(const IntMat& basis, const std::vector<IntVec>& gens) {
  IntMat p(basis.rows(), gens.size());
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) p.at(i, j) = pairing(basis.row(i), gens[j]);
  return p;
}

// Sufficient path: when every basis row pairs with one sign only, the
// sign-flipped basis pairs nonnegatively and property (E) is immediate.
inline bool all_rows_coherent(const IntMat& p) {
  for (std::size_t i = 0; i < p.rows(); ++i) {
    bool pos = false, neg = false;
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p.at(i, j) > 0) pos = true;
      if (p.at(i, j) < 0) neg = true;
    }
    if (pos && neg) return false;
  }
  return true;
}

// Exact path: the subcone S = {x : x . p_j >= 0 for every generator column
// p_j} spans Q^r iff no nonzero column is an implicit equality, i.e. each
// can be made strictly positive while the rest stay nonnegative.
inline bool subcone_spans(const IntMat& p) {
  const std::size_t r = p.rows(), h = p.cols();
  std::vector<std::size_t> nonzero_cols;
  for (std::size_t j = 0; j < h; ++j) {
    bool nz = false;
    for (std::size_t i = 0; i < r; ++i)
      if (p.at(i, j) != 0) nz = true;
    if (nz) nonzero_cols.push_back(j);
  }
  for (std::size_t jstar : nonzero_cols) {
    std::vector<LinConstraint> cons;
    for (std::size_t j : nonzero_cols) {
      LinConstraint c;
      c.coef.resize(r);
      for (std::size_t i = 0; i < r; ++i) c.coef[i] = Rat(p.at(i, j));
      c.rhs = (j == jstar) ? 1 : 0;
      cons.push_back(std::move(c));
    }
    if (!rational_system_feasible(r, std::move(cons))) return false;
  }
  return true;
}

}  // namespace detail

/// Property (E) of span(gamma) with respect to a cone: some basis of the
/// span pairs nonnegatively with every generator. Decided exactly via the
/// pairing cone; a cheap sign-flip test settles the common case first.
inline bool has_property_E(const Sublattice& gamma, const std::vector<IntVec>& cone_rays) {
  if (gamma.rank() == 0) return true;
  IntMat p = detail::pairing_matrix(gamma.basis, cone_rays);
  if (detail::all_rows_coherent(p)) return true;
  return detail::subcone_spans(p);
}

inline bool has_property_E(const Layer& l, const Cone& c, const Fan& f) {
  return has_property_E(l.gamma, f.cone_rays(c));
}

inline bool has_property_E(const Layer& l, const Fan& f, Cone* witness = nullptr) {
  for (const auto& m : f.maximal_cones()) {
    if (has_property_E(l.gamma, f.cone_rays(m))) continue;
    if (witness) {
      // Sharpest witness: a smallest failing face (property (E) on a cone
      // passes to its faces, so failures propagate upward).
      *witness = m;
      const std::size_t k = m.rays.size();
      for (std::size_t size = 1; size <= k; ++size) {
        bool found = false;
        for (std::size_t mask = 0; mask < (std::size_t{1} << k) && !found; ++mask) {
          if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
          std::vector<int> ids;
          for (std::size_t b = 0; b < k; ++b)
            if (mask & (std::size_t{1} << b)) ids.push_back(m.rays[b]);
          Cone face(std::move(ids));
          if (!has_property_E(l.gamma, f.cone_rays(face))) {
            *witness = face;
            found = true;
          }
        }
        if (found) break;
      }
    }
    return false;
  }
  return true;
}

/// True iff the orbit of c meets the layer closure: the cone must lie in
/// V_H, i.e. pair to zero with every character of gamma.
inline bool orbit_meets_layer(const Cone& c, const Layer& l, const Fan& f) {
  for (int id : c.rays)
    for (std::size_t i = 0; i < l.gamma.basis.rows(); ++i)
      if (pairing(l.gamma.basis.row(i), f.ray(id)) != 0) return false;
  return true;
}

/// The fan of the layer closure: cones of delta inside V_H, re-expressed in
/// the basis of X_*(H). Throws with a witness cone when property (E) fails.
inline Fan closure_fan(const Fan& delta, const Layer& l) {
  Cone bad;
  if (!has_property_E(l, delta, &bad))
    throw PropertyEViolatedError("layer lacks property (E) on a cone", delta.cone_rays(bad));
  IntMat w = subtorus_space_basis(l);
  const std::size_t q = w.rows();
  Fan out(q);
  for (const auto& m : delta.maximal_cones()) {
    std::vector<int> inside;
    for (int id : m.rays)
      if (orbit_meets_layer(Cone({id}), l, delta)) inside.push_back(id);
    std::vector<int> ids;
    for (int id : inside) {
      auto coords = solve_in_lattice(w, delta.ray(id));
      if (!coords) throw Error("ray in V_H escaped the kernel lattice");
      ids.push_back(out.intern_ray(*coords));
    }
    out.add_maximal_cone(Cone(std::move(ids)));
  }
  out.normalize_maximal();
  return out;
}

/// One stratum of the compactified arrangement: an A-layer component
/// together with a cone of its closure fan (zero cone = the closure
/// itself). The pair is a faithful identity key for the subvariety.
struct Stratum {
  int layer;               // index into StrataPoset::layers
  std::vector<int> cone;   // sorted ray ids of the ambient fan
  std::size_t dim;

  bool operator==(const Stratum& o) const { return layer == o.layer && cone == o.cone; }
};

struct StrataPoset {
  Fan fan;
  std::vector<Layer> layers;                    // layers[0] = ambient torus
  std::vector<std::vector<char>> layer_leq;     // layer containment
  std::vector<std::set<std::vector<int>>> layer_cones;  // faces of delta inside each V_H
  std::vector<Stratum> strata;
  std::vector<std::vector<char>> leq;           // strata containment

  StrataPoset() : fan(0) {}

  std::size_t size() const { return strata.size(); }

  int find(int layer, const std::vector<int>& cone) const {
    for (std::size_t i = 0; i < strata.size(); ++i)
      if (strata[i].layer == layer && strata[i].cone == cone) return static_cast<int>(i);
    return -1;
  }

  std::size_t codim(std::size_t i) const { return fan.rank() - strata[i].dim; }

  /// Connected components of the intersection of a family of strata, as
  /// indices into the poset. The cone parts meet in the face spanned by the
  /// union of their rays (or not at all); the layer parts decompose by
  /// component, and every component is already a poset layer.
  std::vector<int> components_of_intersection(const std::vector<int>& members) const {
    if (members.empty()) return {};
    std::vector<int> cone_union;
    for (int s : members)
      for (int id : strata[s].cone) cone_union.push_back(id);
    std::sort(cone_union.begin(), cone_union.end());
    cone_union.erase(std::unique(cone_union.begin(), cone_union.end()), cone_union.end());
    if (!fan.has_cone(Cone(cone_union))) return {};

    std::vector<Layer> pieces{layers[strata[members[0]].layer]};
    for (std::size_t i = 1; i < members.size(); ++i) {
      std::vector<Layer> next;
      for (const auto& piece : pieces)
        for (auto& comp : intersect_layers(piece, layers[strata[members[i]].layer]))
          next.push_back(std::move(comp));
      pieces = std::move(next);
    }
    std::vector<int> out;
    for (const auto& piece : pieces) {
      int li = -1;
      for (std::size_t j = 0; j < layers.size(); ++j)
        if (layers[j].gamma.rank() == piece.gamma.rank() && layer_eq(layers[j], piece)) {
          li = static_cast<int>(j);
          break;
        }
      if (li < 0) throw Error("intersection produced a layer outside the poset");
      if (!layer_cones[li].count(cone_union)) continue;  // misses the orbit closure
      int si = find(li, cone_union);
      if (si < 0) throw Error("stratum missing from the poset");
      out.push_back(si);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// Builds the arrangement-of-subvarieties poset: one stratum per A-layer
/// component and cone of its closure fan, ordered by containment.
inline StrataPoset build_strata_poset(const Fan& delta, const Arrangement& a) {
  StrataPoset p;
  p.fan = delta;
  LayerPoset lp = all_A_layers(a);
  p.layers = lp.elements;
  p.layer_leq = {};
  const std::size_t m = p.layers.size();
  p.layer_leq.assign(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) p.layer_leq[i][j] = lp.leq[i][j];

  for (const auto& l : p.layers) {
    Cone bad;
    if (!has_property_E(l, delta, &bad))
      throw PropertyEViolatedError("an A-layer lacks property (E)", delta.cone_rays(bad));
  }

  std::vector<Cone> faces = delta.all_faces();
  p.layer_cones.resize(m);
  for (std::size_t li = 0; li < m; ++li)
    for (const auto& c : faces)
      if (orbit_meets_layer(c, p.layers[li], delta)) p.layer_cones[li].insert(c.rays);

  for (std::size_t li = 0; li < m; ++li)
    for (const auto& cone : p.layer_cones[li]) {
      std::size_t d = delta.rank() - p.layers[li].gamma.rank() - cone.size();
      p.strata.push_back(Stratum{static_cast<int>(li), cone, d});
    }
  std::sort(p.strata.begin(), p.strata.end(), [](const Stratum& x, const Stratum& y) {
    if (x.layer != y.layer) return x.layer < y.layer;
    return x.cone < y.cone;
  });

  const std::size_t ns = p.strata.size();
  p.leq.assign(ns, std::vector<char>(ns, 0));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < ns; ++j) {
      const Stratum& si = p.strata[i];
      const Stratum& sj = p.strata[j];
      // i inside j: layer_i inside layer_j and cone_j a face of cone_i.
      bool cone_face = std::includes(si.cone.begin(), si.cone.end(), sj.cone.begin(),
                                     sj.cone.end());
      p.leq[i][j] = (p.layer_leq[si.layer][sj.layer] && cone_face) ? 1 : 0;
    }
  return p;
}

/// Dimension-count cleanness: every component of the intersection has the
/// dimension the tangent-space computation predicts.
inline bool check_clean(const StrataPoset& p, int s1, int s2) {
  const auto comps = p.components_of_intersection({s1, s2});
  if (comps.empty()) return true;
  // Tangent intersection dimension at a generic point of any component:
  // ambient rank minus rank(gamma1 + gamma2) minus the toric face part.
  const Layer& l1 = p.layers[p.strata[s1].layer];
  const Layer& l2 = p.layers[p.strata[s2].layer];
  std::vector<IntVec> stacked = l1.gamma.basis.to_rows();
  for (const auto& r : l2.gamma.basis.to_rows()) stacked.push_back(r);
  std::size_t rank_sum =
      stacked.empty() ? 0 : rank_of(IntMat::from_rows(stacked));
  std::vector<int> cone_union;
  std::set_union(p.strata[s1].cone.begin(), p.strata[s1].cone.end(), p.strata[s2].cone.begin(),
                 p.strata[s2].cone.end(), std::back_inserter(cone_union));
  if (p.fan.rank() < rank_sum + cone_union.size()) return false;
  std::size_t expected = p.fan.rank() - rank_sum - cone_union.size();
  for (int c : comps)
    if (p.strata[c].dim != expected) return false;
  return true;
}

}  // namespace torfan
