#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "torfan/feasibility.hpp"
#include "torfan/lattice.hpp"
#include "torfan/numeric.hpp"

namespace torfan {

/// A cone of a simplicial fan, as a sorted set of indices into the fan's
/// ray table. The empty set is the zero cone.
struct Cone {
  std::vector<int> rays;

  Cone() = default;
  explicit Cone(std::vector<int> r) : rays(std::move(r)) {
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  }

  std::size_t dim() const { return rays.size(); }
  bool operator==(const Cone& o) const { return rays == o.rays; }
  bool operator<(const Cone& o) const { return rays < o.rays; }

  bool is_face_of(const Cone& o) const {
    return std::includes(o.rays.begin(), o.rays.end(), rays.begin(), rays.end());
  }
};

/// Smooth simplicial fan: primitive rays plus maximal cones. Faces are
/// implicit; every subset of a simplicial cone's rays spans a face.
class Fan {
 public:
  explicit Fan(std::size_t rank) : rank_(rank) {}

  static Fan from_data(std::size_t rank, const std::vector<IntVec>& rays,
                       const std::vector<std::vector<int>>& maximal_cones) {
    Fan f(rank);
    std::vector<int> remap(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const IntVec& v = rays[i];
      if (v.size() != rank) throw ParseError("ray length differs from fan rank");
      if (vec_is_zero(v)) throw ParseError("zero ray");
      if (!is_primitive(v)) throw ParseError("ray is not primitive: " + vec_str(v));
      remap[i] = f.intern_ray(v);
    }
    for (const auto& c : maximal_cones) {
      std::vector<int> ids;
      for (int ix : c) {
        if (ix < 0 || static_cast<std::size_t>(ix) >= rays.size())
          throw ParseError("cone references a ray that does not exist");
        ids.push_back(remap[ix]);
      }
      Cone cone(std::move(ids));
      if (cone.dim() != c.size()) throw ParseError("cone repeats a ray");
      std::vector<IntVec> rs;
      for (int id : cone.rays) rs.push_back(f.rays_[id]);
      if (!rs.empty() && rank_of(IntMat::from_rows(rs)) != rs.size())
        throw ParseError("cone rays are linearly dependent");
      f.maximal_cones_.push_back(std::move(cone));
    }
    if (f.maximal_cones_.empty()) f.maximal_cones_.push_back(Cone{});
    f.normalize_maximal();
    return f;
  }

  std::size_t rank() const { return rank_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  const IntVec& ray(int id) const { return rays_[id]; }
  const std::vector<Cone>& maximal_cones() const { return maximal_cones_; }

  int find_ray(const IntVec& v) const {
    auto it = ray_index_.find(v);
    return it == ray_index_.end() ? -1 : it->second;
  }

  std::vector<IntVec> cone_rays(const Cone& c) const {
    std::vector<IntVec> out;
    out.reserve(c.rays.size());
    for (int id : c.rays) out.push_back(rays_[id]);
    return out;
  }

  bool has_cone(const Cone& c) const {
    for (const auto& m : maximal_cones_)
      if (c.is_face_of(m)) return true;
    return false;
  }

  /// All faces, zero cone included.
  std::vector<Cone> all_faces() const {
    std::set<Cone> out;
    for (const auto& m : maximal_cones_) {
      const std::size_t k = m.rays.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<int> ids;
        for (std::size_t b = 0; b < k; ++b)
          if (mask & (std::size_t{1} << b)) ids.push_back(m.rays[b]);
        out.insert(Cone(std::move(ids)));
      }
    }
    return std::vector<Cone>(out.begin(), out.end());
  }

  // Construction helpers used by fan operations below; they keep the ray
  // table deduplicated and the maximal cone list canonical.
  int intern_ray(const IntVec& v) {
    auto it = ray_index_.find(v);
    if (it != ray_index_.end()) return it->second;
    int id = static_cast<int>(rays_.size());
    rays_.push_back(v);
    ray_index_.emplace(v, id);
    return id;
  }

  void add_maximal_cone(Cone c) { maximal_cones_.push_back(std::move(c)); }

  void normalize_maximal() {
    std::sort(maximal_cones_.begin(), maximal_cones_.end());
    maximal_cones_.erase(std::unique(maximal_cones_.begin(), maximal_cones_.end()),
                         maximal_cones_.end());
    // Drop cones that are faces of other cones.
    std::vector<Cone> keep;
    for (std::size_t i = 0; i < maximal_cones_.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < maximal_cones_.size() && !dominated; ++j)
        if (i != j && maximal_cones_[i].is_face_of(maximal_cones_[j]) &&
            maximal_cones_[i].rays.size() < maximal_cones_[j].rays.size())
          dominated = true;
      if (!dominated) keep.push_back(maximal_cones_[i]);
    }
    maximal_cones_ = std::move(keep);
  }

  bool operator==(const Fan& o) const {
    if (rank_ != o.rank_) return false;
    auto key = [](const Fan& f) {
      std::set<std::vector<IntVec>> cones;
      for (const auto& m : f.maximal_cones_) {
        std::vector<IntVec> rs = f.cone_rays(m);
        std::sort(rs.begin(), rs.end(), vec_less);
        cones.insert(rs);
      }
      return cones;
    };
    return key(*this) == key(o);
  }

 private:
  std::size_t rank_;
  std::vector<IntVec> rays_;
  std::map<IntVec, int> ray_index_;
  std::vector<Cone> maximal_cones_;
};

/// Fan of (P^1)^n: rays +-e_i, one maximal cone per sign orthant.
inline Fan make_orthant_fan(std::size_t n) {
  Fan f(n);
  if (n == 0) {
    f.add_maximal_cone(Cone{});
    return f;
  }
  std::vector<int> pos(n), neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    pos[i] = f.intern_ray(e);
    e[i] = -1;
    neg[i] = f.intern_ray(e);
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> ids(n);
    for (std::size_t i = 0; i < n; ++i)
      ids[i] = (mask & (std::size_t{1} << i)) ? neg[i] : pos[i];
    f.add_maximal_cone(Cone(std::move(ids)));
  }
  f.normalize_maximal();
  return f;
}

/// Weyl chamber fan of type A_n on the coweight lattice of the adjoint
/// torus, with coordinates dual to the simple roots. The chamber of a
/// permutation w is spanned by the images of the fundamental coweights.
inline Fan make_weyl_fan_A(std::size_t n) {
  if (n < 1) throw Error("Weyl fan needs rank >= 1");
  Fan f(n);
  std::vector<int> perm(n + 1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> ids;
    std::vector<char> in_prefix(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
      in_prefix[perm[k]] = 1;
      IntVec d(n);
      for (std::size_t j = 0; j < n; ++j)
        d[j] = Int(in_prefix[j]) - Int(in_prefix[j + 1]);
      ids.push_back(f.intern_ray(d));
    }
    f.add_maximal_cone(Cone(std::move(ids)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  f.normalize_maximal();
  return f;
}

/// True iff each maximal cone's rays span a split direct summand.
inline bool is_smooth(const Fan& f) {
  for (const auto& m : f.maximal_cones()) {
    if (m.rays.empty()) continue;
    Sublattice l = Sublattice::from_rows(f.rank(), f.cone_rays(m));
    if (!is_split_summand(l)) return false;
  }
  return true;
}

inline std::vector<Cone> two_dim_cones(const Fan& f) {
  std::set<Cone> out;
  for (const auto& m : f.maximal_cones())
    for (std::size_t i = 0; i < m.rays.size(); ++i)
      for (std::size_t j = i + 1; j < m.rays.size(); ++j)
        out.insert(Cone({m.rays[i], m.rays[j]}));
  return std::vector<Cone>(out.begin(), out.end());
}

/// Wall-pairing completeness test for pure full-dimensional simplicial
/// fans: every (n-1)-face on exactly two maximal cones, and the wall
/// adjacency graph connected.
inline bool is_complete(const Fan& f) {
  const std::size_t n = f.rank();
  if (n == 0) return true;
  for (const auto& m : f.maximal_cones())
    if (m.rays.size() != n)
      throw MixedDimensionError("maximal cone of dimension " + std::to_string(m.rays.size()) +
                                " in a rank-" + std::to_string(n) + " fan");
  std::map<std::vector<int>, std::vector<std::size_t>> walls;
  for (std::size_t ci = 0; ci < f.maximal_cones().size(); ++ci) {
    const auto& m = f.maximal_cones()[ci];
    for (std::size_t drop = 0; drop < n; ++drop) {
      std::vector<int> w;
      for (std::size_t i = 0; i < n; ++i)
        if (i != drop) w.push_back(m.rays[i]);
      walls[w].push_back(ci);
    }
  }
  for (const auto& [w, cs] : walls)
    if (cs.size() != 2) return false;
  // Connectivity across walls.
  const std::size_t nc = f.maximal_cones().size();
  std::vector<char> seen(nc, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::map<std::size_t, std::vector<std::size_t>> adj;
  for (const auto& [w, cs] : walls) {
    adj[cs[0]].push_back(cs[1]);
    adj[cs[1]].push_back(cs[0]);
  }
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    for (std::size_t d : adj[c])
      if (!seen[d]) {
        seen[d] = 1;
        stack.push_back(d);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

/// The basic move: insert the ray e1+e2 and split every cone containing
/// the two-dimensional face sigma. The new ray needs no re-primitivization:
/// in a smooth fan e1,e2 extend to a lattice basis, so e1+e2 is primitive.
inline Fan stellar_subdivide_2cone(const Fan& f, const Cone& sigma) {
  if (sigma.dim() != 2 || !f.has_cone(sigma))
    throw NotATwoFaceError("not a two-dimensional cone of the fan");
  IntVec w = vec_add(f.ray(sigma.rays[0]), f.ray(sigma.rays[1]));
  if (!is_primitive(w)) throw Error("subdivision ray is imprimitive; fan was not smooth");
  if (f.find_ray(w) != -1) throw Error("subdivision ray already present; fan was not valid");

  Fan out(f.rank());
  std::vector<int> remap(f.rays().size());
  for (std::size_t i = 0; i < f.rays().size(); ++i)
    remap[i] = out.intern_ray(f.ray(static_cast<int>(i)));
  int wid = out.intern_ray(w);

  for (const auto& m : f.maximal_cones()) {
    std::vector<int> mapped;
    for (int id : m.rays) mapped.push_back(remap[id]);
    if (sigma.is_face_of(m)) {
      for (int drop : {sigma.rays[0], sigma.rays[1]}) {
        std::vector<int> ids;
        for (int id : m.rays)
          if (id != drop) ids.push_back(remap[id]);
        ids.push_back(wid);
        out.add_maximal_cone(Cone(std::move(ids)));
      }
    } else {
      out.add_maximal_cone(Cone(std::move(mapped)));
    }
  }
  out.normalize_maximal();
  return out;
}

/// Star of a cone: the fan of the corresponding orbit closure, living in
/// the quotient lattice Z^n / span(C). Needs the cone's rays to span a
/// split summand, which smoothness guarantees.
inline Fan orbit_closure_fan(const Fan& f, const Cone& c) {
  if (!f.has_cone(c)) throw ConeNotInFanError("cone is not a face of the fan");
  if (c.rays.empty()) return f;
  const std::size_t s = c.rays.size();
  Sublattice span_c = Sublattice::from_rows(f.rank(), f.cone_rays(c));
  IntMat basis = complete_to_basis(span_c);           // first s rows = rays of c
  IntMat to_coords = inverse_unimodular(basis);       // x = coords * basis
  Fan out(f.rank() - s);
  bool any = false;
  for (const auto& m : f.maximal_cones()) {
    if (!c.is_face_of(m)) continue;
    any = true;
    std::vector<int> ids;
    for (int id : m.rays) {
      if (std::binary_search(c.rays.begin(), c.rays.end(), id)) continue;
      const IntVec& v = f.ray(id);
      IntVec coords(f.rank(), 0);
      for (std::size_t j = 0; j < f.rank(); ++j)
        for (std::size_t i = 0; i < f.rank(); ++i) coords[j] += v[i] * to_coords.at(i, j);
      IntVec q(coords.begin() + static_cast<long>(s), coords.end());
      if (vec_is_zero(q)) throw Error("ray collapsed in the quotient; fan was not valid");
      if (!is_primitive(q)) throw Error("quotient ray imprimitive; fan was not smooth");
      ids.push_back(out.intern_ray(q));
    }
    out.add_maximal_cone(Cone(std::move(ids)));
  }
  if (!any) throw ConeNotInFanError("cone is not a face of the fan");
  out.normalize_maximal();
  return out;
}

/// Coefficients of p in the rays of c if p lies in the cone. Exact
/// certificate: each coefficient is a nonnegative rational.
inline std::optional<RatVec> cone_coefficients(const Fan& f, const Cone& c, const RatVec& p) {
  auto sol = solve_rational_combination(f.cone_rays(c), p);
  if (!sol) return std::nullopt;
  for (const auto& a : *sol)
    if (a < 0) return std::nullopt;
  return sol;
}

namespace detail {

// C and D intersect in the cone spanned by their shared rays: certified by
// showing no point of the intersection uses an unshared generator.
inline bool cones_meet_in_common_face(const Fan& f, const Cone& c, const Cone& d) {
  std::vector<int> shared;
  std::set_intersection(c.rays.begin(), c.rays.end(), d.rays.begin(), d.rays.end(),
                        std::back_inserter(shared));
  std::vector<int> cs = c.rays, ds = d.rays;
  const std::size_t nc = cs.size(), nd = ds.size(), n = f.rank();
  if (nc == 0 || nd == 0) return true;
  {  // independent union -> intersection is the zero cone
    std::vector<IntVec> all = f.cone_rays(c);
    for (const auto& r : f.cone_rays(d)) all.push_back(r);
    if (rank_of(IntMat::from_rows(all)) == all.size()) return shared.empty();
  }
  // Feasibility variables: a (coeffs in C), b (coeffs in D).
  std::vector<LinConstraint> cons;
  for (std::size_t i = 0; i < n; ++i) {
    LinConstraint eq;
    eq.coef.assign(nc + nd, Rat(0));
    for (std::size_t j = 0; j < nc; ++j) eq.coef[j] = Rat(f.ray(cs[j])[i]);
    for (std::size_t j = 0; j < nd; ++j) eq.coef[nc + j] = -Rat(f.ray(ds[j])[i]);
    eq.rhs = 0;
    eq.equality = true;
    cons.push_back(std::move(eq));
  }
  for (std::size_t j = 0; j < nc + nd; ++j) {
    LinConstraint ge;
    ge.coef.assign(nc + nd, Rat(0));
    ge.coef[j] = 1;
    ge.rhs = 0;
    cons.push_back(std::move(ge));
  }
  for (std::size_t j = 0; j < nc; ++j) {
    if (std::binary_search(shared.begin(), shared.end(), cs[j])) continue;
    auto probe = cons;
    LinConstraint pos;
    pos.coef.assign(nc + nd, Rat(0));
    pos.coef[j] = 1;
    pos.rhs = 1;
    probe.push_back(std::move(pos));
    if (rational_system_feasible(nc + nd, std::move(probe))) return false;
  }
  return true;
}

}  // namespace detail

/// Exact check of the fan conditions: rays primitive and deduplicated,
/// cones simplicial, and every pairwise intersection of maximal cones is
/// the face spanned by the shared rays.
inline bool is_valid_fan(const Fan& f, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (const auto& v : f.rays()) {
    if (v.size() != f.rank()) return fail("ray of wrong length");
    if (vec_is_zero(v) || !is_primitive(v)) return fail("ray not primitive: " + vec_str(v));
  }
  for (const auto& m : f.maximal_cones()) {
    if (m.rays.empty()) continue;
    auto rs = f.cone_rays(m);
    if (rank_of(IntMat::from_rows(rs)) != rs.size())
      return fail("cone rays linearly dependent");
  }
  const auto& mc = f.maximal_cones();
  for (std::size_t i = 0; i < mc.size(); ++i)
    for (std::size_t j = i + 1; j < mc.size(); ++j)
      if (!detail::cones_meet_in_common_face(f, mc[i], mc[j]))
        return fail("cones intersect outside a common face");
  return true;
}

}  // namespace torfan
