#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torfan/arrangement.hpp"
#include "torfan/fan.hpp"
#include "torfan/strata.hpp"

namespace torfan {

/// Exact test that `fine` subdivides `base`: same support, every cone of
/// `fine` inside a cone of `base`, and inside each base cone the walls of
/// the sub-cones pair up (interior walls on exactly two cones, the rest on
/// the base boundary).
inline bool is_subdivision_of(const Fan& fine, const Fan& base, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (fine.rank() != base.rank()) return fail("rank mismatch");

  auto cone_inside = [&](const Cone& d, const Cone& c) {
    for (int id : d.rays) {
      RatVec p(fine.rank());
      for (std::size_t i = 0; i < fine.rank(); ++i) p[i] = Rat(fine.ray(id)[i]);
      if (!cone_coefficients(base, c, p)) return false;
    }
    return true;
  };

  const auto& fmax = fine.maximal_cones();
  const auto& bmax = base.maximal_cones();
  std::vector<std::vector<std::size_t>> inside(bmax.size());
  for (std::size_t di = 0; di < fmax.size(); ++di) {
    bool placed = false;
    for (std::size_t ci = 0; ci < bmax.size(); ++ci)
      if (cone_inside(fmax[di], bmax[ci])) {
        inside[ci].push_back(di);
        placed = true;
      }
    if (!placed) return fail("a cone escapes the base support");
  }

  for (std::size_t ci = 0; ci < bmax.size(); ++ci) {
    const Cone& c = bmax[ci];
    const std::size_t d = c.rays.size();
    if (inside[ci].empty()) return fail("a base cone is not covered");
    for (std::size_t di : inside[ci])
      if (fmax[di].rays.size() != d) return fail("subdivision cone of wrong dimension");

    // Facet of the base cone containing a given face, if any.
    auto on_base_boundary = [&](const std::vector<int>& face_rays) {
      for (std::size_t drop = 0; drop < d; ++drop) {
        Cone facet;
        for (std::size_t i = 0; i < d; ++i)
          if (i != drop) facet.rays.push_back(c.rays[i]);
        bool all_in = true;
        for (int id : face_rays) {
          RatVec p(fine.rank());
          for (std::size_t i = 0; i < fine.rank(); ++i) p[i] = Rat(fine.ray(id)[i]);
          if (!cone_coefficients(base, facet, p)) {
            all_in = false;
            break;
          }
        }
        if (all_in) return true;
      }
      return false;
    };

    std::map<std::vector<int>, std::vector<std::size_t>> walls;
    for (std::size_t di : inside[ci]) {
      for (std::size_t drop = 0; drop < d; ++drop) {
        std::vector<int> w;
        for (std::size_t i = 0; i < d; ++i)
          if (i != drop) w.push_back(fmax[di].rays[i]);
        walls[w].push_back(di);
      }
    }
    for (const auto& [w, members] : walls) {
      if (members.size() == 2) continue;
      if (members.size() == 1 && on_base_boundary(w)) continue;
      return fail("wall structure broken inside a base cone");
    }
    // Wall-adjacency connectivity of the tiles.
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (const auto& [w, members] : walls)
      if (members.size() == 2) {
        adj[members[0]].push_back(members[1]);
        adj[members[1]].push_back(members[0]);
      }
    std::map<std::size_t, char> seen;
    std::vector<std::size_t> stack{inside[ci][0]};
    seen[inside[ci][0]] = 1;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : adj[x])
        if (!seen.count(y)) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    if (seen.size() != inside[ci].size()) return fail("subdivision tiles are disconnected");
  }
  return true;
}

struct LayerCheck {
  bool property_e = false;
  std::optional<std::vector<IntVec>> witness;  // a violating cone's rays
};

struct VerifyReport {
  bool fan_valid = false;
  std::string fan_problem;
  bool smooth = false;
  std::optional<bool> subdivides_base;
  std::string base_problem;
  std::vector<LayerCheck> layers;  // one entry per A-layer

  bool ok() const {
    if (!fan_valid || !smooth) return false;
    if (subdivides_base && !*subdivides_base) return false;
    for (const auto& l : layers)
      if (!l.property_e) return false;
    return true;
  }
};

/// The cmd_verify core: fan validity, smoothness, optional subdivision
/// check against a base fan, and property (E) of every A-layer.
inline VerifyReport verify_fan_for_arrangement(const Fan& f, const Arrangement& a,
                                               const Fan* base = nullptr) {
  VerifyReport rep;
  rep.fan_valid = is_valid_fan(f, &rep.fan_problem);
  rep.smooth = rep.fan_valid && is_smooth(f);
  if (base) rep.subdivides_base = is_subdivision_of(f, *base, &rep.base_problem);
  if (a.rank != f.rank()) {
    rep.fan_valid = false;
    rep.fan_problem = "fan rank differs from arrangement rank";
    return rep;
  }
  LayerPoset lp = all_A_layers(a);
  for (const auto& layer : lp.elements) {
    LayerCheck lc;
    Cone bad;
    lc.property_e = has_property_E(layer, f, &bad);
    if (!lc.property_e) lc.witness = f.cone_rays(bad);
    rep.layers.push_back(std::move(lc));
  }
  return rep;
}

}  // namespace torfan
