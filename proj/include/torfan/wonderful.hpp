#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "torfan/strata.hpp"

namespace torfan {

/// The arrangement universe for the building/nested machinery: every
/// stratum properly contained in the ambient variety.
inline std::vector<int> proper_strata(const StrataPoset& p) {
  std::vector<int> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.codim(i) > 0) out.push_back(static_cast<int>(i));
  return out;
}

/// Codimensions add on every component of the common intersection.
inline bool is_transversal(const StrataPoset& p, const std::vector<int>& members) {
  if (members.empty()) return true;
  std::size_t codim_sum = 0;
  for (int s : members) codim_sum += p.codim(s);
  for (int c : p.components_of_intersection(members))
    if (p.codim(c) != codim_sum) return false;
  return true;
}

namespace detail {

// Minimal elements of {g in G : g contains x}.
inline std::vector<int> minimal_ancestors(const StrataPoset& p, int x,
                                          const std::vector<int>& building) {
  std::vector<int> anc;
  for (int g : building)
    if (p.leq[x][g]) anc.push_back(g);
  std::vector<int> mins;
  for (int g : anc) {
    bool minimal = true;
    for (int h : anc)
      if (h != g && p.leq[h][g]) minimal = false;
    if (minimal) mins.push_back(g);
  }
  std::sort(mins.begin(), mins.end());
  return mins;
}

// x is recovered by its factors: it appears among the components of their
// intersection, at the transversal codimension.
inline bool factors_recover(const StrataPoset& p, int x, const std::vector<int>& factors) {
  if (factors.empty()) return false;
  std::size_t codim_sum = 0;
  for (int g : factors) codim_sum += p.codim(g);
  if (codim_sum != p.codim(x)) return false;
  auto comps = p.components_of_intersection(factors);
  return std::find(comps.begin(), comps.end(), x) != comps.end();
}

}  // namespace detail

/// Building-set test over an explicit universe (the full proper poset by
/// default; initial-segment checks pass the induced arrangement instead).
inline bool is_building(const StrataPoset& p, const std::vector<int>& building,
                        const std::vector<int>& universe) {
  for (int x : universe) {
    if (std::find(building.begin(), building.end(), x) != building.end()) continue;
    if (!detail::factors_recover(p, x, detail::minimal_ancestors(p, x, building))) return false;
  }
  return true;
}

inline bool is_building(const StrataPoset& p, const std::vector<int>& building) {
  return is_building(p, building, proper_strata(p));
}

/// Elements that are not transversal intersections of strictly larger
/// proper strata.
inline std::vector<int> minimal_building_set(const StrataPoset& p) {
  std::vector<int> universe = proper_strata(p);
  std::vector<int> out;
  for (int x : universe) {
    std::vector<int> larger;
    for (int g : universe)
      if (g != x && p.leq[x][g]) larger.push_back(g);
    // Search for a factoring family: codimensions must add up to codim(x),
    // with at least two factors, and x among the intersection components.
    std::vector<int> chosen;
    bool factorable = false;
    auto search = [&](auto&& self, std::size_t from, std::size_t codim_left) -> void {
      if (factorable) return;
      if (codim_left == 0 && chosen.size() >= 2) {
        if (detail::factors_recover(p, x, chosen)) factorable = true;
        return;
      }
      for (std::size_t i = from; i < larger.size() && !factorable; ++i) {
        std::size_t c = p.codim(larger[i]);
        if (c == 0 || c > codim_left) continue;
        chosen.push_back(larger[i]);
        self(self, i + 1, codim_left - c);
        chosen.pop_back();
      }
    };
    search(search, 0, p.codim(x));
    if (!factorable) out.push_back(x);
  }
  return out;
}

/// Nested-set test: the minimal elements of T must be the G-factors of
/// some poset element, and every strict upward slice must be nested.
inline bool is_nested(const StrataPoset& p, const std::vector<int>& t,
                      const std::vector<int>& building) {
  for (int x : t)
    if (std::find(building.begin(), building.end(), x) == building.end())
      throw Error("nested-set candidate is not a subset of the building set");
  if (t.size() <= 1) return true;
  std::vector<int> minimals;
  for (int x : t) {
    bool minimal = true;
    for (int y : t)
      if (y != x && p.leq[y][x]) minimal = false;
    if (minimal) minimals.push_back(x);
  }
  std::sort(minimals.begin(), minimals.end());
  if (minimals.size() > 1) {
    bool found = false;
    for (int x : proper_strata(p)) {
      if (detail::minimal_ancestors(p, x, building) == minimals) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  for (int a : minimals) {
    std::vector<int> slice;
    for (int x : t)
      if (x != a && p.leq[a][x]) slice.push_back(x);
    if (!is_nested(p, slice, building)) return false;
  }
  return true;
}

/// All nested subsets of the building set, the empty set included. Uses
/// that the family is closed under subsets, growing sets one element at a
/// time in index order.
inline std::vector<std::vector<int>> nested_sets(const StrataPoset& p,
                                                 const std::vector<int>& building,
                                                 std::size_t cap = 20) {
  if (building.size() > cap)
    throw CapExceededError("building set too large for nested-set enumeration");
  std::vector<int> g = building;
  std::sort(g.begin(), g.end());
  std::vector<std::vector<int>> out{{}};
  std::size_t frontier_begin = 0;
  while (frontier_begin < out.size()) {
    std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      std::vector<int> base = out[i];
      int last = base.empty() ? -1 : base.back();
      for (int x : g) {
        if (x <= last) continue;
        std::vector<int> cand = base;
        cand.push_back(x);
        if (is_nested(p, cand, building)) out.push_back(std::move(cand));
      }
    }
    frontier_begin = frontier_end;
  }
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

/// Closure of a family under componentwise intersection: the arrangement it
/// induces inside the poset.
inline std::vector<int> induced_arrangement(const StrataPoset& p, const std::vector<int>& seed) {
  std::set<int> have(seed.begin(), seed.end());
  std::vector<int> work(have.begin(), have.end());
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      for (int c : p.components_of_intersection({work[i], work[j]}))
        if (have.insert(c).second) work.push_back(c);
    }
  std::sort(work.begin(), work.end());
  return work;
}

/// Orders the building set for the blowup construction: strata of smaller
/// dimension first. Verifies that every initial segment is a building set
/// of the arrangement it induces.
inline std::vector<int> blowup_schedule(const StrataPoset& p, const std::vector<int>& building) {
  std::vector<int> order = building;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (p.strata[a].dim != p.strata[b].dim) return p.strata[a].dim < p.strata[b].dim;
    if (p.strata[a].layer != p.strata[b].layer) return p.strata[a].layer < p.strata[b].layer;
    return p.strata[a].cone < p.strata[b].cone;
  });
  for (std::size_t i = 1; i <= order.size(); ++i) {
    std::vector<int> segment(order.begin(), order.begin() + static_cast<long>(i));
    if (!is_building(p, segment, induced_arrangement(p, segment)))
      throw Error("initial segment of the schedule is not building");
  }
  return order;
}

}  // namespace torfan
