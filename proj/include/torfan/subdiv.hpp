#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "torfan/fan.hpp"
#include "torfan/lattice.hpp"
#include "torfan/numeric.hpp"

namespace torfan {

enum class SignStatus { NonNeg, NonPos, Mixed };

/// Badness score of a two-dimensional cone for a character: the larger
/// pairing magnitude, and whether both magnitudes attain it.
struct Score {
  Int m;
  int eps;  // 0 or 1

  bool operator==(const Score& o) const { return m == o.m && eps == o.eps; }
  bool operator<(const Score& o) const { return m != o.m ? m < o.m : eps < o.eps; }
};

struct TraceStep {
  IntVec character;
  std::array<IntVec, 2> cone;  // primitive ray pair, sorted
  IntVec new_ray;
};
using SubdivisionTrace = std::vector<TraceStep>;

inline SignStatus sign_status(const IntVec& chi, const Cone& c, const Fan& f) {
  if (!f.has_cone(c)) throw ConeNotInFanError("cone is not a face of the fan");
  bool pos = false, neg = false;
  for (int id : c.rays) {
    Int p = pairing(chi, f.ray(id));
    if (p > 0) pos = true;
    if (p < 0) neg = true;
  }
  if (pos && neg) return SignStatus::Mixed;
  if (neg) return SignStatus::NonPos;
  return SignStatus::NonNeg;
}

/// The two-dimensional cones on which chi changes sign.
inline std::vector<Cone> bad_two_cones(const Fan& f, const IntVec& chi) {
  std::vector<Cone> bad;
  for (const auto& c : two_dim_cones(f)) {
    Int p0 = pairing(chi, f.ray(c.rays[0]));
    Int p1 = pairing(chi, f.ray(c.rays[1]));
    if ((p0 > 0 && p1 < 0) || (p0 < 0 && p1 > 0)) bad.push_back(c);
  }
  return bad;
}

inline Score score(const Cone& sigma, const IntVec& chi, const Fan& f) {
  if (sigma.dim() != 2) throw NotBadConeError("score needs a two-dimensional cone");
  Int p0 = pairing(chi, f.ray(sigma.rays[0]));
  Int p1 = pairing(chi, f.ray(sigma.rays[1]));
  if (!((p0 > 0 && p1 < 0) || (p0 < 0 && p1 > 0)))
    throw NotBadConeError("cone pairings do not change sign");
  Int a0 = abs(p0), a1 = abs(p1);
  Score s;
  s.m = a0 > a1 ? a0 : a1;
  s.eps = (a0 == a1) ? 1 : 0;
  return s;
}

/// Per-move record of the global measure, for tests that audit the
/// termination argument.
struct ResolveStep {
  Int m;
  int eps;
  std::size_t q;  // number of bad cones attaining (m, eps)
};
using ResolveStats = std::vector<ResolveStep>;

namespace detail {

// Sorted primitive-ray pair of a 2-cone; the deterministic tie-break key.
inline std::array<IntVec, 2> cone_ray_pair(const Fan& f, const Cone& c) {
  IntVec a = f.ray(c.rays[0]), b = f.ray(c.rays[1]);
  if (vec_less(b, a)) std::swap(a, b);
  return {a, b};
}

inline bool pair_less(const std::array<IntVec, 2>& x, const std::array<IntVec, 2>& y) {
  if (x[0] != y[0]) return vec_less(x[0], y[0]);
  return vec_less(x[1], y[1]);
}

}  // namespace detail

/// Greedy loop of the single-character algorithm: repeatedly split a bad
/// two-cone of maximal score. The measure (M, eps, q) drops strictly at
/// every move, which is what bounds the loop; a violation means the move
/// logic is broken, so it throws.
inline std::pair<Fan, SubdivisionTrace> resolve_character(const Fan& f, const IntVec& chi,
                                                          ResolveStats* stats = nullptr) {
  Fan cur = f;
  SubdivisionTrace trace;
  bool have_prev = false;
  ResolveStep prev{};
  for (;;) {
    std::vector<Cone> bad = bad_two_cones(cur, chi);
    if (bad.empty()) break;
    Score best = score(bad[0], chi, cur);
    for (const auto& c : bad) {
      Score s = score(c, chi, cur);
      if (best < s) best = s;
    }
    std::size_t q = 0;
    std::optional<Cone> pick;
    std::array<IntVec, 2> pick_key{};
    for (const auto& c : bad) {
      if (!(score(c, chi, cur) == best)) continue;
      ++q;
      auto key = detail::cone_ray_pair(cur, c);
      if (!pick || detail::pair_less(key, pick_key)) {
        pick = c;
        pick_key = key;
      }
    }
    ResolveStep step{best.m, best.eps, q};
    if (have_prev) {
      bool decreased = step.m < prev.m || (step.m == prev.m && step.eps < prev.eps) ||
                       (step.m == prev.m && step.eps == prev.eps && step.q < prev.q);
      if (!decreased) throw Error("subdivision measure failed to decrease");
    }
    prev = step;
    have_prev = true;
    if (stats) stats->push_back(step);

    IntVec new_ray = vec_add(pick_key[0], pick_key[1]);
    trace.push_back(TraceStep{chi, pick_key, new_ray});
    cur = stellar_subdivide_2cone(cur, *pick);
  }
  return {std::move(cur), std::move(trace)};
}

/// Independent of the bad-cone scan: checks sign-coherence of chi on every
/// maximal cone directly.
inline bool character_sign_coherent(const Fan& f, const IntVec& chi) {
  for (const auto& m : f.maximal_cones()) {
    bool pos = false, neg = false;
    for (int id : m.rays) {
      Int p = pairing(chi, f.ray(id));
      if (p > 0) pos = true;
      if (p < 0) neg = true;
    }
    if (pos && neg) return false;
  }
  return true;
}

/// Drop zero characters (error), duplicates and sign-duplicates.
inline std::vector<IntVec> dedupe_characters(const std::vector<IntVec>& xi) {
  std::vector<IntVec> out;
  std::set<IntVec> seen;
  for (const auto& chi : xi) {
    if (vec_is_zero(chi)) throw ZeroCharacterError("zero character carries no constraint");
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

/// Resolves every character of Xi in input order. Characters resolved
/// earlier stay resolved (their bad-cone sets remain empty after later
/// moves); this is asserted after each pass.
inline std::pair<Fan, SubdivisionTrace> resolve_all(const Fan& f, const std::vector<IntVec>& xi,
                                                    ResolveStats* stats = nullptr) {
  Fan cur = f;
  SubdivisionTrace trace;
  std::vector<IntVec> chars = dedupe_characters(xi);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    auto [next, steps] = resolve_character(cur, chars[i], stats);
    cur = std::move(next);
    trace.insert(trace.end(), steps.begin(), steps.end());
    for (std::size_t j = 0; j < i; ++j)
      if (!bad_two_cones(cur, chars[j]).empty())
        throw Error("previously resolved character regressed");
  }
  return {std::move(cur), std::move(trace)};
}

/// Applies a recorded trace to a fan; the audit counterpart of resolve.
inline Fan replay_trace(const Fan& f, const SubdivisionTrace& trace) {
  Fan cur = f;
  for (const auto& step : trace) {
    int a = cur.find_ray(step.cone[0]);
    int b = cur.find_ray(step.cone[1]);
    if (a < 0 || b < 0) throw Error("trace references a missing ray");
    Cone sigma({a, b});
    if (step.new_ray != vec_add(step.cone[0], step.cone[1]))
      throw Error("trace new_ray does not match the move");
    cur = stellar_subdivide_2cone(cur, sigma);
  }
  return cur;
}

}  // namespace torfan
