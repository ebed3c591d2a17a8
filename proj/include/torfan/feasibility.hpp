#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "torfan/numeric.hpp"

namespace torfan {

/// One linear condition coef . x (>= | ==) rhs.
struct LinConstraint {
  RatVec coef;
  Rat rhs;
  bool equality = false;
};

namespace detail {

struct Ineq {
  RatVec coef;  // over the surviving variables
  Rat rhs;
};

inline RatVec normalized_key(const Ineq& q) {
  RatVec key = q.coef;
  key.push_back(q.rhs);
  Rat scale = 0;
  for (const auto& x : key)
    if (x != 0) {
      scale = abs(x);
      break;
    }
  if (scale != 0)
    for (auto& x : key) x /= scale;
  return key;
}

}  // namespace detail

/// Exact feasibility over the rationals: returns a point satisfying every
/// constraint, or nullopt. Equalities are eliminated by substitution, the
/// inequalities by Fourier-Motzkin; fine at the small dimensions cones need.
inline std::optional<RatVec> find_rational_point(std::size_t nvars,
                                                 std::vector<LinConstraint> cons) {
  for (const auto& c : cons)
    if (c.coef.size() != nvars) throw DimensionMismatchError("constraint width mismatch");
  const std::vector<LinConstraint> original = cons;

  // Substitution records: var -> affine expression in the remaining vars.
  struct Subst {
    std::size_t var;
    RatVec coef;  // length nvars, zero at eliminated positions
    Rat rhs;      // x_var = (rhs - coef.x) / div
    Rat div;
  };
  std::vector<Subst> substs;
  std::vector<bool> eliminated(nvars, false);

  // Pass 1: use each equality to eliminate one variable.
  std::vector<detail::Ineq> ineqs;
  std::vector<LinConstraint> pending(std::move(cons));
  for (std::size_t idx = 0; idx < pending.size(); ++idx) {
    LinConstraint c = pending[idx];
    if (!c.equality) continue;
    std::size_t var = nvars;
    for (std::size_t j = 0; j < nvars; ++j)
      if (!eliminated[j] && c.coef[j] != 0) {
        var = j;
        break;
      }
    if (var == nvars) {
      if (c.rhs != 0) return std::nullopt;
      continue;
    }
    Subst s{var, c.coef, c.rhs, c.coef[var]};
    s.coef[var] = 0;
    eliminated[var] = true;
    substs.push_back(s);
    // Substitute into every other constraint, whatever its position.
    for (std::size_t k = 0; k < pending.size(); ++k) {
      if (k == idx) continue;
      Rat f = pending[k].coef[var];
      if (f == 0) continue;
      pending[k].coef[var] = 0;
      Rat scale = f / s.div;
      for (std::size_t j = 0; j < nvars; ++j) pending[k].coef[j] -= scale * s.coef[j];
      pending[k].rhs -= scale * s.rhs;
    }
  }
  for (const auto& c : pending) {
    if (c.equality) continue;
    detail::Ineq q;
    q.coef = c.coef;
    q.rhs = c.rhs;
    for (std::size_t j = 0; j < nvars; ++j)
      if (eliminated[j] && q.coef[j] != 0) throw Error("substitution left a stale coefficient");
    ineqs.push_back(std::move(q));
  }

  // Pass 2: Fourier-Motzkin elimination of the remaining variables.
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < nvars; ++j)
    if (!eliminated[j]) order.push_back(j);

  struct Bounds {
    std::size_t var;
    std::vector<detail::Ineq> lowers;  // x_var >= (rhs - rest)/coef, coef > 0
    std::vector<detail::Ineq> uppers;  // coef < 0
  };
  std::vector<Bounds> stack;

  for (std::size_t var : order) {
    Bounds b{var, {}, {}};
    std::vector<detail::Ineq> rest;
    for (auto& q : ineqs) {
      if (q.coef[var] > 0)
        b.lowers.push_back(q);
      else if (q.coef[var] < 0)
        b.uppers.push_back(q);
      else
        rest.push_back(q);
    }
    std::set<RatVec> seen;
    for (const auto& q : rest) seen.insert(detail::normalized_key(q));
    for (const auto& lo : b.lowers)
      for (const auto& hi : b.uppers) {
        // Combine lo and hi so that var cancels.
        Rat a = lo.coef[var], c = -hi.coef[var];
        detail::Ineq q;
        q.coef.assign(nvars, Rat(0));
        for (std::size_t j = 0; j < nvars; ++j) q.coef[j] = c * lo.coef[j] + a * hi.coef[j];
        q.coef[var] = 0;
        q.rhs = c * lo.rhs + a * hi.rhs;
        auto key = detail::normalized_key(q);
        if (seen.insert(key).second) rest.push_back(std::move(q));
      }
    ineqs = std::move(rest);
    stack.push_back(std::move(b));
  }

  // Only constant constraints remain: 0 >= rhs.
  for (const auto& q : ineqs) {
    if (q.rhs > 0) return std::nullopt;
  }

  // Back substitution. Variables were eliminated in `order`; assign in
  // reverse so each bound can be evaluated.
  RatVec x(nvars, Rat(0));
  auto eval = [&](const detail::Ineq& q, std::size_t var) {
    // value bound for x_var from q given already-assigned later variables
    Rat acc = q.rhs;
    for (std::size_t j = 0; j < nvars; ++j)
      if (j != var) acc -= q.coef[j] * x[j];
    return acc / q.coef[var];
  };
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    bool has_lo = false, has_hi = false;
    Rat lo = 0, hi = 0;
    for (const auto& q : it->lowers) {
      Rat b = eval(q, it->var);
      if (!has_lo || b > lo) lo = b;
      has_lo = true;
    }
    for (const auto& q : it->uppers) {
      Rat b = eval(q, it->var);
      if (!has_hi || b < hi) hi = b;
      has_hi = true;
    }
    if (has_lo && has_hi)
      x[it->var] = (lo + hi) / 2;
    else if (has_lo)
      x[it->var] = lo;
    else if (has_hi)
      x[it->var] = hi;
  }
  for (auto it = substs.rbegin(); it != substs.rend(); ++it) {
    Rat acc = it->rhs;
    for (std::size_t j = 0; j < nvars; ++j) acc -= it->coef[j] * x[j];
    x[it->var] = acc / it->div;
  }
  // Certify the witness against the untouched input system.
  for (const auto& c : original) {
    Rat lhs = 0;
    for (std::size_t j = 0; j < nvars; ++j) lhs += c.coef[j] * x[j];
    if (c.equality ? lhs != c.rhs : lhs < c.rhs)
      throw Error("feasibility witness failed its own constraints");
  }
  return x;
}

inline bool rational_system_feasible(std::size_t nvars, std::vector<LinConstraint> cons) {
  return find_rational_point(nvars, std::move(cons)).has_value();
}

}  // namespace torfan
