#pragma once

#include <vector>

#include "torfan/fan.hpp"

namespace torfan {

/// Even Betti numbers of a smooth complete toric variety; coeffs[k] is
/// b_{2k}. Odd cohomology vanishes, so it is not stored.
struct PoincarePolynomial {
  std::vector<Int> coeffs;

  bool operator==(const PoincarePolynomial& o) const { return coeffs == o.coeffs; }

  Int euler_characteristic() const {
    Int s = 0;
    for (const auto& c : coeffs) s += c;
    return s;
  }

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (c != 0) return false;
    return true;
  }
};

/// Cone counts by dimension, d_j = number of j-dimensional cones.
inline std::vector<Int> d_vector(const Fan& f) {
  if (!is_smooth(f)) throw Error("d-vector needs a smooth fan");
  if (!is_complete(f)) throw NotCompleteError("d-vector needs a complete fan");
  std::vector<Int> d(f.rank() + 1, 0);
  for (const auto& c : f.all_faces()) d[c.dim()] += 1;
  return d;
}

namespace detail {

inline Int binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Int b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    b *= Int(n - i);
    b /= Int(i + 1);
  }
  return b;
}

}  // namespace detail

/// h-vector of the fan: b_{2k} = sum_{i >= k} (-1)^{i-k} C(i,k) d_{n-i}.
inline PoincarePolynomial betti_numbers(const Fan& f) {
  std::vector<Int> d = d_vector(f);
  const std::size_t n = f.rank();
  PoincarePolynomial p;
  p.coeffs.assign(n + 1, 0);
  for (std::size_t k = 0; k <= n; ++k) {
    Int h = 0;
    for (std::size_t i = k; i <= n; ++i) {
      Int term = detail::binomial(i, k) * d[n - i];
      if ((i - k) % 2 == 0)
        h += term;
      else
        h -= term;
    }
    p.coeffs[k] = h;
  }
  return p;
}

/// Chow/cohomology bookkeeping for a blowup along a codimension-2 center:
/// the exceptional divisor is a P^1-bundle over the center, so the
/// polynomial gains t^2 times the center's polynomial.
inline PoincarePolynomial blowup_update(const PoincarePolynomial& px,
                                        const PoincarePolynomial& py) {
  if (!py.coeffs.empty() && !py.is_zero() && py.coeffs.size() + 2 != px.coeffs.size())
    throw DimensionMismatchError("center is not of codimension 2");
  PoincarePolynomial out = px;
  for (std::size_t i = 0; i < py.coeffs.size(); ++i) {
    if (i + 1 >= out.coeffs.size()) {
      if (py.coeffs[i] != 0) throw DimensionMismatchError("center is not of codimension 2");
      continue;
    }
    out.coeffs[i + 1] += py.coeffs[i];
  }
  return out;
}

}  // namespace torfan
