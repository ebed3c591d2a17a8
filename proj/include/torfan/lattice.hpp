#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "torfan/numeric.hpp"

namespace torfan {

/// Dense integer matrix with row-major storage. Rows are the primary view:
/// bases of sublattices are stored as rows, matching the row-vector
/// convention used for characters throughout.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMat from_rows(const std::vector<IntVec>& rows) {
    if (rows.empty()) return IntMat(0, 0);
    IntMat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionMismatchError("ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const {
    IntVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  IntVec col(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  std::vector<IntVec> to_rows() const {
    std::vector<IntVec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  IntMat transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMat operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw DimensionMismatchError("matrix product shape");
    IntMat p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (at(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += at(i, k) * o.at(k, j);
      }
    return p;
  }

  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
  }
  // row_i += f * row_j
  void add_row(std::size_t i, std::size_t j, const Int& f) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) += f * at(j, k);
  }
  void add_col(std::size_t i, std::size_t j, const Int& f) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) += f * at(k, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// u * a * v = d with u, v unimodular and d diagonal, nonnegative,
/// d_i | d_{i+1}.
struct SmithDecomposition {
  IntMat u, d, v;
};

inline Int pairing(const IntVec& chi, const IntVec& v) {
  if (chi.size() != v.size()) throw DimensionMismatchError("pairing length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) s += chi[i] * v[i];
  return s;
}

inline bool is_primitive(const IntVec& v) {
  if (vec_is_zero(v)) throw ZeroVectorError("primitivity of the zero vector is undefined");
  Int g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g == 1;
}

namespace detail {

// Smallest nonzero |entry| in the trailing submatrix d[t.., t..].
inline bool locate_pivot(const IntMat& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best = 0;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d.at(i, j) == 0) continue;
      Int a = abs(d.at(i, j));
      if (!found || a < best) {
        best = a;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMat& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithDecomposition s{IntMat::identity(m), a, IntMat::identity(n)};
  IntMat& d = s.d;
  IntMat& u = s.u;
  IntMat& v = s.v;

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      std::size_t pi = t, pj = t;
      if (!detail::locate_pivot(d, t, pi, pj)) {
        // Trailing block is zero; nothing left to do anywhere.
        t = steps;
        break;
      }
      if (pi != t) {
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
      }
      if (pj != t) {
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
      }
      // Clear column t below and row t to the right of the pivot.
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d.at(i, t) != 0) {
          Int q = d.at(i, t) / d.at(t, t);
          d.add_row(i, t, -q);
          u.add_row(i, t, -q);
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d.at(t, j) != 0) {
          Int q = d.at(t, j) / d.at(t, t);
          d.add_col(j, t, -q);
          v.add_col(j, t, -q);
        }
      }
      bool lone = true;
      for (std::size_t i = t + 1; i < m && lone; ++i)
        if (d.at(i, t) != 0) lone = false;
      for (std::size_t j = t + 1; j < n && lone; ++j)
        if (d.at(t, j) != 0) lone = false;
      if (!lone) continue;  // pivot shrank, run the reduction again

      // Divisibility fix-up: drag a non-multiple into row t and restart.
      bool fixed = true;
      for (std::size_t i = t + 1; i < m && fixed; ++i)
        for (std::size_t j = t + 1; j < n && fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            d.add_row(t, i, 1);
            u.add_row(t, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }
    if (t >= steps) break;
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return s;
}

inline std::vector<Int> invariant_factors(const SmithDecomposition& s) {
  std::vector<Int> f;
  const std::size_t k = std::min(s.d.rows(), s.d.cols());
  for (std::size_t i = 0; i < k; ++i)
    if (s.d.at(i, i) != 0) f.push_back(s.d.at(i, i));
  return f;
}

inline std::size_t rank_of(const IntMat& a) {
  return invariant_factors(smith_normal_form(a)).size();
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatchError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMat w = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && w.at(p, k) == 0) ++p;
      if (p == n) return 0;
      w.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

/// Exact inverse of a unimodular matrix (integral by Cramer).
inline IntMat inverse_unimodular(const IntMat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatchError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  // Gauss-Jordan over the rationals on [m | I].
  std::vector<std::vector<Rat>> w(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = Rat(m.at(i, j));
    w[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w[p][c] == 0) ++p;
    if (p == n) throw Error("matrix is singular, expected unimodular");
    std::swap(w[c], w[p]);
    Rat piv = w[c][c];
    for (auto& x : w[c]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || w[i][c] == 0) continue;
      Rat f = w[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) w[i][j] -= f * w[c][j];
    }
  }
  IntMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& x = w[i][n + j];
      if (denominator(x) != 1) throw Error("matrix is not unimodular");
      inv.at(i, j) = numerator(x);
    }
  return inv;
}

/// A sublattice of Z^n given by a basis of linearly independent rows.
struct Sublattice {
  std::size_t ambient = 0;
  IntMat basis;  // rank x ambient

  Sublattice() = default;
  Sublattice(std::size_t ambient_rank, IntMat b) : ambient(ambient_rank), basis(std::move(b)) {
    if (basis.rows() > 0 && basis.cols() != ambient)
      throw DimensionMismatchError("basis width differs from ambient rank");
    if (basis.rows() == 0) basis = IntMat(0, ambient);
    if (rank_of(basis) != basis.rows())
      throw Error("sublattice basis rows are linearly dependent");
  }

  static Sublattice from_rows(std::size_t ambient_rank, const std::vector<IntVec>& rows) {
    if (rows.empty()) return Sublattice(ambient_rank, IntMat(0, ambient_rank));
    return Sublattice(ambient_rank, IntMat::from_rows(rows));
  }

  std::size_t rank() const { return basis.rows(); }
};

/// Basis of {x : x * m = 0}, a saturated sublattice of Z^rows.
inline IntMat left_kernel(const IntMat& m) {
  SmithDecomposition s = smith_normal_form(m);
  const std::size_t r = invariant_factors(s).size();
  IntMat k(m.rows() - r, m.rows());
  for (std::size_t i = r; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) k.at(i - r, j) = s.u.at(i, j);
  return k;
}

/// Basis (as rows) of {x : m * x^T = 0}, a saturated sublattice of Z^cols.
inline IntMat right_kernel(const IntMat& m) {
  SmithDecomposition s = smith_normal_form(m);
  const std::size_t r = invariant_factors(s).size();
  IntMat k(m.cols() - r, m.cols());
  for (std::size_t j = r; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k.at(j - r, i) = s.v.at(i, j);
  return k;
}

/// Integer solution x of x * basis = target, if one exists. Free coordinates
/// (zero invariant factors) are set to zero.
inline std::optional<IntVec> solve_in_lattice(const IntMat& basis, const IntVec& target) {
  if (target.size() != basis.cols()) throw DimensionMismatchError("target length mismatch");
  SmithDecomposition s = smith_normal_form(basis);
  const std::size_t m = basis.rows(), n = basis.cols();
  const std::size_t r = invariant_factors(s).size();
  // x * basis = target  <=>  y * d = target * v  with  x = y * u.
  IntVec w(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) w[j] += target[i] * s.v.at(i, j);
  }
  IntVec y(m, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (w[i] % s.d.at(i, i) != 0) return std::nullopt;
    y[i] = w[i] / s.d.at(i, i);
  }
  for (std::size_t j = r; j < n; ++j)
    if (w[j] != 0) return std::nullopt;
  IntVec x(m, 0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) x[j] += y[i] * s.u.at(i, j);
  return x;
}

inline bool lattice_member(const Sublattice& l, const IntVec& v) {
  return solve_in_lattice(l.basis, v).has_value();
}

inline bool lattice_contains(const Sublattice& outer, const Sublattice& inner) {
  for (std::size_t i = 0; i < inner.basis.rows(); ++i)
    if (!lattice_member(outer, inner.basis.row(i))) return false;
  return true;
}

inline bool lattice_eq(const Sublattice& a, const Sublattice& b) {
  return a.rank() == b.rank() && lattice_contains(a, b) && lattice_contains(b, a);
}

/// Smallest split direct summand of Z^n with the same rational span.
inline Sublattice saturate(const Sublattice& l) {
  SmithDecomposition s = smith_normal_form(l.basis);
  const std::size_t r = invariant_factors(s).size();
  IntMat vinv = inverse_unimodular(s.v);
  IntMat b(r, l.ambient);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < l.ambient; ++j) b.at(i, j) = vinv.at(i, j);
  return Sublattice(l.ambient, std::move(b));
}

inline Int index_in_saturation(const Sublattice& l) {
  Int idx = 1;
  for (const auto& f : invariant_factors(smith_normal_form(l.basis))) idx *= f;
  return idx;
}

inline bool is_split_summand(const Sublattice& l) { return index_in_saturation(l) == 1; }

/// Unimodular n x n matrix whose first rank(l) rows are l's basis.
inline IntMat complete_to_basis(const Sublattice& l) {
  SmithDecomposition s = smith_normal_form(l.basis);
  for (const auto& f : invariant_factors(s))
    if (f != 1) throw NotSplitSummandError("sublattice is not a split direct summand");
  const std::size_t r = l.rank(), n = l.ambient;
  IntMat vinv = inverse_unimodular(s.v);
  IntMat m(n, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = l.basis.at(i, j);
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = vinv.at(i, j);
  Int dm = det(m);
  if (dm != 1 && dm != -1) throw Error("basis completion failed");  // unreachable
  return m;
}

/// Rational solution of sum_i x_i * cols[i] = rhs (unique when the columns
/// are independent). Returns nullopt when the system is inconsistent.
inline std::optional<RatVec> solve_rational_combination(const std::vector<IntVec>& cols,
                                                        const RatVec& rhs) {
  const std::size_t k = cols.size();
  const std::size_t n = rhs.size();
  for (const auto& c : cols)
    if (c.size() != n) throw DimensionMismatchError("column length mismatch");
  // Augmented system over Q, n equations, k unknowns.
  std::vector<RatVec> w(n, RatVec(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) w[i][j] = Rat(cols[j][i]);
    w[i][k] = rhs[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < n; ++c) {
    std::size_t p = row;
    while (p < n && w[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(w[row], w[p]);
    Rat piv = w[row][c];
    for (auto& x : w[row]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || w[i][c] == 0) continue;
      Rat f = w[i][c];
      for (std::size_t j = 0; j <= k; ++j) w[i][j] -= f * w[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i)
    if (w[i][k] != 0) return std::nullopt;
  RatVec x(k, Rat(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = w[i][k];
  return x;
}

}  // namespace torfan
