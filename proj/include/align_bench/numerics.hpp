// SPDX-License-Identifier: Apache-2.0
//
// align_bench: interference alignment beamforming workbench
// Copyright (C) 2026 The align_bench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

/**
 * @file numerics.hpp
 * @brief Small dense complex linear algebra used by the alignment pipeline.
 *
 * Diagonal operators model the per-realization channel gains of a symbol
 * extension. Dense matrices hold beamforming bases and receiver matrices.
 * Rank is decided by Householder QR with column pivoting on unit-normalized
 * columns; a pivot is nonzero when it exceeds tol_rel times the first pivot.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "align_bench/errors.hpp"

namespace align_bench {

using Complex = std::complex<double>;

inline constexpr double kDefaultInverseEps = 1e-12;
inline constexpr double kDefaultRankTol = 1e-9;

class DiagonalOperator {
 public:
  DiagonalOperator() = default;
  explicit DiagonalOperator(std::vector<Complex> entries) : entries_(std::move(entries)) {}

  static DiagonalOperator identity(std::size_t m) {
    return DiagonalOperator(std::vector<Complex>(m, Complex(1.0, 0.0)));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  double min_magnitude() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries_) m = std::min(m, std::abs(e));
    return m;
  }
  double max_magnitude() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
  }

  friend bool operator==(const DiagonalOperator&, const DiagonalOperator&) = default;

 private:
  std::vector<Complex> entries_;
};

/// Composition of two diagonal operators (they commute).
inline DiagonalOperator operator*(const DiagonalOperator& a, const DiagonalOperator& b) {
  if (a.size() != b.size()) {
    throw DimensionError("diagonal product: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return DiagonalOperator(std::move(out));
}

/// Row-major dense complex matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, Complex fill = Complex{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
    return a;
  }

  /// Builds a rows x columns.size() matrix; every column must have length rows.
  static DenseMatrix from_columns(std::size_t rows, const std::vector<std::vector<Complex>>& columns) {
    DenseMatrix a(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) a.set_column(c, columns[c]);
    return a;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Complex> column(std::size_t c) const {
    std::vector<Complex> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void set_column(std::size_t c, std::span<const Complex> values) {
    if (values.size() != rows_) {
      throw DimensionError("set_column: expected " + std::to_string(rows_) + " entries, got " +
                           std::to_string(values.size()));
    }
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
  }

  std::vector<Complex> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  double column_norm(std::size_t c) const {
    double s = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) s += std::norm((*this)(r, c));
    return std::sqrt(s);
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : data_) s += std::norm(e);
    return std::sqrt(s);
  }

  /// Columns [first, first + count).
  DenseMatrix column_block(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw DimensionError("column_block out of range");
    DenseMatrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
    return out;
  }

  DenseMatrix without_column(std::size_t drop) const {
    if (drop >= cols_) throw DimensionError("without_column out of range");
    DenseMatrix out(rows_, cols_ - 1);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0, k = 0; c < cols_; ++c)
        if (c != drop) out(r, k++) = (*this)(r, c);
    return out;
  }

  std::span<const Complex> data() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference: shapes differ");
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

/// [a | b]
inline DenseMatrix hcat(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("hcat: row counts " + std::to_string(a.rows()) + " and " + std::to_string(b.rows()) +
                         " differ");
  }
  DenseMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(r, j) = a(r, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(r, a.cols() + j) = b(r, j);
  }
  return c;
}

/// Row i of the result is d[i] times row i of a.
inline DenseMatrix diag_apply(const DiagonalOperator& d, const DenseMatrix& a) {
  if (d.size() != a.rows()) {
    throw DimensionError("diag_apply: operator length " + std::to_string(d.size()) + " vs matrix rows " +
                         std::to_string(a.rows()));
  }
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = d[r] * a(r, c);
  return out;
}

inline std::vector<Complex> diag_apply(const DiagonalOperator& d, std::span<const Complex> x) {
  if (d.size() != x.size()) throw DimensionError("diag_apply: vector length mismatch");
  std::vector<Complex> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = d[i] * x[i];
  return out;
}

inline DiagonalOperator diag_inverse(const DiagonalOperator& d, double eps = kDefaultInverseEps) {
  std::vector<Complex> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double mag = std::abs(d[i]);
    if (!(mag > eps)) {
      throw SingularError("singular diagonal: |entry " + std::to_string(i) + "| = " + std::to_string(mag) +
                              " <= " + std::to_string(eps),
                          i, std::numeric_limits<double>::infinity());
    }
    out[i] = 1.0 / d[i];
  }
  return DiagonalOperator(std::move(out));
}

struct NormalizedColumns {
  DenseMatrix matrix;
  std::vector<double> scales;  // original column norms; zero columns keep scale 0
};

inline NormalizedColumns normalize_columns(const DenseMatrix& a) {
  NormalizedColumns out{a, std::vector<double>(a.cols(), 0.0)};
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const double n = a.column_norm(c);
    out.scales[c] = n;
    if (n == 0.0) continue;
    for (std::size_t r = 0; r < a.rows(); ++r) out.matrix(r, c) /= n;
  }
  return out;
}

struct RankInfo {
  std::size_t rank = 0;
  double first_pivot = 0.0;  // largest pivot magnitude
  double last_pivot = 0.0;   // smallest pivot counted as nonzero
  double next_pivot = 0.0;   // first pivot rejected (0 when none)
  /// first_pivot / last_pivot, a cheap condition indicator of the retained block.
  double condition() const {
    return last_pivot > 0.0 ? first_pivot / last_pivot : std::numeric_limits<double>::infinity();
  }
};

/// Column-pivoted Householder QR on unit-normalized columns.
inline RankInfo rank_info(const DenseMatrix& a, double tol_rel = kDefaultRankTol) {
  RankInfo info;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 0 || n == 0) return info;

  // column-major working copy
  const auto normalized = normalize_columns(a).matrix;
  std::vector<std::vector<Complex>> cols(n);
  for (std::size_t c = 0; c < n; ++c) cols[c] = normalized.column(c);

  const std::size_t steps = std::min(m, n);
  std::vector<Complex> v(m);
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t best = s;
    double best_norm = -1.0;
    for (std::size_t c = s; c < n; ++c) {
      double acc = 0.0;
      for (std::size_t r = s; r < m; ++r) acc += std::norm(cols[c][r]);
      if (acc > best_norm) {
        best_norm = acc;
        best = c;
      }
    }
    const double pivot = std::sqrt(best_norm);
    if (s == 0) info.first_pivot = pivot;
    if (info.first_pivot == 0.0 || pivot <= tol_rel * info.first_pivot) {
      info.next_pivot = pivot;
      break;
    }
    ++info.rank;
    info.last_pivot = pivot;
    std::swap(cols[s], cols[best]);

    // reflector mapping cols[s][s:] onto alpha * e_0
    const auto& x = cols[s];
    const double x0_abs = std::abs(x[s]);
    const Complex phase = x0_abs > 0.0 ? x[s] / x0_abs : Complex(1.0, 0.0);
    const Complex alpha = -phase * pivot;
    double vnorm2 = 0.0;
    for (std::size_t r = s; r < m; ++r) {
      v[r] = x[r];
      if (r == s) v[r] -= alpha;
      vnorm2 += std::norm(v[r]);
    }
    if (vnorm2 == 0.0) continue;
    for (std::size_t c = s + 1; c < n; ++c) {
      Complex dot{};
      for (std::size_t r = s; r < m; ++r) dot += std::conj(v[r]) * cols[c][r];
      const Complex tau = 2.0 * dot / vnorm2;
      for (std::size_t r = s; r < m; ++r) cols[c][r] -= tau * v[r];
    }
  }
  return info;
}

inline std::size_t matrix_rank(const DenseMatrix& a, double tol_rel = kDefaultRankTol) {
  return rank_info(a, tol_rel).rank;
}

/// True iff span(a) is contained in span(b), decided as rank([b | a]) == rank(b).
inline bool subspace_included(const DenseMatrix& a, const DenseMatrix& b, double tol_rel = kDefaultRankTol) {
  if (a.rows() != b.rows()) {
    throw DimensionError("subspace_included: row counts " + std::to_string(a.rows()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  return matrix_rank(hcat(b, a), tol_rel) == matrix_rank(b, tol_rel);
}

/// Solves a x = rhs by LU with partial pivoting.
/// Throws SingularError when a pivot falls below tol_rel times the largest pivot seen.
inline DenseMatrix solve_square(const DenseMatrix& a, const DenseMatrix& rhs, double tol_rel = kDefaultRankTol) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("solve_square: matrix is not square");
  if (rhs.rows() != n) throw DimensionError("solve_square: right-hand side row count mismatch");

  DenseMatrix lu = a;
  DenseMatrix x = rhs;
  const std::size_t nrhs = rhs.cols();
  double max_pivot = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double pmag = std::abs(lu(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double mag = std::abs(lu(r, k));
      if (mag > pmag) {
        pmag = mag;
        p = r;
      }
    }
    max_pivot = std::max(max_pivot, pmag);
    min_pivot = std::min(min_pivot, pmag);
    if (max_pivot == 0.0 || pmag <= tol_rel * max_pivot) {
      const double cond = pmag > 0.0 ? max_pivot / pmag : std::numeric_limits<double>::infinity();
      throw SingularError("solve_square: matrix singular to tolerance (pivot ratio " + std::to_string(cond) + ")",
                          std::nullopt, cond);
    }
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(p, c));
      for (std::size_t c = 0; c < nrhs; ++c) std::swap(x(k, c), x(p, c));
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = lu(r, k) / lu(k, k);
      if (f == Complex{}) continue;
      lu(r, k) = f;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
      for (std::size_t c = 0; c < nrhs; ++c) x(r, c) -= f * x(k, c);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t c = 0; c < nrhs; ++c) {
      Complex s = x(kk, c);
      for (std::size_t j = kk + 1; j < n; ++j) s -= lu(kk, j) * x(j, c);
      x(kk, c) = s / lu(kk, kk);
    }
  }
  return x;
}

inline DenseMatrix inverse(const DenseMatrix& a, double tol_rel = kDefaultRankTol) {
  return solve_square(a, DenseMatrix::identity(a.rows()), tol_rel);
}

inline double vector_norm(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& e : x) s += std::norm(e);
  return std::sqrt(s);
}

}  // namespace align_bench
