#pragma once

// Exact dense linear algebra over the rationals. Pivoting is deterministic:
// the first nonzero entry in column order is taken, so every basis produced
// here is reproducible.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "twistcoh/errors.hpp"
#include "twistcoh/matrix.hpp"

namespace twistcoh {

struct RrefResult {
  Mat matrix;
  std::vector<std::size_t> pivots;  // strictly increasing column indices
};

inline RrefResult rref(Mat m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    const Rat inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rat f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

/// Basis of ker(m); each vector's first nonzero coordinate is 1.
inline std::vector<Vec> nullspace(const Mat& m) {
  const auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    for (const auto& x : v)
      if (!x.is_zero()) {
        if (x != Rat(1)) v = x.inverse() * v;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Columns of m at the pivot positions: a basis of the column space.
inline std::vector<Vec> image_basis(const Mat& m) {
  std::vector<Vec> basis;
  for (auto p : rref(m).pivots) basis.push_back(m.column(p));
  return basis;
}

/// Some x with m x = b, or nullopt when the system is inconsistent.
inline std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if (b.size() != m.rows())
    throw ShapeError("solve: right-hand side has length " + std::to_string(b.size()) + ", matrix has " +
                     std::to_string(m.rows()) + " rows");
  Mat aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
  const auto [r, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, m.cols());
  if (m * x != b) throw Error("solve: internal verification failed");
  return x;
}

inline std::size_t span_rank(std::span<const Vec> vectors) {
  if (vectors.empty()) return 0;
  return rank(Mat::from_columns(vectors, vectors.front().size()));
}

inline bool in_span(std::span<const Vec> basis, const Vec& v) {
  if (basis.empty()) return is_zero(v);
  return solve(Mat::from_columns(basis, v.size()), v).has_value();
}

inline bool spans_contained(std::span<const Vec> inner, std::span<const Vec> outer) {
  if (inner.empty()) return true;
  if (outer.empty()) {
    for (const auto& v : inner)
      if (!is_zero(v)) return false;
    return true;
  }
  std::vector<Vec> all(outer.begin(), outer.end());
  all.insert(all.end(), inner.begin(), inner.end());
  return span_rank(all) == span_rank(outer);
}

inline bool same_span(std::span<const Vec> a, std::span<const Vec> b) {
  return spans_contained(a, b) && spans_contained(b, a);
}

/// dim span(ambient) - dim span(subspace); throws InclusionError unless subspace ⊆ ambient.
inline std::size_t quotient_dimension(std::span<const Vec> subspace, std::span<const Vec> ambient) {
  if (!spans_contained(subspace, ambient))
    throw InclusionError("quotient_dimension: subspace is not contained in the ambient span");
  return span_rank(ambient) - span_rank(subspace);
}

/// Rows spanning the annihilator of span(basis) inside Q^dim: r·v = 0 for v in the span.
inline Mat annihilator(std::span<const Vec> basis, std::size_t dim) {
  if (basis.empty()) return Mat::identity(dim);
  const auto rows = nullspace(Mat::from_columns(basis, dim).transpose());
  return Mat::from_rows(rows, dim);
}

/// Coordinates with respect to a linearly independent list of vectors.
class Coordinates {
 public:
  Coordinates(std::vector<Vec> basis, std::size_t dim) : dim_(dim), basis_(std::move(basis)) {
    const std::size_t k = basis_.size();
    basis_matrix_ = Mat::from_columns(basis_, dim_);
    if (k == 0) return;
    rows_ = rref(basis_matrix_.transpose()).pivots;
    if (rows_.size() != k) throw Error("Coordinates: basis vectors are linearly dependent");
    Mat aug(k, 2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis_matrix_(rows_[i], j);
      aug(i, k + i) = 1;
    }
    inverse_ = rref(std::move(aug)).matrix.block(0, k, k, k);
  }

  std::size_t size() const { return basis_.size(); }
  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const Mat& basis_matrix() const { return basis_matrix_; }

  std::optional<Vec> try_of(const Vec& v) const {
    if (v.size() != dim_) throw ShapeError("Coordinates: vector length mismatch");
    Vec sel(basis_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) sel[i] = v[rows_[i]];
    Vec c = basis_.empty() ? Vec{} : inverse_ * sel;
    if (basis_matrix_ * c != v) return std::nullopt;
    return c;
  }

  Vec of(const Vec& v) const {
    auto c = try_of(v);
    if (!c) throw InclusionError("Coordinates: vector is not in the span");
    return *c;
  }

 private:
  std::size_t dim_;
  std::vector<Vec> basis_;
  Mat basis_matrix_;
  std::vector<std::size_t> rows_;
  Mat inverse_;
};

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Mat::identity(n));
  auto r = rref(std::move(aug));
  if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] >= n)) return std::nullopt;
  return r.matrix.block(0, n, n, n);
}

}  // namespace twistcoh
