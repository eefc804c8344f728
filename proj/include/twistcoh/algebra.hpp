#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twistcoh/errors.hpp"
#include "twistcoh/linalg.hpp"
#include "twistcoh/matrix.hpp"
#include "twistcoh/report.hpp"

namespace twistcoh {

/// Finite-dimensional unital associative algebra over Q, given by structure
/// constants e_i e_j = sum_k c[i][j][k] e_k and the coordinates of its unit.
///
/// The value is immutable and shares its representation between copies. It may
/// hold data that violates the algebra axioms; check_algebra() reports those.
class FiniteAlgebra {
 public:
  FiniteAlgebra() : FiniteAlgebra({}, {}, {}) {}

  FiniteAlgebra(std::vector<std::string> labels, std::vector<Rat> structure, Vec unit) {
    auto rep = std::make_shared<Rep>();
    rep->dim = labels.size();
    const std::size_t n = rep->dim;
    if (structure.size() != n * n * n)
      throw ShapeError("structure tensor: expected " + std::to_string(n * n * n) + " entries, got " +
                       std::to_string(structure.size()));
    if (unit.size() != n) throw ShapeError("unit vector has wrong length");
    rep->labels = std::move(labels);
    rep->structure = std::move(structure);
    rep->unit = std::move(unit);
    rep_ = std::move(rep);
  }

  std::size_t dim() const { return rep_->dim; }
  const std::vector<std::string>& labels() const { return rep_->labels; }
  const std::vector<Rat>& structure() const { return rep_->structure; }
  const Vec& unit() const { return rep_->unit; }

  const Rat& c(std::size_t i, std::size_t j, std::size_t k) const {
    const std::size_t n = rep_->dim;
    return rep_->structure[(i * n + j) * n + k];
  }

  Vec basis_vector(std::size_t i) const { return unit_vec(dim(), i); }

  Vec basis_product(std::size_t i, std::size_t j) const {
    Vec v(dim());
    for (std::size_t k = 0; k < dim(); ++k) v[k] = c(i, j, k);
    return v;
  }

  Vec mul(const Vec& x, const Vec& y) const {
    const std::size_t n = dim();
    if (x.size() != n || y.size() != n) throw ShapeError("algebra product: operand length mismatch");
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        const Rat xy = x[i] * y[j];
        for (std::size_t k = 0; k < n; ++k) add_product(out[k], xy, c(i, j, k));
      }
    }
    return out;
  }

  /// Matrix of y -> x y.
  Mat left_mult(const Vec& x) const {
    Mat m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      const Vec col = mul(x, basis_vector(j));
      for (std::size_t k = 0; k < dim(); ++k) m(k, j) = col[k];
    }
    return m;
  }

  /// Matrix of x -> x y.
  Mat right_mult(const Vec& y) const {
    Mat m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      const Vec col = mul(basis_vector(i), y);
      for (std::size_t k = 0; k < dim(); ++k) m(k, i) = col[k];
    }
    return m;
  }

  bool same_object(const FiniteAlgebra& o) const { return rep_ == o.rep_; }

  /// Same structure constants and unit. Labels are cosmetic and ignored here.
  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.rep_ == b.rep_ || (a.rep_->structure == b.rep_->structure && a.rep_->unit == b.rep_->unit);
  }

  /// Equal including labels.
  bool identical(const FiniteAlgebra& o) const { return *this == o && rep_->labels == o.rep_->labels; }

 private:
  struct Rep {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<Rat> structure;
    Vec unit;
  };
  std::shared_ptr<const Rep> rep_;
};

inline ValidationReport check_algebra(const FiniteAlgebra& a) {
  ValidationReport report;
  const std::size_t n = a.dim();
  std::vector<Vec> products;
  products.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) products.push_back(a.basis_product(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec lhs = a.mul(products[i * n + j], a.basis_vector(k));
        const Vec rhs = a.mul(a.basis_vector(i), products[j * n + k]);
        if (lhs != rhs) report.add("associativity", {i, j, k});
      }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec e = a.basis_vector(i);
    if (a.mul(a.unit(), e) != e) report.add("left-unit", {i});
    if (a.mul(e, a.unit()) != e) report.add("right-unit", {i});
  }
  return report;
}

inline void require_valid(const FiniteAlgebra& a, const std::string& what = "algebra") {
  auto report = check_algebra(a);
  if (!report.ok()) throw ValidationError(what + " violates the algebra axioms", std::move(report));
}

/// Reports basis pairs where phi(e_i e_j) != phi(e_i) phi(e_j), and failure of phi(1) = 1.
inline ValidationReport check_hom(const FiniteAlgebra& source, const FiniteAlgebra& target, const Mat& matrix) {
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim())
    throw ShapeError("homomorphism matrix is " + std::to_string(matrix.rows()) + "x" +
                     std::to_string(matrix.cols()) + ", expected " + std::to_string(target.dim()) + "x" +
                     std::to_string(source.dim()));
  ValidationReport report;
  const std::size_t n = source.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec lhs = matrix * source.basis_product(i, j);
      const Vec rhs = target.mul(matrix.column(i), matrix.column(j));
      if (lhs != rhs) report.add("multiplicativity", {i, j});
    }
  if (matrix * source.unit() != target.unit()) report.add("unital", {});
  return report;
}

/// Verified unital algebra homomorphism. Only constructible through make().
class AlgebraHom {
 public:
  static AlgebraHom make(FiniteAlgebra source, FiniteAlgebra target, Mat matrix) {
    auto report = check_hom(source, target, matrix);
    if (!report.ok()) throw ValidationError("matrix is not a unital algebra homomorphism", std::move(report));
    return AlgebraHom(std::move(source), std::move(target), std::move(matrix));
  }

  static AlgebraHom identity(const FiniteAlgebra& a) { return make(a, a, Mat::identity(a.dim())); }

  const FiniteAlgebra& source() const { return source_; }
  const FiniteAlgebra& target() const { return target_; }
  const Mat& matrix() const { return matrix_; }
  bool is_endomorphism_of(const FiniteAlgebra& a) const { return source_ == a && target_ == a; }

  Vec operator()(const Vec& x) const { return matrix_ * x; }
  Vec image_of_basis(std::size_t i) const { return matrix_.column(i); }

  friend bool operator==(const AlgebraHom& a, const AlgebraHom& b) {
    return a.matrix_ == b.matrix_ && a.source_ == b.source_ && a.target_ == b.target_;
  }

 private:
  AlgebraHom(FiniteAlgebra s, FiniteAlgebra t, Mat m)
      : source_(std::move(s)), target_(std::move(t)), matrix_(std::move(m)) {}

  FiniteAlgebra source_;
  FiniteAlgebra target_;
  Mat matrix_;
};

inline AlgebraHom compose(const AlgebraHom& g, const AlgebraHom& f) {
  if (!(f.target() == g.source())) throw ShapeError("compose: target of f is not the source of g");
  return AlgebraHom::make(f.source(), g.target(), g.matrix() * f.matrix());
}

/// The (sigma, tau) pair twisting a derivation; both are endomorphisms of one algebra.
class HomPair {
 public:
  HomPair(AlgebraHom sigma, AlgebraHom tau) : sigma_(std::move(sigma)), tau_(std::move(tau)) {
    if (!(sigma_.source() == sigma_.target()) || !(tau_.source() == tau_.target()) ||
        !(sigma_.source() == tau_.source()))
      throw ShapeError("HomPair: sigma and tau must be endomorphisms of the same algebra");
  }
  static HomPair identity(const FiniteAlgebra& a) {
    return HomPair(AlgebraHom::identity(a), AlgebraHom::identity(a));
  }

  const AlgebraHom& sigma() const { return sigma_; }
  const AlgebraHom& tau() const { return tau_; }
  const FiniteAlgebra& algebra() const { return sigma_.source(); }

 private:
  AlgebraHom sigma_;
  AlgebraHom tau_;
};

inline FiniteAlgebra direct_sum(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  const std::size_t na = a.dim(), nb = b.dim(), n = na + nb;
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("a:" + l);
  for (const auto& l : b.labels()) labels.push_back("b:" + l);
  std::vector<Rat> c(n * n * n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k) c[(i * n + j) * n + k] = a.c(i, j, k);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nb; ++k) c[((na + i) * n + na + j) * n + na + k] = b.c(i, j, k);
  Vec unit = a.unit();
  unit.insert(unit.end(), b.unit().begin(), b.unit().end());
  return FiniteAlgebra(std::move(labels), std::move(c), std::move(unit));
}

inline AlgebraHom hom_direct_sum(const AlgebraHom& ha, const AlgebraHom& hb) {
  const Mat blocks[] = {ha.matrix(), hb.matrix()};
  return AlgebraHom::make(direct_sum(ha.source(), hb.source()), direct_sum(ha.target(), hb.target()),
                          block_diagonal(blocks));
}

/// Inverse of an element, when it exists (two-sided, checked).
inline std::optional<Vec> invert_element(const FiniteAlgebra& a, const Vec& u) {
  auto v = solve(a.left_mult(u), a.unit());
  if (!v || a.mul(*v, u) != a.unit()) return std::nullopt;
  return v;
}

/// x -> u x u^{-1} for an invertible element u.
inline AlgebraHom inner_automorphism(const FiniteAlgebra& a, const Vec& u) {
  const auto inv = invert_element(a, u);
  if (!inv) throw Error("inner_automorphism: element is not invertible");
  return AlgebraHom::make(a, a, a.left_mult(u) * a.right_mult(*inv));
}

/// Re-expresses the algebra in the basis given by the columns of an invertible matrix.
inline FiniteAlgebra change_basis(const FiniteAlgebra& a, const Mat& p) {
  const auto p_inv = inverse(p);
  if (!p_inv || p.rows() != a.dim()) throw ShapeError("change_basis: matrix is not invertible of matching size");
  const std::size_t n = a.dim();
  std::vector<Rat> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec prod = *p_inv * a.mul(p.column(i), p.column(j));
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = prod[k];
    }
  return FiniteAlgebra(a.labels(), std::move(c), *p_inv * a.unit());
}

}  // namespace twistcoh
