#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twistcoh/algebra.hpp"

namespace twistcoh {

/// Finite-dimensional bimodule: left module over one algebra, right module over another.
///
/// left_action  L[i][p][q]: e_i . f_p = sum_q L[i][p][q] f_q
/// right_action R[p][j][q]: f_p . e_j = sum_q R[p][j][q] f_q
class Bimodule {
 public:
  Bimodule() : Bimodule(FiniteAlgebra(), FiniteAlgebra(), 0, {}, {}) {}

  Bimodule(FiniteAlgebra left, FiniteAlgebra right, std::size_t dim, std::vector<Rat> left_action,
           std::vector<Rat> right_action) {
    const std::size_t nl = left.dim(), nr = right.dim();
    if (left_action.size() != nl * dim * dim)
      throw ShapeError("left action tensor: expected " + std::to_string(nl * dim * dim) + " entries");
    if (right_action.size() != dim * nr * dim)
      throw ShapeError("right action tensor: expected " + std::to_string(dim * nr * dim) + " entries");
    auto rep = std::make_shared<Rep>();
    rep->left = std::move(left);
    rep->right = std::move(right);
    rep->dim = dim;
    rep->l = std::move(left_action);
    rep->r = std::move(right_action);
    for (std::size_t i = 0; i < nl; ++i) {
      Mat m(dim, dim);
      for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = 0; q < dim; ++q) m(q, p) = rep->l[(i * dim + p) * dim + q];
      rep->left_ops.push_back(std::move(m));
    }
    for (std::size_t j = 0; j < nr; ++j) {
      Mat m(dim, dim);
      for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = 0; q < dim; ++q) m(q, p) = rep->r[(p * nr + j) * dim + q];
      rep->right_ops.push_back(std::move(m));
    }
    rep_ = std::move(rep);
  }

  /// Builds the action tensors from per-basis-element operator matrices (column p = image of f_p).
  static Bimodule from_operators(FiniteAlgebra left, FiniteAlgebra right, std::size_t dim,
                                 const std::vector<Mat>& left_ops, const std::vector<Mat>& right_ops) {
    if (left_ops.size() != left.dim() || right_ops.size() != right.dim())
      throw ShapeError("from_operators: operator count does not match algebra dimension");
    const std::size_t nr = right.dim();
    std::vector<Rat> l(left.dim() * dim * dim), r(dim * nr * dim);
    for (std::size_t i = 0; i < left_ops.size(); ++i)
      for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = 0; q < dim; ++q) l[(i * dim + p) * dim + q] = left_ops[i](q, p);
    for (std::size_t j = 0; j < nr; ++j)
      for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = 0; q < dim; ++q) r[(p * nr + j) * dim + q] = right_ops[j](q, p);
    return Bimodule(std::move(left), std::move(right), dim, std::move(l), std::move(r));
  }

  const FiniteAlgebra& left_algebra() const { return rep_->left; }
  const FiniteAlgebra& right_algebra() const { return rep_->right; }
  std::size_t dim() const { return rep_->dim; }
  const std::vector<Rat>& left_action() const { return rep_->l; }
  const std::vector<Rat>& right_action() const { return rep_->r; }

  const Rat& L(std::size_t i, std::size_t p, std::size_t q) const { return rep_->l[(i * dim() + p) * dim() + q]; }
  const Rat& R(std::size_t p, std::size_t j, std::size_t q) const {
    return rep_->r[(p * right_algebra().dim() + j) * dim() + q];
  }

  /// Operator x -> e_i . x
  const Mat& left_op(std::size_t i) const { return rep_->left_ops.at(i); }
  /// Operator x -> x . e_j
  const Mat& right_op(std::size_t j) const { return rep_->right_ops.at(j); }

  /// Operator x -> a . x
  Mat left_matrix(const Vec& a) const {
    if (a.size() != left_algebra().dim()) throw ShapeError("left action: algebra element has wrong length");
    Mat m(dim(), dim());
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero()) m = m + a[i] * left_op(i);
    return m;
  }

  /// Operator x -> x . b
  Mat right_matrix(const Vec& b) const {
    if (b.size() != right_algebra().dim()) throw ShapeError("right action: algebra element has wrong length");
    Mat m(dim(), dim());
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) m = m + b[j] * right_op(j);
    return m;
  }

  Vec act_left(const Vec& a, const Vec& x) const {
    if (x.size() != dim()) throw ShapeError("left action: module element has wrong length");
    Vec out(dim());
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero()) out = out + a[i] * (left_op(i) * x);
    return out;
  }

  Vec act_right(const Vec& x, const Vec& b) const {
    if (x.size() != dim()) throw ShapeError("right action: module element has wrong length");
    Vec out(dim());
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out = out + b[j] * (right_op(j) * x);
    return out;
  }

  friend bool operator==(const Bimodule& a, const Bimodule& b) {
    if (a.rep_ == b.rep_) return true;
    return a.dim() == b.dim() && a.rep_->l == b.rep_->l && a.rep_->r == b.rep_->r &&
           a.left_algebra() == b.left_algebra() && a.right_algebra() == b.right_algebra();
  }

 private:
  struct Rep {
    FiniteAlgebra left, right;
    std::size_t dim = 0;
    std::vector<Rat> l, r;
    std::vector<Mat> left_ops, right_ops;
  };
  std::shared_ptr<const Rep> rep_;
};

/// Checks left/right associativity, compatibility and (optionally) unitality.
inline ValidationReport check_bimodule(const Bimodule& x, bool require_unital = true) {
  ValidationReport report;
  const FiniteAlgebra& P = x.left_algebra();
  const FiniteAlgebra& Q = x.right_algebra();
  const std::size_t np = P.dim(), nq = Q.dim();
  // (e_i e_j) . f = e_i . (e_j . f), as operators
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < np; ++j) {
      const Mat lhs = x.left_matrix(P.basis_product(i, j));
      const Mat rhs = x.left_op(i) * x.left_op(j);
      if (lhs == rhs) continue;
      for (std::size_t p = 0; p < x.dim(); ++p)
        if (lhs.column(p) != rhs.column(p)) report.add("left-associativity", {i, j, p});
    }
  // f . (e_i e_j) = (f . e_i) . e_j
  for (std::size_t i = 0; i < nq; ++i)
    for (std::size_t j = 0; j < nq; ++j) {
      const Mat lhs = x.right_matrix(Q.basis_product(i, j));
      const Mat rhs = x.right_op(j) * x.right_op(i);
      if (lhs == rhs) continue;
      for (std::size_t p = 0; p < x.dim(); ++p)
        if (lhs.column(p) != rhs.column(p)) report.add("right-associativity", {p, i, j});
    }
  // (e_i . f) . e_j = e_i . (f . e_j)
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j) {
      const Mat lhs = x.right_op(j) * x.left_op(i);
      const Mat rhs = x.left_op(i) * x.right_op(j);
      if (lhs == rhs) continue;
      for (std::size_t p = 0; p < x.dim(); ++p)
        if (lhs.column(p) != rhs.column(p)) report.add("compatibility", {i, p, j});
    }
  if (require_unital) {
    const Mat id = Mat::identity(x.dim());
    const Mat lu = x.left_matrix(P.unit());
    const Mat ru = x.right_matrix(Q.unit());
    for (std::size_t p = 0; p < x.dim(); ++p) {
      if (lu.column(p) != id.column(p)) report.add("left-unit", {p});
      if (ru.column(p) != id.column(p)) report.add("right-unit", {p});
    }
  }
  return report;
}

inline void require_valid(const Bimodule& x, const std::string& what = "bimodule", bool require_unital = true) {
  auto report = check_bimodule(x, require_unital);
  if (!report.ok()) throw ValidationError(what + " violates the bimodule axioms", std::move(report));
}

/// The algebra as a bimodule over itself via multiplication.
inline Bimodule regular_bimodule(const FiniteAlgebra& a) {
  std::vector<Mat> lops, rops;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    lops.push_back(a.left_mult(a.basis_vector(i)));
    rops.push_back(a.right_mult(a.basis_vector(i)));
  }
  return Bimodule::from_operators(a, a, a.dim(), lops, rops);
}

inline Bimodule zero_bimodule(const FiniteAlgebra& left, const FiniteAlgebra& right) {
  return Bimodule(left, right, 0, {}, {});
}

inline Bimodule direct_sum(const Bimodule& x, const Bimodule& y) {
  if (!(x.left_algebra() == y.left_algebra()) || !(x.right_algebra() == y.right_algebra()))
    throw ShapeError("direct sum of bimodules over different algebras");
  std::vector<Mat> lops, rops;
  for (std::size_t i = 0; i < x.left_algebra().dim(); ++i) {
    const Mat blocks[] = {x.left_op(i), y.left_op(i)};
    lops.push_back(block_diagonal(blocks));
  }
  for (std::size_t j = 0; j < x.right_algebra().dim(); ++j) {
    const Mat blocks[] = {x.right_op(j), y.right_op(j)};
    rops.push_back(block_diagonal(blocks));
  }
  return Bimodule::from_operators(x.left_algebra(), x.right_algebra(), x.dim() + y.dim(), lops, rops);
}

/// Restriction of scalars: r . x = left(r) . x and x . s = x . right(s).
inline Bimodule pullback(const Bimodule& x, const AlgebraHom& left, const AlgebraHom& right) {
  if (!(left.target() == x.left_algebra()) || !(right.target() == x.right_algebra()))
    throw ShapeError("pullback: homomorphism targets do not match the module's algebras");
  std::vector<Mat> lops, rops;
  for (std::size_t i = 0; i < left.source().dim(); ++i) lops.push_back(x.left_matrix(left.image_of_basis(i)));
  for (std::size_t j = 0; j < right.source().dim(); ++j) rops.push_back(x.right_matrix(right.image_of_basis(j)));
  return Bimodule::from_operators(left.source(), right.source(), x.dim(), lops, rops);
}

/// Same module expressed in the basis given by the columns of an invertible matrix.
inline Bimodule change_basis(const Bimodule& x, const Mat& p) {
  const auto p_inv = inverse(p);
  if (!p_inv || p.rows() != x.dim()) throw ShapeError("change_basis: matrix is not invertible of matching size");
  std::vector<Mat> lops, rops;
  for (std::size_t i = 0; i < x.left_algebra().dim(); ++i) lops.push_back(*p_inv * x.left_op(i) * p);
  for (std::size_t j = 0; j < x.right_algebra().dim(); ++j) rops.push_back(*p_inv * x.right_op(j) * p);
  return Bimodule::from_operators(x.left_algebra(), x.right_algebra(), x.dim(), lops, rops);
}

}  // namespace twistcoh
