#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twistcoh/algebra.hpp"
#include "twistcoh/bimodule.hpp"

namespace twistcoh {

/// Two-sided ideal, stored by the reduced row echelon basis of its span.
class Ideal {
 public:
  /// Throws InclusionError if the span is not closed under multiplication by basis elements on either side.
  static Ideal make(const FiniteAlgebra& ambient, const std::vector<Vec>& generators) {
    const std::size_t n = ambient.dim();
    for (const auto& g : generators)
      if (g.size() != n) throw ShapeError("ideal generator has wrong length");
    auto r = rref(Mat::from_rows(generators, n));
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) basis.push_back(r.matrix.row(i));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if (!in_span(basis, ambient.mul(ambient.basis_vector(i), basis[b])))
          throw InclusionError("not a left ideal: e_" + std::to_string(i) + " * basis[" + std::to_string(b) +
                               "] leaves the span");
        if (!in_span(basis, ambient.mul(basis[b], ambient.basis_vector(i))))
          throw InclusionError("not a right ideal: basis[" + std::to_string(b) + "] * e_" + std::to_string(i) +
                               " leaves the span");
      }
    return Ideal(ambient, std::move(basis), std::move(r.pivots));
  }

  static Ideal zero(const FiniteAlgebra& ambient) { return Ideal(ambient, {}, {}); }

  const FiniteAlgebra& ambient() const { return ambient_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::size_t dim() const { return basis_.size(); }
  bool contains(const Vec& v) const { return in_span(basis_, v); }

 private:
  Ideal(FiniteAlgebra a, std::vector<Vec> basis, std::vector<std::size_t> pivots)
      : ambient_(std::move(a)), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  FiniteAlgebra ambient_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

struct QuotientAlgebra {
  FiniteAlgebra algebra;
  Mat projection;                            // quotient-dim x ambient-dim
  std::vector<std::size_t> representatives;  // ambient basis indices spanning a complement
  FiniteAlgebra source;

  AlgebraHom projection_hom() const { return AlgebraHom::make(source, algebra, projection); }
};

/// A / I on the complement spanned by standard basis vectors outside the ideal's pivot columns.
inline QuotientAlgebra quotient_algebra(const FiniteAlgebra& a, const Ideal& ideal) {
  if (!(ideal.ambient() == a)) throw ShapeError("quotient_algebra: ideal lives in a different algebra");
  const std::size_t n = a.dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : ideal.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> reps;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) reps.push_back(j);
  const std::size_t q = reps.size();

  // v -> v - sum_r v[pivot_r] * basis_r vanishes on pivot columns; read the rest.
  Mat proj(q, n);
  for (std::size_t col = 0; col < n; ++col) {
    Vec v = a.basis_vector(col);
    for (std::size_t r = 0; r < ideal.dim(); ++r) {
      const Rat f = v[ideal.pivots()[r]];
      if (!f.is_zero()) v = v - f * ideal.basis()[r];
    }
    for (std::size_t k = 0; k < q; ++k) proj(k, col) = v[reps[k]];
  }

  std::vector<std::string> labels;
  for (auto j : reps) labels.push_back("[" + a.labels()[j] + "]");
  std::vector<Rat> c(q * q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      const Vec prod = proj * a.basis_product(reps[i], reps[j]);
      for (std::size_t k = 0; k < q; ++k) c[(i * q + j) * q + k] = prod[k];
    }
  FiniteAlgebra quotient(std::move(labels), std::move(c), proj * a.unit());
  // verifies that the projection is a unital homomorphism
  (void)AlgebraHom::make(a, quotient, proj);
  return {std::move(quotient), std::move(proj), std::move(reps), a};
}

/// The endomorphism a + I -> h(a) + I. Throws InvarianceError unless h(I) ⊆ I.
inline AlgebraHom induced_hom(const AlgebraHom& h, const Ideal& ideal) {
  if (!h.is_endomorphism_of(ideal.ambient())) throw ShapeError("induced_hom: h is not an endomorphism of the ideal's algebra");
  for (std::size_t b = 0; b < ideal.dim(); ++b)
    if (!ideal.contains(h(ideal.basis()[b])))
      throw InvarianceError("induced_hom: the homomorphism does not map the ideal into itself (basis[" +
                            std::to_string(b) + "])");
  const auto q = quotient_algebra(ideal.ambient(), ideal);
  const std::size_t d = q.algebra.dim();
  Mat induced(d, d);
  for (std::size_t k = 0; k < d; ++k) induced.set_column(k, q.projection * h(ideal.ambient().basis_vector(q.representatives[k])));
  if (q.projection * h.matrix() != induced * q.projection)
    throw Error("induced_hom: projection does not intertwine h and its induced map");
  return AlgebraHom::make(q.algebra, q.algebra, std::move(induced));
}

}  // namespace twistcoh
