#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "twistcoh/bimodule.hpp"

namespace twistcoh {

/// X* for a P-Q-bimodule X, as a Q-P-bimodule: (b.f)(x) = f(x.b), (f.a)(x) = f(a.x).
/// Coordinates are those of the dual basis.
inline Bimodule dual_bimodule(const Bimodule& x) {
  const std::size_t d = x.dim();
  const std::size_t np = x.left_algebra().dim(), nq = x.right_algebra().dim();
  std::vector<Rat> l(nq * d * d), r(d * np * d);
  for (std::size_t j = 0; j < nq; ++j)
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) l[(j * d + p) * d + q] = x.R(q, j, p);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t q = 0; q < d; ++q) r[(p * np + i) * d + q] = x.L(i, q, p);
  return Bimodule(x.right_algebra(), x.left_algebra(), d, std::move(l), std::move(r));
}

struct DualTower {
  Bimodule base;
  std::size_t level = 0;
  Bimodule module;  // base^(level)
};

inline DualTower iterated_dual(const Bimodule& x, std::size_t n) {
  Bimodule cur = x;
  for (std::size_t k = 0; k < n; ++k) cur = dual_bimodule(cur);
  return {x, n, std::move(cur)};
}

/// phi(a.x) = a.phi(x) and phi(x.b) = phi(x).b for all basis elements.
inline bool intertwines(const Bimodule& x, const Bimodule& y, const Mat& phi) {
  if (!(x.left_algebra() == y.left_algebra()) || !(x.right_algebra() == y.right_algebra())) return false;
  if (phi.rows() != y.dim() || phi.cols() != x.dim()) return false;
  for (std::size_t i = 0; i < x.left_algebra().dim(); ++i)
    if (phi * x.left_op(i) != y.left_op(i) * phi) return false;
  for (std::size_t j = 0; j < x.right_algebra().dim(); ++j)
    if (phi * x.right_op(j) != y.right_op(j) * phi) return false;
  return true;
}

/// Canonical map X -> X** (evaluation), in dual-of-dual-basis coordinates.
/// Throws if it fails to be a bimodule isomorphism.
inline Mat double_dual_isomorphism(const Bimodule& x) {
  // evaluation sends f_p to the functional g -> g(f_p), which is the p-th double-dual basis vector
  Mat phi = Mat::identity(x.dim());
  if (!intertwines(x, dual_bimodule(dual_bimodule(x)), phi))
    throw Error("double_dual_isomorphism: evaluation map does not intertwine the actions");
  return phi;
}

}  // namespace twistcoh
