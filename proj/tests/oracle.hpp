#pragma once

// Brute-force reference for derivation-space dimensions. Shares no linear
// algebra with the library: it reads raw structure constants and action
// tensors, orders unknowns row-major, clears denominators and ranks with
// fraction-free Bareiss elimination over the integers. B^1 is obtained as
// dim X minus the dimension of the twisted centralizer.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "twistcoh/algebra.hpp"
#include "twistcoh/bimodule.hpp"

namespace oracle {

using QMatrix = std::vector<std::vector<mpq_class>>;

inline std::size_t integer_rank(const QMatrix& rows_in, std::size_t cols) {
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : rows_in) {
    mpz_class l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<mpz_class> r(cols);
    bool nonzero = false;
    for (std::size_t c = 0; c < cols; ++c) {
      r[c] = row[c].get_num() * (l / row[c].get_den());
      nonzero = nonzero || r[c] != 0;
    }
    if (nonzero) a.push_back(std::move(r));
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = a[rank][c] * a[r][k] - a[r][c] * a[rank][k];
        mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

inline mpq_class q(const twistcoh::Rat& r) { return r.raw(); }

struct Dims {
  std::size_t z1 = 0, b1 = 0, h1 = 0;
  bool operator==(const Dims&) const = default;
};

/// Dimensions of Z^1, B^1 and H^1 for a bimodule X over A and endomorphisms sigma, tau (matrices).
inline Dims derivation_dims(const twistcoh::FiniteAlgebra& a, const twistcoh::Bimodule& x,
                            const twistcoh::Mat& sigma, const twistcoh::Mat& tau) {
  const std::size_t n = a.dim(), d = x.dim();
  if (n == 0 || d == 0) return {};
  // L(u)[q][p] = coefficient of f_q in u . f_p for u = sum u_i e_i; likewise R.
  auto left_of = [&](std::size_t j, const twistcoh::Mat& h) {
    QMatrix m(d, std::vector<mpq_class>(d));
    for (std::size_t i = 0; i < n; ++i) {
      const mpq_class u = q(h(i, j));
      if (u == 0) continue;
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t r = 0; r < d; ++r) m[r][p] += u * q(x.L(i, p, r));
    }
    return m;
  };
  auto right_of = [&](std::size_t j, const twistcoh::Mat& h) {
    QMatrix m(d, std::vector<mpq_class>(d));
    for (std::size_t i = 0; i < n; ++i) {
      const mpq_class u = q(h(i, j));
      if (u == 0) continue;
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t r = 0; r < d; ++r) m[r][p] += u * q(x.R(p, i, r));
    }
    return m;
  };
  std::vector<QMatrix> tau_left, sigma_right;
  for (std::size_t j = 0; j < n; ++j) {
    tau_left.push_back(left_of(j, tau));
    sigma_right.push_back(right_of(j, sigma));
  }

  // unknown D[r][j] = r-th coordinate of d(e_j), stored at r * n + j
  const std::size_t unknowns = d * n;
  QMatrix rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < d; ++r) {
        std::vector<mpq_class> row(unknowns);
        for (std::size_t k = 0; k < n; ++k) row[r * n + k] += q(a.c(i, j, k));
        for (std::size_t p = 0; p < d; ++p) {
          row[p * n + i] -= sigma_right[j][r][p];
          row[p * n + j] -= tau_left[i][r][p];
        }
        rows.push_back(std::move(row));
      }
  Dims out;
  out.z1 = unknowns - integer_rank(rows, unknowns);

  // centralizer: tau(e_i) x - x sigma(e_i) = 0 for every i
  QMatrix cent;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < d; ++r) {
      std::vector<mpq_class> row(d);
      for (std::size_t p = 0; p < d; ++p) row[p] = tau_left[i][r][p] - sigma_right[i][r][p];
      cent.push_back(std::move(row));
    }
  out.b1 = integer_rank(cent, d);
  out.h1 = out.z1 - out.b1;
  return out;
}

}  // namespace oracle
