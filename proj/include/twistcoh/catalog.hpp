#pragma once

// Small standard algebras and modules used by tests, samples and the CLI.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twistcoh/algebra.hpp"
#include "twistcoh/bimodule.hpp"

namespace twistcoh::catalog {

/// Q itself.
inline FiniteAlgebra scalars() { return FiniteAlgebra({"1"}, {Rat(1)}, {Rat(1)}); }

/// Q^n with orthogonal idempotents p_i.
inline FiniteAlgebra diagonal(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<Rat> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i + 1));
    c[(i * n + i) * n + i] = 1;
  }
  return FiniteAlgebra(std::move(labels), std::move(c), Vec(n, Rat(1)));
}

/// Q[x]/(x^k) with basis 1, x, ..., x^{k-1}.
inline FiniteAlgebra truncated_polynomial(std::size_t k) {
  std::vector<std::string> labels;
  std::vector<Rat> c(k * k * k);
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
    for (std::size_t j = 0; i + j < k; ++j) c[(i * k + j) * k + i + j] = 1;
  }
  return FiniteAlgebra(std::move(labels), std::move(c), unit_vec(k, 0));
}

namespace detail {
inline std::vector<std::pair<std::size_t, std::size_t>> upper_units(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> units;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) units.emplace_back(i, j);
  return units;
}
}  // namespace detail

/// Upper triangular n x n matrices, basis e_ij (i <= j) in row-major order.
inline FiniteAlgebra upper_triangular(std::size_t n) {
  const auto units = detail::upper_units(n);
  const std::size_t d = units.size();
  auto index = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < d; ++k)
      if (units[k] == std::pair{i, j}) return k;
    return d;
  };
  std::vector<std::string> labels;
  for (auto [i, j] : units) labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<Rat> c(d * d * d);
  Vec unit(d);
  for (std::size_t a = 0; a < d; ++a) {
    const auto [i, j] = units[a];
    if (i == j) unit[a] = 1;
    for (std::size_t b = 0; b < d; ++b) {
      const auto [k, l] = units[b];
      if (j == k) c[(a * d + b) * d + index(i, l)] = 1;
    }
  }
  return FiniteAlgebra(std::move(labels), std::move(c), std::move(unit));
}

/// n x k matrices as an upper_triangular(n) - upper_triangular(k) bimodule; basis e_ij row-major.
inline Bimodule rectangular_module(std::size_t n, std::size_t k) {
  const FiniteAlgebra left = upper_triangular(n);
  const FiniteAlgebra right = upper_triangular(k);
  const auto lu = detail::upper_units(n);
  const auto ru = detail::upper_units(k);
  const std::size_t dim = n * k;
  std::vector<Rat> l(left.dim() * dim * dim), r(dim * right.dim() * dim);
  for (std::size_t a = 0; a < lu.size(); ++a) {
    const auto [i, j] = lu[a];
    for (std::size_t col = 0; col < k; ++col)  // e_ij * E_{j,col} = E_{i,col}
      l[(a * dim + j * k + col) * dim + i * k + col] = 1;
  }
  for (std::size_t b = 0; b < ru.size(); ++b) {
    const auto [i, j] = ru[b];
    for (std::size_t row = 0; row < n; ++row)  // E_{row,i} * e_ij = E_{row,j}
      r[((row * k + i) * right.dim() + b) * dim + row * k + j] = 1;
  }
  return Bimodule(left, right, dim, std::move(l), std::move(r));
}

}  // namespace twistcoh::catalog
