#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twistcoh/algebra.hpp"
#include "twistcoh/bimodule.hpp"
#include "twistcoh/linalg.hpp"

namespace twistcoh {

/// Tri(A, M, B): block upper triangular algebra [a m; 0 b].
/// Basis order is the A-block, then the M-block, then the B-block.
class TriangularAlgebra {
 public:
  const FiniteAlgebra& algebra() const { return algebra_; }
  const FiniteAlgebra& a() const { return a_; }
  const Bimodule& m() const { return m_; }
  const FiniteAlgebra& b() const { return b_; }

  std::size_t a_dim() const { return a_.dim(); }
  std::size_t m_dim() const { return m_.dim(); }
  std::size_t b_dim() const { return b_.dim(); }
  std::size_t dim() const { return algebra_.dim(); }
  std::size_t m_offset() const { return a_dim(); }
  std::size_t b_offset() const { return a_dim() + m_dim(); }

  Vec embed_a(const Vec& x) const { return embed(x, 0, a_dim()); }
  Vec embed_m(const Vec& x) const { return embed(x, m_offset(), m_dim()); }
  Vec embed_b(const Vec& x) const { return embed(x, b_offset(), b_dim()); }
  Vec a_part(const Vec& t) const { return Vec(t.begin(), t.begin() + a_dim()); }
  Vec m_part(const Vec& t) const { return Vec(t.begin() + m_offset(), t.begin() + b_offset()); }
  Vec b_part(const Vec& t) const { return Vec(t.begin() + b_offset(), t.end()); }

  /// e = 1_A ⊕ 0
  Vec idempotent() const { return embed_a(a_.unit()); }
  /// 1 - e = 0 ⊕ 1_B
  Vec complement_idempotent() const { return embed_b(b_.unit()); }

  /// [a m; 0 b] -> a, a unital homomorphism onto A.
  AlgebraHom projection_to_a() const {
    Mat p(a_dim(), dim());
    p.set_block(0, 0, Mat::identity(a_dim()));
    return AlgebraHom::make(algebra_, a_, std::move(p));
  }
  /// [a m; 0 b] -> b
  AlgebraHom projection_to_b() const {
    Mat p(b_dim(), dim());
    p.set_block(0, b_offset(), Mat::identity(b_dim()));
    return AlgebraHom::make(algebra_, b_, std::move(p));
  }

 private:
  TriangularAlgebra() = default;
  friend TriangularAlgebra build_tri(const FiniteAlgebra&, const Bimodule&, const FiniteAlgebra&, bool);

  Vec embed(const Vec& x, std::size_t offset, std::size_t len) const {
    if (x.size() != len) throw ShapeError("embed: block element has wrong length");
    Vec t(dim());
    for (std::size_t i = 0; i < len; ++i) t[offset + i] = x[i];
    return t;
  }

  FiniteAlgebra algebra_, a_, b_;
  Bimodule m_;
};

/// Checks e^2 = e, (1-e) T e = 0 and e T (1-e) = M-block.
inline ValidationReport check_triangular(const TriangularAlgebra& t) {
  ValidationReport report;
  const FiniteAlgebra& T = t.algebra();
  const Vec e = t.idempotent();
  const Vec f = t.complement_idempotent();
  if (T.mul(e, e) != e) report.add("idempotent", {});
  std::vector<Vec> upper;
  for (std::size_t i = 0; i < T.dim(); ++i) {
    const Vec x = T.basis_vector(i);
    if (!is_zero(T.mul(T.mul(f, x), e))) report.add("lower-corner-nonzero", {i});
    upper.push_back(T.mul(T.mul(e, x), f));
  }
  std::vector<Vec> m_block;
  for (std::size_t p = 0; p < t.m_dim(); ++p) m_block.push_back(T.basis_vector(t.m_offset() + p));
  if (t.m_dim() > 0 ? !same_span(upper, m_block) : span_rank(upper) != 0) report.add("upper-corner", {});
  return report;
}

/// Builds Tri(A, M, B). Rejects M = 0 unless allow_zero_corner is set.
inline TriangularAlgebra build_tri(const FiniteAlgebra& a, const Bimodule& m, const FiniteAlgebra& b,
                                   bool allow_zero_corner = false) {
  require_valid(a, "algebra A");
  require_valid(b, "algebra B");
  if (!(m.left_algebra() == a) || !(m.right_algebra() == b))
    throw ShapeError("build_tri: M must be an A-B-bimodule");
  require_valid(m, "bimodule M");
  if (m.dim() == 0 && !allow_zero_corner) throw Error("build_tri: the corner bimodule M must be nonzero");

  const std::size_t na = a.dim(), nm = m.dim(), nb = b.dim(), n = na + nm + nb;
  const std::size_t mo = na, bo = na + nm;
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("A:" + l);
  for (std::size_t p = 0; p < nm; ++p) labels.push_back("M:" + std::to_string(p));
  for (const auto& l : b.labels()) labels.push_back("B:" + l);

  std::vector<Rat> c(n * n * n);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> Rat& { return c[(i * n + j) * n + k]; };
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k) at(i, j, k) = a.c(i, j, k);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nb; ++k) at(bo + i, bo + j, bo + k) = b.c(i, j, k);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t p = 0; p < nm; ++p)
      for (std::size_t q = 0; q < nm; ++q) at(i, mo + p, mo + q) = m.L(i, p, q);
  for (std::size_t p = 0; p < nm; ++p)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t q = 0; q < nm; ++q) at(mo + p, bo + j, mo + q) = m.R(p, j, q);

  Vec unit(n);
  for (std::size_t i = 0; i < na; ++i) unit[i] = a.unit()[i];
  for (std::size_t i = 0; i < nb; ++i) unit[bo + i] = b.unit()[i];

  TriangularAlgebra t;
  t.algebra_ = FiniteAlgebra(std::move(labels), std::move(c), std::move(unit));
  t.a_ = a;
  t.m_ = m;
  t.b_ = b;
  require_valid(t.algebra_, "triangular algebra");
  auto report = check_triangular(t);
  if (!report.ok()) throw ValidationError("triangular algebra idempotent conditions fail", std::move(report));
  return t;
}

// ---------------------------------------------------------------------------
// Corner decomposition of a T-bimodule

enum class Corner { aa = 0, ab = 1, ba = 2, bb = 3 };

inline const char* corner_name(Corner c) {
  static const char* names[] = {"AA", "AB", "BA", "BB"};
  return names[static_cast<int>(c)];
}

struct CornerPiece {
  Bimodule module;  // over (A or B, A or B)
  Mat inclusion;    // dim X x k: corner coordinates -> X
  Mat extraction;   // k x dim X: x -> coordinates of u x v for the corner's idempotents u, v
};

class CornerDecomposition {
 public:
  explicit CornerDecomposition(std::array<CornerPiece, 4> pieces) : pieces_(std::move(pieces)) {}
  const CornerPiece& operator[](Corner c) const { return pieces_[static_cast<int>(c)]; }
  const Bimodule& x_aa() const { return (*this)[Corner::aa].module; }
  const Bimodule& x_ab() const { return (*this)[Corner::ab].module; }
  const Bimodule& x_ba() const { return (*this)[Corner::ba].module; }
  const Bimodule& x_bb() const { return (*this)[Corner::bb].module; }
  std::size_t dim(Corner c) const { return (*this)[c].module.dim(); }

 private:
  std::array<CornerPiece, 4> pieces_;
};

/// Splits a unital T-bimodule X into 1_A X 1_A, 1_A X 1_B, 1_B X 1_A and 1_B X 1_B.
inline CornerDecomposition corner_decompose(const TriangularAlgebra& t, const Bimodule& x) {
  if (!(x.left_algebra() == t.algebra()) || !(x.right_algebra() == t.algebra()))
    throw ShapeError("corner_decompose: X must be a T-bimodule");
  require_valid(x, "T-bimodule X");
  const std::size_t n = x.dim();
  const Vec e = t.idempotent(), f = t.complement_idempotent();
  const Mat le = x.left_matrix(e), lf = x.left_matrix(f);
  const Mat re = x.right_matrix(e), rf = x.right_matrix(f);

  auto piece = [&](const Mat& left, const Mat& right, bool left_is_a, bool right_is_a) {
    const Mat proj = left * right;
    Coordinates coords(image_basis(proj), n);
    const std::size_t k = coords.size();
    Mat extraction(k, n);
    for (std::size_t p = 0; p < n; ++p) extraction.set_column(p, coords.of(proj.column(p)));
    const FiniteAlgebra& lalg = left_is_a ? t.a() : t.b();
    const FiniteAlgebra& ralg = right_is_a ? t.a() : t.b();
    auto lift = [&](bool is_a, std::size_t i) {
      return is_a ? t.embed_a(t.a().basis_vector(i)) : t.embed_b(t.b().basis_vector(i));
    };
    std::vector<Mat> lops, rops;
    for (std::size_t i = 0; i < lalg.dim(); ++i) {
      const Mat op = x.left_matrix(lift(left_is_a, i));
      Mat m(k, k);
      for (std::size_t c = 0; c < k; ++c)
        m.set_column(c, coords.of(op * coords.basis()[c]));
      lops.push_back(std::move(m));
    }
    for (std::size_t j = 0; j < ralg.dim(); ++j) {
      const Mat op = x.right_matrix(lift(right_is_a, j));
      Mat m(k, k);
      for (std::size_t c = 0; c < k; ++c)
        m.set_column(c, coords.of(op * coords.basis()[c]));
      rops.push_back(std::move(m));
    }
    return CornerPiece{Bimodule::from_operators(lalg, ralg, k, lops, rops), coords.basis_matrix(),
                       std::move(extraction)};
  };

  CornerDecomposition cd({piece(le, re, true, true), piece(le, rf, true, false), piece(lf, re, false, true),
                          piece(lf, rf, false, false)});
  std::vector<Vec> all;
  for (Corner c : {Corner::aa, Corner::ab, Corner::ba, Corner::bb}) {
    require_valid(cd[c].module, std::string("corner ") + corner_name(c));
    for (auto& v : cd[c].inclusion.columns()) all.push_back(std::move(v));
  }
  if (span_rank(all) != n || all.size() != n) throw Error("corner_decompose: corners do not form a direct sum");
  return cd;
}

// ---------------------------------------------------------------------------
// Homomorphisms preserving the corner units

struct CornerUnitReport {
  bool sigma_fixes_e = false, sigma_fixes_f = false;
  bool tau_fixes_e = false, tau_fixes_f = false;
  bool ok() const { return sigma_fixes_e && sigma_fixes_f && tau_fixes_e && tau_fixes_f; }
};

inline bool fixes_corner_units(const TriangularAlgebra& t, const AlgebraHom& h) {
  return h(t.idempotent()) == t.idempotent() && h(t.complement_idempotent()) == t.complement_idempotent();
}

inline CornerUnitReport check_corner_units(const TriangularAlgebra& t, const HomPair& p) {
  if (!(p.algebra() == t.algebra())) throw ShapeError("check_corner_units: pair does not act on T");
  const Vec e = t.idempotent(), f = t.complement_idempotent();
  return {p.sigma()(e) == e, p.sigma()(f) == f, p.tau()(e) == e, p.tau()(f) == f};
}

struct BlockHom {
  AlgebraHom on_a;
  Mat on_m;
  AlgebraHom on_b;
};

/// Reports pairs where h_m(a m) != h_a(a) h_m(m) or h_m(m b) != h_m(m) h_b(b).
inline ValidationReport check_semilinear(const Bimodule& m, const AlgebraHom& h_a, const Mat& h_m,
                                         const AlgebraHom& h_b) {
  if (h_m.rows() != m.dim() || h_m.cols() != m.dim()) throw ShapeError("M-block map has wrong shape");
  ValidationReport report;
  for (std::size_t i = 0; i < m.left_algebra().dim(); ++i) {
    const Mat lhs = h_m * m.left_op(i);
    const Mat rhs = m.left_matrix(h_a.image_of_basis(i)) * h_m;
    for (std::size_t p = 0; p < m.dim(); ++p)
      if (lhs.column(p) != rhs.column(p)) report.add("left-semilinearity", {i, p});
  }
  for (std::size_t j = 0; j < m.right_algebra().dim(); ++j) {
    const Mat lhs = h_m * m.right_op(j);
    const Mat rhs = m.right_matrix(h_b.image_of_basis(j)) * h_m;
    for (std::size_t p = 0; p < m.dim(); ++p)
      if (lhs.column(p) != rhs.column(p)) report.add("right-semilinearity", {p, j});
  }
  return report;
}

/// Block form [h(a) h(m); 0 h(b)] of a homomorphism of T fixing both corner units.
inline BlockHom restrict_hom(const TriangularAlgebra& t, const AlgebraHom& h) {
  if (!h.is_endomorphism_of(t.algebra())) throw ShapeError("restrict_hom: h is not an endomorphism of T");
  const Mat& mat = h.matrix();
  const std::size_t offs[] = {0, t.m_offset(), t.b_offset(), t.dim()};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (r == c) continue;
      if (!mat.block(offs[r], offs[c], offs[r + 1] - offs[r], offs[c + 1] - offs[c]).is_zero())
        throw CornerViolationError("restrict_hom: h has a nonzero off-diagonal block (" + std::to_string(r) + "," +
                                   std::to_string(c) + "); it does not preserve the corner units");
    }
  BlockHom out{AlgebraHom::make(t.a(), t.a(), mat.block(0, 0, t.a_dim(), t.a_dim())),
               mat.block(t.m_offset(), t.m_offset(), t.m_dim(), t.m_dim()),
               AlgebraHom::make(t.b(), t.b(), mat.block(t.b_offset(), t.b_offset(), t.b_dim(), t.b_dim()))};
  auto report = check_semilinear(t.m(), out.on_a, out.on_m, out.on_b);
  if (!report.ok()) throw CornerViolationError("restrict_hom: M-block is not semilinear\n" + report.str());
  return out;
}

/// Inverse of restrict_hom.
inline AlgebraHom lift_hom(const TriangularAlgebra& t, const AlgebraHom& h_a, const Mat& h_m, const AlgebraHom& h_b) {
  if (!h_a.is_endomorphism_of(t.a()) || !h_b.is_endomorphism_of(t.b()))
    throw ShapeError("lift_hom: h_a and h_b must be endomorphisms of A and B");
  auto report = check_semilinear(t.m(), h_a, h_m, h_b);
  if (!report.ok()) throw SemilinearityError("lift_hom: M-block map is not compatible with the actions\n" + report.str());
  const Mat blocks[] = {h_a.matrix(), h_m, h_b.matrix()};
  return AlgebraHom::make(t.algebra(), t.algebra(), block_diagonal(blocks));
}

/// Basis of all M-block maps compatible with the given diagonal endomorphisms.
inline std::vector<Mat> semilinear_maps(const TriangularAlgebra& t, const AlgebraHom& h_a, const AlgebraHom& h_b) {
  const Bimodule& m = t.m();
  const std::size_t d = m.dim();
  std::vector<Vec> residual_columns;
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) {
      Mat s(d, d);
      s(r, c) = 1;
      Vec res;
      for (std::size_t i = 0; i < t.a_dim(); ++i) {
        const Vec part = (s * m.left_op(i) - m.left_matrix(h_a.image_of_basis(i)) * s).flatten_columns();
        res.insert(res.end(), part.begin(), part.end());
      }
      for (std::size_t j = 0; j < t.b_dim(); ++j) {
        const Vec part = (s * m.right_op(j) - m.right_matrix(h_b.image_of_basis(j)) * s).flatten_columns();
        res.insert(res.end(), part.begin(), part.end());
      }
      residual_columns.push_back(std::move(res));
    }
  std::vector<Mat> out;
  if (d == 0) return out;
  const std::size_t rows = residual_columns.front().size();
  for (const auto& v : nullspace(Mat::from_columns(residual_columns, rows)))
    out.push_back(Mat::unflatten_columns(v, d, d));
  return out;
}

struct RestrictedPair {
  HomPair on_a;
  HomPair on_b;
  Mat sigma_m, tau_m;
};

inline RestrictedPair restrict_pair(const TriangularAlgebra& t, const HomPair& p) {
  const BlockHom s = restrict_hom(t, p.sigma());
  const BlockHom u = restrict_hom(t, p.tau());
  return {HomPair(s.on_a, u.on_a), HomPair(s.on_b, u.on_b), s.on_m, u.on_m};
}

// ---------------------------------------------------------------------------
// Standard T-bimodules

/// M with [a m; 0 b] . m' = a m' and m' . [a m; 0 b] = m' b.
inline Bimodule m_module(const TriangularAlgebra& t) {
  return pullback(t.m(), t.projection_to_a(), t.projection_to_b());
}

/// A with T acting through its A-block on both sides.
inline Bimodule a_module(const TriangularAlgebra& t) {
  const AlgebraHom pa = t.projection_to_a();
  return pullback(regular_bimodule(t.a()), pa, pa);
}

/// B with T acting through its B-block on both sides.
inline Bimodule b_module(const TriangularAlgebra& t) {
  const AlgebraHom pb = t.projection_to_b();
  return pullback(regular_bimodule(t.b()), pb, pb);
}

}  // namespace twistcoh
