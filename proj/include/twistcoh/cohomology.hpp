#pragma once

// First (sigma, tau)-cohomology: derivations d with d(ab) = d(a) sigma(b) + tau(a) d(b),
// inner ones a -> tau(a) x - x sigma(a), and the quotient H^1 = Z^1 / B^1.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twistcoh/algebra.hpp"
#include "twistcoh/bimodule.hpp"
#include "twistcoh/linalg.hpp"
#include "twistcoh/triangular.hpp"

namespace twistcoh {

struct DerivationContext {
  FiniteAlgebra algebra;
  Bimodule module;
  HomPair pair;
};

using ContextRef = std::shared_ptr<const DerivationContext>;

/// Validates that X is a bimodule over (A, A) and that sigma, tau are endomorphisms of A.
/// Unitality of X is not required: the Leibniz rule does not use it.
inline ContextRef make_context(const FiniteAlgebra& a, const Bimodule& x, const HomPair& p) {
  if (!(x.left_algebra() == a) || !(x.right_algebra() == a))
    throw ShapeError("derivation context: the module is not a bimodule over the algebra");
  if (!(p.algebra() == a)) throw ShapeError("derivation context: sigma and tau are not endomorphisms of the algebra");
  require_valid(a);
  require_valid(x, "coefficient module", false);
  return std::make_shared<const DerivationContext>(DerivationContext{a, x, p});
}

/// Reports basis pairs (i, j) where d(e_i e_j) != d(e_i) sigma(e_j) + tau(e_i) d(e_j).
inline ValidationReport check_leibniz(const DerivationContext& ctx, const Mat& d) {
  const FiniteAlgebra& a = ctx.algebra;
  const Bimodule& x = ctx.module;
  if (d.rows() != x.dim() || d.cols() != a.dim()) throw ShapeError("derivation matrix has wrong shape");
  ValidationReport report;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vec lhs = d * a.basis_product(i, j);
      const Vec rhs = x.act_right(d.column(i), ctx.pair.sigma().image_of_basis(j)) +
                      x.act_left(ctx.pair.tau().image_of_basis(i), d.column(j));
      if (lhs != rhs) report.add("leibniz", {i, j});
    }
  return report;
}

/// Linear map A -> X satisfying the twisted Leibniz rule; column j is d(e_j).
class Derivation {
 public:
  static Derivation make(ContextRef ctx, Mat matrix) {
    auto report = check_leibniz(*ctx, matrix);
    if (!report.ok()) throw ConstraintError("map is not a (sigma,tau)-derivation\n" + report.str());
    return Derivation(std::move(ctx), std::move(matrix));
  }

  static Derivation zero(ContextRef ctx) {
    Mat m(ctx->module.dim(), ctx->algebra.dim());
    return Derivation(std::move(ctx), std::move(m));
  }

  const ContextRef& context() const { return ctx_; }
  const Mat& matrix() const { return matrix_; }
  /// Column-major flattening: d(e_0), d(e_1), ...
  Vec vec() const { return matrix_.flatten_columns(); }
  Vec operator()(const Vec& a) const { return matrix_ * a; }
  bool is_zero() const { return matrix_.is_zero(); }

 private:
  Derivation(ContextRef ctx, Mat m) : ctx_(std::move(ctx)), matrix_(std::move(m)) {}

  ContextRef ctx_;
  Mat matrix_;
};

/// The inner derivation a -> tau(a) x0 - x0 sigma(a).
inline Derivation inner_derivation(const ContextRef& ctx, const Vec& x0) {
  const FiniteAlgebra& a = ctx->algebra;
  const Bimodule& x = ctx->module;
  if (x0.size() != x.dim()) throw ShapeError("inner_derivation: witness has wrong length");
  Mat d(x.dim(), a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    d.set_column(j, x.act_left(ctx->pair.tau().image_of_basis(j), x0) -
                        x.act_right(x0, ctx->pair.sigma().image_of_basis(j)));
  return Derivation::make(ctx, std::move(d));
}

/// Stacked Leibniz constraints. Rows: ordered pairs (i, j) in row-major order, dim X rows each.
/// Unknowns: entries of d in column-major order (all of d(e_0), then d(e_1), ...).
inline Mat leibniz_system(const DerivationContext& ctx) {
  const FiniteAlgebra& a = ctx.algebra;
  const Bimodule& x = ctx.module;
  const std::size_t n = a.dim(), dx = x.dim();
  Mat sys(n * n * dx, n * dx);
  std::vector<Mat> right_sigma, left_tau;
  for (std::size_t j = 0; j < n; ++j) {
    right_sigma.push_back(x.right_matrix(ctx.pair.sigma().image_of_basis(j)));
    left_tau.push_back(x.left_matrix(ctx.pair.tau().image_of_basis(j)));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row0 = (i * n + j) * dx;
      for (std::size_t k = 0; k < n; ++k) {
        const Rat& c = a.c(i, j, k);
        if (c.is_zero()) continue;
        for (std::size_t q = 0; q < dx; ++q) sys(row0 + q, k * dx + q) += c;
      }
      for (std::size_t q = 0; q < dx; ++q)
        for (std::size_t r = 0; r < dx; ++r) {
          sys(row0 + q, i * dx + r) -= right_sigma[j](q, r);
          sys(row0 + q, j * dx + r) -= left_tau[i](q, r);
        }
    }
  return sys;
}

/// Matrix of x0 -> (a -> tau(a) x0 - x0 sigma(a)), flattened column-major.
inline Mat inner_map(const DerivationContext& ctx) {
  const std::size_t n = ctx.algebra.dim(), dx = ctx.module.dim();
  Mat m(n * dx, dx);
  for (std::size_t j = 0; j < n; ++j)
    m.set_block(j * dx, 0,
                ctx.module.left_matrix(ctx.pair.tau().image_of_basis(j)) -
                    ctx.module.right_matrix(ctx.pair.sigma().image_of_basis(j)));
  return m;
}

/// Bases of Z^1 and B^1 and dim H^1 for one (algebra, module, sigma, tau).
struct DerivationSpace {
  ContextRef context;
  std::vector<Derivation> z1;
  std::vector<Derivation> b1;
  /// Elements of Z^1 whose classes form a basis of H^1.
  std::vector<Derivation> complement;
  std::size_t h1_dim = 0;

  std::size_t z1_dim() const { return z1.size(); }
  std::size_t b1_dim() const { return b1.size(); }

  std::vector<Vec> z1_vectors() const { return vectors(z1); }
  std::vector<Vec> b1_vectors() const { return vectors(b1); }

  bool is_inner(const Derivation& d) const { return in_span(b1_vectors(), d.vec()); }

 private:
  static std::vector<Vec> vectors(const std::vector<Derivation>& ds) {
    std::vector<Vec> out;
    for (const auto& d : ds) out.push_back(d.vec());
    return out;
  }
};

using SpaceRef = std::shared_ptr<const DerivationSpace>;

inline DerivationSpace derivation_space(const ContextRef& ctx) {
  DerivationSpace space;
  space.context = ctx;
  const std::size_t n = ctx->algebra.dim(), dx = ctx->module.dim();
  if (dx == 0 || n == 0) return space;

  for (auto& v : nullspace(leibniz_system(*ctx)))
    space.z1.push_back(Derivation::make(ctx, Mat::unflatten_columns(v, dx, n)));
  for (auto& v : image_basis(inner_map(*ctx)))
    space.b1.push_back(Derivation::make(ctx, Mat::unflatten_columns(v, dx, n)));

  const auto z = space.z1_vectors();
  auto spanned = space.b1_vectors();
  space.h1_dim = quotient_dimension(spanned, z);
  std::size_t r = span_rank(spanned);
  for (std::size_t k = 0; k < z.size() && space.complement.size() < space.h1_dim; ++k) {
    spanned.push_back(z[k]);
    const std::size_t r2 = span_rank(spanned);
    if (r2 > r) {
      space.complement.push_back(space.z1[k]);
      r = r2;
    } else {
      spanned.pop_back();
    }
  }
  return space;
}

inline DerivationSpace derivation_space(const FiniteAlgebra& a, const Bimodule& x, const HomPair& p) {
  return derivation_space(make_context(a, x, p));
}

inline std::size_t h1_dim(const FiniteAlgebra& a, const Bimodule& x, const HomPair& p) {
  return derivation_space(a, x, p).h1_dim;
}

// ---------------------------------------------------------------------------
// Triangular algebras: splitting a derivation along the corners

/// A triangular algebra, a T-bimodule X, and a corner-preserving (sigma, tau),
/// together with the corner data every splitting operation needs.
class CornerSetting {
 public:
  CornerSetting(TriangularAlgebra t, const Bimodule& x, HomPair p)
      : t_(std::move(t)),
        corners_(corner_decompose(t_, x)),
        restricted_(restrict_checked(t_, p)),
        ctx_t_(make_context(t_.algebra(), x, p)),
        ctx_a_(make_context(t_.a(), corners_.x_aa(), restricted_.on_a)),
        ctx_b_(make_context(t_.b(), corners_.x_bb(), restricted_.on_b)) {}

  const TriangularAlgebra& tri() const { return t_; }
  const Bimodule& module() const { return ctx_t_->module; }
  const HomPair& pair() const { return ctx_t_->pair; }
  const CornerDecomposition& corners() const { return corners_; }
  const RestrictedPair& restricted() const { return restricted_; }
  const ContextRef& context_t() const { return ctx_t_; }
  const ContextRef& context_a() const { return ctx_a_; }
  const ContextRef& context_b() const { return ctx_b_; }

 private:
  static RestrictedPair restrict_checked(const TriangularAlgebra& t, const HomPair& p) {
    if (!check_corner_units(t, p).ok())
      throw CornerViolationError("sigma and tau must fix 1_A + 0 and 0 + 1_B");
    return restrict_pair(t, p);
  }

  TriangularAlgebra t_;
  CornerDecomposition corners_;
  RestrictedPair restricted_;
  ContextRef ctx_t_, ctx_a_, ctx_b_;
};

/// The M -> X_AB component of a derivation of T, in X_AB coordinates.
struct ThetaMap {
  Mat matrix;  // dim X_AB x dim M
};

/// Checks theta(am) = tau(a)theta(m) + delta_A(a)sigma(m) and theta(mb) = theta(m)sigma(b) + tau(m)delta_B(b).
inline ValidationReport check_theta(const CornerSetting& s, const Derivation& delta_a, const Derivation& delta_b,
                                    const ThetaMap& theta) {
  const TriangularAlgebra& t = s.tri();
  const Bimodule& x = s.module();
  const Bimodule& m = t.m();
  const Mat& inc_ab = s.corners()[Corner::ab].inclusion;
  const Mat& inc_aa = s.corners()[Corner::aa].inclusion;
  const Mat& inc_bb = s.corners()[Corner::bb].inclusion;
  if (theta.matrix.rows() != inc_ab.cols() || theta.matrix.cols() != m.dim())
    throw ShapeError("theta has wrong shape");
  const AlgebraHom& sigma = s.pair().sigma();
  const AlgebraHom& tau = s.pair().tau();
  auto theta_x = [&](const Vec& mv) { return inc_ab * (theta.matrix * mv); };

  ValidationReport report;
  for (std::size_t i = 0; i < t.a_dim(); ++i) {
    const Vec da = inc_aa * delta_a.matrix().column(i);
    for (std::size_t p = 0; p < m.dim(); ++p) {
      const Vec lhs = theta_x(m.left_op(i).column(p));
      const Vec rhs = x.act_left(tau.image_of_basis(i), theta_x(unit_vec(m.dim(), p))) +
                      x.act_right(da, sigma.image_of_basis(t.m_offset() + p));
      if (lhs != rhs) report.add("theta-left", {i, p});
    }
  }
  for (std::size_t j = 0; j < t.b_dim(); ++j) {
    const Vec db = inc_bb * delta_b.matrix().column(j);
    for (std::size_t p = 0; p < m.dim(); ++p) {
      const Vec lhs = theta_x(m.right_op(j).column(p));
      const Vec rhs = x.act_right(theta_x(unit_vec(m.dim(), p)), sigma.image_of_basis(t.b_offset() + j)) +
                      x.act_left(tau.image_of_basis(t.m_offset() + p), db);
      if (lhs != rhs) report.add("theta-right", {p, j});
    }
  }
  return report;
}

struct SplitDerivation {
  Derivation delta_a;  // A -> X_AA
  Derivation delta_b;  // B -> X_BB
  ThetaMap theta;      // M -> X_AB
};

inline void require_context(const Derivation& d, const ContextRef& ctx, const char* what) {
  if (d.context() == ctx) return;
  const auto& c = *d.context();
  if (!(c.algebra == ctx->algebra) || !(c.module == ctx->module) || !(c.pair.sigma() == ctx->pair.sigma()) ||
      !(c.pair.tau() == ctx->pair.tau()))
    throw ShapeError(std::string(what) + ": derivation belongs to a different (algebra, module, sigma, tau)");
}

/// delta_A(a) = 1_A d(a) 1_A, delta_B(b) = 1_B d(b) 1_B, theta(m) = 1_A d(m) 1_B.
inline SplitDerivation split_derivation(const CornerSetting& s, const Derivation& d) {
  require_context(d, s.context_t(), "split_derivation");
  const TriangularAlgebra& t = s.tri();
  const std::size_t dx = s.module().dim();
  const Mat& dm = d.matrix();
  SplitDerivation out{
      Derivation::make(s.context_a(), s.corners()[Corner::aa].extraction * dm.block(0, 0, dx, t.a_dim())),
      Derivation::make(s.context_b(), s.corners()[Corner::bb].extraction * dm.block(0, t.b_offset(), dx, t.b_dim())),
      ThetaMap{s.corners()[Corner::ab].extraction * dm.block(0, t.m_offset(), dx, t.m_dim())}};
  auto report = check_theta(s, out.delta_a, out.delta_b, out.theta);
  if (!report.ok()) throw ConstraintError("split_derivation: theta compatibility failed\n" + report.str());
  return out;
}

/// D([a m; 0 b]) = delta1(a) + delta2(b) + theta(m).
inline Derivation assemble_derivation(const CornerSetting& s, const Derivation& delta1, const Derivation& delta2,
                                      const ThetaMap& theta) {
  require_context(delta1, s.context_a(), "assemble_derivation (delta1)");
  require_context(delta2, s.context_b(), "assemble_derivation (delta2)");
  auto report = check_theta(s, delta1, delta2, theta);
  if (!report.ok()) throw ConstraintError("assemble_derivation: theta violates the compatibility identities\n" + report.str());
  const TriangularAlgebra& t = s.tri();
  Mat d(s.module().dim(), t.dim());
  d.set_block(0, 0, s.corners()[Corner::aa].inclusion * delta1.matrix());
  d.set_block(0, t.m_offset(), s.corners()[Corner::ab].inclusion * theta.matrix);
  d.set_block(0, t.b_offset(), s.corners()[Corner::bb].inclusion * delta2.matrix());
  return Derivation::make(s.context_t(), std::move(d));
}

inline ThetaMap zero_theta(const CornerSetting& s) {
  return ThetaMap{Mat(s.corners().dim(Corner::ab), s.tri().m_dim())};
}

/// Class of a derivation modulo the inner ones: representative plus the space it lives in.
struct CosetClass {
  Derivation representative;
  SpaceRef space;
  bool is_zero() const { return space->is_inner(representative); }
};

struct RhoImage {
  CosetClass class_a;
  CosetClass class_b;
};

struct CornerCohomology {
  SpaceRef a;  // Z^1/B^1 of A into X_AA
  SpaceRef b;  // Z^1/B^1 of B into X_BB
};

inline CornerCohomology corner_cohomology(const CornerSetting& s) {
  return {std::make_shared<const DerivationSpace>(derivation_space(s.context_a())),
          std::make_shared<const DerivationSpace>(derivation_space(s.context_b()))};
}

inline void require_ab_vanishes(const CornerSetting& s) {
  if (s.corners().dim(Corner::ab) != 0)
    throw HypothesisError("hypothesis X_AB = 0 violated (dim X_AB = " + std::to_string(s.corners().dim(Corner::ab)) + ")");
}

/// d -> (delta_A + B^1(A, X_AA), delta_B + B^1(B, X_BB)); defined when X_AB = 0.
inline RhoImage rho(const CornerSetting& s, const CornerCohomology& cc, const Derivation& d) {
  require_ab_vanishes(s);
  auto parts = split_derivation(s, d);
  return {CosetClass{std::move(parts.delta_a), cc.a}, CosetClass{std::move(parts.delta_b), cc.b}};
}

inline RhoImage rho(const TriangularAlgebra& t, const Bimodule& x, const HomPair& p, const Derivation& d) {
  CornerSetting s(t, x, p);
  require_ab_vanishes(s);
  return rho(s, corner_cohomology(s), d);
}

struct MainTheoremReport {
  std::size_t z1_t = 0, b1_t = 0, h1_t = 0;
  std::size_t z1_a = 0, b1_a = 0, h1_a = 0;
  std::size_t z1_b = 0, b1_b = 0, h1_b = 0;
  std::size_t kernel_dim = 0;
  std::size_t rho_rank = 0;
  bool sum_holds = false;
  bool kernel_equals_b1 = false;
  bool rho_surjective = false;
  bool holds() const { return sum_holds && kernel_equals_b1 && rho_surjective; }
};

/// Basis of ker(rho) inside Z^1(T, X), as flattened derivation matrices.
inline std::vector<Vec> rho_kernel(const CornerSetting& s, const CornerCohomology& cc, const DerivationSpace& zt) {
  require_ab_vanishes(s);
  const auto ann_a = annihilator(cc.a->b1_vectors(), s.corners().dim(Corner::aa) * s.tri().a_dim());
  const auto ann_b = annihilator(cc.b->b1_vectors(), s.corners().dim(Corner::bb) * s.tri().b_dim());
  const std::size_t k = zt.z1.size();
  Mat sys(ann_a.rows() + ann_b.rows(), k);
  for (std::size_t c = 0; c < k; ++c) {
    const auto parts = split_derivation(s, zt.z1[c]);
    const Vec ya = ann_a * parts.delta_a.vec();
    const Vec yb = ann_b * parts.delta_b.vec();
    for (std::size_t r = 0; r < ya.size(); ++r) sys(r, c) = ya[r];
    for (std::size_t r = 0; r < yb.size(); ++r) sys(ann_a.rows() + r, c) = yb[r];
  }
  const auto z = zt.z1_vectors();
  std::vector<Vec> kernel;
  for (const auto& coeffs : nullspace(sys)) {
    Vec v(z.front().size());
    for (std::size_t c = 0; c < k; ++c)
      if (!coeffs[c].is_zero()) v = v + coeffs[c] * z[c];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

/// Computes h1(T, X), h1(A, X_AA), h1(B, X_BB) independently and checks
/// h1(T, X) = h1(A, X_AA) + h1(B, X_BB) together with ker(rho) = B^1(T, X).
inline MainTheoremReport verify_main_theorem(const TriangularAlgebra& t, const Bimodule& x, const HomPair& p) {
  if (!check_corner_units(t, p).ok()) throw HypothesisError("hypothesis violated: sigma, tau must fix the corner units");
  CornerSetting s(t, x, p);
  require_ab_vanishes(s);
  const CornerCohomology cc = corner_cohomology(s);
  const DerivationSpace zt = derivation_space(s.context_t());

  MainTheoremReport r;
  r.z1_t = zt.z1_dim(), r.b1_t = zt.b1_dim(), r.h1_t = zt.h1_dim;
  r.z1_a = cc.a->z1_dim(), r.b1_a = cc.a->b1_dim(), r.h1_a = cc.a->h1_dim;
  r.z1_b = cc.b->z1_dim(), r.b1_b = cc.b->b1_dim(), r.h1_b = cc.b->h1_dim;
  r.sum_holds = r.h1_t == r.h1_a + r.h1_b;
  if (zt.z1.empty()) {
    r.kernel_dim = 0;
    r.kernel_equals_b1 = zt.b1.empty();
  } else {
    const auto kernel = rho_kernel(s, cc, zt);
    r.kernel_dim = kernel.size();
    r.kernel_equals_b1 = same_span(kernel, zt.b1_vectors()) && kernel.size() == zt.b1_dim();
  }
  r.rho_rank = r.z1_t - r.kernel_dim;
  r.rho_surjective = r.rho_rank == r.h1_a + r.h1_b;
  return r;
}

}  // namespace twistcoh
