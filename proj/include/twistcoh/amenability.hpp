#pragma once

// Weak amenability through iterated duals, the obstruction module/derivation
// forcing sigma(M) = 0, and amenability relative to a finite family of modules.
// Full amenability quantifies over all bimodules and is not decidable here;
// every report in this header is relative to the modules it was given.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistcoh/cohomology.hpp"
#include "twistcoh/duals.hpp"
#include "twistcoh/ideal.hpp"
#include "twistcoh/triangular.hpp"

namespace twistcoh {

struct WeakAmenabilityReport {
  std::size_t level = 0;       // n
  std::size_t dual_order = 0;  // 2n - 1
  std::size_t h1_t = 0, h1_a = 0, h1_b = 0;
  std::array<std::size_t, 4> corner_dims{};  // of T^(2n-1): AA, AB, BA, BB
  bool identity_holds = false;               // h1_t == h1_a + h1_b
  bool t_vanishes() const { return h1_t == 0; }
  bool corners_vanish() const { return h1_a == 0 && h1_b == 0; }
};

/// h1(T, T^(2n-1)) against h1(A, A^(2n-1)) + h1(B, B^(2n-1)), each computed on its own.
inline WeakAmenabilityReport weak_amenability_check(const TriangularAlgebra& t, const HomPair& p, std::size_t n) {
  if (n == 0) throw Error("weak_amenability_check: level must be at least 1");
  if (!check_corner_units(t, p).ok()) throw HypothesisError("hypothesis violated: sigma, tau must fix the corner units");
  const std::size_t order = 2 * n - 1;
  WeakAmenabilityReport r;
  r.level = n;
  r.dual_order = order;
  const Bimodule x = iterated_dual(regular_bimodule(t.algebra()), order).module;
  const auto cd = corner_decompose(t, x);
  for (Corner c : {Corner::aa, Corner::ab, Corner::ba, Corner::bb}) r.corner_dims[static_cast<int>(c)] = cd.dim(c);
  if (cd.dim(Corner::ab) != 0) throw HypothesisError("odd dual has nonzero AB corner");
  const RestrictedPair rp = restrict_pair(t, p);
  r.h1_t = h1_dim(t.algebra(), x, p);
  r.h1_a = h1_dim(t.a(), iterated_dual(regular_bimodule(t.a()), order).module, rp.on_a);
  r.h1_b = h1_dim(t.b(), iterated_dual(regular_bimodule(t.b()), order).module, rp.on_b);
  r.identity_holds = r.h1_t == r.h1_a + r.h1_b;
  return r;
}

/// X = [A* M*; 0 B*] with [a m; 0 b].[f h; 0 g] = [0 bh; 0 0] and [f h; 0 g].[a m; 0 b] = [0 ha; 0 0].
/// Coordinates: dual bases of the A-, M- and B-blocks of T. The module is not unital.
inline Bimodule build_obstruction_module(const TriangularAlgebra& t) {
  const FiniteAlgebra& T = t.algebra();
  const std::size_t n = t.dim(), mo = t.m_offset();
  const Bimodule mdual = dual_bimodule(t.m());  // B-A-bimodule M*
  std::vector<Mat> lops(n, Mat(n, n)), rops(n, Mat(n, n));
  for (std::size_t j = 0; j < t.b_dim(); ++j) lops[t.b_offset() + j].set_block(mo, mo, mdual.left_op(j));
  for (std::size_t i = 0; i < t.a_dim(); ++i) rops[i].set_block(mo, mo, mdual.right_op(i));
  return Bimodule::from_operators(T, T, n, lops, rops);
}

struct ObstructionDerivation {
  Bimodule module;       // the obstruction module X
  Bimodule target;       // X*, identified with A + M + B coordinates
  Mat identification;    // A + M + B coordinates -> X* coordinates
  Mat sigma_m;           // M-block of sigma
  Derivation derivation; // D([a m; 0 b]) = [0 sigma(m)^; 0 0]
};

inline ObstructionDerivation build_obstruction_derivation(const TriangularAlgebra& t, const AlgebraHom& sigma) {
  if (!sigma.is_endomorphism_of(t.algebra())) throw ShapeError("obstruction: sigma is not an endomorphism of T");
  if (!fixes_corner_units(t, sigma)) throw CornerViolationError("obstruction: sigma must fix the corner units");
  const BlockHom blocks = restrict_hom(t, sigma);
  Bimodule x = build_obstruction_module(t);
  Bimodule xs = dual_bimodule(x);
  // X* = A** + M** + B**; the dual of the dual basis is the original basis, so the identification is the identity.
  Mat ident = Mat::identity(t.dim());
  Mat d(t.dim(), t.dim());
  d.set_block(t.m_offset(), t.m_offset(), blocks.on_m);
  auto ctx = make_context(t.algebra(), xs, HomPair(sigma, sigma));
  return {std::move(x), std::move(xs), std::move(ident), blocks.on_m, Derivation::make(ctx, std::move(d))};
}

struct ObstructionVerdict {
  bool inner_by_solve = false;  // a witness [F H; 0 G] exists
  bool sigma_m_zero = false;    // sigma vanishes on the M-block
  std::size_t sigma_m_rank = 0; // dim sigma(M)
  bool agree() const { return inner_by_solve == sigma_m_zero; }
  std::optional<Vec> witness;
};

/// Decides innerness of D twice: by solving for a witness, and by checking sigma(M) = 0.
inline ObstructionVerdict obstruction_inner_test(const ObstructionDerivation& od) {
  const auto& ctx = od.derivation.context();
  ObstructionVerdict v;
  v.witness = solve(inner_map(*ctx), od.derivation.vec());
  v.inner_by_solve = v.witness.has_value();
  v.sigma_m_rank = rank(od.sigma_m);
  v.sigma_m_zero = od.sigma_m.is_zero();
  return v;
}

struct RelativeAmenabilityReport {
  std::vector<std::size_t> h1;  // h1(A, X_k*) per supplied module
  bool amenable_relative = true;
  static constexpr const char* scope = "relative to the supplied family of bimodules";
};

/// h1(A, X*) for each X in the family; amenable relative to the family iff all vanish.
inline RelativeAmenabilityReport relative_amenability_check(const FiniteAlgebra& a, const HomPair& p,
                                                            const std::vector<Bimodule>& modules) {
  RelativeAmenabilityReport r;
  for (const auto& x : modules) {
    const std::size_t h = h1_dim(a, dual_bimodule(x), p);
    r.h1.push_back(h);
    r.amenable_relative = r.amenable_relative && h == 0;
  }
  return r;
}

struct TransferReport {
  std::vector<std::size_t> h1_target;  // h1(B, Y*) with the induced pair
  std::vector<std::size_t> h1_source;  // h1(A, pullback of Y*) with the original pair
  std::vector<std::size_t> flagged;    // indices with h1_target > h1_source
  bool consistent = true;              // no flags, and source-vanishing implies target-vanishing
};

/// Transfer along a surjective phi: A -> B with phi sigma_A = sigma_B phi and phi tau_A = tau_B phi.
inline TransferReport transfer_along_surjection(const AlgebraHom& phi, const HomPair& pa, const HomPair& pb,
                                                const std::vector<Bimodule>& modules) {
  if (!(pa.algebra() == phi.source()) || !(pb.algebra() == phi.target()))
    throw ShapeError("transfer: pairs do not act on the source and target of phi");
  if (rank(phi.matrix()) != phi.target().dim()) throw Error("transfer: phi is not surjective");
  if (phi.matrix() * pa.sigma().matrix() != pb.sigma().matrix() * phi.matrix() ||
      phi.matrix() * pa.tau().matrix() != pb.tau().matrix() * phi.matrix())
    throw InvarianceError("transfer: phi does not intertwine the pairs");
  TransferReport r;
  bool all_source_vanish = true, all_target_vanish = true;
  for (std::size_t k = 0; k < modules.size(); ++k) {
    const Bimodule ydual = dual_bimodule(modules[k]);
    r.h1_target.push_back(h1_dim(phi.target(), ydual, pb));
    r.h1_source.push_back(h1_dim(phi.source(), pullback(ydual, phi, phi), pa));
    if (r.h1_target.back() > r.h1_source.back()) r.flagged.push_back(k);
    all_source_vanish = all_source_vanish && r.h1_source.back() == 0;
    all_target_vanish = all_target_vanish && r.h1_target.back() == 0;
  }
  r.consistent = r.flagged.empty() && (!all_source_vanish || all_target_vanish);
  return r;
}

struct QuotientTransferReport {
  QuotientAlgebra quotient;
  AlgebraHom sigma_hat, tau_hat;
  TransferReport transfer;
};

/// Builds A/I with the induced pair and compares h1 for each quotient-bimodule and its pullback to A.
inline QuotientTransferReport transfer_along_quotient(const FiniteAlgebra& a, const Ideal& ideal, const HomPair& p,
                                                      const std::vector<Bimodule>& quotient_modules) {
  if (!(p.algebra() == a)) throw ShapeError("transfer_along_quotient: pair does not act on the algebra");
  auto q = quotient_algebra(a, ideal);
  AlgebraHom sh = induced_hom(p.sigma(), ideal);
  AlgebraHom th = induced_hom(p.tau(), ideal);
  auto tr = transfer_along_surjection(q.projection_hom(), p, HomPair(sh, th), quotient_modules);
  return {std::move(q), std::move(sh), std::move(th), std::move(tr)};
}

}  // namespace twistcoh
