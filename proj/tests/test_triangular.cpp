#include <gtest/gtest.h>

#include "generators.hpp"
#include "twistcoh/twistcoh.hpp"

using namespace twistcoh;

namespace {

TriangularAlgebra t2() {
  const auto q = catalog::scalars();
  return build_tri(q, regular_bimodule(q), q);
}

TriangularAlgebra t3() { return build_tri(catalog::upper_triangular(2), catalog::rectangular_module(2, 1), catalog::scalars()); }

std::array<std::size_t, 4> corner_dims(const TriangularAlgebra& t, const Bimodule& x) {
  const auto cd = corner_decompose(t, x);
  return {cd.dim(Corner::aa), cd.dim(Corner::ab), cd.dim(Corner::ba), cd.dim(Corner::bb)};
}

AlgebraHom m_scaling(const TriangularAlgebra& t, Rat c) {
  return lift_hom(t, AlgebraHom::identity(t.a()), c * Mat::identity(t.m_dim()), AlgebraHom::identity(t.b()));
}

}  // namespace

TEST(Tri, T2MatchesUpperTriangularMatrices) {
  const auto t = t2();
  EXPECT_EQ(t.algebra(), catalog::upper_triangular(2));
  EXPECT_EQ(t.algebra().labels(), (std::vector<std::string>{"A:1", "M:0", "B:1"}));
  EXPECT_EQ(t.idempotent(), (Vec{Rat(1), Rat(0), Rat(0)}));
  EXPECT_EQ(t.complement_idempotent(), (Vec{Rat(0), Rat(0), Rat(1)}));
  EXPECT_TRUE(check_triangular(t).ok());
}

TEST(Tri, T3MatchesUpperTriangularMatrices) {
  const auto t = t3();
  EXPECT_EQ(t.dim(), 6u);
  EXPECT_TRUE(check_algebra(t.algebra()).ok());
  // same algebra as 3x3 upper triangular matrices, up to the order of the basis
  const auto u3 = catalog::upper_triangular(3);
  // T3 basis: e11 e12 e22 | e13 e23 | e33 ; u3 basis: e11 e12 e13 e22 e23 e33
  const std::size_t to_u3[] = {0, 1, 3, 2, 4, 5};
  Mat p(6, 6);
  for (std::size_t k = 0; k < 6; ++k) p(to_u3[k], k) = 1;
  EXPECT_EQ(change_basis(u3, p), t.algebra());
}

TEST(Tri, RejectsMismatchedOrZeroCorner) {
  const auto q = catalog::scalars();
  EXPECT_THROW(build_tri(catalog::diagonal(2), regular_bimodule(q), q), ShapeError);
  EXPECT_THROW(build_tri(q, zero_bimodule(q, q), q), Error);
  const auto t = build_tri(q, zero_bimodule(q, q), q, true);
  EXPECT_EQ(t.algebra(), catalog::diagonal(2));
  const Bimodule lazy(q, q, 1, {Rat(0)}, {Rat(0)});
  EXPECT_THROW(build_tri(q, lazy, q), ValidationError);
}

TEST(Tri, BlockEmbeddingsAndProjections) {
  const auto t = t3();
  const Vec x{Rat(1), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6)};
  EXPECT_EQ(t.embed_a(t.a_part(x)) + t.embed_m(t.m_part(x)) + t.embed_b(t.b_part(x)), x);
  EXPECT_EQ(t.projection_to_a()(x), (Vec{Rat(1), Rat(2), Rat(3)}));
  EXPECT_EQ(t.projection_to_b()(x), (Vec{Rat(6)}));
}

TEST(Corners, RegularDualAndDoubleDualOfT2) {
  const auto t = t2();
  const auto reg = regular_bimodule(t.algebra());
  EXPECT_EQ(corner_dims(t, reg), (std::array<std::size_t, 4>{1, 1, 0, 1}));
  EXPECT_EQ(corner_dims(t, dual_bimodule(reg)), (std::array<std::size_t, 4>{1, 0, 1, 1}));
  EXPECT_EQ(corner_dims(t, iterated_dual(reg, 2).module), (std::array<std::size_t, 4>{1, 1, 0, 1}));
}

TEST(Corners, StandardModules) {
  const auto t = t3();
  EXPECT_EQ(corner_dims(t, m_module(t)), (std::array<std::size_t, 4>{0, 2, 0, 0}));
  EXPECT_EQ(corner_dims(t, a_module(t)), (std::array<std::size_t, 4>{3, 0, 0, 0}));
  EXPECT_EQ(corner_dims(t, b_module(t)), (std::array<std::size_t, 4>{0, 0, 0, 1}));
  const auto cd = corner_decompose(t, regular_bimodule(t.algebra()));
  EXPECT_EQ(cd.x_aa().left_algebra(), t.a());
  EXPECT_EQ(cd.x_ab().right_algebra(), t.b());
  EXPECT_TRUE(check_bimodule(cd.x_ab()).ok());
  // extraction after inclusion is the identity on each corner
  for (Corner c : {Corner::aa, Corner::ab, Corner::ba, Corner::bb})
    EXPECT_EQ(cd[c].extraction * cd[c].inclusion, Mat::identity(cd.dim(c)));
}

TEST(Corners, RequireUnitalTModule) {
  const auto t = t2();
  EXPECT_THROW(corner_decompose(t, build_obstruction_module(t)), ValidationError);
  EXPECT_THROW(corner_decompose(t, regular_bimodule(catalog::scalars())), ShapeError);
}

TEST(CornerUnits, InnerAutomorphismMovesTheIdempotent) {
  const auto t = t2();
  const auto conj = inner_automorphism(t.algebra(), Vec{Rat(1), Rat(1), Rat(1)});
  EXPECT_FALSE(fixes_corner_units(t, conj));
  const auto report = check_corner_units(t, HomPair(conj, AlgebraHom::identity(t.algebra())));
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.sigma_fixes_e);
  EXPECT_TRUE(report.tau_fixes_e);
  EXPECT_THROW(restrict_hom(t, conj), CornerViolationError);
}

TEST(CornerUnits, RestrictLiftRoundTrip) {
  const auto t = t3();
  const auto h = m_scaling(t, Rat(2));
  EXPECT_TRUE(fixes_corner_units(t, h));
  const BlockHom b = restrict_hom(t, h);
  EXPECT_EQ(b.on_m, Rat(2) * Mat::identity(2));
  EXPECT_EQ(lift_hom(t, b.on_a, b.on_m, b.on_b), h);
}

TEST(CornerUnits, LiftRejectsIncompatibleMBlock) {
  const auto t = t3();
  // swapping the two coordinates of the column module does not commute with e11
  const Mat swap(2, 2, {Rat(0), Rat(1), Rat(1), Rat(0)});
  EXPECT_THROW(lift_hom(t, AlgebraHom::identity(t.a()), swap, AlgebraHom::identity(t.b())), SemilinearityError);
  EXPECT_FALSE(check_semilinear(t.m(), AlgebraHom::identity(t.a()), swap, AlgebraHom::identity(t.b())).ok());
}

TEST(CornerUnits, SemilinearMaps) {
  const auto t = t3();
  const auto id_a = AlgebraHom::identity(t.a()), id_b = AlgebraHom::identity(t.b());
  const auto maps = semilinear_maps(t, id_a, id_b);
  ASSERT_EQ(maps.size(), 1u);  // End of the column module is the scalars
  EXPECT_EQ(maps[0], Mat::identity(2));
  gen::Rng rng(5);
  for (int k = 0; k < 25; ++k) {
    const auto s = gen::random_tri(rng);
    const auto h = gen::random_corner_hom(rng, s);
    EXPECT_TRUE(fixes_corner_units(s.t, h));
    const auto rp = restrict_pair(s.t, HomPair(h, h));
    EXPECT_EQ(rp.sigma_m, restrict_hom(s.t, h).on_m);
  }
}

TEST(Corners, RandomModulesSplitAsDirectSums) {
  gen::Rng rng(17);
  for (int k = 0; k < 25; ++k) {
    const auto s = gen::random_tri(rng);
    const Bimodule x = gen::random_ab_free_module(rng, s);
    const auto cd = corner_decompose(s.t, x);
    EXPECT_EQ(cd.dim(Corner::ab), 0u);
    EXPECT_EQ(cd.dim(Corner::aa) + cd.dim(Corner::ab) + cd.dim(Corner::ba) + cd.dim(Corner::bb), x.dim());
  }
}
