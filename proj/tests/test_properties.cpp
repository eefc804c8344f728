#include <gtest/gtest.h>

#include <string>

#include "generators.hpp"
#include "oracle.hpp"

using namespace twistcoh;

namespace {

constexpr int cases = 60;

Bimodule random_module(gen::Rng& rng, const gen::AlgebraSample& s) {
  const FiniteAlgebra& a = s.algebra;
  auto piece = [&]() -> Bimodule {
    switch (rng.index(3)) {
      case 0: return regular_bimodule(a);
      case 1: return dual_bimodule(regular_bimodule(a));
      default:
        return gen::character_module(a, s.characters[rng.index(s.characters.size())], a,
                                     s.characters[rng.index(s.characters.size())]);
    }
  };
  Bimodule x = piece();
  if (x.dim() < 4 && rng.coin()) x = direct_sum(x, piece());
  return x;
}

HomPair random_pair(gen::Rng& rng, const gen::AlgebraSample& s) {
  return HomPair(s.endomorphisms[rng.index(s.endomorphisms.size())],
                 s.endomorphisms[rng.index(s.endomorphisms.size())]);
}

}  // namespace

TEST(Properties, DimensionsMatchOracle) {
  gen::Rng rng(101);
  for (int k = 0; k < cases; ++k) {
    const auto s = gen::random_algebra(rng);
    const Bimodule x = random_module(rng, s);
    const HomPair p = random_pair(rng, s);
    const auto space = derivation_space(s.algebra, x, p);
    const auto o = oracle::derivation_dims(s.algebra, x, p.sigma().matrix(), p.tau().matrix());
    EXPECT_EQ(space.z1_dim(), o.z1) << s.name << " case " << k;
    EXPECT_EQ(space.b1_dim(), o.b1) << s.name << " case " << k;
    EXPECT_EQ(space.h1_dim, o.h1) << s.name << " case " << k;
    EXPECT_EQ(space.complement.size(), space.h1_dim);
    for (const auto& d : space.z1) EXPECT_TRUE(check_leibniz(*space.context, d.matrix()).ok());
  }
}

TEST(Properties, InnerDerivationsAreCocycles) {
  gen::Rng rng(102);
  for (int k = 0; k < cases; ++k) {
    const auto s = gen::random_algebra(rng);
    const Bimodule x = random_module(rng, s);
    const auto ctx = make_context(s.algebra, x, random_pair(rng, s));
    Vec x0(x.dim());
    for (auto& v : x0) v = rng.small_rat();
    const Derivation d = inner_derivation(ctx, x0);
    EXPECT_TRUE(derivation_space(ctx).is_inner(d));
  }
}

TEST(Properties, H1IsBasisIndependent) {
  gen::Rng rng(103);
  for (int k = 0; k < cases; ++k) {
    const auto s = gen::random_algebra(rng);
    const Bimodule x = random_module(rng, s);
    const HomPair p = random_pair(rng, s);
    const std::size_t h = h1_dim(s.algebra, x, p);
    const Bimodule y = change_basis(x, gen::random_invertible(rng, x.dim()));
    EXPECT_EQ(h1_dim(s.algebra, y, p), h);
    if (s.algebra.dim() > 1) {
      const Mat q = gen::random_invertible(rng, s.algebra.dim());
      const auto t = gen::disguise(s, q);
      const Bimodule z = pullback(x, AlgebraHom::make(t.algebra, s.algebra, q), AlgebraHom::make(t.algebra, s.algebra, q));
      const Mat qi = *inverse(q);
      const HomPair pt(AlgebraHom::make(t.algebra, t.algebra, qi * p.sigma().matrix() * q),
                       AlgebraHom::make(t.algebra, t.algebra, qi * p.tau().matrix() * q));
      EXPECT_EQ(h1_dim(t.algebra, z, pt), h) << s.name;
    }
  }
}

TEST(Properties, DecompositionOnABFreeModules) {
  gen::Rng rng(104);
  for (int k = 0; k < cases; ++k) {
    const auto s = gen::random_tri(rng);
    const HomPair p = gen::random_corner_pair(rng, s);
    const Bimodule x = gen::random_ab_free_module(rng, s);
    const auto r = verify_main_theorem(s.t, x, p);
    EXPECT_TRUE(r.sum_holds) << "case " << k;
    EXPECT_TRUE(r.kernel_equals_b1) << "case " << k;
    EXPECT_EQ(r.kernel_dim, r.b1_t);
  }
}

TEST(Properties, SplitAssembleModuloInner) {
  gen::Rng rng(105);
  for (int k = 0; k < cases / 2; ++k) {
    const auto s = gen::random_tri(rng);
    const HomPair p = gen::random_corner_pair(rng, s);
    const Bimodule x = gen::random_ab_free_module(rng, s, 6);
    const CornerSetting cs(s.t, x, p);
    const auto space = derivation_space(cs.context_t());
    for (const auto& d : space.z1) {
      const auto parts = split_derivation(cs, d);
      const Derivation back = assemble_derivation(cs, parts.delta_a, parts.delta_b, parts.theta);
      EXPECT_TRUE(space.is_inner(Derivation::make(cs.context_t(), back.matrix() - d.matrix())));
      const auto again = split_derivation(cs, back);
      EXPECT_EQ(again.delta_a.matrix(), parts.delta_a.matrix());
      EXPECT_EQ(again.delta_b.matrix(), parts.delta_b.matrix());
      EXPECT_EQ(again.theta.matrix, parts.theta.matrix);
    }
  }
}

TEST(Properties, ObstructionVerdictMatchesSigmaOnM) {
  gen::Rng rng(106);
  for (int k = 0; k < cases; ++k) {
    const auto s = gen::random_tri(rng);
    const AlgebraHom sigma = gen::random_corner_hom(rng, s);
    const auto od = build_obstruction_derivation(s.t, sigma);
    EXPECT_TRUE(check_leibniz(*od.derivation.context(), od.derivation.matrix()).ok());
    const auto v = obstruction_inner_test(od);
    const bool m_zero = restrict_hom(s.t, sigma).on_m.is_zero();
    EXPECT_EQ(v.inner_by_solve, m_zero) << "case " << k;
    EXPECT_EQ(v.sigma_m_zero, m_zero);
    EXPECT_EQ(v.sigma_m_rank, rank(restrict_hom(s.t, sigma).on_m));
  }
}

TEST(Properties, WeakAmenabilityIdentity) {
  gen::Rng rng(107);
  for (int k = 0; k < cases / 2; ++k) {
    const auto s = gen::random_tri(rng, 2, 2);
    const HomPair p = gen::random_corner_pair(rng, s);
    const auto w = weak_amenability_check(s.t, p, 1);
    EXPECT_TRUE(w.identity_holds) << "case " << k;
    EXPECT_EQ(w.corner_dims[1], 0u);
    EXPECT_EQ(w.corner_dims[2], s.t.m_dim());
  }
}

TEST(Properties, DualSwapsOffDiagonalCorners) {
  gen::Rng rng(108);
  for (int k = 0; k < cases; ++k) {
    const auto s = gen::random_tri(rng);
    Bimodule x = regular_bimodule(s.t.algebra());
    if (rng.coin()) x = change_basis(x, gen::random_invertible(rng, x.dim()));
    const auto c = corner_decompose(s.t, x);
    const auto d = corner_decompose(s.t, dual_bimodule(x));
    EXPECT_EQ(d.dim(Corner::aa), c.dim(Corner::aa));
    EXPECT_EQ(d.dim(Corner::ab), c.dim(Corner::ba));
    EXPECT_EQ(d.dim(Corner::ba), c.dim(Corner::ab));
    EXPECT_EQ(d.dim(Corner::bb), c.dim(Corner::bb));
  }
}

TEST(Properties, DoubleDualIsIdentity) {
  gen::Rng rng(109);
  for (int k = 0; k < cases; ++k) {
    const auto s = gen::random_algebra(rng);
    const Bimodule x = random_module(rng, s);
    EXPECT_EQ(dual_bimodule(dual_bimodule(x)), x);
    EXPECT_NO_THROW(double_dual_isomorphism(x));
    EXPECT_TRUE(check_bimodule(dual_bimodule(x)).ok());
  }
}

TEST(Properties, RankNullityOnRandomMatrices) {
  gen::Rng rng(110);
  for (int k = 0; k < cases; ++k) {
    const std::size_t rows = 1 + rng.index(6), cols = 1 + rng.index(6);
    const Mat m = gen::random_matrix(rng, rows, cols, 50, rng.coin());
    const auto ns = nullspace(m);
    EXPECT_EQ(rank(m) + ns.size(), cols);
    for (const auto& v : ns) EXPECT_TRUE(is_zero(m * v));
  }
}
