// Acceptance runner. Prints one line per criterion: "criterion N: PASS|FAIL <details>".
// Exit status is 0 only if every requested criterion passes.

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "generators.hpp"
#include "oracle.hpp"
#include "twistcoh/spec_io.hpp"
#include "twistcoh/twistcoh.hpp"

using namespace twistcoh;

namespace {

// Pinned parameters. Every check is an exact equality; the tolerances are zero.
constexpr std::size_t allowed_mismatches = 0;
constexpr std::uint64_t seed_decomposition = 20240611;
constexpr std::uint64_t seed_weak = 20240612;
constexpr std::uint64_t seed_matrices = 20240613;
constexpr int decomposition_instances = 100;
constexpr int weak_instances = 50;
constexpr int matrix_instances = 1000;
constexpr long matrix_entry_bound = 1000000;
constexpr std::size_t matrix_max_side = 8;
constexpr int determinism_repeats = 2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// The fixed catalog

struct CatalogTri {
  std::string name;
  TriangularAlgebra t;
};

std::vector<CatalogTri> catalog_tris() {
  return {{"Q+Q", build_tri(catalog::scalars(), zero_bimodule(catalog::scalars(), catalog::scalars()), catalog::scalars(), true)},
          {"T2", build_tri(catalog::scalars(), regular_bimodule(catalog::scalars()), catalog::scalars())},
          {"T3", build_tri(catalog::upper_triangular(2), catalog::rectangular_module(2, 1), catalog::scalars())}};
}

AlgebraHom m_scaling(const TriangularAlgebra& t, const Rat& c) {
  return lift_hom(t, AlgebraHom::identity(t.a()), c * Mat::identity(t.m_dim()), AlgebraHom::identity(t.b()));
}

/// sigma = tau = id plus the M-scaling automorphisms, as (name, pair).
std::vector<std::pair<std::string, HomPair>> catalog_pairs(const TriangularAlgebra& t) {
  std::vector<std::pair<std::string, HomPair>> out;
  out.emplace_back("id,id", HomPair::identity(t.algebra()));
  if (t.m_dim() == 0) return out;
  const AlgebraHom s2 = m_scaling(t, Rat(2)), s3 = m_scaling(t, Rat(-1, 3)), id = AlgebraHom::identity(t.algebra());
  out.emplace_back("s2,id", HomPair(s2, id));
  out.emplace_back("id,s2", HomPair(id, s2));
  out.emplace_back("s2,s2", HomPair(s2, s2));
  out.emplace_back("s2,s-1/3", HomPair(s2, s3));
  return out;
}

std::string pair_label(const std::string& tri, const std::string& module, const std::string& pair) {
  return tri + "/" + module + "/" + pair;
}

// ---------------------------------------------------------------------------
// 1. oracle equivalence

Outcome criterion1() {
  std::size_t instances = 0, mismatches = 0;
  std::ostringstream bad;
  auto compare = [&](const std::string& label, const FiniteAlgebra& a, const Bimodule& x, const HomPair& p) {
    ++instances;
    const auto s = derivation_space(a, x, p);
    const auto o = oracle::derivation_dims(a, x, p.sigma().matrix(), p.tau().matrix());
    if (s.z1_dim() != o.z1 || s.b1_dim() != o.b1 || s.h1_dim != o.h1) {
      ++mismatches;
      bad << " " << label;
    }
  };
  // the corner algebras on their own
  for (const auto& [name, a] : std::vector<std::pair<std::string, FiniteAlgebra>>{
           {"Q", catalog::scalars()}, {"T2", catalog::upper_triangular(2)}}) {
    compare(name + "/regular/id,id", a, regular_bimodule(a), HomPair::identity(a));
    compare(name + "/dual/id,id", a, dual_bimodule(regular_bimodule(a)), HomPair::identity(a));
  }
  for (const auto& c : catalog_tris()) {
    std::vector<std::string> modules = {"regular", "dual", "a-corner", "b-corner"};
    if (c.t.m_dim() > 0) modules.push_back("m-corner");
    for (const auto& name : modules)
      for (std::size_t level : {0u, 1u}) {
        if (name == "dual" && level == 0) continue;
        const Bimodule x = io::standard_module(c.t, name, level).module;
        for (const auto& [pname, p] : catalog_pairs(c.t))
          compare(pair_label(c.name, name + (level ? "*" : ""), pname), c.t.algebra(), x, p);
      }
  }
  std::ostringstream os;
  os << instances << " instances, " << mismatches << " mismatches" << bad.str();
  return {mismatches <= allowed_mismatches, os.str()};
}

// ---------------------------------------------------------------------------
// 2. decomposition on random instances with X_AB = 0

Outcome criterion2() {
  gen::Rng rng(seed_decomposition);
  int sum_failures = 0, kernel_failures = 0, oracle_failures = 0;
  for (int k = 0; k < decomposition_instances; ++k) {
    const auto s = gen::random_tri(rng);
    const HomPair p = gen::random_corner_pair(rng, s);
    const Bimodule x = gen::random_ab_free_module(rng, s);
    const auto r = verify_main_theorem(s.t, x, p);
    if (!r.sum_holds) ++sum_failures;
    if (!r.kernel_equals_b1) ++kernel_failures;
    const auto o = oracle::derivation_dims(s.t.algebra(), x, p.sigma().matrix(), p.tau().matrix());
    if (o.h1 != r.h1_t || o.z1 != r.z1_t) ++oracle_failures;
  }
  std::ostringstream os;
  os << decomposition_instances << " instances, sum failures " << sum_failures << ", ker rho != B1 " << kernel_failures
     << ", oracle disagreements " << oracle_failures;
  return {sum_failures + kernel_failures + oracle_failures == 0, os.str()};
}

// ---------------------------------------------------------------------------
// 3. h1(Tri(A, M, B), M) = 0

Outcome criterion3() {
  std::size_t instances = 0, nonzero = 0;
  std::ostringstream bad;
  for (const auto& c : catalog_tris()) {
    if (c.t.m_dim() == 0) continue;
    const Bimodule x = m_module(c.t);
    for (const auto& [pname, p] : catalog_pairs(c.t)) {
      ++instances;
      const auto s = derivation_space(c.t.algebra(), x, p);
      const auto o = oracle::derivation_dims(c.t.algebra(), x, p.sigma().matrix(), p.tau().matrix());
      if (s.h1_dim != 0 || o.h1 != 0) {
        ++nonzero;
        bad << " " << c.name << "/" << pname << ":h1=" << s.h1_dim << "(oracle " << o.h1 << ")";
      }
    }
  }
  std::ostringstream os;
  os << instances << " instances, " << nonzero << " with h1 != 0" << bad.str();
  return {nonzero == 0, os.str()};
}

// ---------------------------------------------------------------------------
// 4. h1(T, T*) = h1(A, A*) + h1(B, B*) and the corner tables

Outcome criterion4() {
  std::size_t instances = 0, failures = 0, table_failures = 0;
  std::ostringstream bad;
  auto check = [&](const std::string& label, const TriangularAlgebra& t, const HomPair& p) {
    ++instances;
    const auto w = weak_amenability_check(t, p, 1);
    const std::size_t h_t = h1_dim(t.algebra(), dual_bimodule(regular_bimodule(t.algebra())), p);
    if (!w.identity_holds || h_t != w.h1_t) {
      ++failures;
      bad << " " << label;
    }
  };
  for (const auto& c : catalog_tris())
    for (const auto& [pname, p] : catalog_pairs(c.t)) check(c.name + "/" + pname, c.t, p);
  gen::Rng rng(seed_weak);
  for (int k = 0; k < weak_instances; ++k) {
    const auto s = gen::random_tri(rng);
    check("random#" + std::to_string(k), s.t, gen::random_corner_pair(rng, s));
  }
  for (const auto& c : catalog_tris()) {
    const Bimodule reg = regular_bimodule(c.t.algebra());
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto even = corner_decompose(c.t, iterated_dual(reg, 2 * n).module);
      const auto odd = corner_decompose(c.t, iterated_dual(reg, 2 * n - 1).module);
      const Bimodule m_even = iterated_dual(c.t.m(), 2 * n).module;
      const bool ok = even.dim(Corner::ab) == c.t.m_dim() && even.dim(Corner::ba) == 0 &&
                      (c.t.m_dim() == 0 || even.x_ab() == m_even) && odd.dim(Corner::ab) == 0 &&
                      odd.dim(Corner::ba) == c.t.m_dim();
      if (!ok) {
        ++table_failures;
        bad << " table:" << c.name << ":n=" << n;
      }
    }
  }
  std::ostringstream os;
  os << instances << " identity instances, " << failures << " failures; corner tables n=1,2: " << table_failures
     << " failures" << bad.str();
  return {failures + table_failures == 0, os.str()};
}

// ---------------------------------------------------------------------------
// 5. obstruction derivation and its inner test

/// Corner-preserving endomorphisms of a catalog algebra: diagonal parts from the
/// corner samples combined with every basis semilinear map, their sum and zero.
std::vector<std::pair<std::string, AlgebraHom>> catalog_sigmas(const TriangularAlgebra& t) {
  auto endos = [](const FiniteAlgebra& a) {
    std::vector<std::pair<std::string, AlgebraHom>> out{{"id", AlgebraHom::identity(a)}};
    if (a.dim() == 3) {
      out.emplace_back("conj", inner_automorphism(a, Vec{Rat(1), Rat(1), Rat(1)}));
      out.emplace_back("chi1", AlgebraHom::make(a, a, gen::character_endomorphism(a, Vec{Rat(1), Rat(0), Rat(0)})));
      out.emplace_back("chi2", AlgebraHom::make(a, a, gen::character_endomorphism(a, Vec{Rat(0), Rat(0), Rat(1)})));
    }
    return out;
  };
  std::vector<std::pair<std::string, AlgebraHom>> out;
  for (const auto& [na, ha] : endos(t.a()))
    for (const auto& [nb, hb] : endos(t.b())) {
      const auto maps = semilinear_maps(t, ha, hb);
      std::vector<std::pair<std::string, Mat>> blocks{{"0", Mat(t.m_dim(), t.m_dim())}};
      Mat sum(t.m_dim(), t.m_dim());
      for (std::size_t k = 0; k < maps.size(); ++k) {
        blocks.emplace_back("m" + std::to_string(k), maps[k]);
        blocks.emplace_back("-2m" + std::to_string(k), Rat(-2) * maps[k]);
        sum = sum + maps[k];
      }
      if (maps.size() > 1) blocks.emplace_back("sum", sum);
      for (const auto& [nm, hm] : blocks) out.emplace_back(na + "," + nm + "," + nb, lift_hom(t, ha, hm, hb));
    }
  return out;
}

Outcome criterion5() {
  std::size_t instances = 0, leibniz_failures = 0, verdict_failures = 0, inner = 0;
  std::ostringstream bad;
  for (const auto& c : catalog_tris()) {
    for (const auto& [name, sigma] : catalog_sigmas(c.t)) {
      ++instances;
      const auto od = build_obstruction_derivation(c.t, sigma);
      if (!check_leibniz(*od.derivation.context(), od.derivation.matrix()).ok()) {
        ++leibniz_failures;
        bad << " leibniz:" << c.name << "/" << name;
      }
      const auto v = obstruction_inner_test(od);
      const bool m_zero = restrict_hom(c.t, sigma).on_m.is_zero();
      if (v.inner_by_solve != m_zero || !v.agree()) {
        ++verdict_failures;
        bad << " verdict:" << c.name << "/" << name;
      }
      if (v.inner_by_solve) ++inner;
    }
  }
  std::ostringstream os;
  os << instances << " sigmas (" << inner << " inner, " << instances - inner << " not inner), Leibniz failures "
     << leibniz_failures << ", verdict failures " << verdict_failures << bad.str();
  return {leibniz_failures + verdict_failures == 0, os.str()};
}

// ---------------------------------------------------------------------------
// 6. known values

Outcome criterion6() {
  std::ostringstream os;
  bool ok = true;
  for (std::size_t n : {2u, 3u}) {
    const FiniteAlgebra a = catalog::upper_triangular(n);
    const auto s = derivation_space(a, regular_bimodule(a), HomPair::identity(a));
    const auto o = oracle::derivation_dims(a, regular_bimodule(a), Mat::identity(a.dim()), Mat::identity(a.dim()));
    ok = ok && s.h1_dim == 0 && o.h1 == 0 && s.z1_dim() == o.z1 && s.b1_dim() == o.b1;
    os << "h1(T" << n << ",T" << n << ")=" << s.h1_dim << " (oracle " << o.h1 << ", z1 " << s.z1_dim() << ") ";
  }
  return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 7. linear algebra substrate

Outcome criterion7() {
  gen::Rng rng(seed_matrices);
  int rank_nullity = 0, kernel = 0, solve_failures = 0, oracle_rank = 0;
  for (int k = 0; k < matrix_instances; ++k) {
    const std::size_t rows = 1 + rng.index(matrix_max_side), cols = 1 + rng.index(matrix_max_side);
    const Mat m = gen::random_matrix(rng, rows, cols, matrix_entry_bound, rng.coin());
    const std::size_t r = rank(m);
    const auto ns = nullspace(m);
    if (r + ns.size() != cols) ++rank_nullity;
    for (const auto& v : ns)
      if (!is_zero(m * v)) ++kernel;
    oracle::QMatrix q(rows, std::vector<mpq_class>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) q[i][j] = m(i, j).raw();
    if (oracle::integer_rank(q, cols) != r) ++oracle_rank;
    // consistent right-hand side: must solve exactly
    Vec x(cols);
    for (auto& e : x) e = Rat(rng.uniform(-matrix_entry_bound, matrix_entry_bound), rng.uniform(1, matrix_entry_bound));
    const Vec b = m * x;
    const auto y = solve(m, b);
    if (!y || m * *y != b) ++solve_failures;
    // random right-hand side: solvable exactly when it does not raise the rank
    Vec c(rows);
    for (auto& e : c) e = Rat(rng.uniform(-matrix_entry_bound, matrix_entry_bound), rng.uniform(1, matrix_entry_bound));
    Mat aug(rows, cols + 1);
    aug.set_block(0, 0, m);
    for (std::size_t i = 0; i < rows; ++i) aug(i, cols) = c[i];
    const bool solvable = rank(aug) == r;
    const auto z = solve(m, c);
    if (z.has_value() != solvable || (z && m * *z != c)) ++solve_failures;
  }
  std::ostringstream os;
  os << matrix_instances << " matrices, rank-nullity failures " << rank_nullity << ", kernel failures " << kernel
     << ", solve failures " << solve_failures << ", oracle rank disagreements " << oracle_rank;
  return {rank_nullity + kernel + solve_failures + oracle_rank == 0, os.str()};
}

// ---------------------------------------------------------------------------
// 8. determinism of the CLI

std::string quote(const std::string& s) { return "'" + s + "'"; }

std::pair<std::string, int> run_capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return {"", -1};
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {out, status};
}

Outcome criterion8(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given (--cli)"};
  const std::string d = std::string(SAMPLES_DIR) + "/";
  const std::vector<std::string> invocations = {
      "check " + quote(d + "t3_tri.json"),
      "check " + quote(d + "t2_corrupt.json"),
      "check " + quote(d + "bad_rational.json"),
      "h1 " + quote(d + "t3_tri.json") + " " + quote(d + "t3_dual.json") + " --basis --verify",
      "h1 " + quote(d + "t2.json") + " " + quote(d + "t2_regular.json"),
      "tri-build " + quote(d + "t3_tri.json") + " --emit-spec",
      "verify-decomposition " + quote(d + "t3_tri.json") + " " + quote(d + "t3_dual.json"),
      "verify-decomposition " + quote(d + "t2_tri.json") + " " + quote(d + "t2_m_corner.json"),
      "weak-amenability " + quote(d + "t3_tri.json") + " --level 2",
      "obstruction " + quote(d + "t2_tri.json") + " " + quote(d + "t2_sigma_scale.json"),
      "quotient " + quote(d + "t2_ideal.json"),
  };
  std::size_t differing = 0;
  std::ostringstream bad;
  for (const auto& args : invocations) {
    const auto first = run_capture(quote(cli) + " " + args);
    for (int k = 1; k < determinism_repeats; ++k) {
      const auto again = run_capture(quote(cli) + " " + args);
      if (again != first || first.first.empty()) {
        ++differing;
        bad << " [" << args << "]";
        break;
      }
    }
  }
  std::ostringstream os;
  os << invocations.size() << " invocations x " << determinism_repeats << " runs, " << differing << " differ" << bad.str();
  return {differing == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> which;
  std::string cli;
  app.add_option("--criterion", which, "criterion number(s) to run (default: all)")->check(CLI::Range(1, 8));
  app.add_option("--cli", cli, "path to the twistcoh executable");
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8};

  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, [&] { return criterion8(cli); }};
  bool all = true;
  for (int n : which) {
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
