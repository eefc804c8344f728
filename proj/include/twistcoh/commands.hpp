#pragma once

// Subcommands of the twistcoh tool. Each returns a report document for stdout,
// a short human summary for stderr and an exit code:
//   0 success, 1 validation failure, 2 theorem-hypothesis violation, 3 parse error.

#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twistcoh/twistcoh.hpp"
#include "twistcoh/spec_io.hpp"

namespace twistcoh::cli {

using io::Json;

enum ExitCode { exit_ok = 0, exit_invalid = 1, exit_hypothesis = 2, exit_parse = 3 };

struct RunReport {
  Json doc;
  std::string summary;
  int exit_code = exit_ok;
};

namespace detail {

inline const char* verdict_name(int code) {
  switch (code) {
    case exit_ok: return "ok";
    case exit_invalid: return "invalid";
    case exit_hypothesis: return "hypothesis-violated";
    default: return "parse-error";
  }
}

inline Json dims(const DerivationSpace& s) {
  Json j;
  j["z1"] = s.z1_dim();
  j["b1"] = s.b1_dim();
  j["h1"] = s.h1_dim;
  return j;
}

inline Json derivation_list(const std::vector<Derivation>& ds) {
  Json out = Json::array();
  for (const auto& d : ds) out.push_back(io::matrix_json(d.matrix()));
  return out;
}

inline std::string h1_line(const DerivationSpace& s) {
  return "Z1=" + std::to_string(s.z1_dim()) + " B1=" + std::to_string(s.b1_dim()) + " H1=" + std::to_string(s.h1_dim);
}

/// Runs a command body and turns library errors into exit codes and report fields.
inline RunReport run(const std::string& command, Json arguments,
                     const std::function<void(io::Loader&, RunReport&)>& body) {
  io::Loader loader;
  RunReport r;
  r.doc["command"] = command;
  r.doc["arguments"] = std::move(arguments);
  Json error;
  try {
    body(loader, r);
  } catch (const ParseError& e) {
    r.exit_code = exit_parse;
    error["type"] = "parse";
    error["message"] = e.what();
    if (e.line()) error["line"] = e.line(), error["column"] = e.column();
    r.summary = std::string("parse error: ") + e.what();
  } catch (const HypothesisError& e) {
    r.exit_code = exit_hypothesis;
    error["type"] = "hypothesis";
    error["message"] = e.what();
    r.summary = e.what();
  } catch (const CornerViolationError& e) {
    r.exit_code = exit_hypothesis;
    error["type"] = "corner-violation";
    error["message"] = e.what();
    r.summary = e.what();
  } catch (const ValidationError& e) {
    r.exit_code = exit_invalid;
    error["type"] = "validation";
    error["message"] = e.what();
    r.doc["violations"] = io::to_json(e.report());
    r.summary = e.what();
  } catch (const Error& e) {
    r.exit_code = exit_invalid;
    error["type"] = "error";
    error["message"] = e.what();
    r.summary = e.what();
  }
  Json out;
  out["command"] = r.doc["command"];
  out["arguments"] = r.doc["arguments"];
  Json inputs = Json::array();
  for (const auto& in : loader.inputs()) inputs.push_back(Json{{"path", in.path}, {"fnv1a64", in.fnv1a64}});
  out["inputs"] = std::move(inputs);
  out["verdict"] = verdict_name(r.exit_code);
  out["exit_code"] = r.exit_code;
  for (auto it = r.doc.begin(); it != r.doc.end(); ++it)
    if (it.key() != "command" && it.key() != "arguments") out[it.key()] = it.value();
  if (!out.contains("violations")) out["violations"] = Json::array();
  if (!error.is_null()) out["error"] = std::move(error);
  r.doc = std::move(out);
  return r;
}

}  // namespace detail

/// Validates any spec file according to its kind.
inline RunReport cmd_check(const std::string& path) {
  return detail::run("check", Json{{"spec", path}}, [&](io::Loader& loader, RunReport& r) {
    const io::Node n = loader.open(path);
    const std::string kind = io::kind_of(n);
    r.doc["kind"] = kind;
    ValidationReport report;
    if (kind == "algebra") {
      const FiniteAlgebra a = io::parse_algebra(loader, n);
      r.doc["dim"] = a.dim();
      report = check_algebra(a);
    } else if (kind == "bimodule") {
      const Bimodule x = io::parse_bimodule(loader, n);
      r.doc["dim"] = x.dim();
      report.merge(check_algebra(x.left_algebra()), "left-algebra:");
      report.merge(check_algebra(x.right_algebra()), "right-algebra:");
      report.merge(check_bimodule(x));
    } else if (kind == "hom") {
      const io::HomSpec h = io::parse_hom_spec(loader, n);
      report.merge(check_algebra(h.source), "source:");
      report.merge(check_algebra(h.target), "target:");
      report.merge(check_hom(h.source, h.target, h.matrix));
    } else if (kind == "tri") {
      const TriangularAlgebra t = io::parse_tri(loader, n);
      r.doc["dims"] = Json{{"a", t.a_dim()}, {"m", t.m_dim()}, {"b", t.b_dim()}, {"total", t.dim()}};
      report = check_triangular(t);
    } else if (kind == "ideal") {
      const io::IdealSpec s = io::parse_ideal_spec(loader, n);
      require_valid(s.algebra);
      try {
        r.doc["dim"] = Ideal::make(s.algebra, s.generators).dim();
      } catch (const InclusionError& e) {
        report.add("ideal-closure", {}, e.what());
      }
    } else {
      const io::StandardModule m = io::parse_standard_module(loader, n);
      r.doc["dim"] = m.module.dim();
      r.doc["unital_required"] = m.unital;
      report = check_bimodule(m.module, m.unital);
    }
    r.doc["violations"] = io::to_json(report);
    r.exit_code = report.ok() ? exit_ok : exit_invalid;
    r.summary = report.ok() ? kind + ": valid" : kind + ": " + std::to_string(report.size()) + " violation(s)\n" + report.str();
  });
}

struct H1Options {
  bool basis = false;
  bool verify = false;
};

/// dim Z^1, B^1, H^1 of an algebra (or tri) with coefficients in a module.
inline RunReport cmd_h1(const std::string& algebra_path, const std::string& module_path, const std::string& sigma,
                        const std::string& tau, H1Options opt) {
  Json args{{"algebra", algebra_path}, {"module", module_path}, {"sigma", sigma}, {"tau", tau},
            {"basis", opt.basis},      {"verify", opt.verify}};
  return detail::run("h1", std::move(args), [&](io::Loader& loader, RunReport& r) {
    const FiniteAlgebra a = io::parse_algebra_like(loader, loader.open(algebra_path));
    require_valid(a);
    const Bimodule x = io::parse_module_over(loader, loader.open(module_path), a);
    const HomPair p(io::load_endomorphism(loader, sigma, a), io::load_endomorphism(loader, tau, a));
    const DerivationSpace s = derivation_space(a, x, p);
    r.doc["dimensions"] = detail::dims(s);
    if (opt.basis) {
      r.doc["bases"] = Json{{"z1", detail::derivation_list(s.z1)},
                            {"b1", detail::derivation_list(s.b1)},
                            {"h1_representatives", detail::derivation_list(s.complement)}};
    }
    r.summary = detail::h1_line(s);
    if (opt.verify) {
      ValidationReport all;
      for (std::size_t k = 0; k < s.z1.size(); ++k) all.merge(check_leibniz(*s.context, s.z1[k].matrix()), "z1[" + std::to_string(k) + "]:");
      for (std::size_t k = 0; k < s.b1.size(); ++k) all.merge(check_leibniz(*s.context, s.b1[k].matrix()), "b1[" + std::to_string(k) + "]:");
      r.doc["verified"] = Json{{"checked", s.z1.size() + s.b1.size()}, {"leibniz_ok", all.ok()}};
      r.doc["violations"] = io::to_json(all);
      if (!all.ok()) r.exit_code = exit_invalid;
      r.summary += all.ok() ? " (basis verified)" : " (basis FAILED verification)";
    }
  });
}

struct TriBuildOptions {
  bool emit_spec = false;
  std::string emit_module;  // standard module name, empty for none
  std::size_t level = 0;
};

/// Builds Tri(A, M, B) and reports its shape; can emit the algebra or a standard module as a spec.
inline RunReport cmd_tri_build(const std::string& tri_path, const TriBuildOptions& opt) {
  Json args{{"tri", tri_path}, {"emit_spec", opt.emit_spec}};
  if (!opt.emit_module.empty()) args["emit_module"] = opt.emit_module, args["level"] = opt.level;
  RunReport r = detail::run("tri-build", std::move(args), [&](io::Loader& loader, RunReport& rr) {
    const TriangularAlgebra t = io::parse_tri(loader, loader.open(tri_path));
    rr.doc["dims"] = Json{{"a", t.a_dim()}, {"m", t.m_dim()}, {"b", t.b_dim()}, {"total", t.dim()}};
    rr.doc["labels"] = t.algebra().labels();
    rr.doc["idempotent"] = io::vec_json(t.idempotent());
    const auto report = check_triangular(t);
    rr.doc["violations"] = io::to_json(report);
    if (!report.ok()) rr.exit_code = exit_invalid;
    if (opt.emit_spec) rr.doc["spec"] = io::to_json(t.algebra());
    if (!opt.emit_module.empty()) {
      const io::StandardModule m = io::standard_module(t, opt.emit_module, opt.level);
      rr.doc["spec"] = io::to_json(m.module);
    }
    rr.summary = "Tri: dim A=" + std::to_string(t.a_dim()) + " dim M=" + std::to_string(t.m_dim()) +
                 " dim B=" + std::to_string(t.b_dim()) + " dim T=" + std::to_string(t.dim());
  });
  // with an emit flag and success, stdout carries the bare spec so it can be saved and re-read
  if (r.exit_code == exit_ok && r.doc.contains("spec")) r.doc = r.doc["spec"];
  return r;
}

/// Checks h1(T, X) = h1(A, X_AA) + h1(B, X_BB) and ker(rho) = B^1(T, X).
inline RunReport cmd_verify_decomposition(const std::string& tri_path, const std::string& module_path,
                                          const std::string& sigma, const std::string& tau) {
  Json args{{"tri", tri_path}, {"module", module_path}, {"sigma", sigma}, {"tau", tau}};
  return detail::run("verify-decomposition", std::move(args), [&](io::Loader& loader, RunReport& r) {
    const TriangularAlgebra t = io::parse_tri(loader, loader.open(tri_path));
    const Bimodule x = io::parse_module_over(loader, loader.open(module_path), t.algebra());
    const HomPair p(io::load_endomorphism(loader, sigma, t.algebra()), io::load_endomorphism(loader, tau, t.algebra()));
    const CornerUnitReport cu = check_corner_units(t, p);
    r.doc["corner_units"] = cu.ok();
    if (!cu.ok()) throw HypothesisError("hypothesis violated: sigma, tau must fix 1_A + 0 and 0 + 1_B");
    const CornerDecomposition cd = corner_decompose(t, x);
    r.doc["corner_dims"] = Json{{"AA", cd.dim(Corner::aa)}, {"AB", cd.dim(Corner::ab)},
                                {"BA", cd.dim(Corner::ba)}, {"BB", cd.dim(Corner::bb)}};
    if (cd.dim(Corner::ab) != 0)
      throw HypothesisError("hypothesis X_AB = 0 violated (dim X_AB = " + std::to_string(cd.dim(Corner::ab)) + ")");
    const MainTheoremReport m = verify_main_theorem(t, x, p);
    r.doc["dimensions"] = Json{{"T", Json{{"z1", m.z1_t}, {"b1", m.b1_t}, {"h1", m.h1_t}}},
                               {"A", Json{{"z1", m.z1_a}, {"b1", m.b1_a}, {"h1", m.h1_a}}},
                               {"B", Json{{"z1", m.z1_b}, {"b1", m.b1_b}, {"h1", m.h1_b}}}};
    r.doc["checks"] = Json{{"sum_holds", m.sum_holds},
                           {"kernel_dim", m.kernel_dim},
                           {"kernel_equals_b1", m.kernel_equals_b1},
                           {"rho_rank", m.rho_rank},
                           {"rho_surjective", m.rho_surjective}};
    if (!m.holds()) r.exit_code = exit_invalid;
    r.summary = "h1_T=" + std::to_string(m.h1_t) + " h1_A=" + std::to_string(m.h1_a) + " h1_B=" + std::to_string(m.h1_b) +
                (m.sum_holds ? " sum holds" : " sum FAILS") + (m.kernel_equals_b1 ? ", ker rho = B1" : ", ker rho != B1");
  });
}

/// h1(T, T^(2n-1)) against its two corners.
inline RunReport cmd_weak_amenability(const std::string& tri_path, const std::string& sigma, const std::string& tau,
                                      std::size_t level) {
  Json args{{"tri", tri_path}, {"sigma", sigma}, {"tau", tau}, {"level", level}};
  return detail::run("weak-amenability", std::move(args), [&](io::Loader& loader, RunReport& r) {
    const TriangularAlgebra t = io::parse_tri(loader, loader.open(tri_path));
    const HomPair p(io::load_endomorphism(loader, sigma, t.algebra()), io::load_endomorphism(loader, tau, t.algebra()));
    const WeakAmenabilityReport w = weak_amenability_check(t, p, level);
    r.doc["dual_order"] = w.dual_order;
    r.doc["corner_dims"] = Json{{"AA", w.corner_dims[0]}, {"AB", w.corner_dims[1]},
                                {"BA", w.corner_dims[2]}, {"BB", w.corner_dims[3]}};
    r.doc["dimensions"] = Json{{"h1_T", w.h1_t}, {"h1_A", w.h1_a}, {"h1_B", w.h1_b}};
    r.doc["checks"] = Json{{"identity_holds", w.identity_holds},
                           {"t_weakly_amenable", w.t_vanishes()},
                           {"corners_weakly_amenable", w.corners_vanish()}};
    if (!w.identity_holds) r.exit_code = exit_invalid;
    r.summary = "level " + std::to_string(level) + ": h1_T=" + std::to_string(w.h1_t) + " h1_A=" + std::to_string(w.h1_a) +
                " h1_B=" + std::to_string(w.h1_b) + (w.t_vanishes() ? ", weakly amenable" : ", not weakly amenable");
  });
}

/// Builds the obstruction module and derivation for sigma and decides innerness.
inline RunReport cmd_obstruction(const std::string& tri_path, const std::string& sigma) {
  return detail::run("obstruction", Json{{"tri", tri_path}, {"sigma", sigma}}, [&](io::Loader& loader, RunReport& r) {
    const TriangularAlgebra t = io::parse_tri(loader, loader.open(tri_path));
    const AlgebraHom s = io::load_endomorphism(loader, sigma, t.algebra());
    const ObstructionDerivation od = build_obstruction_derivation(t, s);
    const ObstructionVerdict v = obstruction_inner_test(od);
    const bool leibniz = check_leibniz(*od.derivation.context(), od.derivation.matrix()).ok();
    r.doc["module_dim"] = od.module.dim();
    r.doc["identification"] = io::matrix_json(od.identification);
    r.doc["derivation"] = io::matrix_json(od.derivation.matrix());
    r.doc["checks"] = Json{{"leibniz", leibniz},
                           {"derivation_zero", od.derivation.is_zero()},
                           {"inner", v.inner_by_solve},
                           {"sigma_m_zero", v.sigma_m_zero},
                           {"sigma_m_rank", v.sigma_m_rank},
                           {"verdicts_agree", v.agree()}};
    if (v.witness) r.doc["witness"] = io::vec_json(*v.witness);
    if (!leibniz || !v.agree()) r.exit_code = exit_invalid;
    r.summary = std::string(od.derivation.is_zero() ? "D = 0" : "D nonzero") + (v.inner_by_solve ? ", inner" : ", not inner") +
                ", dim sigma(M) = " + std::to_string(v.sigma_m_rank);
  });
}

/// A/I with the induced pair; compares h1 for each quotient module with its pullback to A.
inline RunReport cmd_quotient(const std::string& ideal_path, const std::string& sigma, const std::string& tau,
                              const std::vector<std::string>& module_paths) {
  Json args{{"ideal", ideal_path}, {"sigma", sigma}, {"tau", tau}, {"modules", module_paths}};
  return detail::run("quotient", std::move(args), [&](io::Loader& loader, RunReport& r) {
    const io::IdealSpec spec = io::parse_ideal_spec(loader, loader.open(ideal_path));
    require_valid(spec.algebra);
    const Ideal ideal = Ideal::make(spec.algebra, spec.generators);
    const HomPair p(io::load_endomorphism(loader, sigma, spec.algebra), io::load_endomorphism(loader, tau, spec.algebra));
    const QuotientAlgebra q = quotient_algebra(spec.algebra, ideal);
    std::vector<Bimodule> family;
    for (const auto& path : module_paths) family.push_back(io::parse_module_over(loader, loader.open(path), q.algebra));
    if (family.empty()) family.push_back(regular_bimodule(q.algebra));
    const QuotientTransferReport t = transfer_along_quotient(spec.algebra, ideal, p, family);
    r.doc["ideal_dim"] = ideal.dim();
    r.doc["quotient"] = io::to_json(q.algebra);
    r.doc["sigma_hat"] = io::matrix_json(t.sigma_hat.matrix());
    r.doc["tau_hat"] = io::matrix_json(t.tau_hat.matrix());
    r.doc["scope"] = RelativeAmenabilityReport::scope;
    r.doc["dimensions"] = Json{{"h1_quotient", t.transfer.h1_target}, {"h1_pullback", t.transfer.h1_source}};
    r.doc["checks"] = Json{{"flagged", t.transfer.flagged}, {"consistent", t.transfer.consistent}};
    if (!t.transfer.consistent) r.exit_code = exit_invalid;
    std::ostringstream os;
    os << "A/I dim " << q.algebra.dim() << ", " << family.size() << " module(s), "
       << (t.transfer.consistent ? "consistent with quotient transfer" : "INCONSISTENT");
    r.summary = os.str();
  });
}

}  // namespace twistcoh::cli
