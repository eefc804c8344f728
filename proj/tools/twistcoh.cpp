// twistcoh: first (sigma, tau)-cohomology of finite-dimensional algebras from JSON specs.
//
// The report document goes to stdout, a one-line summary to stderr.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twistcoh/commands.hpp"

namespace cli = twistcoh::cli;

int main(int argc, char** argv) {
  CLI::App app{"First (sigma,tau)-cohomology of finite-dimensional algebras over Q"};
  app.require_subcommand(1);

  std::string spec, algebra, module, tri, ideal, sigma = "id", tau = "id", emit_module;
  std::vector<std::string> modules;
  bool basis = false, verify = false, emit_spec = false;
  std::size_t level = 1, module_level = 0;

  auto* check = app.add_subcommand("check", "Validate a spec file against the axioms of its kind");
  check->add_option("spec", spec, "spec file")->required();

  auto* h1 = app.add_subcommand("h1", "Dimensions of Z1, B1 and H1");
  h1->add_option("algebra", algebra, "algebra or tri spec")->required();
  h1->add_option("module", module, "bimodule or standard-module spec")->required();
  h1->add_option("sigma", sigma, "hom spec or \"id\"");
  h1->add_option("tau", tau, "hom spec or \"id\"");
  h1->add_flag("--basis", basis, "include basis matrices");
  h1->add_flag("--verify", verify, "re-check every basis element against the Leibniz rule");

  auto* build = app.add_subcommand("tri-build", "Build a triangular algebra from its components");
  build->add_option("tri", tri, "tri spec")->required();
  build->add_flag("--emit-spec", emit_spec, "print the algebra spec of T instead of the report");
  build->add_option("--emit-module", emit_module, "print a standard module spec")
      ->check(CLI::IsMember({"regular", "dual", "a-corner", "b-corner", "m-corner", "obstruction"}));
  build->add_option("--level", module_level, "dual level for --emit-module");

  auto* decomp = app.add_subcommand("verify-decomposition", "Check the corner decomposition of H1 when X_AB = 0");
  decomp->add_option("tri", tri, "tri spec")->required();
  decomp->add_option("module", module, "bimodule or standard-module spec")->required();
  decomp->add_option("sigma", sigma, "hom spec or \"id\"");
  decomp->add_option("tau", tau, "hom spec or \"id\"");

  auto* weak = app.add_subcommand("weak-amenability", "Compare h1(T, T^(2n-1)) with its corners");
  weak->add_option("tri", tri, "tri spec")->required();
  weak->add_option("sigma", sigma, "hom spec or \"id\"");
  weak->add_option("tau", tau, "hom spec or \"id\"");
  weak->add_option("--level", level, "n >= 1")->check(CLI::PositiveNumber);

  auto* obstruction = app.add_subcommand("obstruction", "Obstruction derivation for sigma on the M-block");
  obstruction->add_option("tri", tri, "tri spec")->required();
  obstruction->add_option("sigma", sigma, "hom spec or \"id\"");

  auto* quotient = app.add_subcommand("quotient", "Quotient by an invariant ideal with the induced pair");
  quotient->add_option("ideal", ideal, "ideal spec")->required();
  quotient->add_option("--sigma", sigma, "hom spec or \"id\"");
  quotient->add_option("--tau", tau, "hom spec or \"id\"");
  quotient->add_option("--module", modules, "bimodule over the quotient (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::exit_parse;
  }

  cli::RunReport r;
  if (*check) r = cli::cmd_check(spec);
  else if (*h1) r = cli::cmd_h1(algebra, module, sigma, tau, {basis, verify});
  else if (*build) r = cli::cmd_tri_build(tri, {emit_spec, emit_module, module_level});
  else if (*decomp) r = cli::cmd_verify_decomposition(tri, module, sigma, tau);
  else if (*weak) r = cli::cmd_weak_amenability(tri, sigma, tau, level);
  else if (*obstruction) r = cli::cmd_obstruction(tri, sigma);
  else r = cli::cmd_quotient(ideal, sigma, tau, modules);

  std::cout << r.doc.dump(2) << "\n";
  if (!r.summary.empty()) std::cerr << r.summary << "\n";
  return r.exit_code;
}
