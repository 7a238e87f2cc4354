#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "eigensel/cli.hpp"

using namespace eigensel;
using namespace eigensel::cli;

namespace {

struct SolveFlags {
  std::string run;
  std::string problem;
  std::string out = ".";
  std::vector<double> target;
  std::vector<double> mep_target;
  std::optional<int> num_pairs, mindim, maxdim, max_outer, inner_steps;
  std::optional<double> tol, eta;
  std::optional<std::string> mode, extraction;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  bool serial = false;
  bool no_precondition = false;
};

RunManifest build_manifest(const SolveFlags& f) {
  RunManifest m;
  if (!f.run.empty()) {
    m = run_manifest_from_json(read_json(f.run));
  }
  if (!f.problem.empty()) {
    m.problem = f.problem;
  }
  if (m.problem.empty()) {
    throw InvalidArgument("--problem or --run is required");
  }
  if (f.run.empty() || f.out != ".") {
    m.out = f.out;
  }
  if (f.seed) {
    m.seed = *f.seed;
  }
  m.jd.seed = m.mep.seed = m.seed;
  if (f.target.size() == 2) {
    m.jd.target = Complex(f.target[0], f.target[1]);
  }
  if (!f.mep_target.empty()) {
    m.mep.target.clear();
    for (double x : f.mep_target) {
      m.mep.target.emplace_back(x, 0.0);
    }
  }
  if (f.num_pairs) {
    m.jd.num_pairs = m.mep.num_pairs = *f.num_pairs;
  }
  if (f.tol) {
    m.jd.tol = m.mep.tol = *f.tol;
  }
  if (f.mindim) {
    m.jd.mindim = m.mep.mindim = *f.mindim;
  }
  if (f.maxdim) {
    m.jd.maxdim = m.mep.maxdim = *f.maxdim;
  }
  if (f.max_outer) {
    m.jd.max_outer = m.mep.max_outer = *f.max_outer;
  }
  if (f.inner_steps) {
    m.jd.inner_steps = m.mep.inner_steps = *f.inner_steps;
  }
  if (f.eta) {
    m.jd.eta_sel = m.mep.eta_sel = *f.eta;
  }
  if (f.mode) {
    m.jd.mode = *f.mode == "homogeneous" ? SelectionMode::homogeneous : SelectionMode::standard;
  }
  if (f.extraction) {
    m.jd.extraction = *f.extraction == "gal1" ? Extraction::gal1 : Extraction::ritz;
  }
  if (f.strict) {
    m.mep.strict = true;
  }
  if (f.serial) {
    m.jd.backend = m.mep.backend = kernels::Backend::serial;
  }
  if (f.no_precondition) {
    m.jd.precondition = m.mep.precondition = false;
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Several eigenvalues of polynomial and multiparameter eigenproblems by selection"};
  app.require_subcommand(1);

  GenerateParams gen;
  std::string gen_out = ".";
  auto* generate = app.add_subcommand("generate", "Write a test problem as Matrix Market files");
  generate->add_option("kind", gen.kind, "gyroscopic, random_pep, example2x2, fourpoint, diagonal_qep")
      ->required()
      ->check(CLI::IsMember({"gyroscopic", "random_pep", "example2x2", "fourpoint", "diagonal_qep"}));
  generate->add_option("--n", gen.n, "problem dimension")->check(CLI::PositiveNumber);
  generate->add_option("--degree", gen.degree, "polynomial degree (random_pep)")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_flag("--symmetric", gen.symmetric, "complex symmetric coefficients (random_pep)");
  generate->add_option("--delta", gen.delta, "example2x2 delta");
  generate->add_option("--eps", gen.eps, "example2x2 epsilon");
  generate->add_option("--N", gen.chebyshev_n, "Chebyshev points per interval (fourpoint)");
  generate->add_option("--b", gen.b, "diagonal of B (diagonal_qep)");
  generate->add_option("--c", gen.c, "diagonal of C (diagonal_qep)");
  generate->add_option("--out", gen_out, "output directory");

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Run the selection solver on a problem");
  solve->add_option("--run", sf.run, "run manifest (JSON) to start from");
  solve->add_option("--problem", sf.problem, "problem manifest (problem.json)");
  solve->add_option("--target", sf.target, "target as two reals: re im")->expected(2);
  solve->add_option("--mep-target", sf.mep_target, "real target per parameter (multiparameter)");
  solve->add_option("--num-pairs", sf.num_pairs, "number of eigenpairs");
  solve->add_option("--tol", sf.tol, "relative residual tolerance");
  solve->add_option("--mindim", sf.mindim, "search space size after restart");
  solve->add_option("--maxdim", sf.maxdim, "search space size that triggers a restart");
  solve->add_option("--max-outer", sf.max_outer, "outer iteration limit");
  solve->add_option("--inner-steps", sf.inner_steps, "GMRES steps per correction");
  solve->add_option("--eta", sf.eta, "selection threshold");
  solve->add_option("--mode", sf.mode, "standard or homogeneous")
      ->check(CLI::IsMember({"standard", "homogeneous"}));
  solve->add_option("--extraction", sf.extraction, "ritz or gal1")->check(CLI::IsMember({"ritz", "gal1"}));
  solve->add_option("--seed", sf.seed, "random seed");
  solve->add_flag("--strict", sf.strict, "legacy multiparameter criterion");
  solve->add_flag("--serial", sf.serial, "serial kernels");
  solve->add_flag("--no-precondition", sf.no_precondition, "unpreconditioned inner solves");
  solve->add_option("--out", sf.out, "output directory");

  std::string vproblem, vresults;
  VerifyOptions vopts;
  auto* verify = app.add_subcommand("verify", "Check results against the dense oracle");
  verify->add_option("--problem", vproblem, "problem manifest")->required();
  verify->add_option("--results", vresults, "results.json from solve")->required();
  verify->add_option("--match-tol", vopts.match_tol, "oracle match tolerance");
  verify->add_option("--duplicate-tol", vopts.duplicate_tol, "duplicate detection tolerance");

  std::string rresults;
  auto* report = app.add_subcommand("report", "Print the table of a results file");
  report->add_option("results", rresults, "results.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*generate) {
      std::cout << cmd_generate(gen, gen_out).string() << '\n';
      return exit_ok;
    }
    if (*solve) {
      const RunManifest m = build_manifest(sf);
      const SolveSummary s = cmd_solve(m, std::cout);
      write_json(m.out / "run.json", to_json(m));
      return s.truncated ? exit_truncated : exit_ok;
    }
    if (*verify) {
      return cmd_verify(vproblem, vresults, vopts, std::cout).passed() ? exit_ok : exit_verify_failed;
    }
    if (*report) {
      cmd_report(rresults, std::cout);
      return exit_ok;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return exit_solver_error;
  }
  return exit_usage;
}
