#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "eigensel/jdsolver.hpp"
#include "eigensel/mep_solver.hpp"
#include "eigensel/serialize.hpp"

namespace eigensel::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_truncated = 2,
  exit_verify_failed = 3,
  exit_io = 4,
  exit_solver_error = 5,
};

struct GenerateParams {
  std::string kind;  // gyroscopic, random_pep, example2x2, fourpoint, diagonal_qep
  Index n = 200;
  int degree = 2;
  std::uint64_t seed = 1;
  bool symmetric = false;
  double delta = 1e-6;
  double eps = 1e-3;
  int chebyshev_n = 100;
  std::vector<double> b{-3.0, -7.0};
  std::vector<double> c{2.0, 12.0};
};

/// Everything a solve needs; serialized into every results file.
struct RunManifest {
  std::filesystem::path problem;
  std::filesystem::path out{"."};
  std::uint64_t seed = 1;
  JdOptions jd;
  MepOptions mep;
};

using eigensel::to_json;
Json to_json(const RunManifest& m);
RunManifest run_manifest_from_json(const Json& j);
/// Checks that the problem file exists and the options pass their invariants.
void validate(const RunManifest& m);

Json generator_json(const GenerateParams& p);
std::filesystem::path cmd_generate(const GenerateParams& p, const std::filesystem::path& out);

struct SolveSummary {
  int found = 0;
  bool truncated = false;
};
SolveSummary cmd_solve(const RunManifest& m, std::ostream& log);

struct VerifyOptions {
  double match_tol = 1e-6;
  double duplicate_tol = 1e-6;
  double residual_factor = 10.0;  // residual <= factor * tol from the run
};
struct VerifyReport {
  bool oracle_checked = false;
  bool residuals_ok = true;
  bool matches_ok = true;
  bool duplicates_ok = true;
  bool nearest_set_ok = true;
  double max_mismatch = 0.0;
  double max_residual = 0.0;
  std::vector<std::string> notes;
  bool passed() const { return residuals_ok && matches_ok && duplicates_ok && nearest_set_ok; }
};
VerifyReport cmd_verify(const std::filesystem::path& problem, const std::filesystem::path& results,
                        const VerifyOptions& opts, std::ostream& log);

/// Human-readable table of a results file.
void cmd_report(const std::filesystem::path& results, std::ostream& os);

}  // namespace eigensel::cli
