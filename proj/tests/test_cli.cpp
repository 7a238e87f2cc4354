#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "eigensel/cli.hpp"
#include "test_util.hpp"

using namespace eigensel;
using namespace eigensel::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("generate is deterministic") {
    const auto dir = testutil::scratch_dir("gen");
    GenerateParams p;
    p.kind = "gyroscopic";
    p.n = 200;
    p.seed = 1;
    cmd_generate(p, dir / "a");
    cmd_generate(p, dir / "b");
    for (const char* f : {"A0.mtx", "A1.mtx", "A2.mtx", "problem.json"}) {
      CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
  }

  TEST_CASE("generate fourpoint lists twelve matrices") {
    const auto dir = testutil::scratch_dir("gen4");
    GenerateParams p;
    p.kind = "fourpoint";
    p.chebyshev_n = 100;
    const auto path = cmd_generate(p, dir);
    const Json j = read_json(path);
    std::size_t count = 0;
    for (const auto& eq : j["equations"]) {
      count += eq.size();
    }
    CHECK(count == 12);
  }

  TEST_CASE("generate example2x2") {
    const auto dir = testutil::scratch_dir("gen2");
    GenerateParams p;
    p.kind = "example2x2";
    p.delta = 1e-6;
    p.eps = 1e-3;
    const Problem q = load_problem(cmd_generate(p, dir));
    const CMatrix a0 = std::get<PolyProblem>(q).coeff(0).to_dense();
    CHECK(a0(0, 1) == Complex(1e-3));
    CHECK(a0(1, 1) == Complex(1e-6));
    CHECK(a0(0, 0) == Complex(0.0));
  }

  TEST_CASE("solve, report and verify the diagonal QEP") {
    const auto dir = testutil::scratch_dir("diag");
    GenerateParams p;
    p.kind = "diagonal_qep";
    RunManifest m;
    m.problem = cmd_generate(p, dir / "problem");
    m.out = dir / "run";
    m.jd.num_pairs = 4;
    m.jd.tol = 1e-10;
    std::ostringstream log;
    const SolveSummary s = cmd_solve(m, log);
    CHECK(s.found == 4);
    CHECK_FALSE(s.truncated);
    const std::string table = slurp(m.out / "table.txt");
    std::vector<double> values;
    const Json results = read_json(m.out / "results.json");
    for (const auto& t : results["triplets"]) {
      values.push_back(t["value"][0].get<double>());
      CHECK(std::abs(t["value"][1].get<double>()) <= 1e-8);
    }
    std::sort(values.begin(), values.end());
    REQUIRE(values.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(values[static_cast<std::size_t>(i)] == doctest::Approx(i + 1.0).epsilon(1e-8));
      CHECK(table.find(" " + std::to_string(i + 1) + " ") != std::string::npos);
    }
    CHECK(table.find("detected after") != std::string::npos);
    CHECK(slurp(m.out / "convergence.csv").rfind("iteration,", 0) == 0);

    std::ostringstream rep;
    cmd_report(m.out / "results.json", rep);
    CHECK(rep.str() == table);

    std::ostringstream vlog;
    VerifyOptions vo;
    vo.match_tol = 1e-10;
    const VerifyReport v = cmd_verify(m.problem, m.out / "results.json", vo, vlog);
    CHECK(v.passed());
    CHECK(v.oracle_checked);
    CHECK(v.max_mismatch <= 1e-10);

    Json dup = read_json(m.out / "results.json");
    dup["triplets"].push_back(Json(dup["triplets"][0]));
    write_json(dir / "dup.json", dup);
    std::ostringstream dlog;
    const VerifyReport d = cmd_verify(m.problem, dir / "dup.json", {}, dlog);
    CHECK_FALSE(d.duplicates_ok);
    CHECK_FALSE(d.passed());
    CHECK(dlog.str().find("verdict:     fail") != std::string::npos);
  }

  TEST_CASE("eta sweep runs and reports the threshold") {
    const auto dir = testutil::scratch_dir("eta");
    GenerateParams p;
    p.kind = "random_pep";
    p.n = 20;
    p.seed = 3;
    const auto problem = cmd_generate(p, dir / "problem");
    for (double eta : {0.01, 0.2, 0.5}) {
      RunManifest m;
      m.problem = problem;
      m.out = dir / ("eta" + std::to_string(eta));
      m.jd.num_pairs = 3;
      m.jd.eta_sel = eta;
      std::ostringstream log;
      cmd_solve(m, log);
      const Json r = read_json(m.out / "results.json");
      CHECK(r["config"]["jd"]["eta_sel"].get<double>() == eta);
      CHECK(log.str().find("eta = ") != std::string::npos);
    }
  }

  TEST_CASE("verify a random QEP: matched set is the nearest set") {
    const auto dir = testutil::scratch_dir("rqep");
    GenerateParams p;
    p.kind = "random_pep";
    p.n = 20;
    p.seed = 2;
    RunManifest m;
    m.problem = cmd_generate(p, dir / "problem");
    m.out = dir / "run";
    m.jd.num_pairs = 6;
    std::ostringstream log;
    cmd_solve(m, log);
    std::ostringstream vlog;
    const VerifyReport v = cmd_verify(m.problem, m.out / "results.json", {}, vlog);
    CHECK(v.nearest_set_ok);
    CHECK(v.passed());
  }

  TEST_CASE("homogeneous mode converges to an infinite eigenvalue") {
    const auto dir = testutil::scratch_dir("inf");
    std::mt19937_64 g(21);
    CMatrix a = testutil::random_matrix(20, 20, g);
    a.col(19).setZero();
    const PolyProblem p({Coefficient(testutil::random_matrix(20, 20, g)),
                         Coefficient(testutil::random_matrix(20, 20, g)), Coefficient(a)});
    RunManifest m;
    m.problem = save_problem(dir / "problem", p, Json());
    m.out = dir / "run";
    m.jd.num_pairs = 1;
    m.jd.mode = SelectionMode::homogeneous;
    m.jd.target = Complex(1e8, 0.0);
    std::ostringstream log;
    cmd_solve(m, log);
    const Json r = read_json(m.out / "results.json");
    REQUIRE(r["triplets"].size() == 1);
    const Json& t = r["triplets"][0];
    const Complex beta(t["beta"][0].get<double>(), t["beta"][1].get<double>());
    CHECK(std::abs(beta) <= 1e-6);
    CHECK(r["triplets"][0]["residual"].get<double>() <= 1e-9);
  }

  TEST_CASE("run manifests round trip and validate") {
    RunManifest m;
    m.problem = "nowhere/problem.json";
    m.seed = 9;
    m.jd.num_pairs = 7;
    m.jd.mode = SelectionMode::homogeneous;
    m.mep.strict = true;
    const RunManifest b = run_manifest_from_json(to_json(m));
    CHECK(b.seed == 9);
    CHECK(b.jd.num_pairs == 7);
    CHECK(b.jd.mode == SelectionMode::homogeneous);
    CHECK(b.mep.strict);
    CHECK_THROWS_AS(validate(m), IoError);
  }
}
