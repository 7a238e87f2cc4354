#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "eigensel/cli.hpp"
#include "eigensel/fourpoint.hpp"
#include "eigensel/generators.hpp"
#include "eigensel/homogeneous.hpp"
#include "eigensel/oracle.hpp"

namespace eigensel::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string complex_text(const Json& v) {
  if (v.is_object()) {
    return "inf";
  }
  const Complex z = complex_from_json(v);
  std::string s = fmt("%.10g", z.real());
  if (z.imag() != 0.0) {
    s += (z.imag() < 0.0 ? " - " : " + ") + fmt("%.10g", std::abs(z.imag())) + "i";
  }
  return s;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) {
    s.insert(0, w - s.size(), ' ');
  }
  return s;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
}

void print_table(const Json& results, std::ostream& os) {
  const bool mep = results.value("kind", "pep") == "mep";
  const Json& ts = results.at("triplets");
  if (mep) {
    os << pad("#", 3) << pad("lambda", 26) << pad("mu", 26) << pad("nu", 26) << pad("index", 9)
       << pad("residual", 12) << pad("iter", 6) << '\n';
  } else {
    os << pad("#", 3) << pad("eigenvalue", 36) << pad("residual", 12) << pad("cond", 12)
       << pad("iter", 6) << '\n';
  }
  std::vector<int> iters;
  for (std::size_t r = 0; r < ts.size(); ++r) {
    const Json& t = ts[r];
    os << pad(std::to_string(r + 1), 3);
    if (mep) {
      const Json& v = t.at("value");
      for (std::size_t j = 0; j < 3; ++j) {
        os << pad(j < v.size() ? complex_text(v[j]) : "", 26);
      }
      std::string idx;
      if (t.contains("indices")) {
        idx = "(";
        for (std::size_t j = 0; j < t["indices"].size(); ++j) {
          idx += (j ? "," : "") + std::to_string(t["indices"][j].get<int>());
        }
        idx += ")";
      }
      os << pad(idx, 9);
    } else {
      os << pad(complex_text(t.at("value")), 36);
    }
    os << pad(fmt("%.2e", t.value("residual", 0.0)), 12);
    if (!mep) {
      os << pad(t.contains("cond") && !t["cond"].is_null() ? fmt("%.2e", t["cond"].get<double>())
                                                           : "-",
                12);
    }
    const int it = t.value("iteration", -1);
    iters.push_back(it);
    os << pad(std::to_string(it), 6) << '\n';
  }
  if (!iters.empty()) {
    os << "detected after ";
    for (std::size_t i = 0; i < iters.size(); ++i) {
      os << (i ? ", " : "") << iters[i];
    }
    os << " iterations\n";
  }
  if (results.value("truncated", false)) {
    os << "truncated: fewer pairs than requested\n";
  }
  if (results.contains("config")) {
    const Json& c = results["config"];
    const char* block = mep ? "mep" : "jd";
    if (c.contains(block)) {
      os << "eta = " << c[block].value("eta_sel", 0.0) << ", tol = " << c[block].value("tol", 0.0)
         << '\n';
    }
  }
}

double poly_relative_residual(const PolyProblem& problem, const ProjectivePoint& p,
                              const CVector& x) {
  const auto w = hom_eval_weights(problem.degree(), p);
  const double scale = hom_residual_scale(problem, p);
  const double r = problem.apply_weighted(w, x).norm() / x.norm();
  return scale > 0.0 ? r / scale : r;
}

ProjectivePoint point_of(const EigenTriplet& t) {
  return t.infinite ? infinity_point() : normalized_point(t.value, 1.0);
}

double euclid(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < std::min(a.size(), b.size()); ++j) {
    s += std::norm(a[j] - b[j]);
  }
  return std::sqrt(s);
}

double magnitude(const std::vector<Complex>& a) {
  double s = 0.0;
  for (Complex z : a) {
    s += std::norm(z);
  }
  return std::max(1.0, std::sqrt(s));
}

void verify_pep(const PolyProblem& problem, const Json& results, const VerifyOptions& opts,
                VerifyReport& rep) {
  const Json cfg = results.value("config", Json::object());
  const Json jd = cfg.value("jd", Json::object());
  const double tol = jd.value("tol", 1e-8);
  const bool standard = jd.value("mode", std::string("standard")) == "standard";
  const Complex target = jd.contains("target") ? complex_from_json(jd["target"]) : Complex(0.0);

  std::vector<EigenTriplet> ts;
  for (const auto& j : results.at("triplets")) {
    ts.push_back(triplet_from_json(j));
  }
  for (std::size_t a = 0; a < ts.size(); ++a) {
    if (ts[a].right.size() == problem.dim()) {
      const double r = poly_relative_residual(problem, point_of(ts[a]), ts[a].right);
      rep.max_residual = std::max(rep.max_residual, r);
      rep.residuals_ok = rep.residuals_ok && r <= opts.residual_factor * tol;
    } else {
      rep.notes.push_back("triplet " + std::to_string(a + 1) + " has no eigenvector; residual not checked");
    }
    for (std::size_t b = a + 1; b < ts.size(); ++b) {
      if (chordal_distance(point_of(ts[a]), point_of(ts[b])) <= opts.duplicate_tol) {
        rep.duplicates_ok = false;
        rep.notes.push_back("duplicate: triplets " + std::to_string(a + 1) + " and " +
                            std::to_string(b + 1));
      }
    }
  }

  std::vector<OracleTriplet> oracle;
  try {
    oracle = oracle_all_eigenpairs(problem);
  } catch (const SizeCapExceeded& e) {
    rep.notes.push_back(std::string("oracle verification skipped: ") + e.what());
    return;
  }
  rep.oracle_checked = true;
  auto nearest_distance = [&](const ProjectivePoint& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : oracle) {
      best = std::min(best, chordal_distance(p, o.point));
    }
    return best;
  };
  for (const auto& t : ts) {
    rep.max_mismatch = std::max(rep.max_mismatch, nearest_distance(point_of(t)));
  }
  rep.matches_ok = rep.max_mismatch <= opts.match_tol;

  if (standard && !ts.empty()) {
    std::vector<Complex> finite;
    for (const auto& o : oracle) {
      if (!o.infinite) {
        finite.push_back(o.value);
      }
    }
    std::sort(finite.begin(), finite.end(), [&](Complex a, Complex b) {
      return std::abs(a - target) < std::abs(b - target);
    });
    for (std::size_t i = 0; i < std::min(ts.size(), finite.size()); ++i) {
      const ProjectivePoint p = normalized_point(finite[i], 1.0);
      const bool hit = std::any_of(ts.begin(), ts.end(), [&](const EigenTriplet& t) {
        return chordal_distance(point_of(t), p) <= opts.match_tol;
      });
      if (!hit) {
        rep.nearest_set_ok = false;
        rep.notes.push_back("oracle eigenvalue nearest the target missing from results");
      }
    }
  }
}

void verify_mep(const LinearMep& mep, const Json& results, const VerifyOptions& opts,
                VerifyReport& rep) {
  const Json cfg = results.value("config", Json::object());
  const Json mo = cfg.value("mep", Json::object());
  const double tol = mo.value("tol", 1e-10);
  std::vector<Complex> target;
  for (const auto& z : mo.value("target", Json::array())) {
    target.push_back(complex_from_json(z));
  }
  target.resize(static_cast<std::size_t>(mep.k()), Complex(0.0));

  std::vector<MepTriplet> ts;
  for (const auto& j : results.at("triplets")) {
    ts.push_back(mep_triplet_from_json(j));
  }
  for (std::size_t a = 0; a < ts.size(); ++a) {
    const MepTriplet& t = ts[a];
    if (static_cast<int>(t.right.size()) == mep.k()) {
      double r = 0.0;
      for (int i = 0; i < mep.k(); ++i) {
        const CVector& x = t.right[static_cast<std::size_t>(i)];
        r = std::max(r, (mep.pencil(i, t.value) * x).norm() / x.norm() / mep.pencil_scale(i, t.value));
      }
      rep.max_residual = std::max(rep.max_residual, r);
      rep.residuals_ok = rep.residuals_ok && r <= opts.residual_factor * tol;
    }
    for (std::size_t b = a + 1; b < ts.size(); ++b) {
      if (euclid(t.value, ts[b].value) <= opts.duplicate_tol * magnitude(t.value)) {
        rep.duplicates_ok = false;
        rep.notes.push_back("duplicate: triplets " + std::to_string(a + 1) + " and " +
                            std::to_string(b + 1));
      }
    }
  }

  std::vector<MepTriplet> oracle;
  try {
    oracle = dense_solve(mep);
  } catch (const SizeCapExceeded& e) {
    rep.notes.push_back(std::string("oracle verification skipped: ") + e.what());
    return;
  }
  rep.oracle_checked = true;
  for (const auto& t : ts) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : oracle) {
      best = std::min(best, euclid(t.value, o.value) / magnitude(o.value));
    }
    rep.max_mismatch = std::max(rep.max_mismatch, best);
  }
  rep.matches_ok = rep.max_mismatch <= opts.match_tol;
  std::sort(oracle.begin(), oracle.end(), [&](const MepTriplet& a, const MepTriplet& b) {
    return euclid(a.value, target) < euclid(b.value, target);
  });
  for (std::size_t i = 0; i < std::min(ts.size(), oracle.size()); ++i) {
    const bool hit = std::any_of(ts.begin(), ts.end(), [&](const MepTriplet& t) {
      return euclid(t.value, oracle[i].value) <= opts.match_tol * magnitude(oracle[i].value);
    });
    if (!hit) {
      rep.nearest_set_ok = false;
      rep.notes.push_back("oracle eigenvalue nearest the target missing from results");
    }
  }
}

}  // namespace

Json generator_json(const GenerateParams& p) {
  Json g{{"name", p.kind}, {"seed", p.seed}};
  if (p.kind == "gyroscopic") {
    g["n"] = p.n;
  } else if (p.kind == "random_pep") {
    g["n"] = p.n;
    g["degree"] = p.degree;
    g["symmetric"] = p.symmetric;
  } else if (p.kind == "example2x2") {
    g["delta"] = p.delta;
    g["eps"] = p.eps;
  } else if (p.kind == "fourpoint") {
    g["N"] = p.chebyshev_n;
  } else if (p.kind == "diagonal_qep") {
    g["b"] = p.b;
    g["c"] = p.c;
  }
  return g;
}

fs::path cmd_generate(const GenerateParams& p, const fs::path& out) {
  auto make = [&]() -> Problem {
    if (p.kind == "gyroscopic") {
      return gen_gyroscopic(p.n, p.seed);
    }
    if (p.kind == "random_pep") {
      return gen_random_pep(p.n, p.degree, p.seed, p.symmetric);
    }
    if (p.kind == "example2x2") {
      return gen_example_2x2(p.delta, p.eps);
    }
    if (p.kind == "fourpoint") {
      return gen_fourpoint_bvp(p.chebyshev_n);
    }
    if (p.kind == "diagonal_qep") {
      if (p.b.size() != p.c.size() || p.b.empty()) {
        throw InvalidArgument("diagonal_qep needs equally long nonempty b and c");
      }
      return make_diagonal_qep(Eigen::Map<const RVector>(p.b.data(), static_cast<Index>(p.b.size())),
                               Eigen::Map<const RVector>(p.c.data(), static_cast<Index>(p.c.size())));
    }
    throw InvalidArgument("unknown problem kind '" + p.kind + "'");
  };
  return save_problem(out, make(), generator_json(p));
}

SolveSummary cmd_solve(const RunManifest& m, std::ostream& log) {
  validate(m);
  const Problem problem = load_problem(m.problem);
  const Json generator = load_generator(m.problem);
  ensure_dir(m.out);

  Json results;
  results["config"] = to_json(m);
  results["generator"] = generator;
  results["triplets"] = Json::array();
  SolveSummary summary;

  if (const auto* poly = std::get_if<PolyProblem>(&problem)) {
    JdOptions o = m.jd;
    o.seed = m.seed;
    const JdResult r = jd_solve(*poly, o);
    results["kind"] = "pep";
    for (const auto& t : r.triplets) {
      results["triplets"].push_back(to_json(t));
    }
    results["truncated"] = r.truncated;
    results["outer_iterations"] = r.outer_iterations;
    results["warnings"] = r.warnings;
    std::ofstream csv(m.out / "convergence.csv");
    if (!csv) {
      throw IoError("cannot write " + (m.out / "convergence.csv").string());
    }
    write_convergence_csv(csv, r.records);
    summary = {static_cast<int>(r.triplets.size()), r.truncated};
  } else {
    const auto& mep = std::get<LinearMep>(problem);
    MepOptions o = m.mep;
    o.seed = m.seed;
    const MepResult r = mep_subspace_solve(mep, o);
    const bool fourpoint = generator.is_object() && generator.value("name", "") == "fourpoint";
    results["kind"] = "mep";
    for (const auto& t : r.triplets) {
      Json j = to_json(t);
      if (fourpoint) {
        const auto idx = fourpoint_indices(t.right);
        j["indices"] = {idx[0], idx[1], idx[2]};
      }
      results["triplets"].push_back(std::move(j));
    }
    results["truncated"] = r.truncated;
    results["outer_iterations"] = r.outer_iterations;
    results["warnings"] = r.warnings;
    std::ofstream csv(m.out / "convergence.csv");
    if (!csv) {
      throw IoError("cannot write " + (m.out / "convergence.csv").string());
    }
    write_mep_convergence_csv(csv, mep.k(), r.records);
    summary = {static_cast<int>(r.triplets.size()), r.truncated};
  }

  write_json(m.out / "results.json", results);
  std::ostringstream table;
  print_table(results, table);
  std::ofstream tf(m.out / "table.txt");
  tf << table.str();
  if (!tf) {
    throw IoError("cannot write " + (m.out / "table.txt").string());
  }
  log << table.str();
  for (const auto& w : results["warnings"]) {
    log << "warning: " << w.get<std::string>() << '\n';
  }
  return summary;
}

VerifyReport cmd_verify(const fs::path& problem_path, const fs::path& results_path,
                        const VerifyOptions& opts, std::ostream& log) {
  const Problem problem = load_problem(problem_path);
  const Json results = read_json(results_path);
  VerifyReport rep;
  if (const auto* poly = std::get_if<PolyProblem>(&problem)) {
    verify_pep(*poly, results, opts, rep);
  } else {
    verify_mep(std::get<LinearMep>(problem), results, opts, rep);
  }
  log << "residuals:   " << (rep.residuals_ok ? "ok" : "FAIL") << " (max " << rep.max_residual
      << ")\n";
  log << "duplicates:  " << (rep.duplicates_ok ? "none" : "FAIL") << '\n';
  if (rep.oracle_checked) {
    log << "oracle:      " << (rep.matches_ok ? "ok" : "FAIL") << " (max mismatch "
        << rep.max_mismatch << ")\n";
    log << "nearest set: " << (rep.nearest_set_ok ? "ok" : "FAIL") << '\n';
  }
  for (const auto& n : rep.notes) {
    log << "note: " << n << '\n';
  }
  log << "verdict:     " << (rep.passed() ? "pass" : "fail") << '\n';
  return rep;
}

void cmd_report(const fs::path& results, std::ostream& os) { print_table(read_json(results), os); }

}  // namespace eigensel::cli
