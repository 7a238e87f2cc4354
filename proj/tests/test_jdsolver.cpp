#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "eigensel/generators.hpp"
#include "eigensel/jdsolver.hpp"
#include "eigensel/oracle.hpp"
#include "test_util.hpp"

using namespace eigensel;

namespace {

PolyProblem diagonal_qep() {
  RVector b(2), c(2);
  b << -3.0, -7.0;
  c << 2.0, 12.0;
  return make_diagonal_qep(b, c);
}

}  // namespace

TEST_SUITE("jdsolver") {
  TEST_CASE("rgs keeps the basis orthonormal and replaces collapsed vectors") {
    std::mt19937_64 g(41);
    CMatrix v(10, 0);
    for (int i = 0; i < 4; ++i) {
      v = rgs(v, testutil::random_vector(10, g), g);
    }
    v = rgs(v, v.col(0) + v.col(1), g);
    CHECK(v.cols() == 5);
    CHECK((v.adjoint() * v - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-14);
  }

  TEST_CASE("search space stays consistent through expansion and restart") {
    std::mt19937_64 g(42);
    const PolyProblem p = testutil::random_dense_pep(15, 2, g);
    SearchSpace s(p, 3);
    for (int i = 0; i < 8; ++i) {
      REQUIRE(s.expand(testutil::random_vector(15, g)));
    }
    CHECK(s.orthogonality_error() <= 1e-13);
    CHECK(s.consistency_error() <= 1e-13);
    s.restart(testutil::random_matrix(8, 3, g));
    CHECK(s.size() == 3);
    CHECK(s.orthogonality_error() <= 1e-13);
    CHECK(s.consistency_error() <= 1e-13);
  }

  TEST_CASE("full-space extraction orders the diagonal roots") {
    const PolyProblem p = diagonal_qep();
    SearchSpace s(p, 1);
    s.expand(CVector::Unit(2, 0));
    s.expand(CVector::Unit(2, 1));
    const auto cands = extract_candidates(s, 0.0);
    REQUIRE(cands.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(cands[static_cast<std::size_t>(i)].theta - Complex(i + 1.0)) <= 1e-12);
    }
    const auto hom = extract_candidates(s, 0.0, SelectionMode::homogeneous);
    CHECK(hom.size() == 4);
  }

  TEST_CASE("one-sided Galerkin refinement picks the smaller residual root") {
    const PolyProblem p = diagonal_qep();
    CHECK(std::abs(gal1_refine(p, CVector::Unit(2, 0), Complex(0.0)) - Complex(1.0)) <= 1e-12);
    CHECK(std::abs(gal1_refine(p, CVector::Unit(2, 0), Complex(2.1)) - Complex(2.0)) <= 1e-12);
    const ProjectivePoint q = gal1_refine(p, CVector::Unit(2, 1), from_scalar(3.9));
    CHECK(chordal_distance(q, from_scalar(4.0)) <= 1e-12);
  }

  TEST_CASE("diagonal QEP returns 1, 2, 3, 4") {
    const PolyProblem p = diagonal_qep();
    for (const auto ex : {Extraction::ritz, Extraction::gal1}) {
      JdOptions o;
      o.num_pairs = 4;
      o.tol = 1e-10;
      o.extraction = ex;
      const JdResult r = jd_solve(p, o);
      REQUIRE(r.triplets.size() == 4);
      std::vector<double> vals;
      for (const auto& t : r.triplets) {
        vals.push_back(t.value.real());
        CHECK(std::abs(t.value.imag()) <= 1e-8);
      }
      std::sort(vals.begin(), vals.end());
      for (int i = 0; i < 4; ++i) {
        CHECK(vals[static_cast<std::size_t>(i)] == doctest::Approx(i + 1.0).epsilon(1e-8));
      }
      CHECK_FALSE(r.truncated);
    }
  }

  TEST_CASE("random QEP: nearest eigenvalues in order of discovery") {
    const PolyProblem p = gen_random_pep(20, 2, 3);
    JdOptions o;
    o.num_pairs = 3;
    const JdResult r = jd_solve(p, o);
    REQUIRE(r.triplets.size() == 3);
    const auto oracle = oracle_nearest(p, 0.0, 3);
    for (const auto& o3 : oracle) {
      const bool hit = std::any_of(r.triplets.begin(), r.triplets.end(), [&](const EigenTriplet& t) {
        return std::abs(t.value - o3.value) <= 1e-6;
      });
      CHECK(hit);
    }
    for (const auto& t : r.triplets) {
      CHECK(t.residual <= o.tol);
      CHECK(t.cond.has_value());
    }
  }

  TEST_CASE("homogeneous mode on a gyroscopic problem agrees with the oracle") {
    const PolyProblem p = gen_gyroscopic(40, 2);
    JdOptions o;
    o.num_pairs = 4;
    o.mode = SelectionMode::homogeneous;
    o.target = Complex(0.0, 3.0);
    o.tol = 1e-8;
    const JdResult r = jd_solve(p, o);
    REQUIRE(r.triplets.size() == 4);
    const auto oracle = oracle_all_eigenpairs(p);
    for (const auto& t : r.triplets) {
      double best = 1.0;
      for (const auto& q : oracle) {
        best = std::min(best, chordal_distance(t.point, q.point));
      }
      CHECK(best <= 1e-6);
    }
  }

  TEST_CASE("truncation is reported when the budget runs out") {
    const PolyProblem p = gen_random_pep(30, 2, 4);
    JdOptions o;
    o.num_pairs = 10;
    o.max_outer = 3;
    const JdResult r = jd_solve(p, o);
    CHECK(r.truncated);
    CHECK(r.outer_iterations == 3);
  }

  TEST_CASE("convergence CSV format") {
    const PolyProblem p = diagonal_qep();
    JdOptions o;
    o.num_pairs = 2;
    const JdResult r = jd_solve(p, o);
    std::ostringstream os;
    write_convergence_csv(os, r.records);
    const std::string s = os.str();
    CHECK(s.rfind("iteration,re_theta,im_theta,residual,criterion,event\n", 0) == 0);
    CHECK(s.find("converged") != std::string::npos);
    std::vector<ConvergenceRecord> inf{{1, infinity_point(), 0.0, true, 1e-3, 0.0, JdEvent::expanded}};
    std::ostringstream os2;
    write_convergence_csv(os2, inf);
    CHECK(os2.str().find("1,inf,inf,") != std::string::npos);
  }

  TEST_CASE("invalid options are rejected") {
    const PolyProblem p = diagonal_qep();
    JdOptions o;
    o.eta_sel = 0.0;
    CHECK_THROWS_AS(jd_solve(p, o), InvalidArgument);
    JdOptions q;
    q.num_pairs = 0;
    CHECK_THROWS_AS(jd_solve(p, q), InvalidArgument);
  }
}
