#include <doctest.h>

#include "eigensel/generators.hpp"
#include "eigensel/linsolve.hpp"
#include "test_util.hpp"

using namespace eigensel;

TEST_SUITE("linsolve") {
  TEST_CASE("GMRES solves a well-conditioned system") {
    std::mt19937_64 g(21);
    const CMatrix a = CMatrix::Identity(30, 30) * 6.0 + testutil::random_matrix(30, 30, g) * 0.3;
    const CVector b = testutil::random_vector(30, g);
    const GmresResult r = gmres(dense_operator(a), b, CVector::Zero(30), 1e-12, 60);
    CHECK(r.converged);
    CHECK((a * r.x - b).norm() <= 1e-11);
    CHECK(r.history.size() == static_cast<std::size_t>(r.iterations));
    for (std::size_t i = 1; i < r.history.size(); ++i) {
      CHECK(r.history[i] <= r.history[i - 1] * (1.0 + 1e-12));
    }
  }

  TEST_CASE("exact preconditioner converges in one step") {
    std::mt19937_64 g(22);
    const CMatrix a = testutil::random_matrix(12, 12, g);
    const Preconditioner m = lu_preconditioner(a);
    const CVector b = testutil::random_vector(12, g);
    const GmresResult r = gmres(dense_operator(a), b, CVector::Zero(12), 1e-12, 5, &m);
    CHECK(r.iterations == 1);
    CHECK((a * r.x - b).norm() <= 1e-10);
  }

  TEST_CASE("LU preconditioner of a diagonal shift") {
    RVector b(2), c(2);
    b << 0.0, 0.0;
    c << 2.0, 4.0;
    const PolyProblem p = make_diagonal_qep(b, c);
    const Preconditioner m = lu_preconditioner(p, 0.0);
    CVector rhs(2);
    rhs << 2.0, 4.0;
    CHECK((m.solve(rhs) - CVector::Ones(2)).norm() <= 1e-15);
    const SparseCMatrix s = CMatrix(CMatrix::Identity(3, 3) * 2.0).sparseView();
    CHECK((lu_preconditioner(s).solve(CVector::Ones(3)) - 0.5 * CVector::Ones(3)).norm() <= 1e-15);
  }

  TEST_CASE("singular shift is reported") {
    CMatrix a = CMatrix::Identity(3, 3);
    a(2, 2) = 0.0;
    CHECK_THROWS_AS(lu_preconditioner(a), SingularShift);
  }

  TEST_CASE("correction is orthogonal to v and vanishes at an exact eigenpair") {
    RVector b(2), c(2);
    b << -3.0, -7.0;
    c << 2.0, 12.0;
    const PolyProblem p = make_diagonal_qep(b, c);
    const CVector e1 = CVector::Unit(2, 0);
    const CVector r = p.apply(1.0, e1);
    const CVector t = projected_correction_solve(p, 1.0, e1, r, 5);
    CHECK(t.norm() <= 1e-14);

    std::mt19937_64 g(23);
    const CMatrix a = testutil::random_matrix(10, 10, g);
    const CVector v = testutil::random_vector(10, g);
    const CVector u = testutil::random_vector(10, g);
    CVector rr = testutil::random_vector(10, g);
    rr -= v * v.dot(rr);
    std::vector<double> hist;
    const CVector t2 = jd_correction(dense_operator(a), u, v, rr, 8, nullptr, &hist);
    CHECK(std::abs(v.dot(t2)) <= 1e-13 * t2.norm());
    CHECK(!hist.empty());
  }

  TEST_CASE("null vector of a singular matrix") {
    std::mt19937_64 g(24);
    CMatrix z = testutil::random_matrix(8, 8, g);
    const CVector x = testutil::random_vector(8, g);
    z -= (z * x) * x.adjoint();
    const NullVectorResult r = null_vector(dense_operator(z), testutil::random_vector(8, g), 1e-10);
    CHECK(r.converged);
    CHECK((z * r.y).norm() <= 1e-10);
    CHECK(std::abs(std::abs(x.dot(r.y)) - 1.0) <= 1e-8);
  }

  TEST_CASE("left eigenvector of the diagonal QEP") {
    RVector b(2), c(2);
    b << -3.0, -7.0;
    c << 2.0, 12.0;
    const PolyProblem p = make_diagonal_qep(b, c);
    const NullVectorResult r = left_eigenvector(p, 1.0);
    CHECK(std::abs(r.y(0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.y(1)) <= 1e-12);
    const NullVectorResult h = left_eigenvector(p, from_scalar(3.0));
    CHECK(std::abs(h.y(1)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}
