#include <doctest.h>

#include "eigensel/generators.hpp"
#include "eigensel/problems.hpp"
#include "test_util.hpp"

using namespace eigensel;
using testutil::random_complex;
using testutil::random_dense_pep;

TEST_SUITE("problems") {
  TEST_CASE("Horner evaluation agrees with the explicit sum") {
    std::mt19937_64 g(1);
    const PolyProblem p = random_dense_pep(5, 3, g);
    const Complex lam(0.7, -1.3);
    CMatrix direct = CMatrix::Zero(5, 5);
    for (int i = 0; i <= 3; ++i) {
      direct += std::pow(lam, i) * p.coeff(i).to_dense();
    }
    CHECK((p.eval(lam) - direct).norm() <= 1e-13 * direct.norm());
  }

  TEST_CASE("divided difference satisfies the ratio identity and is symmetric") {
    std::mt19937_64 g(2);
    for (int m = 1; m <= 4; ++m) {
      const PolyProblem p = random_dense_pep(4, m, g);
      const Complex a = random_complex(g), b = random_complex(g);
      const CMatrix dd = p.divided_difference(a, b);
      const CMatrix diff = p.eval(a) - p.eval(b);
      CHECK((dd * (a - b) - diff).norm() <= 1e-12 * diff.norm());
      const auto w1 = divided_difference_weights(m, a, b);
      const auto w2 = divided_difference_weights(m, b, a);
      for (std::size_t i = 0; i < w1.size(); ++i) {
        CHECK(w1[i] == w2[i]);
      }
    }
  }

  TEST_CASE("divided difference at coincident points is the derivative") {
    std::mt19937_64 g(3);
    const PolyProblem p = random_dense_pep(4, 3, g);
    const Complex a(0.3, 0.4);
    CHECK((p.divided_difference(a, a) - p.derivative(a)).norm() <= 1e-13 * p.derivative(a).norm());
  }

  TEST_CASE("sparse and dense coefficients give the same operator") {
    std::mt19937_64 g(4);
    const CMatrix a = testutil::random_matrix(6, 6, g);
    const Coefficient dense(a);
    const Coefficient sparse(SparseCMatrix(a.sparseView()));
    const CVector v = testutil::random_vector(6, g);
    CHECK((dense.apply(v) - sparse.apply(v)).norm() <= 1e-13);
    CHECK((dense.apply_adjoint(v) - sparse.apply_adjoint(v)).norm() <= 1e-13);
    CHECK(dense.norm1() == doctest::Approx(sparse.norm1()).epsilon(1e-14));
    CHECK(norm2_estimate(a) <= a.norm() + 1e-12);
  }

  TEST_CASE("condition number of the diagonal QEP at lambda = 1 is 20") {
    RVector b(2), c(2);
    b << -3.0, -7.0;
    c << 2.0, 12.0;
    const PolyProblem p = make_diagonal_qep(b, c);
    const CVector e1 = CVector::Unit(2, 0);
    CHECK(condition_number(p, 1.0, e1, e1) == doctest::Approx(20.0).epsilon(1e-3));
  }

  TEST_CASE("condition number rejects a vanishing denominator") {
    RVector b(2), c(2);
    b << -2.0, -7.0;
    c << 1.0, 12.0;
    // lambda = 1 is a double root of lambda^2 - 2 lambda + 1
    const PolyProblem p = make_diagonal_qep(b, c);
    const CVector e1 = CVector::Unit(2, 0);
    CHECK_THROWS_AS(condition_number(p, 1.0, e1, e1), IllConditioned);
  }

  TEST_CASE("general NEP switches to the derivative for nearby points") {
    const GeneralNep f(
        1, [](Complex l) { return CMatrix::Constant(1, 1, std::exp(l)); },
        [](Complex l) { return CMatrix::Constant(1, 1, std::exp(l)); });
    const Complex a(0.5, 0.0);
    CHECK(std::abs(f.divided_difference(a, a + 1e-12)(0, 0) - std::exp(a)) <= 1e-12);
    const Complex b(0.7, 0.0);
    CHECK(std::abs(f.divided_difference(a, b)(0, 0) - (std::exp(a) - std::exp(b)) / (a - b)) <= 1e-14);
  }

  TEST_CASE("gyroscopic generator structure and determinism") {
    const PolyProblem p = gen_gyroscopic(30, 5);
    const PolyProblem q = gen_gyroscopic(30, 5);
    CHECK(p.degree() == 2);
    CHECK(p.any_sparse());
    const CMatrix a = p.coeff(2).to_dense();
    const CMatrix b = p.coeff(1).to_dense();
    const CMatrix c = p.coeff(0).to_dense();
    CHECK(a(0, 0) == Complex(0.0));
    CHECK((a - CMatrix(a.diagonal().asDiagonal())).norm() == 0.0);
    CHECK((b + b.transpose()).norm() == 0.0);
    CHECK(b(0, 1) == Complex(1.0));
    CHECK(b(1, 0) == Complex(-1.0));
    for (Index i = 0; i < 30; ++i) {
      CHECK(a(i, i).real() >= 0.0);
      CHECK(a(i, i).real() <= 1.0);
      CHECK(c(i, i).real() < 0.0);
      CHECK(c(i, i).real() > -1.0);
    }
    CHECK((a - q.coeff(2).to_dense()).norm() == 0.0);
    CHECK((c - q.coeff(0).to_dense()).norm() == 0.0);
  }

  TEST_CASE("example 2x2 pencil") {
    const PolyProblem p = gen_example_2x2(1e-6, 1e-3);
    const CMatrix a0 = p.coeff(0).to_dense();
    CHECK(a0(0, 0) == Complex(0.0));
    CHECK(a0(0, 1) == Complex(1e-3));
    CHECK(a0(1, 1) == Complex(1e-6));
    CHECK((p.coeff(1).to_dense() + CMatrix::Identity(2, 2)).norm() == 0.0);
  }

  TEST_CASE("random PEP generator is reproducible and optionally symmetric") {
    const PolyProblem p = gen_random_pep(5, 3, 9, true);
    const PolyProblem q = gen_random_pep(5, 3, 9, true);
    for (int i = 0; i <= 3; ++i) {
      const CMatrix a = p.coeff(i).to_dense();
      CHECK((a - a.transpose()).norm() == 0.0);
      CHECK((a - q.coeff(i).to_dense()).norm() == 0.0);
    }
  }

  TEST_CASE("invalid coefficient shapes are rejected") {
    std::vector<Coefficient> cs{Coefficient(CMatrix::Identity(2, 2)), Coefficient(CMatrix::Identity(3, 3))};
    CHECK_THROWS_AS(PolyProblem(std::move(cs)), InvalidArgument);
  }
}
