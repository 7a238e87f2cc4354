#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eigensel/fourpoint.hpp"
#include "eigensel/mep.hpp"
#include "eigensel/mep_solver.hpp"
#include "test_util.hpp"

using namespace eigensel;
using testutil::random_matrix;

namespace {

LinearMep random_mep(int k, Index n, std::mt19937_64& g) {
  std::vector<CMatrix> a;
  std::vector<std::vector<CMatrix>> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    a.push_back(random_matrix(n, n, g));
    for (int j = 0; j < k; ++j) {
      c[static_cast<std::size_t>(i)].push_back(random_matrix(n, n, g));
    }
  }
  return LinearMep(std::move(a), std::move(c));
}

CMatrix diag(std::initializer_list<double> d) {
  RVector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) {
    v(i++) = x;
  }
  return v.cast<Complex>().asDiagonal();
}

CVector kron_vec(const std::vector<CVector>& f) {
  CVector z = f[0];
  for (std::size_t i = 1; i < f.size(); ++i) {
    z = kron(z, f[i]);
  }
  return z;
}

}  // namespace

TEST_SUITE("mep") {
  TEST_CASE("scalar Delta_0 is b1 c2 - c1 b2") {
    auto s = [](double x) { return CMatrix::Constant(1, 1, Complex(x)); };
    const LinearMep mep = LinearMep::two(s(1.0), s(2.0), s(3.0), s(4.0), s(5.0), s(7.0));
    const auto d = delta_operators(mep);
    CHECK(std::abs(d[0].to_dense()(0, 0) - Complex(2.0 * 7.0 - 3.0 * 5.0)) <= 1e-15);
    const auto t = dense_solve(mep);
    REQUIRE(t.size() == 1);
    // 1 = 2 l + 3 m, 4 = 5 l + 7 m
    CHECK(std::abs(t[0].value[0] - Complex(5.0)) <= 1e-12);
    CHECK(std::abs(t[0].value[1] - Complex(-3.0)) <= 1e-12);
  }

  TEST_CASE("identity Delta_0") {
    const CMatrix i2 = CMatrix::Identity(2, 2), z2 = CMatrix::Zero(2, 2);
    std::mt19937_64 g(51);
    const LinearMep mep =
        LinearMep::two(random_matrix(2, 2, g), i2, z2, random_matrix(2, 2, g), z2, i2);
    CHECK((delta_operators(mep)[0].to_dense() - CMatrix::Identity(4, 4)).norm() <= 1e-15);
  }

  TEST_CASE("Delta formulas match the Kronecker expressions") {
    std::mt19937_64 g(52);
    const LinearMep m = random_mep(2, 3, g);
    const auto d = delta_operators(m);
    CHECK((d[0].to_dense() - (kron(m.c(0, 0), m.c(1, 1)) - kron(m.c(0, 1), m.c(1, 0)))).norm() <= 1e-13);
    CHECK((d[1].to_dense() - (kron(m.a(0), m.c(1, 1)) - kron(m.c(0, 1), m.a(1)))).norm() <= 1e-13);
    CHECK((d[2].to_dense() - (kron(m.c(0, 0), m.a(1)) - kron(m.a(0), m.c(1, 0)))).norm() <= 1e-13);
  }

  TEST_CASE("dense solve: residuals and Delta self-check") {
    std::mt19937_64 g(53);
    for (int k = 2; k <= 3; ++k) {
      const LinearMep m = random_mep(k, k == 2 ? 3 : 2, g);
      const auto ts = dense_solve(m);
      CHECK(ts.size() == static_cast<std::size_t>(m.total_dim()));
      const auto d = delta_operators(m);
      for (const auto& t : ts) {
        CHECK_FALSE(t.flagged);
        CHECK(t.residual <= 1e-8);
        const CVector z = kron_vec(t.right);
        const CVector d0z = d[0].apply(z);
        for (int j = 0; j < k; ++j) {
          CHECK((d[static_cast<std::size_t>(j + 1)].apply(z) - t.value[static_cast<std::size_t>(j)] * d0z).norm() <=
                1e-8 * (1.0 + std::abs(t.value[static_cast<std::size_t>(j)])) * d0z.norm());
        }
        for (int i = 0; i < k; ++i) {
          const auto ii = static_cast<std::size_t>(i);
          CHECK((m.pencil(i, t.value).adjoint() * t.left[ii]).norm() <= 1e-8 * m.pencil_scale(i, t.value));
        }
      }
    }
  }

  TEST_CASE("decoupled problems give every index combination") {
    const CMatrix i2 = CMatrix::Identity(2, 2), z2 = CMatrix::Zero(2, 2);
    const LinearMep m = LinearMep::two(diag({1.0, 2.0}), i2, z2, diag({10.0, 20.0}), z2, i2);
    const auto ts = dense_solve(m);
    REQUIRE(ts.size() == 4);
    for (double l : {1.0, 2.0}) {
      for (double mu : {10.0, 20.0}) {
        const bool found = std::any_of(ts.begin(), ts.end(), [&](const MepTriplet& t) {
          return std::abs(t.value[0] - l) <= 1e-12 && std::abs(t.value[1] - mu) <= 1e-12;
        });
        CHECK(found);
      }
    }
    const CMatrix i1 = CMatrix::Identity(2, 2);
    const LinearMep m3 = LinearMep::three(diag({1.0, 2.0}), i1, z2, z2, diag({3.0, 4.0}), z2, i1, z2,
                                          diag({5.0, 6.0}), z2, z2, i1);
    CHECK(dense_solve(m3).size() == 8);
  }

  TEST_CASE("criterion: empty registry, self value, cross values") {
    std::mt19937_64 g(54);
    const LinearMep m = random_mep(2, 3, g);
    const auto ts = dense_solve(m);
    const MepCandidate c0{ts[0].value, ts[0].right};
    CHECK(mep_criterion({}, c0, m) == 0.0);
    CHECK(mep_passes({}, c0, m, 0.1));
    const std::vector<MepTriplet> reg{ts[0]};
    CHECK(mep_criterion(reg, c0, m) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(mep_passes(reg, c0, m, 0.1));
    for (std::size_t q = 1; q < ts.size(); ++q) {
      CHECK(mep_criterion(reg, {ts[q].value, ts[q].right}, m) <= 1e-8);
      CHECK(mep_passes_strict(reg, {ts[q].value, ts[q].right}, m));
    }
    CHECK_FALSE(mep_passes_strict(reg, c0, m));
  }

  TEST_CASE("factorized numerators equal the explicit Kronecker form") {
    std::mt19937_64 g(55);
    for (int k = 2; k <= 3; ++k) {
      const LinearMep m = random_mep(k, 3, g);
      const CMatrix d0 = delta_operators(m)[0].to_dense();
      std::vector<CVector> y, x;
      for (int i = 0; i < k; ++i) {
        y.push_back(testutil::random_vector(3, g));
        x.push_back(testutil::random_vector(3, g));
      }
      const Complex explicit_form = kron_vec(y).dot(d0 * kron_vec(x));
      CHECK(std::abs(mep_delta0_form(m, y, x) - explicit_form) <= 1e-12 * std::max(1.0, std::abs(explicit_form)));
    }
  }

  TEST_CASE("batched criterion matches the scalar one") {
    std::mt19937_64 g(56);
    const LinearMep m = random_mep(3, 2, g);
    const auto ts = dense_solve(m);
    const std::vector<MepTriplet> reg{ts[0], ts[1]};
    std::vector<CMatrix> f(3, CMatrix(2, static_cast<Index>(ts.size())));
    for (std::size_t c = 0; c < ts.size(); ++c) {
      for (std::size_t i = 0; i < 3; ++i) {
        f[i].col(static_cast<Index>(c)) = ts[c].right[i];
      }
    }
    for (const auto b : {kernels::Backend::serial, kernels::Backend::parallel}) {
      const RVector v = mep_criterion_values(reg, f, m, b);
      for (std::size_t c = 0; c < ts.size(); ++c) {
        CHECK(v(static_cast<Index>(c)) ==
              doctest::Approx(mep_criterion(reg, {ts[c].value, ts[c].right}, m)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("linear divided-difference operators are constant") {
    std::mt19937_64 g(57);
    const LinearMep m2 = random_mep(2, 2, g);
    const auto f2 = linear_mep_functions(m2);
    const CMatrix d2 = dd_operator_2p(f2, {1.0, 2.0}, {Complex(0.0, 1.0), -3.0}).to_dense();
    CHECK((d2 - delta_operators(m2)[0].to_dense()).norm() <= 1e-13);
    const LinearMep m3 = random_mep(3, 2, g);
    const auto f3 = linear_mep_functions(m3);
    const CMatrix d3 = dd_operator_3p(f3, {1.0, 2.0, 3.0}, {0.5, 0.5, 0.5}).to_dense();
    CHECK((d3 + delta_operators(m3)[0].to_dense()).norm() <= 1e-13);
  }

  TEST_CASE("quadratic-in-lambda divided difference matches difference quotients") {
    std::mt19937_64 g(58);
    std::vector<CMatrix> a, b, c, e;
    for (int i = 0; i < 2; ++i) {
      a.push_back(random_matrix(2, 2, g));
      b.push_back(random_matrix(2, 2, g));
      c.push_back(random_matrix(2, 2, g));
      e.push_back(random_matrix(2, 2, g));
    }
    std::vector<MepFunction> fs;
    for (std::size_t i = 0; i < 2; ++i) {
      MepFunction f;
      f.n = 2;
      f.eval = [=](const std::vector<Complex>& t) -> CMatrix {
        return a[i] - t[0] * b[i] - t[1] * c[i] - t[0] * t[0] * e[i];
      };
      f.partial_dd = [=](int j, const std::vector<Complex>&, Complex x, Complex y) -> CMatrix {
        return j == 0 ? CMatrix(-b[i] - (x + y) * e[i]) : CMatrix(-c[i]);
      };
      fs.push_back(f);
    }
    std::vector<MepFunction> numeric = fs;
    for (auto& f : numeric) {
      const auto ev = f.eval;
      f.partial_dd = [ev](int j, const std::vector<Complex>& at, Complex x, Complex y) {
        return difference_quotient(ev, j, at, x, y);
      };
    }
    const std::vector<Complex> p1{0.3, -0.2}, p2{1.1, 0.7};
    const CMatrix exact = dd_operator_2p(fs, p1, p2).to_dense();
    const CMatrix approx = dd_operator_2p(numeric, p1, p2).to_dense();
    CHECK((exact - approx).norm() <= 1e-10 * exact.norm());
    const CMatrix at_point = dd_operator_2p(fs, p1, p1).to_dense();
    const CMatrix jac = dd_operator_2p(numeric, p1, p1).to_dense();
    CHECK((at_point - jac).norm() <= 1e-8 * at_point.norm());
  }

  TEST_CASE("subspace solver on a decoupled problem") {
    const LinearMep m = LinearMep::two(diag({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}), CMatrix::Identity(6, 6),
                                       CMatrix::Zero(6, 6), diag({-1.0, 0.5, 2.5, 3.0, 7.0, 9.0}),
                                       CMatrix::Zero(6, 6), CMatrix::Identity(6, 6));
    MepOptions o;
    o.num_pairs = 4;
    o.mindim = 2;
    o.maxdim = 4;
    const MepResult r = mep_subspace_solve(m, o);
    REQUIRE(r.triplets.size() == 4);
    auto oracle = dense_solve(m);
    std::sort(oracle.begin(), oracle.end(), [](const MepTriplet& x, const MepTriplet& y) {
      return std::norm(x.value[0]) + std::norm(x.value[1]) < std::norm(y.value[0]) + std::norm(y.value[1]);
    });
    for (std::size_t q = 0; q < 4; ++q) {
      const bool hit = std::any_of(r.triplets.begin(), r.triplets.end(), [&](const MepTriplet& t) {
        return std::abs(t.value[0] - oracle[q].value[0]) + std::abs(t.value[1] - oracle[q].value[1]) <= 1e-8;
      });
      CHECK(hit);
    }
    for (std::size_t a = 0; a < r.triplets.size(); ++a) {
      for (std::size_t b = a + 1; b < r.triplets.size(); ++b) {
        CHECK(std::abs(r.triplets[a].value[0] - r.triplets[b].value[0]) +
                  std::abs(r.triplets[a].value[1] - r.triplets[b].value[1]) > 1e-6);
      }
    }
  }

  TEST_CASE("subspace solver with one pair and random problems") {
    std::mt19937_64 g(59);
    const LinearMep m = random_mep(2, 12, g);
    MepOptions o;
    o.num_pairs = 1;
    const MepResult r = mep_subspace_solve(m, o);
    REQUIRE(r.triplets.size() == 1);
    CHECK(r.triplets[0].residual <= o.tol);
    MepOptions bad;
    bad.target = {0.0};
    CHECK_THROWS_AS(mep_subspace_solve(m, bad), InvalidArgument);
  }

  TEST_CASE("fourpoint generator") {
    CHECK_THROWS_AS(gen_fourpoint_bvp(6), InvalidArgument);
    const LinearMep m = gen_fourpoint_bvp(10);
    CHECK(m.k() == 3);
    CHECK(m.n(0) == 9);
    const RVector x = fourpoint_grid(10, 2);
    CHECK(x.minCoeff() > 2.0);
    CHECK(x.maxCoeff() < 3.0);
    const auto ts = dense_solve(m);
    const auto ground = std::min_element(ts.begin(), ts.end(), [](const MepTriplet& a, const MepTriplet& b) {
      return std::abs(a.value[0]) + std::abs(a.value[1]) + std::abs(a.value[2]) <
             std::abs(b.value[0]) + std::abs(b.value[1]) + std::abs(b.value[2]);
    });
    CHECK(std::abs(ground->value[0] - std::numbers::pi * std::numbers::pi) <= 1e-3);
    CHECK(std::abs(ground->value[1]) <= 1e-3);
    CHECK(std::abs(ground->value[2]) <= 1e-3);
    const auto idx = fourpoint_indices(ground->right);
    CHECK(idx == std::array<int, 3>{0, 0, 0});
  }

  TEST_CASE("Chebyshev differentiation is exact for low-degree polynomials") {
    const Chebyshev c = chebyshev(8);
    const RVector f = c.x.array().cube();
    const RVector df = 3.0 * c.x.array().square();
    CHECK((c.d * f - df).norm() <= 1e-12);
  }

  TEST_CASE("oscillation index counts sign changes") {
    const int n = 50;
    RVector s1(n), s2(n);
    for (int i = 0; i < n; ++i) {
      const double t = (i + 0.5) / n;
      s1(i) = std::sin(std::numbers::pi * t);
      s2(i) = std::sin(2.0 * std::numbers::pi * t);
    }
    CHECK(oscillation_index(s1) == 0);
    CHECK(oscillation_index(s2) == 1);
    RVector noisy = s1;
    noisy(0) = -1e-12;
    CHECK(oscillation_index(noisy) == 0);
  }

  TEST_CASE("shape errors are rejected") {
    CHECK_THROWS_AS(LinearMep({CMatrix::Identity(2, 2)}, {{CMatrix::Identity(2, 2)}}), InvalidArgument);
    const CMatrix z = CMatrix::Zero(2, 2);
    CHECK_THROWS_AS(LinearMep::two(z, z, z, z, z, z), DegenerateConfiguration);
  }
}
