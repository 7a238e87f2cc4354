#include "eigensel/fourpoint.hpp"

#include <cmath>
#include <numbers>

namespace eigensel {

Chebyshev chebyshev(int n) {
  if (n < 1) {
    throw InvalidArgument("chebyshev needs at least two points");
  }
  Chebyshev out;
  out.x.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    out.x(j) = -std::cos(std::numbers::pi * j / n);
  }
  out.d = Eigen::MatrixXd::Zero(n + 1, n + 1);
  auto weight = [n](int j) { return ((j == 0 || j == n) ? 2.0 : 1.0) * (j % 2 == 0 ? 1.0 : -1.0); };
  for (int i = 0; i <= n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j <= n; ++j) {
      if (i != j) {
        out.d(i, j) = weight(i) / weight(j) / (out.x(i) - out.x(j));
        rowsum += out.d(i, j);
      }
    }
    out.d(i, i) = -rowsum;
  }
  return out;
}

RVector fourpoint_grid(int n, int interval) {
  const Chebyshev c = chebyshev(n);
  return (c.x.segment(1, n - 1).array() + 1.0) / 2.0 + static_cast<double>(interval);
}

LinearMep gen_fourpoint_bvp(int n) {
  if (n < 8) {
    throw InvalidArgument("fourpoint discretization needs N >= 8");
  }
  const Chebyshev c = chebyshev(n);
  // nodes mapped from [-1, 1] onto an interval of length 1
  const Eigen::MatrixXd d2 = 4.0 * (c.d * c.d);
  const Index m = n - 1;
  const CMatrix a = -d2.block(1, 1, m, m).cast<Complex>();
  std::vector<CMatrix> as;
  std::vector<std::vector<CMatrix>> cs;
  for (int i = 0; i < 3; ++i) {
    const RVector x = fourpoint_grid(n, i);
    as.push_back(a);
    cs.push_back({CMatrix::Identity(m, m),
                  (2.0 * x.array().cos()).matrix().cast<Complex>().asDiagonal(),
                  (2.0 * (2.0 * x.array()).cos()).matrix().cast<Complex>().asDiagonal()});
  }
  return LinearMep(std::move(as), std::move(cs));
}

int oscillation_index(const RVector& x) {
  if (x.size() == 0) {
    return 0;
  }
  const double floor = 1e-8 * x.cwiseAbs().maxCoeff();
  int changes = 0;
  int last = 0;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) <= floor) {
      continue;
    }
    const int s = x(i) > 0.0 ? 1 : -1;
    if (last != 0 && s != last) {
      ++changes;
    }
    last = s;
  }
  return changes;
}

RVector real_phase(const CVector& x) {
  Index imax = 0;
  x.cwiseAbs().maxCoeff(&imax);
  const Complex p = x(imax) == Complex(0.0) ? Complex(1.0) : x(imax) / std::abs(x(imax));
  return (x / p).real();
}

std::array<int, 3> fourpoint_indices(const std::vector<CVector>& factors) {
  if (factors.size() != 3) {
    throw InvalidArgument("fourpoint eigenvectors have three factors");
  }
  return {oscillation_index(real_phase(factors[0])), oscillation_index(real_phase(factors[1])),
          oscillation_index(real_phase(factors[2]))};
}

}  // namespace eigensel
