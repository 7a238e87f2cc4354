#include "eigensel/mep.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "eigensel/dense_eig.hpp"
#include "eigensel/oracle.hpp"

namespace eigensel {

LinearMep::LinearMep(std::vector<CMatrix> a, std::vector<std::vector<CMatrix>> c)
    : a_(std::move(a)), c_(std::move(c)) {
  const std::size_t k = a_.size();
  if (k != 2 && k != 3) {
    throw InvalidArgument("LinearMep supports two or three parameters");
  }
  if (c_.size() != k) {
    throw InvalidArgument("LinearMep needs one row of parameter matrices per equation");
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Index ni = a_[i].rows();
    if (ni < 1 || a_[i].cols() != ni) {
      throw InvalidArgument("LinearMep: A_i must be square and nonempty");
    }
    if (c_[i].size() != k) {
      throw InvalidArgument("LinearMep: each equation needs k parameter matrices");
    }
    for (const auto& m : c_[i]) {
      if (m.rows() != ni || m.cols() != ni) {
        throw InvalidArgument("LinearMep: parameter matrices must match A_i");
      }
    }
  }
  // Delta_0 must be nonsingular; checked explicitly when it is small enough to form.
  if (total_dim() <= 512) {
    std::vector<std::vector<CMatrix>> blocks = c_;
    const CMatrix d0 = operator_determinant(blocks).to_dense();
    Eigen::PartialPivLU<CMatrix> lu(d0);
    if (!(lu.rcond() > 1e-14)) {
      throw DegenerateConfiguration("Delta_0 is numerically singular");
    }
  }
}

LinearMep LinearMep::two(CMatrix a1, CMatrix b1, CMatrix c1, CMatrix a2, CMatrix b2, CMatrix c2) {
  return LinearMep({std::move(a1), std::move(a2)},
                   {{std::move(b1), std::move(c1)}, {std::move(b2), std::move(c2)}});
}

LinearMep LinearMep::three(CMatrix a1, CMatrix b1, CMatrix c1, CMatrix d1, CMatrix a2, CMatrix b2,
                           CMatrix c2, CMatrix d2, CMatrix a3, CMatrix b3, CMatrix c3, CMatrix d3) {
  return LinearMep({std::move(a1), std::move(a2), std::move(a3)},
                   {{std::move(b1), std::move(c1), std::move(d1)},
                    {std::move(b2), std::move(c2), std::move(d2)},
                    {std::move(b3), std::move(c3), std::move(d3)}});
}

Index LinearMep::total_dim() const {
  Index n = 1;
  for (const auto& a : a_) {
    n *= a.rows();
  }
  return n;
}

CMatrix LinearMep::pencil(int i, const std::vector<Complex>& theta) const {
  CMatrix w = a(i);
  for (int j = 0; j < k(); ++j) {
    w -= theta[static_cast<std::size_t>(j)] * c(i, j);
  }
  return w;
}

double LinearMep::pencil_scale(int i, const std::vector<Complex>& theta) const {
  auto norm1 = [](const CMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); };
  double s = norm1(a(i));
  for (int j = 0; j < k(); ++j) {
    s += std::abs(theta[static_cast<std::size_t>(j)]) * norm1(c(i, j));
  }
  return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void KronOperator::add_term(Complex coeff, std::vector<std::shared_ptr<const CMatrix>> factors) {
  if (factors.size() != 2 && factors.size() != 3) {
    throw InvalidArgument("KronOperator terms need 2 or 3 factors");
  }
  if (!factors_.empty() && factors.size() != factors_.front().size()) {
    throw InvalidArgument("KronOperator terms must have the same number of factors");
  }
  coeffs_.push_back(coeff);
  factors_.push_back(std::move(factors));
}

Index KronOperator::rows() const {
  if (factors_.empty()) {
    return 0;
  }
  Index r = 1;
  for (const auto& f : factors_.front()) {
    r *= f->rows();
  }
  return r;
}

Index KronOperator::cols() const {
  if (factors_.empty()) {
    return 0;
  }
  Index c = 1;
  for (const auto& f : factors_.front()) {
    c *= f->cols();
  }
  return c;
}

CVector KronOperator::apply(const CVector& x, kernels::Backend backend) const {
  std::vector<kernels::KronTerm> terms;
  terms.reserve(coeffs_.size());
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    kernels::KronTerm term;
    term.coeff = coeffs_[t];
    for (const auto& f : factors_[t]) {
      term.factors.push_back(f.get());
    }
    terms.push_back(std::move(term));
  }
  return kernels::kron_apply(terms, x, backend);
}

CMatrix KronOperator::to_dense() const {
  CMatrix out = CMatrix::Zero(rows(), cols());
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    CMatrix acc = *factors_[t][0];
    for (std::size_t f = 1; f < factors_[t].size(); ++f) {
      acc = kron(acc, *factors_[t][f]);
    }
    out += coeffs_[t] * acc;
  }
  return out;
}

KronOperator operator_determinant(const std::vector<std::vector<CMatrix>>& blocks) {
  const std::size_t k = blocks.size();
  if (k != 2 && k != 3) {
    throw InvalidArgument("operator_determinant supports 2x2 and 3x3 block arrays");
  }
  std::vector<std::vector<std::shared_ptr<const CMatrix>>> shared(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (blocks[i].size() != k) {
      throw InvalidArgument("operator_determinant needs a square block array");
    }
    for (const auto& b : blocks[i]) {
      shared[i].push_back(std::make_shared<const CMatrix>(b));
    }
  }
  KronOperator op;
  std::array<int, 3> perm{0, 1, 2};
  const auto kk = static_cast<int>(k);
  do {
    bool valid = true;
    for (int i = 0; i < kk; ++i) {
      valid = valid && perm[static_cast<std::size_t>(i)] < kk;
    }
    if (!valid || (k == 2 && perm[2] != 2)) {
      continue;
    }
    int inversions = 0;
    for (int i = 0; i < kk; ++i) {
      for (int j = i + 1; j < kk; ++j) {
        inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)] ? 1 : 0;
      }
    }
    std::vector<std::shared_ptr<const CMatrix>> factors;
    for (std::size_t i = 0; i < k; ++i) {
      factors.push_back(shared[i][static_cast<std::size_t>(perm[i])]);
    }
    op.add_term(inversions % 2 == 0 ? 1.0 : -1.0, std::move(factors));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return op;
}

std::vector<KronOperator> delta_operators(const LinearMep& mep) {
  const int k = mep.k();
  std::vector<std::vector<CMatrix>> base(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      base[static_cast<std::size_t>(i)].push_back(mep.c(i, j));
    }
  }
  std::vector<KronOperator> out{operator_determinant(base)};
  for (int j = 0; j < k; ++j) {
    auto blocks = base;
    for (int i = 0; i < k; ++i) {
      blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mep.a(i);
    }
    out.push_back(operator_determinant(blocks));
  }
  return out;
}

Complex mep_delta0_form(const LinearMep& mep, const std::vector<CVector>& y,
                        const std::vector<CVector>& x) {
  const int k = mep.k();
  CMatrix s(k, k);
  for (int i = 0; i < k; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    for (int j = 0; j < k; ++j) {
      s(i, j) = y[ii].dot(mep.c(i, j) * x[ii]);
    }
  }
  return kernels::small_det(s);
}

void mep_complete_triplet(const LinearMep& mep, MepTriplet& t) {
  const int k = mep.k();
  t.left.resize(static_cast<std::size_t>(k));
  t.residual = 0.0;
  for (int i = 0; i < k; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    t.right[ii] /= t.right[ii].norm();
    const CMatrix w = mep.pencil(i, t.value);
    Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullU);
    t.left[ii] = svd.matrixU().col(w.cols() - 1);
    t.residual = std::max(t.residual, (w * t.right[ii]).norm() / mep.pencil_scale(i, t.value));
  }
  t.denom = mep_delta0_form(mep, t.left, t.right);
}

namespace {

struct Rank1 {
  std::vector<CVector> factors;
  double residual = 0.0;
};

Rank1 rank1_factors(const CVector& z, const std::vector<Index>& dims) {
  Rank1 out;
  const double zn = z.norm();
  if (dims.size() == 2) {
    Eigen::Map<const CMatrix> zm(z.data(), dims[1], dims[0]);
    Eigen::JacobiSVD<CMatrix> svd(CMatrix(zm), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector s = svd.singularValues();
    out.factors = {CVector(svd.matrixV().col(0).conjugate()), CVector(svd.matrixU().col(0))};
    out.residual = s.size() > 1 ? s.tail(s.size() - 1).norm() / s.norm() : 0.0;
    return out;
  }
  const Index n1 = dims[0], n2 = dims[1], n3 = dims[2];
  Eigen::Map<const CMatrix> m1(z.data(), n2 * n3, n1);
  Eigen::JacobiSVD<CMatrix> s1(CMatrix(m1), Eigen::ComputeThinV);
  const CVector x1 = s1.matrixV().col(0).conjugate();
  Eigen::Map<const CMatrix> m3(z.data(), n3, n1 * n2);
  Eigen::JacobiSVD<CMatrix> s3(CMatrix(m3), Eigen::ComputeThinU);
  const CVector x3 = s3.matrixU().col(0);
  CVector x2 = CVector::Zero(n2);
  for (Index i1 = 0; i1 < n1; ++i1) {
    for (Index i2 = 0; i2 < n2; ++i2) {
      for (Index i3 = 0; i3 < n3; ++i3) {
        x2(i2) += std::conj(x1(i1)) * std::conj(x3(i3)) * z((i1 * n2 + i2) * n3 + i3);
      }
    }
  }
  const double x2n = x2.norm();
  if (x2n > 0.0) {
    x2 /= x2n;
  }
  CVector t(z.size());
  for (Index i1 = 0; i1 < n1; ++i1) {
    for (Index i2 = 0; i2 < n2; ++i2) {
      for (Index i3 = 0; i3 < n3; ++i3) {
        t((i1 * n2 + i2) * n3 + i3) = x1(i1) * x2(i2) * x3(i3);
      }
    }
  }
  const Complex proj = t.dot(z);
  out.factors = {x1, x2, x3};
  out.residual = zn > 0.0 ? (z - proj * t).norm() / zn : 0.0;
  return out;
}

}  // namespace

std::vector<MepTriplet> dense_solve(const LinearMep& mep, Index cap) {
  const Index n = mep.total_dim();
  const Index limit = cap > 0 ? cap : oracle_size_cap();
  if (n > limit) {
    throw SizeCapExceeded("MEP dense solve of size " + std::to_string(n) + " exceeds cap " +
                          std::to_string(limit));
  }
  const int k = mep.k();
  const auto deltas = delta_operators(mep);
  std::vector<CMatrix> d;
  for (const auto& op : deltas) {
    d.push_back(op.to_dense());
  }
  Eigen::PartialPivLU<CMatrix> lu(d[0]);
  if (!(lu.rcond() > 1e-14)) {
    throw DegenerateConfiguration("Delta_0 is numerically singular");
  }
  // a generic combination separates eigenvalues that share one coordinate
  static constexpr std::array<double, 3> mix{1.0, 0.6180339887498949, 0.4142135623730950};
  CMatrix comb = CMatrix::Zero(n, n);
  for (int j = 0; j < k; ++j) {
    comb += mix[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(j + 1)];
  }
  const StandardEig eig = standard_eig(lu.solve(comb), false, true);

  std::vector<Index> dims;
  for (int i = 0; i < k; ++i) {
    dims.push_back(mep.n(i));
  }
  std::vector<MepTriplet> out;
  for (Index col = 0; col < n; ++col) {
    const CVector z = eig.right.col(col);
    const CVector d0z = d[0] * z;
    const double nrm2 = d0z.squaredNorm();
    MepTriplet t;
    for (int j = 0; j < k; ++j) {
      t.value.push_back(d0z.dot(d[static_cast<std::size_t>(j + 1)] * z) / nrm2);
    }
    Rank1 r1 = rank1_factors(z, dims);
    t.right = std::move(r1.factors);
    t.rank1_residual = r1.residual;
    t.flagged = r1.residual > 1e-6;
    mep_complete_triplet(mep, t);
    out.push_back(std::move(t));
  }
  return out;
}

double mep_criterion(const std::vector<MepTriplet>& registry, const MepCandidate& cand,
                     const LinearMep& mep) {
  double best = 0.0;
  std::vector<CVector> v;
  for (const auto& f : cand.factors) {
    v.push_back(f / f.norm());
  }
  for (const auto& t : registry) {
    best = std::max(best, std::abs(mep_delta0_form(mep, t.left, v)) / std::abs(t.denom));
  }
  return best;
}

bool mep_passes(const std::vector<MepTriplet>& registry, const MepCandidate& cand,
                const LinearMep& mep, double eta_sel) {
  return mep_criterion(registry, cand, mep) < eta_sel;
}

RVector mep_criterion_values(const std::vector<MepTriplet>& registry,
                             const std::vector<CMatrix>& cand_factors, const LinearMep& mep,
                             kernels::Backend backend) {
  const int k = mep.k();
  const Index nc = cand_factors.empty() ? 0 : cand_factors.front().cols();
  if (registry.empty()) {
    return RVector::Zero(nc);
  }
  const auto d = static_cast<Index>(registry.size());
  std::vector<std::vector<CMatrix>> left(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    for (int j = 0; j < k; ++j) {
      CMatrix rows(d, mep.n(i));
      for (Index r = 0; r < d; ++r) {
        rows.row(r) = (mep.c(i, j).adjoint() * registry[static_cast<std::size_t>(r)].left[ii]).adjoint();
      }
      left[ii].push_back(std::move(rows));
    }
  }
  std::vector<CMatrix> cands;
  for (const auto& f : cand_factors) {
    cands.push_back(f.colwise().normalized());
  }
  CVector denom(d);
  for (Index r = 0; r < d; ++r) {
    denom(r) = registry[static_cast<std::size_t>(r)].denom;
  }
  return kernels::mep_selection_values(left, cands, denom, backend);
}

bool mep_passes_strict(const std::vector<MepTriplet>& registry, const MepCandidate& cand,
                       const LinearMep& mep) {
  if (registry.empty()) {
    return true;
  }
  std::vector<CVector> v;
  for (const auto& f : cand.factors) {
    v.push_back(f / f.norm());
  }
  double num = 0.0;
  double den = std::numeric_limits<double>::infinity();
  for (const auto& t : registry) {
    num = std::max(num, std::abs(mep_delta0_form(mep, t.left, v)));
    den = std::min(den, std::abs(t.denom));
  }
  return num < 0.5 * den;
}

CMatrix difference_quotient(const std::function<CMatrix(const std::vector<Complex>&)>& eval, int j,
                            std::vector<Complex> at, Complex a, Complex b, double tol, double h) {
  const auto jj = static_cast<std::size_t>(j);
  if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) {
    at[jj] = b;
    const CMatrix fb = eval(at);
    at[jj] = a;
    return (fb - eval(at)) / (b - a);
  }
  at[jj] = a + h;
  const CMatrix fp = eval(at);
  at[jj] = a - h;
  return (fp - eval(at)) / (2.0 * h);
}

namespace {

KronOperator dd_operator(const std::vector<MepFunction>& t, const std::vector<Complex>& p1,
                         const std::vector<Complex>& p2) {
  const std::size_t k = t.size();
  if (p1.size() != k || p2.size() != k) {
    throw InvalidArgument("divided-difference points must have one coordinate per parameter");
  }
  std::vector<std::vector<CMatrix>> blocks(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      // parameters before j taken from p2, j varies, after j from p1
      std::vector<Complex> at(k);
      for (std::size_t q = 0; q < k; ++q) {
        at[q] = q < j ? p2[q] : p1[q];
      }
      blocks[i].push_back(t[i].partial_dd(static_cast<int>(j), at, p1[j], p2[j]));
    }
  }
  return operator_determinant(blocks);
}

}  // namespace

KronOperator dd_operator_2p(const std::vector<MepFunction>& t, const std::vector<Complex>& p1,
                            const std::vector<Complex>& p2) {
  if (t.size() != 2) {
    throw InvalidArgument("dd_operator_2p needs two equations");
  }
  return dd_operator(t, p1, p2);
}

KronOperator dd_operator_3p(const std::vector<MepFunction>& t, const std::vector<Complex>& p1,
                            const std::vector<Complex>& p2) {
  if (t.size() != 3) {
    throw InvalidArgument("dd_operator_3p needs three equations");
  }
  return dd_operator(t, p1, p2);
}

std::vector<MepFunction> linear_mep_functions(const LinearMep& mep) {
  std::vector<MepFunction> out;
  for (int i = 0; i < mep.k(); ++i) {
    MepFunction f;
    f.n = mep.n(i);
    f.eval = [&mep, i](const std::vector<Complex>& theta) { return mep.pencil(i, theta); };
    f.partial_dd = [&mep, i](int j, const std::vector<Complex>&, Complex, Complex) -> CMatrix {
      return -mep.c(i, j);
    };
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace eigensel
