#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace eigensel {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using SparseCMatrix = Eigen::SparseMatrix<Complex>;
using Index = Eigen::Index;

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// y*P'(lambda)x (or its homogeneous analogue) is too small to be trusted.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// The eigenvalue looks multiple/defective; selection cannot register it.
class DefectiveEigenvalue : public Error {
 public:
  using Error::Error;
};

/// P(tau) is singular to working precision.
class SingularShift : public Error {
 public:
  using Error::Error;
};

class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

/// An iterative routine could not move away from its starting point.
class NoProgress : public Error {
 public:
  using Error::Error;
};

/// A formula hit a zero denominator (mediator split, singular Delta0, ...).
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eigensel
