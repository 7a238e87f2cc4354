#include "eigensel/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

namespace eigensel {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void write_value(std::ostream& os, Complex z) { os << z.real() << ' ' << z.imag() << '\n'; }

}  // namespace

void write_matrix_market(const std::filesystem::path& path, const Coefficient& m) {
  std::ofstream os(path);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  os.precision(17);
  if (m.is_sparse()) {
    const SparseCMatrix s = m.to_sparse();
    os << "%%MatrixMarket matrix coordinate complex general\n";
    os << s.rows() << ' ' << s.cols() << ' ' << s.nonZeros() << '\n';
    for (Index k = 0; k < s.outerSize(); ++k) {
      for (SparseCMatrix::InnerIterator it(s, k); it; ++it) {
        os << it.row() + 1 << ' ' << it.col() + 1 << ' ';
        write_value(os, it.value());
      }
    }
  } else {
    const CMatrix d = m.to_dense();
    os << "%%MatrixMarket matrix array complex general\n";
    os << d.rows() << ' ' << d.cols() << '\n';
    for (Index j = 0; j < d.cols(); ++j) {
      for (Index i = 0; i < d.rows(); ++i) {
        write_value(os, d(i, j));
      }
    }
  }
  if (!os) {
    throw IoError("write failed for " + path.string());
  }
}

Coefficient read_matrix_market(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw IoError("cannot open " + path.string());
  }
  std::string line;
  std::getline(is, line);
  std::istringstream header(lower(line));
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix") {
    throw IoError(path.string() + ": not a Matrix Market matrix");
  }
  const bool coordinate = format == "coordinate";
  if (!coordinate && format != "array") {
    throw IoError(path.string() + ": unknown format " + format);
  }
  const bool complex_field = field == "complex";
  if (!complex_field && field != "real" && field != "integer" && field != "pattern") {
    throw IoError(path.string() + ": unsupported field " + field);
  }
  if (field == "pattern" && !coordinate) {
    throw IoError(path.string() + ": pattern field requires coordinate format");
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian" &&
      symmetry != "skew-symmetric") {
    throw IoError(path.string() + ": unsupported symmetry " + symmetry);
  }
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') {
      break;
    }
  }
  std::istringstream dims(line);
  Index rows = 0, cols = 0, nnz = 0;
  dims >> rows >> cols;
  if (coordinate) {
    dims >> nnz;
  }
  if (!dims || rows < 0 || cols < 0) {
    throw IoError(path.string() + ": bad size line");
  }
  auto read_value = [&]() -> Complex {
    if (field == "pattern") {
      return 1.0;
    }
    double re = 0.0, im = 0.0;
    is >> re;
    if (complex_field) {
      is >> im;
    }
    if (!is) {
      throw IoError(path.string() + ": truncated data");
    }
    return {re, im};
  };
  auto mirror = [&](Complex z) {
    if (symmetry == "hermitian") {
      return std::conj(z);
    }
    return symmetry == "skew-symmetric" ? -z : z;
  };
  if (coordinate) {
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(static_cast<std::size_t>(symmetry == "general" ? nnz : 2 * nnz));
    for (Index k = 0; k < nnz; ++k) {
      Index i = 0, j = 0;
      is >> i >> j;
      const Complex z = read_value();
      if (i < 1 || j < 1 || i > rows || j > cols) {
        throw IoError(path.string() + ": entry index out of range");
      }
      entries.emplace_back(i - 1, j - 1, z);
      if (symmetry != "general" && i != j) {
        entries.emplace_back(j - 1, i - 1, mirror(z));
      }
    }
    SparseCMatrix s(rows, cols);
    s.setFromTriplets(entries.begin(), entries.end());
    return Coefficient(std::move(s));
  }
  CMatrix d = CMatrix::Zero(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    const Index start = symmetry == "general" ? 0 : (symmetry == "skew-symmetric" ? j + 1 : j);
    for (Index i = start; i < rows; ++i) {
      d(i, j) = read_value();
      if (symmetry != "general") {
        d(j, i) = mirror(d(i, j));
      }
    }
  }
  if (symmetry == "hermitian") {
    for (Index j = 0; j < std::min(rows, cols); ++j) {
      d(j, j) = d(j, j).real();
    }
  }
  return Coefficient(std::move(d));
}

}  // namespace eigensel
