#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "eigensel/problems.hpp"

namespace testutil {

inline eigensel::CMatrix random_matrix(eigensel::Index r, eigensel::Index c, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  eigensel::CMatrix m(r, c);
  for (eigensel::Index i = 0; i < m.size(); ++i) {
    const double re = d(g);
    const double im = d(g);
    m.data()[i] = {re, im};
  }
  return m;
}

inline eigensel::CVector random_vector(eigensel::Index n, std::mt19937_64& g) {
  eigensel::CVector v = random_matrix(n, 1, g);
  return v / v.norm();
}

inline eigensel::Complex random_complex(std::mt19937_64& g) {
  std::normal_distribution<double> d;
  const double re = d(g);
  const double im = d(g);
  return {re, im};
}

inline eigensel::PolyProblem random_dense_pep(eigensel::Index n, int m, std::mt19937_64& g) {
  std::vector<eigensel::Coefficient> cs;
  for (int i = 0; i <= m; ++i) {
    cs.emplace_back(random_matrix(n, n, g));
  }
  return eigensel::PolyProblem(std::move(cs));
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* base = std::getenv("EIGENSEL_TEST_TMP");
  std::filesystem::path p = base ? std::filesystem::path(base)
                                 : std::filesystem::temp_directory_path() / "eigensel_tests";
  p /= name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testutil
