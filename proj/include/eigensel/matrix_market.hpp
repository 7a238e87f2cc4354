#pragma once

#include <filesystem>

#include "eigensel/coefficient.hpp"

namespace eigensel {

/// Coordinate format for sparse coefficients, array format for dense ones,
/// always with the complex field and 17 significant digits.
void write_matrix_market(const std::filesystem::path& path, const Coefficient& m);

/// Reads real or complex, coordinate or array, general, symmetric, hermitian
/// or skew-symmetric files. Coordinate files yield sparse coefficients.
Coefficient read_matrix_market(const std::filesystem::path& path);

}  // namespace eigensel
