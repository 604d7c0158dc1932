#pragma once

#include <affdyn/poly.hpp>

#include <optional>
#include <vector>

namespace affdyn {

/// Rank and pivot columns of an integer matrix by fraction-free elimination.
struct Echelon {
  int rank = 0;
  std::vector<int> pivots;
  std::vector<std::vector<Integer>> rows;  ///< row echelon form
};
Echelon bareiss_echelon(std::vector<std::vector<Integer>> a);
/// A nonzero integer kernel vector whose support lies in columns <= the
/// first free column; nullopt when the columns are independent.
std::optional<std::vector<Integer>> first_kernel_vector(const Echelon& e, int cols);

/// Integer basis of the kernel, one vector per free column.
std::vector<std::vector<Integer>> kernel_basis(const Echelon& e, int cols);

}  // namespace affdyn
