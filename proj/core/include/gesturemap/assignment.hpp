#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gesturemap {

// Dense row-major rows x cols matrix of benefits.
struct BenefitMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  BenefitMatrix() = default;
  BenefitMatrix(std::size_t rows, std::size_t cols) : rows(rows), cols(cols), values(rows * cols, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct AssignmentSolution {
  std::vector<std::size_t> column_of_row;
  double total = 0.0;
};

// Maximum-weight assignment of every row to a distinct column (rows <= cols),
// by shortest augmenting paths with row/column potentials. O(rows^2 * cols).
// Throws Error(infeasible) when rows > cols.
AssignmentSolution solve_max_assignment(const BenefitMatrix& benefit);

// Same optimum, but among all assignments within `tolerance` of it returns
// the lexicographically smallest column vector.
AssignmentSolution solve_max_assignment_lexicographic(const BenefitMatrix& benefit,
                                                      double tolerance = 1e-9);

}  // namespace gesturemap
