#include "gesturemap/assignment.hpp"

#include <limits>

#include <fmt/format.h>

#include "gesturemap/error.hpp"

namespace gesturemap {

namespace {

struct MinCostSolution {
  std::vector<std::size_t> column_of_row;
  double cost = 0.0;
  // Optimal dual: cost(r, c) - row_potential[r] - column_potential[c] >= 0,
  // zero on every edge of every optimal assignment.
  std::vector<double> row_potential;
  std::vector<double> column_potential;
};

// Shortest augmenting path method on a rows x cols cost matrix, rows <= cols.
// Potentials are 1-based internally; index 0 is the virtual root.
MinCostSolution solve_min_cost(std::size_t rows, std::size_t cols,
                               const std::vector<double>& cost) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0);
  std::vector<double> v(cols + 1, 0.0);
  std::vector<std::size_t> row_of_col(cols + 1, 0);
  std::vector<std::size_t> way(cols + 1, 0);

  for (std::size_t i = 1; i <= rows; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::vector<double> min_slack(cols + 1, kInf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double reduced = cost[(i0 - 1) * cols + (j - 1)] - u[i0] - v[j];
        if (reduced < min_slack[j]) {
          min_slack[j] = reduced;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  MinCostSolution solution;
  solution.column_of_row.assign(rows, 0);
  for (std::size_t j = 1; j <= cols; ++j) {
    if (row_of_col[j] != 0) solution.column_of_row[row_of_col[j] - 1] = j - 1;
  }
  for (std::size_t r = 0; r < rows; ++r) solution.cost += cost[r * cols + solution.column_of_row[r]];
  solution.row_potential.assign(u.begin() + 1, u.end());
  solution.column_potential.assign(v.begin() + 1, v.end());
  return solution;
}

void check_shape(const BenefitMatrix& benefit) {
  if (benefit.values.size() != benefit.rows * benefit.cols) {
    throw Error(ErrorCode::invalid_value, "benefit matrix size does not match its shape");
  }
  if (benefit.rows > benefit.cols) {
    throw Error(ErrorCode::infeasible,
                fmt::format("cannot assign {} rows to {} distinct columns", benefit.rows, benefit.cols));
  }
}

std::vector<double> negated(const BenefitMatrix& benefit) {
  std::vector<double> cost(benefit.values.size());
  for (std::size_t i = 0; i < cost.size(); ++i) cost[i] = -benefit.values[i];
  return cost;
}

}  // namespace

AssignmentSolution solve_max_assignment(const BenefitMatrix& benefit) {
  check_shape(benefit);
  MinCostSolution solved = solve_min_cost(benefit.rows, benefit.cols, negated(benefit));
  return {std::move(solved.column_of_row), -solved.cost};
}

AssignmentSolution solve_max_assignment_lexicographic(const BenefitMatrix& benefit, double tolerance) {
  check_shape(benefit);
  const std::size_t rows = benefit.rows;
  const std::size_t cols = benefit.cols;
  const std::vector<double> cost = negated(benefit);
  const MinCostSolution optimum = solve_min_cost(rows, cols, cost);
  const double target = optimum.cost;
  // Every edge of a near-optimal assignment has reduced cost at most the gap.
  const double candidate_slack = tolerance + 1e-7;

  std::vector<std::size_t> current = optimum.column_of_row;
  std::vector<char> taken(cols, 0);
  double fixed_cost = 0.0;

  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (taken[c]) continue;
      if (c == current[r]) break;  // the current completion already proves it
      const double reduced =
          cost[r * cols + c] - optimum.row_potential[r] - optimum.column_potential[c];
      if (reduced > candidate_slack) continue;

      // Best completion of rows r+1.. with column c fixed for row r.
      std::vector<std::size_t> free_cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!taken[j] && j != c) free_cols.push_back(j);
      }
      const std::size_t sub_rows = rows - r - 1;
      std::vector<double> sub_cost(sub_rows * free_cols.size());
      for (std::size_t i = 0; i < sub_rows; ++i) {
        for (std::size_t j = 0; j < free_cols.size(); ++j) {
          sub_cost[i * free_cols.size() + j] = cost[(r + 1 + i) * cols + free_cols[j]];
        }
      }
      const MinCostSolution rest = solve_min_cost(sub_rows, free_cols.size(), sub_cost);
      if (fixed_cost + cost[r * cols + c] + rest.cost <= target + tolerance) {
        current[r] = c;
        for (std::size_t i = 0; i < sub_rows; ++i) current[r + 1 + i] = free_cols[rest.column_of_row[i]];
        break;
      }
    }
    taken[current[r]] = 1;
    fixed_cost += cost[r * cols + current[r]];
  }

  AssignmentSolution solution;
  solution.column_of_row = std::move(current);
  for (std::size_t r = 0; r < rows; ++r) solution.total += benefit.at(r, solution.column_of_row[r]);
  return solution;
}

}  // namespace gesturemap
