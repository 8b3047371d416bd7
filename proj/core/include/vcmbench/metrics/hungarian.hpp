#pragma once

#include <vector>

namespace vcmbench {

// Minimum-cost assignment on a rectangular cost matrix (rows x cols, row
// major). Returns, per row, the assigned column or -1 when rows outnumber
// columns. Deterministic for a given matrix.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace vcmbench
