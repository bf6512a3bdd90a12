#pragma once

#include <vector>

#include "iwz/rational.hpp"

namespace iwz {

// Lower-triangular Hermite basis of the Z-span of integer vectors of length n.
// rows[k] has zeros after position k, rows[k][k] > 0, and 0 <= rows[j][k] < rows[k][k] for j > k.
// coef[k] expresses rows[k] in the input vectors when tracking is requested.
struct Echelon {
  std::vector<std::vector<Z>> rows;
  std::vector<std::vector<Z>> coef;
};

Echelon echelon(const std::vector<std::vector<Z>>& gens, int n, bool track);

// integer combination of the inputs hitting target, if target lies in the span
bool solve_in_span(const Echelon& e, const std::vector<Z>& target, std::vector<Z>& combo);

}  // namespace iwz
