#pragma once

#include <vector>

namespace molinfer::reg {

// Coefficient of determination: 1 - sum((a_i - p_i)^2) / sum((a_i - mean)^2).
// Throws when every target is identical (zero denominator).
double r_squared(const std::vector<double>& predictions,
                 const std::vector<double>& targets);

}  // namespace molinfer::reg
