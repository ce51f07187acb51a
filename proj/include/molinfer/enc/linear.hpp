#pragma once

#include <vector>

#include "molinfer/milp/model.hpp"

namespace molinfer::enc {

// One equality y = sum w_j x_j + bias over existing x variables.
void encode_linear(milp::MilpModel& model, const std::vector<int>& x_vars,
                   const std::vector<double>& weights, double bias, int y_var,
                   const std::string& name);

}  // namespace molinfer::enc
