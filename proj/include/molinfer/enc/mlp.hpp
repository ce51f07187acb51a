#pragma once

#include <string>
#include <vector>

#include "molinfer/milp/model.hpp"
#include "molinfer/reg/mlp.hpp"

namespace molinfer::enc {

struct MlpEncoding {
  int y_var = -1;
  double y_lower = 0.0;  // interval-arithmetic range of the output
  double y_upper = 0.0;
};

// Big-M simulation of y = forward(model, x) over bounded x variables.
// Each hidden unit gets its pre-activation z, output h and an activation
// binary s with
//     h >= z,  h <= z + M-(1-s),  h <= M+ s,  h >= 0,
// where [(-M-), M+] are interval-arithmetic bounds on z propagated layer
// by layer from the x bounds. Units whose pre-activation range is fully
// one-sided degenerate to h = 0 or h = z without a binary. For any fixed
// in-bounds x, the unique feasible y equals the forward pass.
MlpEncoding encode_mlp(milp::MilpModel& model, const reg::MlpModel& net,
                       const std::vector<int>& x_vars,
                       const std::string& prefix);

}  // namespace molinfer::enc
