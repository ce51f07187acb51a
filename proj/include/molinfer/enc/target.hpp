#pragma once

#include "molinfer/milp/model.hpp"

namespace molinfer::enc {

struct TargetInterval {
  double y_lower = 0.0;
  double y_upper = 0.0;
};

// Adds y >= y_lower and y <= y_upper. Both ends must be finite and
// ordered; an unbounded interval is a configuration error here.
void bind_target(milp::MilpModel& model, int y_var, const TargetInterval& t,
                 const std::string& prefix = "target");

}  // namespace molinfer::enc
