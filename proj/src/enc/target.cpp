#include "molinfer/enc/target.hpp"

#include <cmath>
#include <stdexcept>

namespace molinfer::enc {

void bind_target(milp::MilpModel& model, int y_var, const TargetInterval& t,
                 const std::string& prefix) {
  if (!std::isfinite(t.y_lower) || !std::isfinite(t.y_upper)) {
    throw std::runtime_error("target interval must be finite");
  }
  if (t.y_lower > t.y_upper) {
    throw std::runtime_error("target interval is empty (lower > upper)");
  }
  model.add_constraint(prefix + "_lo", milp::LinExpr().add(y_var, 1.0),
                       milp::Sense::kGe, t.y_lower);
  model.add_constraint(prefix + "_hi", milp::LinExpr().add(y_var, 1.0),
                       milp::Sense::kLe, t.y_upper);
}

}  // namespace molinfer::enc
