#include "molinfer/enc/linear.hpp"

#include <stdexcept>

namespace molinfer::enc {

void encode_linear(milp::MilpModel& model, const std::vector<int>& x_vars,
                   const std::vector<double>& weights, double bias, int y_var,
                   const std::string& name) {
  if (x_vars.size() != weights.size()) {
    throw std::runtime_error("encode_linear: weight/variable count mismatch");
  }
  milp::LinExpr e;
  for (size_t j = 0; j < x_vars.size(); ++j) e.add(x_vars[j], weights[j]);
  e.add(y_var, -1.0);
  model.add_constraint(name, std::move(e), milp::Sense::kEq, -bias);
}

}  // namespace molinfer::enc
