#include "molinfer/reg/metrics.hpp"

#include <stdexcept>

namespace molinfer::reg {

double r_squared(const std::vector<double>& predictions,
                 const std::vector<double>& targets) {
  if (targets.empty() || predictions.size() != targets.size()) {
    throw std::runtime_error("r_squared: size mismatch or empty data");
  }
  double mean = 0;
  for (double a : targets) mean += a;
  mean /= static_cast<double>(targets.size());
  double err = 0, denom = 0;
  for (size_t i = 0; i < targets.size(); ++i) {
    err += (targets[i] - predictions[i]) * (targets[i] - predictions[i]);
    denom += (targets[i] - mean) * (targets[i] - mean);
  }
  if (denom == 0) {
    throw std::runtime_error("r_squared undefined: all targets are equal");
  }
  return 1.0 - err / denom;
}

}  // namespace molinfer::reg
