#pragma once

#include <cstdint>
#include <vector>

namespace molinfer::reg {

// Training inputs: rows of features plus one target per row.
struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<double> y;

  size_t size() const { return y.size(); }
  size_t width() const { return x.empty() ? 0 : x[0].size(); }
};

struct LinearModel {
  std::vector<double> weights;  // one per selected descriptor
  double bias = 0.0;
  std::vector<int> selected;    // registry indices the weights refer to

  double predict(const std::vector<double>& full_x) const;
};

struct TrainConfig {
  double r_stop = 1.0;     // early stop once train R^2 exceeds this
  int it_stop = 100;       // nominal epoch budget; hard cap is ceil(1.5x)
  double learning_rate = 0.05;
  int batch_size = 32;
  uint64_t seed = 1;
  double lambda = 0.0;     // L1 penalty for the lasso path
};

// Cyclic coordinate descent with soft thresholding on
//   (1/2n) * sum r^2 + lambda * ||w||_1,  bias unpenalized.
// Stops when the largest coordinate change in a sweep is below 1e-7.
// Columns whose weight shrinks to zero are dropped: `selected` holds the
// surviving column indices and `weights` runs parallel to it.
LinearModel train_lasso(const Dataset& train, const TrainConfig& cfg);

// Objective value of the lasso problem for a given weight/bias pair;
// shared by the trainer and its tests.
double lasso_objective(const Dataset& data, const std::vector<double>& w,
                       double bias, double lambda);

}  // namespace molinfer::reg
