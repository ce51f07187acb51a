#pragma once

#include <vector>

#include "molinfer/reg/linear.hpp"

namespace molinfer::reg {

// Feed-forward network with rectifier hidden layers and a single identity
// output. Layer l maps arch[l] inputs to arch[l+1] outputs; weights are
// row-major (output index major).
struct MlpModel {
  std::vector<int> arch;  // (K', p_1, ..., p_l, 1)
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  int layer_count() const { return static_cast<int>(arch.size()) - 1; }
  int input_width() const { return arch.front(); }

  // Checks dimension conformance and finiteness.
  void validate() const;

  double forward(const std::vector<double>& x) const;

  // Pre-activation values per layer (the encoder consumes these shapes).
  std::vector<std::vector<double>> forward_preactivations(
      const std::vector<double>& x) const;
};

struct MlpGradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
};

// Gradient of the half-mean-squared-error over `batch` rows of `data`.
MlpGradients mlp_gradients(const MlpModel& model, const Dataset& data,
                           const std::vector<size_t>& batch);

struct MlpTrainResult {
  MlpModel model;
  int epochs = 0;                   // epochs actually run
  std::vector<double> r2_history;   // train R^2 after each epoch
};

// Mini-batch gradient descent at a fixed rate. After every epoch the
// train R^2 is evaluated; training stops as soon as it exceeds
// cfg.r_stop, and unconditionally after ceil(1.5 * cfg.it_stop) epochs.
// Deterministic for a fixed cfg.seed.
MlpTrainResult train_mlp(const Dataset& train, const std::vector<int>& arch,
                         const TrainConfig& cfg);

int epoch_cap(int it_stop);  // = ceil(1.5 * it_stop)

}  // namespace molinfer::reg
