#pragma once

#include <string>
#include <vector>

#include "molinfer/reg/linear.hpp"
#include "molinfer/reg/mlp.hpp"

namespace molinfer::reg {

struct CvReport {
  // One test R^2 per (repeat, fold); folds * repeats entries in run order.
  std::vector<double> scores;
  double median = 0.0;
  int folds = 0;
  int repeats = 0;

  std::string serialize() const;
};

enum class ModelKind { kLasso, kMlp };

// Repeated k-fold cross-validation: each repeat draws a fresh random
// partition, trains on k-1 folds and scores test R^2 on the held-out
// fold. Reports every score and their median. Fold RNG streams derive
// from (seed, repeat, fold), so runs are reproducible.
CvReport cross_validate(const Dataset& data, ModelKind kind,
                        const std::vector<int>& hidden_arch,
                        const TrainConfig& cfg, int folds = 5,
                        int repeats = 10);

double median_of(std::vector<double> values);

}  // namespace molinfer::reg
