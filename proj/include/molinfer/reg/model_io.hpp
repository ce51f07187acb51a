#pragma once

#include <string>
#include <vector>

#include "molinfer/desc/normalize.hpp"
#include "molinfer/desc/registry.hpp"
#include "molinfer/reg/crossval.hpp"
#include "molinfer/reg/mlp.hpp"

namespace molinfer::reg {

// A trained prediction function plus everything needed to re-apply it:
// the descriptor ids feeding its inputs (in order) and the dataset
// normalization. Serialized as a line-oriented key-value file.
struct PredictionModel {
  ModelKind kind = ModelKind::kMlp;
  std::vector<std::string> inputs;  // descriptor ids, model input order

  // Lasso form: one weight per input plus a bias.
  std::vector<double> lin_weights;
  double lin_bias = 0.0;

  // MLP form.
  MlpModel mlp;

  // Per-descriptor (min, max) of the training data, registry order.
  std::vector<std::string> norm_ids;
  desc::Normalization norm;

  int input_width() const { return static_cast<int>(inputs.size()); }

  // Prediction from the model-input slice (already normalized).
  double predict(const std::vector<double>& selected_x) const;

  // Registry index of each model input; throws when an id is missing.
  std::vector<int> bind_inputs(const desc::DescriptorRegistry& reg) const;

  // Normalized full-registry row -> model inputs -> prediction.
  double predict_full(const std::vector<double>& normalized_row,
                      const std::vector<int>& bound_inputs) const;

  std::string serialize() const;
  static PredictionModel deserialize(const std::string& text);
};

}  // namespace molinfer::reg
