#pragma once

#include <string>
#include <vector>

#include "molinfer/chem/graph.hpp"
#include "molinfer/pipeline/config.hpp"

namespace molinfer::pipeline {

// Exit code contract: 0 success, 2 infeasible-by-proof, 1 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

// Stage 2: registry + feature matrices + normalization under run_dir.
int cmd_featurize(const PipelineConfig& cfg);

// Stage 3: repeated k-fold cross-validation report plus the final model
// trained on all rows.
int cmd_train(const PipelineConfig& cfg);

// Stage 4 solve: combined prediction/graph MILP under the target
// interval; writes the seed solution or exits with kExitInfeasible when
// the instance is proven infeasible (that outcome means no graph with
// the requested property value exists under the specification).
int cmd_infer(const PipelineConfig& cfg);

// Neighbor search around the seed: status report plus one graph file per
// feasible grid.
int cmd_grid_search(const PipelineConfig& cfg);

// Model quality on a dataset (test R^2).
int cmd_eval(const PipelineConfig& cfg);

// Feature table io shared by commands and tests.
struct FeatureTable {
  std::vector<std::string> header;  // descriptor ids
  std::vector<std::string> ids;     // graph ids
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
  static FeatureTable from_csv(const std::string& text);
};

}  // namespace molinfer::pipeline
