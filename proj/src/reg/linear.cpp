#include "molinfer/reg/linear.hpp"

#include <cmath>
#include <stdexcept>

namespace molinfer::reg {

double LinearModel::predict(const std::vector<double>& full_x) const {
  double y = bias;
  for (size_t j = 0; j < weights.size(); ++j) {
    y += weights[j] * full_x[selected[j]];
  }
  return y;
}

double lasso_objective(const Dataset& data, const std::vector<double>& w,
                       double bias, double lambda) {
  double sse = 0;
  for (size_t i = 0; i < data.size(); ++i) {
    double pred = bias;
    for (size_t j = 0; j < w.size(); ++j) pred += w[j] * data.x[i][j];
    double r = data.y[i] - pred;
    sse += r * r;
  }
  double l1 = 0;
  for (double v : w) l1 += std::fabs(v);
  return sse / (2.0 * static_cast<double>(data.size())) + lambda * l1;
}

LinearModel train_lasso(const Dataset& train, const TrainConfig& cfg) {
  size_t n = train.size();
  size_t k = train.width();
  if (n == 0) throw std::runtime_error("train_lasso: empty training set");
  if (cfg.lambda < 0) throw std::runtime_error("train_lasso: lambda < 0");
  for (const auto& row : train.x) {
    if (row.size() != k) throw std::runtime_error("ragged feature rows");
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw std::runtime_error("train_lasso: non-finite feature value");
      }
    }
  }

  // Column second moments; constant-zero columns never move.
  std::vector<double> col_sq(k, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) col_sq[j] += train.x[i][j] * train.x[i][j];
  }
  for (auto& v : col_sq) v /= static_cast<double>(n);

  std::vector<double> w(k, 0.0);
  double bias = 0;
  {
    double mean = 0;
    for (double y : train.y) mean += y;
    bias = mean / static_cast<double>(n);
  }
  std::vector<double> resid(n);  // y - (bias + x.w)
  for (size_t i = 0; i < n; ++i) resid[i] = train.y[i] - bias;

  const double tol = 1e-7;
  const int max_sweeps = 100000;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_delta = 0;
    for (size_t j = 0; j < k; ++j) {
      if (col_sq[j] == 0) continue;
      // rho_j = (1/n) sum x_ij * (resid_i + x_ij w_j)
      double rho = 0;
      for (size_t i = 0; i < n; ++i) {
        rho += train.x[i][j] * (resid[i] + train.x[i][j] * w[j]);
      }
      rho /= static_cast<double>(n);
      double wj;
      if (rho > cfg.lambda) {
        wj = (rho - cfg.lambda) / col_sq[j];
      } else if (rho < -cfg.lambda) {
        wj = (rho + cfg.lambda) / col_sq[j];
      } else {
        wj = 0;
      }
      double delta = wj - w[j];
      if (delta != 0) {
        for (size_t i = 0; i < n; ++i) resid[i] -= delta * train.x[i][j];
        w[j] = wj;
        max_delta = std::max(max_delta, std::fabs(delta));
      }
    }
    // Unpenalized intercept: mean residual.
    double shift = 0;
    for (double r : resid) shift += r;
    shift /= static_cast<double>(n);
    if (shift != 0) {
      bias += shift;
      for (double& r : resid) r -= shift;
      max_delta = std::max(max_delta, std::fabs(shift));
    }
    if (max_delta < tol) break;
  }

  LinearModel model;
  model.bias = bias;
  for (size_t j = 0; j < k; ++j) {
    if (w[j] != 0) {
      model.selected.push_back(static_cast<int>(j));
      model.weights.push_back(w[j]);
    }
  }
  return model;
}

}  // namespace molinfer::reg
