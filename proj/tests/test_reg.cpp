#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "molinfer/reg/crossval.hpp"
#include "molinfer/reg/linear.hpp"
#include "molinfer/reg/metrics.hpp"
#include "molinfer/reg/mlp.hpp"
#include "molinfer/reg/model_io.hpp"
#include "molinfer/util/rng.hpp"

using namespace molinfer;
using reg::Dataset;
using reg::TrainConfig;

namespace {

// Independent forward pass: transposed weight layout, accumulating into a
// separate activation buffer. Shares nothing with MlpModel::forward.
double forward_oracle(const reg::MlpModel& m, const std::vector<double>& x0) {
  std::vector<double> cur = x0;
  for (size_t l = 0; l + 1 < m.arch.size(); ++l) {
    int in = m.arch[l], out = m.arch[l + 1];
    std::vector<double> nxt(out);
    for (int o = 0; o < out; ++o) nxt[o] = m.biases[l][o];
    for (int i = 0; i < in; ++i) {
      for (int o = 0; o < out; ++o) {
        nxt[o] += m.weights[l][static_cast<size_t>(o) * in + i] * cur[i];
      }
    }
    if (l + 2 < m.arch.size()) {
      for (double& v : nxt) v = std::max(0.0, v);
    }
    cur = std::move(nxt);
  }
  return cur[0];
}

reg::MlpModel random_mlp(const std::vector<int>& arch, util::Rng& rng) {
  reg::MlpModel m;
  m.arch = arch;
  for (size_t l = 0; l + 1 < arch.size(); ++l) {
    std::vector<double> w(static_cast<size_t>(arch[l]) * arch[l + 1]);
    std::vector<double> b(arch[l + 1]);
    for (auto& v : w) v = rng.uniform(-1.5, 1.5);
    for (auto& v : b) v = rng.uniform(-0.5, 0.5);
    m.weights.push_back(std::move(w));
    m.biases.push_back(std::move(b));
  }
  return m;
}

// Projected subgradient descent on the lasso objective; a slow but
// independent route to the optimum.
double lasso_subgradient_oracle(const Dataset& d, double lambda, int iters) {
  size_t n = d.size(), k = d.width();
  std::vector<double> w(k, 0.0);
  double b = 0;
  std::vector<double> best_w = w;
  double best_b = b;
  double best_obj = reg::lasso_objective(d, w, b, lambda);
  for (int t = 1; t <= iters; ++t) {
    // Subgradient of the objective.
    std::vector<double> gw(k, 0.0);
    double gb = 0;
    for (size_t i = 0; i < n; ++i) {
      double pred = b;
      for (size_t j = 0; j < k; ++j) pred += w[j] * d.x[i][j];
      double r = pred - d.y[i];
      for (size_t j = 0; j < k; ++j) gw[j] += r * d.x[i][j];
      gb += r;
    }
    for (size_t j = 0; j < k; ++j) {
      gw[j] /= static_cast<double>(n);
      gw[j] += lambda * (w[j] > 0 ? 1 : (w[j] < 0 ? -1 : 0));
    }
    gb /= static_cast<double>(n);
    double step = 0.5 / std::sqrt(static_cast<double>(t));
    for (size_t j = 0; j < k; ++j) w[j] -= step * gw[j];
    b -= step * gb;
    double obj = reg::lasso_objective(d, w, b, lambda);
    if (obj < best_obj) {
      best_obj = obj;
      best_w = w;
      best_b = b;
    }
  }
  return best_obj;
}

}  // namespace

TEST_CASE("r_squared on the worked examples") {
  CHECK(reg::r_squared({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
  // Mean predictor scores zero.
  CHECK(reg::r_squared({2, 2, 2}, {1, 2, 3}) == doctest::Approx(0.0));
  // Err = 4, denom = 2 -> 1 - 2 = -1.
  CHECK(reg::r_squared({1, 2, 5}, {1, 2, 3}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(reg::r_squared({1, 1}, {5, 5}), std::runtime_error);
}

TEST_CASE("lasso interpolates exactly linear data at lambda 0") {
  Dataset d;
  for (int i = 0; i < 12; ++i) {
    double x = i / 11.0;
    d.x.push_back({x});
    d.y.push_back(2 * x + 1);
  }
  TrainConfig cfg;
  cfg.lambda = 0;
  auto m = reg::train_lasso(d, cfg);
  REQUIRE(m.selected == std::vector<int>{0});
  CHECK(m.weights[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(m.bias == doctest::Approx(1.0).epsilon(1e-6));
  std::vector<double> preds;
  for (auto& row : d.x) preds.push_back(m.predict(row));
  CHECK(reg::r_squared(preds, d.y) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("huge lambda shrinks everything to the mean") {
  Dataset d;
  util::Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    d.x.push_back({rng.uniform(), rng.uniform()});
    d.y.push_back(3 * d.x.back()[0] - d.x.back()[1] + 0.5);
  }
  TrainConfig cfg;
  cfg.lambda = 1e3;
  auto m = reg::train_lasso(d, cfg);
  CHECK(m.selected.empty());
  double mean = 0;
  for (double y : d.y) mean += y;
  mean /= d.y.size();
  CHECK(m.bias == doctest::Approx(mean).epsilon(1e-9));
}

TEST_CASE("lasso objective matches a subgradient-descent oracle") {
  util::Rng rng(31);
  Dataset d;
  for (int i = 0; i < 20; ++i) {
    std::vector<double> row;
    for (int j = 0; j < 5; ++j) row.push_back(rng.uniform());
    double y = 1.5 * row[0] - 2.0 * row[2] + 0.3 + 0.05 * rng.normal();
    d.x.push_back(std::move(row));
    d.y.push_back(y);
  }
  TrainConfig cfg;
  cfg.lambda = 0.02;
  auto m = reg::train_lasso(d, cfg);
  std::vector<double> w(5, 0.0);
  for (size_t j = 0; j < m.selected.size(); ++j) {
    w[m.selected[j]] = m.weights[j];
  }
  double ours = reg::lasso_objective(d, w, m.bias, cfg.lambda);
  double oracle = lasso_subgradient_oracle(d, cfg.lambda, 200000);
  CHECK(ours <= oracle + 1e-4);
  CHECK(std::fabs(ours - oracle) < 1e-4);
}

TEST_CASE("lasso rejects non-finite features") {
  Dataset d;
  d.x = {{0.5}, {std::nan("")}};
  d.y = {1, 2};
  CHECK_THROWS(reg::train_lasso(d, TrainConfig{}));
}

TEST_CASE("mlp forward: clamped and constant cases") {
  reg::MlpModel m;
  m.arch = {1, 1, 1};
  m.weights = {{1.0}, {1.0}};
  m.biases = {{0.0}, {0.0}};
  m.validate();
  CHECK(m.forward({-3.0}) == 0.0);  // rectifier clamps the only path
  CHECK(m.forward({2.0}) == 2.0);

  reg::MlpModel zero;
  zero.arch = {3, 2, 1};
  zero.weights = {std::vector<double>(6, 0.0), std::vector<double>(2, 0.0)};
  zero.biases = {{0.0, 0.0}, {4.25}};
  CHECK(zero.forward({1, 2, 3}) == 4.25);
}

TEST_CASE("mlp forward matches the independent oracle") {
  util::Rng rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> arch = {1 + static_cast<int>(rng.below(5))};
    int hidden_layers = 1 + static_cast<int>(rng.below(3));
    for (int l = 0; l < hidden_layers; ++l) {
      arch.push_back(1 + static_cast<int>(rng.below(6)));
    }
    arch.push_back(1);
    auto m = random_mlp(arch, rng);
    for (int k = 0; k < 5; ++k) {
      std::vector<double> x(arch[0]);
      for (auto& v : x) v = rng.uniform(-2, 2);
      CHECK(m.forward(x) == doctest::Approx(forward_oracle(m, x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("mlp forward rejects width mismatch") {
  reg::MlpModel m;
  m.arch = {2, 2, 1};
  m.weights = {std::vector<double>(4, 0.1), std::vector<double>(2, 0.1)};
  m.biases = {{0, 0}, {0}};
  CHECK_THROWS(m.forward({1.0}));
}

TEST_CASE("analytic gradients match central finite differences") {
  util::Rng rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<int> arch = {3, 4, 3, 1};
    auto m = random_mlp(arch, rng);
    Dataset d;
    for (int i = 0; i < 6; ++i) {
      d.x.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
      d.y.push_back(rng.uniform(-1, 1));
    }
    std::vector<size_t> batch = {0, 1, 2, 3, 4, 5};
    auto loss = [&](const reg::MlpModel& model) {
      double s = 0;
      for (size_t i : batch) {
        double r = model.forward(d.x[i]) - d.y[i];
        s += 0.5 * r * r;
      }
      return s / batch.size();
    };
    auto g = reg::mlp_gradients(m, d, batch);
    const double h = 1e-5;
    for (int l = 0; l < m.layer_count(); ++l) {
      for (size_t j = 0; j < m.weights[l].size(); j += 3) {
        reg::MlpModel up = m, dn = m;
        up.weights[l][j] += h;
        dn.weights[l][j] -= h;
        double fd = (loss(up) - loss(dn)) / (2 * h);
        double scale = std::max({1.0, std::fabs(fd),
                                 std::fabs(g.weights[l][j])});
        CHECK(std::fabs(fd - g.weights[l][j]) / scale < 1e-4);
      }
      for (size_t j = 0; j < m.biases[l].size(); ++j) {
        reg::MlpModel up = m, dn = m;
        up.biases[l][j] += h;
        dn.biases[l][j] -= h;
        double fd = (loss(up) - loss(dn)) / (2 * h);
        double scale = std::max({1.0, std::fabs(fd),
                                 std::fabs(g.biases[l][j])});
        CHECK(std::fabs(fd - g.biases[l][j]) / scale < 1e-4);
      }
    }
  }
}

TEST_CASE("training stops early once train R^2 beats r_stop") {
  util::Rng rng(43);
  Dataset d;
  for (int i = 0; i < 40; ++i) {
    double a = rng.uniform(), b = rng.uniform();
    d.x.push_back({a, b});
    d.y.push_back(1.2 * a - 0.7 * b + 0.4);
  }
  TrainConfig cfg;
  cfg.r_stop = 0.99;
  cfg.it_stop = 4000;
  cfg.learning_rate = 0.15;
  cfg.batch_size = 8;
  cfg.seed = 7;
  auto res = reg::train_mlp(d, {2, 4, 1}, cfg);
  CHECK(res.r2_history.back() > 0.99);
  CHECK(res.epochs <= reg::epoch_cap(cfg.it_stop));
  CHECK(res.epochs < reg::epoch_cap(cfg.it_stop));  // stopped by r_stop
}

TEST_CASE("r_stop of zero stops after the first improving epoch") {
  util::Rng rng(47);
  Dataset d;
  for (int i = 0; i < 30; ++i) {
    double a = rng.uniform();
    d.x.push_back({a});
    d.y.push_back(2 * a);
  }
  TrainConfig cfg;
  cfg.r_stop = 0.0;
  cfg.it_stop = 50;
  cfg.learning_rate = 0.2;
  cfg.batch_size = 4;
  cfg.seed = 7;
  auto res = reg::train_mlp(d, {1, 4, 1}, cfg);
  // Training ends at the first epoch whose train R^2 is positive.
  for (size_t e = 0; e + 1 < res.r2_history.size(); ++e) {
    CHECK(res.r2_history[e] <= 0.0);
  }
  CHECK(res.r2_history.back() > 0.0);
  CHECK(res.epochs < reg::epoch_cap(cfg.it_stop));
}

TEST_CASE("unreachable r_stop hits the hard cap exactly") {
  util::Rng rng(53);
  Dataset d;
  for (int i = 0; i < 24; ++i) {
    d.x.push_back({rng.uniform()});
    d.y.push_back(rng.normal());  // noise: R^2 of 1.0 is unreachable
  }
  TrainConfig cfg;
  cfg.r_stop = 1.0;
  cfg.it_stop = 10;
  cfg.learning_rate = 0.01;
  auto res = reg::train_mlp(d, {1, 2, 1}, cfg);
  CHECK(res.epochs == 15);  // ceil(1.5 * 10)
  CHECK(reg::epoch_cap(10) == 15);
  CHECK(reg::epoch_cap(11) == 17);
}

TEST_CASE("training is deterministic under a fixed seed") {
  util::Rng rng(59);
  Dataset d;
  for (int i = 0; i < 20; ++i) {
    d.x.push_back({rng.uniform(), rng.uniform()});
    d.y.push_back(d.x.back()[0] + 2 * d.x.back()[1]);
  }
  TrainConfig cfg;
  cfg.it_stop = 20;
  cfg.r_stop = 1.0;
  cfg.seed = 99;
  auto a = reg::train_mlp(d, {2, 3, 1}, cfg);
  auto b = reg::train_mlp(d, {2, 3, 1}, cfg);
  CHECK(a.model.weights == b.model.weights);
  CHECK(a.r2_history == b.r2_history);
}

TEST_CASE("forward is piecewise-linear between rectifier boundaries") {
  util::Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_mlp({3, 5, 4, 1}, rng);
    std::vector<double> x(3), dir(3);
    for (auto& v : x) v = rng.uniform(-1, 1);
    for (auto& v : dir) v = rng.uniform(-0.1, 0.1);
    // Check that no pre-activation changes sign along the segment; only
    // then is three-point collinearity asserted.
    auto signature = [&](const std::vector<double>& p) {
      std::vector<int> s;
      for (auto& layer : m.forward_preactivations(p)) {
        for (double z : layer) s.push_back(z > 0 ? 1 : (z < 0 ? -1 : 0));
      }
      return s;
    };
    std::vector<double> x1(3), xh(3);
    for (int j = 0; j < 3; ++j) {
      x1[j] = x[j] + dir[j];
      xh[j] = x[j] + 0.5 * dir[j];
    }
    if (signature(x) != signature(x1) || signature(x) != signature(xh)) {
      continue;
    }
    double f0 = m.forward(x), f1 = m.forward(x1), fh = m.forward(xh);
    CHECK(std::fabs(fh - 0.5 * (f0 + f1)) < 1e-9);
  }
}

TEST_CASE("cross-validation: counts, median, determinism") {
  util::Rng rng(67);
  Dataset d;
  for (int i = 0; i < 50; ++i) {
    double a = rng.uniform(), b = rng.uniform();
    d.x.push_back({a, b});
    d.y.push_back(2 * a - b + 0.25);
  }
  TrainConfig cfg;
  cfg.r_stop = 0.995;
  cfg.it_stop = 2500;
  cfg.learning_rate = 0.2;
  cfg.batch_size = 10;
  cfg.seed = 3;
  auto report = reg::cross_validate(d, reg::ModelKind::kMlp, {4}, cfg, 5, 10);
  CHECK(report.scores.size() == 50);
  CHECK(report.median == reg::median_of(report.scores));
  CHECK(report.median >= 0.99);

  auto again = reg::cross_validate(d, reg::ModelKind::kMlp, {4}, cfg, 5, 10);
  CHECK(again.serialize() == report.serialize());

  // Leave-one-out-style degenerate counting.
  Dataset tiny;
  for (int i = 0; i < 6; ++i) {
    tiny.x.push_back({static_cast<double>(i)});
    tiny.y.push_back(2.0 * i + (i % 2));
  }
  TrainConfig lcfg;
  lcfg.lambda = 0;
  auto loo = reg::cross_validate(tiny, reg::ModelKind::kLasso, {}, lcfg, 6, 1);
  CHECK(loo.scores.size() == 6);

  CHECK_THROWS(reg::cross_validate(tiny, reg::ModelKind::kLasso, {}, lcfg,
                                   7, 1));
}

TEST_CASE("median of even and odd score lists") {
  CHECK(reg::median_of({3, 1, 2}) == 2);
  CHECK(reg::median_of({4, 1, 2, 3}) == doctest::Approx(2.5));
}

TEST_CASE("prediction model io round-trips") {
  util::Rng rng(71);
  reg::PredictionModel m;
  m.kind = reg::ModelKind::kMlp;
  m.inputs = {"scalar:n", "ac:C.C.1"};
  m.mlp = random_mlp({2, 3, 1}, rng);
  m.norm_ids = {"scalar:n", "ac:C.C.1", "scalar:n_h"};
  m.norm.mins = {0, 0, 1};
  m.norm.maxs = {10, 4, 1};
  auto text = m.serialize();
  auto back = reg::PredictionModel::deserialize(text);
  CHECK(back.serialize() == text);
  CHECK(back.mlp.weights == m.mlp.weights);
  for (int t = 0; t < 5; ++t) {
    std::vector<double> x = {rng.uniform(), rng.uniform()};
    CHECK(back.predict(x) == m.predict(x));
  }

  reg::PredictionModel lin;
  lin.kind = reg::ModelKind::kLasso;
  lin.inputs = {"scalar:n"};
  lin.lin_weights = {1.25};
  lin.lin_bias = -0.5;
  lin.norm_ids = {"scalar:n"};
  lin.norm.mins = {0};
  lin.norm.maxs = {10};
  auto lin_back = reg::PredictionModel::deserialize(lin.serialize());
  CHECK(lin_back.predict({0.4}) == doctest::Approx(0.0));
}
