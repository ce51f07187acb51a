#include "molinfer/reg/crossval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "molinfer/reg/metrics.hpp"
#include "molinfer/util/rng.hpp"
#include "molinfer/util/text.hpp"

namespace molinfer::reg {

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::runtime_error("median of empty list");
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string CvReport::serialize() const {
  std::string out = "folds " + std::to_string(folds) + "\n" +
                    "repeats " + std::to_string(repeats) + "\n";
  for (size_t i = 0; i < scores.size(); ++i) {
    out += "score " + std::to_string(i) + " " + util::format_number_exact(scores[i]) +
           "\n";
  }
  out += "median " + util::format_number_exact(median) + "\n";
  return out;
}

CvReport cross_validate(const Dataset& data, ModelKind kind,
                        const std::vector<int>& hidden_arch,
                        const TrainConfig& cfg, int folds, int repeats) {
  if (folds < 2) throw std::runtime_error("cross_validate: folds must be >= 2");
  if (data.size() < static_cast<size_t>(folds)) {
    throw std::runtime_error("cross_validate: dataset smaller than fold count");
  }
  CvReport report;
  report.folds = folds;
  report.repeats = repeats;

  for (int rep = 0; rep < repeats; ++rep) {
    auto part_rng = util::Rng::stream(cfg.seed, static_cast<uint64_t>(rep), 0);
    std::vector<size_t> order(data.size());
    std::iota(order.begin(), order.end(), size_t{0});
    part_rng.shuffle(order);
    // Balanced fold sizes: the first (n % folds) folds get one extra row.
    size_t base = data.size() / folds, extra = data.size() % folds;
    size_t cursor = 0;
    std::vector<std::vector<size_t>> fold_rows(folds);
    for (int f = 0; f < folds; ++f) {
      size_t len = base + (static_cast<size_t>(f) < extra ? 1 : 0);
      fold_rows[f].assign(order.begin() + cursor, order.begin() + cursor + len);
      cursor += len;
    }
    for (int f = 0; f < folds; ++f) {
      Dataset train, test;
      for (int f2 = 0; f2 < folds; ++f2) {
        for (size_t row : fold_rows[f2]) {
          auto& dst = (f2 == f) ? test : train;
          dst.x.push_back(data.x[row]);
          dst.y.push_back(data.y[row]);
        }
      }
      TrainConfig fold_cfg = cfg;
      fold_cfg.seed = util::Rng::stream(cfg.seed, static_cast<uint64_t>(rep),
                                        static_cast<uint64_t>(f + 1))
                          .next_u64();
      // Degenerate folds (constant targets, e.g. leave-one-out) have no
      // within-fold variance; score those against the full dataset's
      // target variance so every fold still reports a number.
      auto fold_score = [&data](const std::vector<double>& preds,
                                const std::vector<double>& targets) {
        bool constant = true;
        for (double t : targets) constant &= (t == targets[0]);
        if (!constant) return r_squared(preds, targets);
        double full_mean = 0;
        for (double y : data.y) full_mean += y;
        full_mean /= static_cast<double>(data.size());
        double denom = 0;
        for (double y : data.y) denom += (y - full_mean) * (y - full_mean);
        if (denom == 0) {
          throw std::runtime_error("cross_validate: constant targets");
        }
        double err = 0;
        for (size_t i = 0; i < targets.size(); ++i) {
          err += (targets[i] - preds[i]) * (targets[i] - preds[i]);
        }
        return 1.0 - err / denom;
      };
      std::vector<double> preds(test.size());
      if (kind == ModelKind::kLasso) {
        LinearModel model = train_lasso(train, fold_cfg);
        for (size_t i = 0; i < test.size(); ++i) preds[i] = model.predict(test.x[i]);
      } else {
        std::vector<int> arch;
        arch.push_back(static_cast<int>(data.width()));
        for (int h : hidden_arch) arch.push_back(h);
        arch.push_back(1);
        auto trained = train_mlp(train, arch, fold_cfg);
        for (size_t i = 0; i < test.size(); ++i) {
          preds[i] = trained.model.forward(test.x[i]);
        }
      }
      report.scores.push_back(fold_score(preds, test.y));
    }
  }
  report.median = median_of(report.scores);
  return report;
}

}  // namespace molinfer::reg
