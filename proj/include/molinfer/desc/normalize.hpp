#pragma once

#include <string>
#include <vector>

namespace molinfer::desc {

// Min-max scaling to [0,1] per descriptor column. Constant columns map
// to 0 (and invert back to the constant).
struct Normalization {
  std::vector<double> mins;
  std::vector<double> maxs;

  int size() const { return static_cast<int>(mins.size()); }
  bool constant(int j) const { return maxs[j] <= mins[j]; }

  static Normalization fit(const std::vector<std::vector<double>>& rows);

  double apply_one(int j, double v) const {
    if (constant(j)) return 0.0;
    return (v - mins[j]) / (maxs[j] - mins[j]);
  }
  double invert_one(int j, double v) const {
    if (constant(j)) return mins[j];
    return mins[j] + v * (maxs[j] - mins[j]);
  }

  std::vector<double> apply(const std::vector<double>& row) const;
  std::vector<double> invert(const std::vector<double>& row) const;
  std::vector<std::vector<double>> apply_all(
      const std::vector<std::vector<double>>& rows) const;

  std::string serialize(const std::vector<std::string>& ids) const;
  static Normalization deserialize(const std::string& text);
};

}  // namespace molinfer::desc
