#include "molinfer/desc/normalize.hpp"

#include <algorithm>
#include <stdexcept>

#include "molinfer/util/text.hpp"

namespace molinfer::desc {

Normalization Normalization::fit(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::runtime_error("cannot fit on empty data");
  size_t k = rows[0].size();
  Normalization n;
  n.mins.assign(k, 0.0);
  n.maxs.assign(k, 0.0);
  for (size_t j = 0; j < k; ++j) {
    double lo = rows[0][j], hi = rows[0][j];
    for (const auto& r : rows) {
      if (r.size() != k) throw std::runtime_error("ragged feature matrix");
      lo = std::min(lo, r[j]);
      hi = std::max(hi, r[j]);
    }
    n.mins[j] = lo;
    n.maxs[j] = hi;
  }
  return n;
}

std::vector<double> Normalization::apply(const std::vector<double>& row) const {
  if (static_cast<int>(row.size()) != size()) {
    throw std::runtime_error("normalization width mismatch");
  }
  std::vector<double> out(row.size());
  for (int j = 0; j < size(); ++j) out[j] = apply_one(j, row[j]);
  return out;
}

std::vector<double> Normalization::invert(const std::vector<double>& row) const {
  if (static_cast<int>(row.size()) != size()) {
    throw std::runtime_error("normalization width mismatch");
  }
  std::vector<double> out(row.size());
  for (int j = 0; j < size(); ++j) out[j] = invert_one(j, row[j]);
  return out;
}

std::vector<std::vector<double>> Normalization::apply_all(
    const std::vector<std::vector<double>>& rows) const {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(apply(r));
  return out;
}

std::string Normalization::serialize(
    const std::vector<std::string>& ids) const {
  if (static_cast<int>(ids.size()) != size()) {
    throw std::runtime_error("id list width mismatch");
  }
  std::string out;
  for (int j = 0; j < size(); ++j) {
    out += ids[j] + " " + util::format_number_exact(mins[j]) + " " +
           util::format_number_exact(maxs[j]) + "\n";
  }
  return out;
}

Normalization Normalization::deserialize(const std::string& text) {
  Normalization n;
  for (const auto& raw : util::split(text, '\n')) {
    auto tok = util::split_ws(raw);
    if (tok.empty()) continue;
    if (tok.size() != 3) {
      throw std::runtime_error("normalization line needs `id min max`");
    }
    n.mins.push_back(util::parse_real(tok[1], "min"));
    n.maxs.push_back(util::parse_real(tok[2], "max"));
  }
  return n;
}

}  // namespace molinfer::desc
