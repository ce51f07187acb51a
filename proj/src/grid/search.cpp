#include "molinfer/grid/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "molinfer/enc/linear.hpp"

namespace molinfer::grid {

void GridGeometry::validate() const {
  if (center.empty() || delta.size() != center.size() ||
      radius.size() != center.size()) {
    throw std::runtime_error("grid geometry dimensions disagree");
  }
  for (double d : delta) {
    if (!(d > 0)) throw std::runtime_error("grid width delta must be > 0");
  }
  for (int r : radius) {
    if (r < 0) throw std::runtime_error("grid radius must be >= 0");
  }
}

std::vector<std::pair<double, double>> subspace_bounds(
    const GridGeometry& geo, const std::vector<int>& z) {
  if (z.size() != geo.center.size()) {
    throw std::runtime_error("subspace_bounds: dimension mismatch");
  }
  std::vector<std::pair<double, double>> out(z.size());
  for (size_t p = 0; p < z.size(); ++p) {
    out[p] = {geo.center[p] + (z[p] - 0.5) * geo.delta[p],
              geo.center[p] + (z[p] + 0.5) * geo.delta[p]};
  }
  return out;
}

std::vector<std::vector<int>> neighbor(const GridGeometry& geo) {
  geo.validate();
  std::vector<std::vector<int>> grids;
  std::vector<int> z(geo.dim());
  // Enumerate the box lexicographically, then stable-sort by shell.
  std::function<void(int)> rec = [&](int p) {
    if (p == geo.dim()) {
      grids.push_back(z);
      return;
    }
    for (int v = -geo.radius[p]; v <= geo.radius[p]; ++v) {
      z[p] = v;
      rec(p + 1);
    }
  };
  rec(0);
  std::stable_sort(grids.begin(), grids.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     int sa = 0, sb = 0;
                     for (int v : a) sa = std::max(sa, std::abs(v));
                     for (int v : b) sb = std::max(sb, std::abs(v));
                     if (sa != sb) return sa < sb;
                     return a < b;
                   });
  return grids;
}

bool grid_leq(const std::vector<int>& z_prime, const std::vector<int>& z) {
  if (z_prime.size() != z.size()) {
    throw std::runtime_error("grid_leq: dimension mismatch");
  }
  for (size_t p = 0; p < z.size(); ++p) {
    bool ok = (0 <= z_prime[p] && z_prime[p] <= z[p]) ||
              (0 >= z_prime[p] && z_prime[p] >= z[p]);
    if (!ok) return false;
  }
  return true;
}

bool grid_less(const std::vector<int>& z_prime, const std::vector<int>& z) {
  return z_prime != z && grid_leq(z_prime, z);
}

const GridRecord* GridSearchResult::find(const std::vector<int>& z) const {
  for (const auto& r : records) {
    if (r.z == z) return &r;
  }
  return nullptr;
}

GridGeometry centered_geometry(const ProjectionSet& ps,
                               const std::vector<double>& seed_x,
                               const std::vector<double>& delta,
                               const std::vector<int>& radius) {
  GridGeometry geo;
  geo.center = ps.theta(seed_x);
  geo.delta = delta;
  geo.radius = radius;
  geo.validate();
  return geo;
}

namespace {

int shell_of(const std::vector<int>& z) {
  int s = 0;
  for (int v : z) s = std::max(s, std::abs(v));
  return s;
}

std::string grid_tag(const std::vector<int>& z) {
  std::string s;
  for (size_t p = 0; p < z.size(); ++p) {
    if (p) s += "_";
    s += (z[p] < 0 ? "m" : "") + std::to_string(std::abs(z[p]));
  }
  return s;
}

// Base model plus theta(x) in S(z): one linked theta variable and two
// inequality rows per projection.
milp::MilpModel augment(const milp::MilpModel& base,
                        const std::vector<int>& x_vars,
                        const ProjectionSet& ps, const GridGeometry& geo,
                        const std::vector<int>& z) {
  milp::MilpModel m = milp::MilpModel::merge({&base}, {""});
  auto box = subspace_bounds(geo, z);
  for (int p = 0; p < ps.p_max(); ++p) {
    std::string tag = "grid_t" + std::to_string(p) + "_" + grid_tag(z);
    int tvar = m.add_var(tag, milp::VarKind::kContinuous, -milp::kInf,
                         milp::kInf);
    std::vector<double> weights(ps.w[p].begin(), ps.w[p].end() - 1);
    enc::encode_linear(m, x_vars, weights, ps.w[p].back(), tvar, tag + "_def");
    m.add_constraint(tag + "_lo", milp::LinExpr().add(tvar, 1.0),
                     milp::Sense::kGe, box[p].first);
    m.add_constraint(tag + "_hi", milp::LinExpr().add(tvar, 1.0),
                     milp::Sense::kLe, box[p].second);
  }
  return m;
}

}  // namespace

GridSearchResult grid_search(const milp::MilpModel& base,
                             const std::vector<int>& x_vars,
                             const ProjectionSet& ps, const GridGeometry& geo,
                             const milp::Solver& solver,
                             const GridSearchOptions& options) {
  ps.validate();
  geo.validate();
  if (geo.dim() != ps.p_max()) {
    throw std::runtime_error("geometry dimension must equal p_max");
  }
  if (static_cast<int>(x_vars.size()) != ps.dim) {
    throw std::runtime_error("x variable count must equal projection width");
  }

  auto grids = neighbor(geo);
  GridSearchResult result;
  result.records.reserve(grids.size());
  for (const auto& z : grids) {
    GridRecord r;
    r.z = z;
    result.records.push_back(std::move(r));
  }

  std::vector<std::vector<int>> infeasible_witnesses;
  size_t cursor = 0;
  while (cursor < result.records.size()) {
    // Collect the next batch: same shell, skipping grids that some
    // already-known infeasible witness precedes.
    std::vector<size_t> batch;
    int shell = -1;
    while (cursor < result.records.size() &&
           static_cast<int>(batch.size()) < std::max(1, options.batch_size)) {
      GridRecord& rec = result.records[cursor];
      int s = shell_of(rec.z);
      if (shell >= 0 && s != shell) break;  // batches never span shells
      if (options.prune) {
        bool pruned = false;
        for (const auto& w : infeasible_witnesses) {
          if (grid_less(w, rec.z)) {
            rec.state = GridState::kPruned;
            rec.pruned_by = w;
            ++result.pruned;
            pruned = true;
            break;
          }
        }
        if (pruned) {
          ++cursor;
          continue;
        }
      }
      shell = s;
      batch.push_back(cursor);
      ++cursor;
    }
    if (batch.empty()) continue;

    std::vector<milp::MilpModel> models;
    models.reserve(batch.size());
    for (size_t bi : batch) {
      models.push_back(augment(base, x_vars, ps, geo, result.records[bi].z));
    }
    std::vector<const milp::MilpModel*> ptrs;
    for (auto& m : models) ptrs.push_back(&m);
    auto solved = solver.solve_batch(ptrs);

    for (size_t k = 0; k < batch.size(); ++k) {
      GridRecord& rec = result.records[batch[k]];
      const milp::SolveResult& sr = solved[k];
      rec.solve_seconds = sr.solve_seconds;
      switch (sr.status) {
        case milp::SolveStatus::kFeasible: {
          rec.state = GridState::kFeasible;
          rec.objective = sr.objective;
          rec.assignment = sr.assignment;
          rec.x.resize(x_vars.size());
          for (size_t j = 0; j < x_vars.size(); ++j) {
            // x variables keep their base-model indices after the merge.
            rec.x[j] = sr.assignment[x_vars[j]];
          }
          rec.theta = ps.theta(rec.x);
          auto box = subspace_bounds(geo, rec.z);
          for (int pdim = 0; pdim < ps.p_max(); ++pdim) {
            if (rec.theta[pdim] < box[pdim].first - 1e-6 ||
                rec.theta[pdim] > box[pdim].second + 1e-6) {
              throw std::runtime_error(
                  "grid witness projects outside its subspace");
            }
          }
          ++result.feasible;
          break;
        }
        case milp::SolveStatus::kInfeasible:
          rec.state = GridState::kInfeasible;
          ++result.infeasible;
          infeasible_witnesses.push_back(rec.z);
          break;
        case milp::SolveStatus::kTimeout:
          // Not proven infeasible, so never a pruning witness.
          rec.state = GridState::kTimeout;
          ++result.timeout;
          break;
        case milp::SolveStatus::kError:
          rec.state = GridState::kError;
          ++result.errors;
          break;
      }
    }
  }
  return result;
}

}  // namespace molinfer::grid
