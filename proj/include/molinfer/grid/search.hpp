#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "molinfer/grid/projection.hpp"
#include "molinfer/milp/model.hpp"
#include "molinfer/milp/solver.hpp"

namespace molinfer::grid {

// Center, per-dimension grid widths and radius of the neighbor to search.
struct GridGeometry {
  std::vector<double> center;  // s*
  std::vector<double> delta;   // widths, all > 0
  std::vector<int> radius;     // non-negative

  int dim() const { return static_cast<int>(center.size()); }
  void validate() const;
};

// Closed interval [s*(p)+(z(p)-0.5)d(p), s*(p)+(z(p)+0.5)d(p)] per p.
std::vector<std::pair<double, double>> subspace_bounds(
    const GridGeometry& geo, const std::vector<int>& z);

// All grids with |z(p)| <= r(p), ordered by shell max_p |z(p)| ascending,
// ties lexicographic.
std::vector<std::vector<int>> neighbor(const GridGeometry& geo);

// Component-wise between-zero-and order: z' <= z iff every coordinate of
// z' lies between 0 and the same coordinate of z (inclusive).
bool grid_leq(const std::vector<int>& z_prime, const std::vector<int>& z);
bool grid_less(const std::vector<int>& z_prime, const std::vector<int>& z);

enum class GridState { kUntested, kFeasible, kInfeasible, kPruned, kTimeout, kError };

struct GridRecord {
  std::vector<int> z;
  GridState state = GridState::kUntested;
  std::optional<std::vector<int>> pruned_by;  // infeasible witness grid
  std::vector<double> x;                      // witness feature values
  std::vector<double> theta;                  // theta(x) of the witness
  std::vector<double> assignment;             // full witness assignment
  std::optional<double> objective;
  double solve_seconds = 0.0;
};

struct GridSearchOptions {
  bool prune = true;
  // Grids per solver batch; pruning bookkeeping is applied between
  // batches, and batches never span shells.
  int batch_size = 16;
};

struct GridSearchResult {
  std::vector<GridRecord> records;  // in search order
  int feasible = 0, infeasible = 0, pruned = 0, timeout = 0, errors = 0;

  const GridRecord* find(const std::vector<int>& z) const;
};

// Step 2/3 of the neighbor search: for every grid z in N(r), in shell
// order, solve the base model augmented with theta(x) in S(z) (two
// inequalities per projection); record feasibility; once a grid is known
// infeasible, discard every later grid it precedes in the grid order
// without solving. Timeouts are recorded but never serve as pruning
// witnesses. Feasible witnesses are verified to project inside their
// subspace (closed intervals, 1e-6 slack).
GridSearchResult grid_search(const milp::MilpModel& base,
                             const std::vector<int>& x_vars,
                             const ProjectionSet& ps, const GridGeometry& geo,
                             const milp::Solver& solver,
                             const GridSearchOptions& options = {});

// Center geometry on theta(x*) of a seed feature vector.
GridGeometry centered_geometry(const ProjectionSet& ps,
                               const std::vector<double>& seed_x,
                               const std::vector<double>& delta,
                               const std::vector<int>& radius);

}  // namespace molinfer::grid
