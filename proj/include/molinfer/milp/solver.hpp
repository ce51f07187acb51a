#pragma once

#include <optional>
#include <string>
#include <vector>

#include "molinfer/milp/model.hpp"

namespace molinfer::milp {

enum class SolveStatus { kFeasible, kInfeasible, kTimeout, kError };

struct SolveResult {
  SolveStatus status = SolveStatus::kError;
  // Full assignment by model variable index when feasible.
  std::vector<double> assignment;
  std::optional<double> objective;
  std::string log_digest;  // tail of the solver conversation, for diagnostics
  double solve_seconds = 0.0;

  double value(const MilpModel& m, const std::string& var_name) const {
    int idx = m.find_var(var_name);
    if (idx < 0 || idx >= static_cast<int>(assignment.size())) return 0.0;
    return assignment[idx];
  }
};

// External solver reached through a subprocess and LP files. The argument
// template uses {lp}, {sol} and {timelimit} placeholders. The solution
// file is scanned with two regexes: one for `status`, one per variable
// line. Defaults target the bundled HiGHS driver script.
struct SolverConfig {
  std::string executable;        // e.g. "python3"
  std::vector<std::string> args; // e.g. {script, "{lp}", "{sol}", "{timelimit}"}
  std::string status_regex = R"(^status\s+(\S+))";
  std::string var_regex = R"(^var\s+(\S+)\s+(\S+))";
  double time_limit_seconds = 60.0;
  double feasibility_tol = 1e-6;
  bool batch_capable = false;    // driver accepts repeated {lp} {sol} pairs
  bool keep_files = false;

  // Resolution order: MOLINFER_SOLVER / MOLINFER_SOLVER_ARGS environment
  // variables, then the bundled driver script.
  static SolverConfig detect();
  static SolverConfig bundled_driver(const std::string& script_path);
};

// Where the bundled lp_solve.py lives (source tree path baked in at
// configure time; override with MOLINFER_SOLVER_SCRIPT).
std::string bundled_solver_script();

class Solver {
 public:
  explicit Solver(SolverConfig config) : config_(std::move(config)) {}

  const SolverConfig& config() const { return config_; }
  void set_time_limit(double seconds) { config_.time_limit_seconds = seconds; }

  // Writes the LP, runs the subprocess, parses and re-verifies the
  // assignment against every constraint before reporting feasible.
  SolveResult solve(const MilpModel& model) const;

  // One subprocess invocation for many instances when the driver allows
  // it; otherwise a plain loop. Order of results matches input order.
  std::vector<SolveResult> solve_batch(
      const std::vector<const MilpModel*>& models) const;

 private:
  SolverConfig config_;

  SolveResult parse_solution(const MilpModel& model,
                             const std::string& sol_text,
                             const std::string& log_tail) const;
};

}  // namespace molinfer::milp
