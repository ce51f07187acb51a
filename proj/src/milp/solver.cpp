#include "molinfer/milp/solver.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <stdexcept>

#include "molinfer/milp/lp_format.hpp"
#include "molinfer/util/text.hpp"

namespace fs = std::filesystem;

namespace molinfer::milp {

std::string bundled_solver_script() {
  if (const char* env = std::getenv("MOLINFER_SOLVER_SCRIPT")) return env;
#ifdef MOLINFER_SOURCE_DIR
  return std::string(MOLINFER_SOURCE_DIR) + "/tools/lp_solve.py";
#else
  return "tools/lp_solve.py";
#endif
}

SolverConfig SolverConfig::bundled_driver(const std::string& script_path) {
  SolverConfig c;
  c.executable = "python3";
  c.args = {script_path, "--time-limit", "{timelimit}", "{lp}", "{sol}"};
  c.batch_capable = true;
  return c;
}

SolverConfig SolverConfig::detect() {
  if (const char* exe = std::getenv("MOLINFER_SOLVER")) {
    SolverConfig c;
    c.executable = exe;
    if (const char* args = std::getenv("MOLINFER_SOLVER_ARGS")) {
      c.args = util::split_ws(args);
    } else {
      c.args = {"{lp}", "{sol}", "{timelimit}"};
    }
    return c;
  }
  return bundled_driver(bundled_solver_script());
}

namespace {

std::string substitute(const std::string& arg, const std::string& lp,
                       const std::string& sol, const std::string& tl) {
  std::string out = arg;
  auto replace_all = [&out](const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = out.find(from, pos)) != std::string::npos) {
      out.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all("{lp}", lp);
  replace_all("{sol}", sol);
  replace_all("{timelimit}", tl);
  return out;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  out += "'";
  return out;
}

fs::path fresh_workdir() {
  static std::atomic<uint64_t> counter{0};
  auto base = fs::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto dir = base / ("molinfer_" + std::to_string(::getpid()) + "_" +
                       std::to_string(counter.fetch_add(1)));
    std::error_code ec;
    if (fs::create_directory(dir, ec)) return dir;
  }
  throw std::runtime_error("cannot create solver working directory");
}

std::string tail_of(const std::string& text, size_t max_bytes = 2000) {
  if (text.size() <= max_bytes) return text;
  return text.substr(text.size() - max_bytes);
}

}  // namespace

SolveResult Solver::parse_solution(const MilpModel& model,
                                   const std::string& sol_text,
                                   const std::string& log_tail) const {
  SolveResult res;
  res.log_digest = log_tail;
  std::regex status_re(config_.status_regex);
  std::regex var_re(config_.var_regex);
  std::string status;
  std::vector<double> assignment(model.var_count(), 0.0);
  std::vector<char> seen(model.var_count(), 0);
  std::optional<double> objective;
  for (const auto& line : util::split(sol_text, '\n')) {
    std::smatch m;
    if (status.empty() && std::regex_search(line, m, status_re)) {
      status = m[1];
      continue;
    }
    if (std::regex_search(line, m, var_re)) {
      int idx = model.find_var(m[1]);
      if (idx >= 0) {
        assignment[idx] = util::parse_real(m[2].str(), "solution value");
        seen[idx] = 1;
      }
      continue;
    }
    auto tok = util::split_ws(line);
    if (tok.size() == 2 && tok[0] == "objective") {
      objective = util::parse_real(tok[1], "objective");
    }
  }
  if (status.empty()) {
    res.status = SolveStatus::kError;
    res.log_digest = "no status line in solution file\n" + log_tail;
    return res;
  }
  if (status == "infeasible") {
    res.status = SolveStatus::kInfeasible;
    return res;
  }
  if (status == "timeout") {
    res.status = SolveStatus::kTimeout;
    return res;
  }
  if (status != "optimal" && status != "feasible") {
    res.status = SolveStatus::kError;
    res.log_digest = "solver status '" + status + "'\n" + log_tail;
    return res;
  }
  for (int v = 0; v < model.var_count(); ++v) {
    if (!seen[v]) {
      res.status = SolveStatus::kError;
      res.log_digest =
          "solution missing variable " + model.var(v).name + "\n" + log_tail;
      return res;
    }
  }
  // Never trust the solver: re-verify the assignment.
  double viol = model.max_violation(assignment);
  if (viol > config_.feasibility_tol) {
    res.status = SolveStatus::kError;
    res.log_digest = "assignment violates constraints by " +
                     util::format_number(viol) + "\n" + log_tail;
    return res;
  }
  res.status = SolveStatus::kFeasible;
  res.assignment = std::move(assignment);
  res.objective = objective;
  return res;
}

std::vector<SolveResult> Solver::solve_batch(
    const std::vector<const MilpModel*>& models) const {
  std::vector<SolveResult> results(models.size());
  if (models.empty()) return results;
  auto t0 = std::chrono::steady_clock::now();

  fs::path dir = fresh_workdir();
  std::string tl = util::format_number(config_.time_limit_seconds);
  std::vector<std::string> lp_paths(models.size()), sol_paths(models.size());
  for (size_t i = 0; i < models.size(); ++i) {
    lp_paths[i] = (dir / ("job" + std::to_string(i) + ".lp")).string();
    sol_paths[i] = (dir / ("job" + std::to_string(i) + ".sol")).string();
    util::write_file(lp_paths[i], write_lp(*models[i]));
  }

  std::string log_path = (dir / "solver.log").string();
  auto run_command = [&](const std::vector<std::string>& argv) {
    std::string cmd;
    for (const auto& a : argv) cmd += shell_quote(a) + " ";
    cmd += "> " + shell_quote(log_path) + " 2>&1";
    return std::system(cmd.c_str());
  };

  bool single_pair = models.size() == 1;
  if (config_.batch_capable || single_pair) {
    std::vector<std::string> argv = {config_.executable};
    if (config_.batch_capable && !single_pair) {
      // Template args other than the {lp}/{sol} pair appear once; the
      // pair placeholders repeat per job.
      for (const auto& a : config_.args) {
        if (a.find("{lp}") != std::string::npos ||
            a.find("{sol}") != std::string::npos) {
          continue;
        }
        argv.push_back(substitute(a, "", "", tl));
      }
      for (size_t i = 0; i < models.size(); ++i) {
        for (const auto& a : config_.args) {
          if (a.find("{lp}") != std::string::npos ||
              a.find("{sol}") != std::string::npos) {
            argv.push_back(substitute(a, lp_paths[i], sol_paths[i], tl));
          }
        }
      }
    } else {
      for (const auto& a : config_.args) {
        argv.push_back(substitute(a, lp_paths[0], sol_paths[0], tl));
      }
    }
    int rc = run_command(argv);
    std::string log_tail;
    if (fs::exists(log_path)) log_tail = tail_of(util::read_file(log_path));
    for (size_t i = 0; i < models.size(); ++i) {
      if (!fs::exists(sol_paths[i])) {
        results[i].status = SolveStatus::kError;
        results[i].log_digest = "solver produced no solution file (exit " +
                                std::to_string(rc) + ")\n" + log_tail;
        continue;
      }
      results[i] =
          parse_solution(*models[i], util::read_file(sol_paths[i]), log_tail);
    }
  } else {
    for (size_t i = 0; i < models.size(); ++i) {
      std::vector<std::string> argv = {config_.executable};
      for (const auto& a : config_.args) {
        argv.push_back(substitute(a, lp_paths[i], sol_paths[i], tl));
      }
      int rc = run_command(argv);
      std::string log_tail;
      if (fs::exists(log_path)) log_tail = tail_of(util::read_file(log_path));
      if (!fs::exists(sol_paths[i])) {
        results[i].status = SolveStatus::kError;
        results[i].log_digest = "solver produced no solution file (exit " +
                                std::to_string(rc) + ")\n" + log_tail;
        continue;
      }
      results[i] =
          parse_solution(*models[i], util::read_file(sol_paths[i]), log_tail);
    }
  }

  auto t1 = std::chrono::steady_clock::now();
  double total = std::chrono::duration<double>(t1 - t0).count();
  for (auto& r : results) r.solve_seconds = total / models.size();
  if (!config_.keep_files) {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  return results;
}

SolveResult Solver::solve(const MilpModel& model) const {
  return solve_batch({&model})[0];
}

}  // namespace molinfer::milp
