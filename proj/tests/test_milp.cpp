#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "molinfer/milp/lp_format.hpp"
#include "molinfer/milp/model.hpp"
#include "molinfer/milp/solver.hpp"
#include "molinfer/util/rng.hpp"
#include "oracles.hpp"

using namespace molinfer;
using milp::LinExpr;
using milp::MilpModel;
using milp::Sense;
using milp::VarKind;

namespace {

milp::Solver default_solver(double time_limit = 30) {
  auto cfg = milp::SolverConfig::detect();
  cfg.time_limit_seconds = time_limit;
  return milp::Solver(cfg);
}

}  // namespace

TEST_CASE("model construction and merge") {
  MilpModel a;
  a.add_var("x", VarKind::kContinuous, 0, 1);
  a.add_var("y", VarKind::kBinary, 0, 1);
  a.add_var("z", VarKind::kInteger, 0, 5);
  a.add_constraint("c", LinExpr().add(0, 1.0).add(2, 2.0), Sense::kLe, 4);

  MilpModel b;
  b.add_var("x", VarKind::kContinuous, 0, 2);
  b.add_var("w", VarKind::kContinuous, 0, 2);
  b.add_var("u", VarKind::kContinuous, 0, 2);
  b.add_var("t", VarKind::kContinuous, 0, 2);

  auto merged = MilpModel::merge({&a, &b}, {"a_", "b_"});
  CHECK(merged.var_count() == 7);
  CHECK(merged.constraint_count() == 1);
  CHECK(merged.find_var("a_x") >= 0);
  CHECK(merged.find_var("b_x") >= 0);

  // Without prefixes the shared name collides.
  CHECK_THROWS_WITH_AS(MilpModel::merge({&a, &b}, {"", ""}),
                       doctest::Contains("duplicate variable"),
                       std::runtime_error);
}

TEST_CASE("duplicate names and unknown variables are rejected") {
  MilpModel m;
  m.add_var("x", VarKind::kContinuous, 0, 1);
  CHECK_THROWS(m.add_var("x", VarKind::kContinuous, 0, 1));
  CHECK_THROWS(m.add_constraint("c", LinExpr().add(3, 1.0), Sense::kLe, 1));
  CHECK_THROWS(m.add_var("2bad", VarKind::kContinuous, 0, 1));
  CHECK_THROWS(m.add_var("sp ace", VarKind::kContinuous, 0, 1));
}

TEST_CASE("merge is associative up to prefixes") {
  MilpModel a, b, c;
  a.add_var("x", VarKind::kBinary, 0, 1);
  a.add_constraint("r", LinExpr().add(0, 1.0), Sense::kGe, 1);
  b.add_var("x", VarKind::kInteger, 0, 3);
  c.add_var("x", VarKind::kContinuous, 0, 2);
  auto ab = MilpModel::merge({&a, &b}, {"a_", "b_"});
  auto bc = MilpModel::merge({&b, &c}, {"b_", "c_"});
  auto ab_c = MilpModel::merge({&ab, &c}, {"", "c_"});
  auto a_bc = MilpModel::merge({&a, &bc}, {"a_", ""});
  CHECK(milp::write_lp(ab_c) == milp::write_lp(a_bc));
}

TEST_CASE("write_lp: structure, binaries, determinism") {
  MilpModel m;
  int x = m.add_var("x", VarKind::kContinuous, 0.5, 2);
  int b = m.add_binary("b");
  int g = m.add_var("g", VarKind::kInteger, -3, 9);
  m.add_constraint("cap", LinExpr().add(x, 2.0).add(g, -1.0), Sense::kLe, 7);
  m.add_constraint("pin", LinExpr().add(b, 1.0), Sense::kEq, 1);

  std::string lp = milp::write_lp(m);
  // Feasibility-only models carry an empty (constant zero) objective.
  CHECK(lp.find("Minimize\n obj:\n") != std::string::npos);
  CHECK(lp.find("Binaries\n") != std::string::npos);
  // Binary variables never get a Bounds line.
  CHECK(lp.find("b <=") == std::string::npos);
  CHECK(lp.find("<= b") == std::string::npos);
  CHECK(lp.find("Generals\n g\n") != std::string::npos);
  // Identical model, identical bytes.
  CHECK(milp::write_lp(m) == lp);
}

TEST_CASE("write_lp bounds round-trip is lossless to 12 digits") {
  util::Rng rng(3);
  MilpModel m;
  std::vector<std::pair<double, double>> want;
  for (int i = 0; i < 40; ++i) {
    double lo = std::round(rng.uniform(-100, 100) * 1e6) / 1e6;
    double hi = std::round((lo + rng.uniform(0, 50)) * 1e6) / 1e6;
    m.add_var("v" + std::to_string(i), VarKind::kContinuous, lo, hi);
    want.push_back({lo, hi});
  }
  m.add_var("free_v", VarKind::kContinuous, -milp::kInf, milp::kInf);
  m.add_var("half", VarKind::kContinuous, -milp::kInf, 4.5);
  auto bounds = milp::parse_lp_bounds(milp::write_lp(m));
  for (int i = 0; i < 40; ++i) {
    auto got = bounds.at("v" + std::to_string(i));
    CHECK(got.first == want[i].first);
    CHECK(got.second == want[i].second);
  }
  CHECK(bounds.at("free_v").first == -milp::kInf);
  CHECK(bounds.at("half").first == -milp::kInf);
  CHECK(bounds.at("half").second == 4.5);
}

TEST_CASE("solve: trivially feasible and infeasible binaries") {
  auto solver = default_solver();
  {
    MilpModel m;
    int x = m.add_binary("x");
    m.add_constraint("ge", LinExpr().add(x, 1.0), Sense::kGe, 1);
    auto res = solver.solve(m);
    REQUIRE(res.status == milp::SolveStatus::kFeasible);
    CHECK(res.assignment[x] == doctest::Approx(1.0));
  }
  {
    MilpModel m;
    int x = m.add_binary("x");
    m.add_constraint("ge", LinExpr().add(x, 1.0), Sense::kGe, 1);
    m.add_constraint("le", LinExpr().add(x, 1.0), Sense::kLe, 0);
    auto res = solver.solve(m);
    CHECK(res.status == milp::SolveStatus::kInfeasible);
  }
}

TEST_CASE("solve matches exhaustive enumeration on random IPs") {
  util::Rng rng(17);
  auto solver = default_solver();
  std::vector<MilpModel> models;
  for (int trial = 0; trial < 12; ++trial) {
    MilpModel m;
    int nvars = 4 + static_cast<int>(rng.below(5));  // <= 8 binaries
    std::vector<int> vars;
    for (int v = 0; v < nvars; ++v) {
      vars.push_back(m.add_binary("x" + std::to_string(v)));
    }
    int ncons = 2 + static_cast<int>(rng.below(4));
    for (int c = 0; c < ncons; ++c) {
      LinExpr e;
      for (int v = 0; v < nvars; ++v) {
        int coef = rng.range(-4, 4);
        if (coef != 0) e.add(vars[v], coef);
      }
      Sense s = rng.below(2) ? Sense::kLe : Sense::kGe;
      m.add_constraint("c" + std::to_string(c), std::move(e), s,
                       rng.range(-3, 6));
    }
    LinExpr obj;
    for (int v = 0; v < nvars; ++v) obj.add(vars[v], rng.range(-5, 5));
    m.set_objective(rng.below(2) ? milp::Objective::kMinimize
                                 : milp::Objective::kMaximize,
                    std::move(obj));
    models.push_back(std::move(m));
  }
  std::vector<const MilpModel*> ptrs;
  for (auto& m : models) ptrs.push_back(&m);
  auto results = solver.solve_batch(ptrs);
  for (size_t i = 0; i < models.size(); ++i) {
    auto oracle = oracles::solve_ip_by_enumeration(models[i]);
    if (oracle.feasible) {
      REQUIRE(results[i].status == milp::SolveStatus::kFeasible);
      REQUIRE(results[i].objective.has_value());
      CHECK(*results[i].objective ==
            doctest::Approx(*oracle.best_objective).epsilon(1e-6));
    } else {
      CHECK(results[i].status == milp::SolveStatus::kInfeasible);
    }
  }
}

TEST_CASE("feasible results are re-verified against every constraint") {
  MilpModel m;
  int x = m.add_var("x", VarKind::kContinuous, 0, 10);
  m.add_constraint("pin", LinExpr().add(x, 1.0), Sense::kEq, 3);
  auto good = milp::Solver(milp::SolverConfig::detect()).solve(m);
  REQUIRE(good.status == milp::SolveStatus::kFeasible);
  CHECK(good.assignment[x] == doctest::Approx(3.0));
  CHECK(m.max_violation(good.assignment) <= 1e-6);

  // A solver that claims optimality with a wrong assignment is caught by
  // the re-verification pass.
  milp::SolverConfig lying;
  lying.executable = "sh";
  lying.args = {"-c",
                "printf 'status optimal\\nobjective 0\\nvar x 99\\n' > {sol}"};
  auto res = milp::Solver(lying).solve(m);
  CHECK(res.status == milp::SolveStatus::kError);
  CHECK(res.log_digest.find("violates constraints") != std::string::npos);
}

TEST_CASE("max_violation flags bound, integrality and row violations") {
  MilpModel m;
  int x = m.add_var("x", VarKind::kInteger, 0, 4);
  int y = m.add_var("y", VarKind::kContinuous, 0, 1);
  m.add_constraint("row", LinExpr().add(x, 1.0).add(y, 1.0), Sense::kLe, 3);
  CHECK(m.max_violation({2.0, 0.5}) == 0.0);
  CHECK(m.max_violation({2.4, 0.5}) == doctest::Approx(0.4));  // fractional
  CHECK(m.max_violation({5.0, 0.0}) == doctest::Approx(2.0));  // bound + row
  CHECK(m.max_violation({3.0, 1.0}) == doctest::Approx(1.0));  // row
}

TEST_CASE("unparsable solver output surfaces as an error") {
  MilpModel m;
  m.add_var("x", VarKind::kContinuous, 0, 1);
  milp::SolverConfig cfg;
  cfg.executable = "true";  // produces no solution file
  cfg.args = {"{lp}", "{sol}"};
  auto res = milp::Solver(cfg).solve(m);
  CHECK(res.status == milp::SolveStatus::kError);
  CHECK(res.log_digest.find("no solution file") != std::string::npos);
}

TEST_CASE("missing solver executable surfaces as an error") {
  MilpModel m;
  m.add_var("x", VarKind::kContinuous, 0, 1);
  milp::SolverConfig cfg;
  cfg.executable = "/nonexistent/solver_binary";
  cfg.args = {"{lp}", "{sol}"};
  auto res = milp::Solver(cfg).solve(m);
  CHECK(res.status == milp::SolveStatus::kError);
}
