#include "molinfer/milp/model.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace molinfer::milp {

namespace {

bool lp_safe_name(const std::string& name) {
  if (name.empty() || name.size() > 200) return false;
  char c0 = name[0];
  if (!(std::isalpha(static_cast<unsigned char>(c0)) || c0 == '_')) return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
          c == '(' || c == ')')) {
      return false;
    }
  }
  return true;
}

}  // namespace

int MilpModel::add_var(const std::string& name, VarKind kind, double lower,
                       double upper) {
  if (!lp_safe_name(name)) {
    throw std::runtime_error("variable name not LP-safe: '" + name + "'");
  }
  if (var_index_.count(name)) {
    throw std::runtime_error("duplicate variable name: " + name);
  }
  if (kind == VarKind::kBinary) {
    lower = 0;
    upper = 1;
  }
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw std::runtime_error("bad bounds for variable " + name);
  }
  var_index_[name] = static_cast<int>(vars_.size());
  vars_.push_back({name, kind, lower, upper});
  return static_cast<int>(vars_.size()) - 1;
}

void MilpModel::check_expr(const LinExpr& e) const {
  for (auto [v, c] : e.terms) {
    if (v < 0 || v >= var_count()) {
      throw std::runtime_error("expression references undeclared variable");
    }
    if (!std::isfinite(c)) {
      throw std::runtime_error("non-finite coefficient in expression");
    }
  }
}

void MilpModel::add_constraint(const std::string& name, LinExpr expr,
                               Sense sense, double rhs) {
  if (!lp_safe_name(name)) {
    throw std::runtime_error("constraint name not LP-safe: '" + name + "'");
  }
  if (constraint_index_.count(name)) {
    throw std::runtime_error("duplicate constraint name: " + name);
  }
  check_expr(expr);
  if (!std::isfinite(rhs)) {
    throw std::runtime_error("non-finite rhs in constraint " + name);
  }
  constraint_index_[name] = static_cast<int>(constraints_.size());
  constraints_.push_back({name, std::move(expr), sense, rhs});
}

void MilpModel::set_objective(Objective direction, LinExpr expr) {
  check_expr(expr);
  obj_dir_ = direction;
  obj_ = std::move(expr);
}

int MilpModel::find_var(const std::string& name) const {
  auto it = var_index_.find(name);
  return it == var_index_.end() ? -1 : it->second;
}

MilpModel MilpModel::merge(const std::vector<const MilpModel*>& models,
                           const std::vector<std::string>& prefixes) {
  if (models.size() != prefixes.size()) {
    throw std::runtime_error("merge: one prefix per model required");
  }
  MilpModel out;
  for (size_t mi = 0; mi < models.size(); ++mi) {
    const MilpModel& m = *models[mi];
    const std::string& p = prefixes[mi];
    std::vector<int> remap(m.var_count());
    for (int v = 0; v < m.var_count(); ++v) {
      const Variable& var = m.vars_[v];
      remap[v] = out.add_var(p + var.name, var.kind, var.lower, var.upper);
    }
    for (const Constraint& c : m.constraints_) {
      LinExpr e;
      for (auto [v, coeff] : c.expr.terms) e.add(remap[v], coeff);
      out.add_constraint(p + c.name, std::move(e), c.sense, c.rhs);
    }
  }
  return out;
}

double MilpModel::eval(const LinExpr& e,
                       const std::vector<double>& assignment) const {
  double s = 0;
  for (auto [v, c] : e.terms) s += c * assignment[v];
  return s;
}

double MilpModel::max_violation(const std::vector<double>& assignment) const {
  if (assignment.size() != vars_.size()) {
    throw std::runtime_error("assignment width mismatch");
  }
  double worst = 0;
  for (int v = 0; v < var_count(); ++v) {
    const Variable& var = vars_[v];
    double x = assignment[v];
    if (x < var.lower) worst = std::max(worst, var.lower - x);
    if (x > var.upper) worst = std::max(worst, x - var.upper);
    if (var.kind != VarKind::kContinuous) {
      worst = std::max(worst, std::fabs(x - std::round(x)));
    }
  }
  for (const Constraint& c : constraints_) {
    double lhs = eval(c.expr, assignment);
    switch (c.sense) {
      case Sense::kLe: worst = std::max(worst, lhs - c.rhs); break;
      case Sense::kGe: worst = std::max(worst, c.rhs - lhs); break;
      case Sense::kEq: worst = std::max(worst, std::fabs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

}  // namespace molinfer::milp
