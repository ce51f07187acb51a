#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace molinfer::milp {

enum class VarKind { kContinuous, kInteger, kBinary };
enum class Sense { kLe, kEq, kGe };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInf;
};

// Sparse linear expression over variable indices.
struct LinExpr {
  std::vector<std::pair<int, double>> terms;

  LinExpr& add(int var, double coeff) {
    if (coeff != 0.0) terms.emplace_back(var, coeff);
    return *this;
  }
};

struct Constraint {
  std::string name;
  LinExpr expr;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
};

enum class Objective { kNone, kMinimize, kMaximize };

// Solver-agnostic MILP. Variable and constraint names are unique and
// LP-format safe; constraints may only reference declared variables.
class MilpModel {
 public:
  int add_var(const std::string& name, VarKind kind, double lower,
              double upper);
  int add_binary(const std::string& name) {
    return add_var(name, VarKind::kBinary, 0, 1);
  }
  void add_constraint(const std::string& name, LinExpr expr, Sense sense,
                      double rhs);
  void set_objective(Objective direction, LinExpr expr);

  int var_count() const { return static_cast<int>(vars_.size()); }
  int constraint_count() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  Objective objective_direction() const { return obj_dir_; }
  const LinExpr& objective() const { return obj_; }

  // Index of a variable by name; -1 when absent.
  int find_var(const std::string& name) const;
  const Variable& var(int i) const { return vars_[i]; }

  // Structural union with a namespace prefix applied per input model.
  // Prefixes must keep all names unique.
  static MilpModel merge(const std::vector<const MilpModel*>& models,
                         const std::vector<std::string>& prefixes);

  // Violation of the worst constraint/bound under an assignment
  // (variable index -> value). Used to re-verify solver output.
  double max_violation(const std::vector<double>& assignment) const;

  double eval(const LinExpr& e, const std::vector<double>& assignment) const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> constraints_;
  std::map<std::string, int> var_index_;
  std::map<std::string, int> constraint_index_;
  Objective obj_dir_ = Objective::kNone;
  LinExpr obj_;

  void check_expr(const LinExpr& e) const;
};

}  // namespace molinfer::milp
