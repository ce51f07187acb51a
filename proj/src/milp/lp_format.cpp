#include "molinfer/milp/lp_format.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "molinfer/util/text.hpp"

namespace molinfer::milp {

namespace {

void append_expr(std::string& out, const MilpModel& m, const LinExpr& e) {
  // Collapse duplicate variables, keep first-occurrence order.
  std::vector<std::pair<int, double>> terms;
  for (auto [v, c] : e.terms) {
    bool found = false;
    for (auto& t : terms) {
      if (t.first == v) {
        t.second += c;
        found = true;
        break;
      }
    }
    if (!found) terms.emplace_back(v, c);
  }
  bool first = true;
  for (auto [v, c] : terms) {
    if (c == 0) continue;
    if (first) {
      if (c < 0) out += "- ";
      first = false;
    } else {
      out += c < 0 ? "- " : "+ ";
    }
    double mag = std::fabs(c);
    if (mag != 1.0) {
      out += util::format_number(mag);
      out += " ";
    }
    out += m.var(v).name;
    out += " ";
  }
  if (first) {
    // Everything cancelled; emit an explicit zero term so the line stays
    // well-formed for any LP reader.
    out += "0 " + m.var(e.terms.empty() ? 0 : e.terms[0].first).name + " ";
  }
}

}  // namespace

std::string write_lp(const MilpModel& model) {
  if (model.var_count() == 0) {
    throw std::runtime_error("cannot write LP for a model with no variables");
  }
  std::string out;
  out += model.objective_direction() == Objective::kMaximize ? "Maximize\n"
                                                             : "Minimize\n";
  out += " obj:";
  if (model.objective_direction() != Objective::kNone &&
      !model.objective().terms.empty()) {
    out += " ";
    append_expr(out, model, model.objective());
    out.pop_back();
  }
  out += "\n";
  out += "Subject To\n";
  for (const Constraint& c : model.constraints()) {
    out += " " + c.name + ": ";
    append_expr(out, model, c.expr);
    switch (c.sense) {
      case Sense::kLe: out += "<= "; break;
      case Sense::kGe: out += ">= "; break;
      case Sense::kEq: out += "= "; break;
    }
    out += util::format_number(c.rhs);
    out += "\n";
  }
  std::string bounds, generals, binaries;
  for (int v = 0; v < model.var_count(); ++v) {
    const Variable& var = model.var(v);
    if (var.kind == VarKind::kBinary) {
      binaries += " " + var.name + "\n";
      continue;
    }
    if (var.kind == VarKind::kInteger) generals += " " + var.name + "\n";
    // LP default is [0, +inf); only emit when different.
    if (var.lower == 0 && var.upper == kInf) continue;
    if (var.lower == -kInf && var.upper == kInf) {
      bounds += " " + var.name + " free\n";
    } else if (var.lower == var.upper) {
      bounds += " " + var.name + " = " + util::format_number(var.lower) + "\n";
    } else if (var.upper == kInf) {
      bounds += " " + var.name + " >= " + util::format_number(var.lower) + "\n";
    } else if (var.lower == -kInf) {
      // A bare `x <= u` leaves the LP default lower bound of 0 in place,
      // so the infinite lower end has to be spelled out.
      bounds += " -inf <= " + var.name + " <= " + util::format_number(var.upper) +
                "\n";
    } else {
      bounds += " " + util::format_number(var.lower) + " <= " + var.name +
                " <= " + util::format_number(var.upper) + "\n";
    }
  }
  if (!bounds.empty()) out += "Bounds\n" + bounds;
  if (!generals.empty()) out += "Generals\n" + generals;
  if (!binaries.empty()) out += "Binaries\n" + binaries;
  out += "End\n";
  return out;
}

std::map<std::string, std::pair<double, double>> parse_lp_bounds(
    const std::string& lp_text) {
  std::map<std::string, std::pair<double, double>> out;
  bool in_bounds = false;
  for (const auto& raw : util::split(lp_text, '\n')) {
    std::string line = util::trim(raw);
    if (line == "Bounds") {
      in_bounds = true;
      continue;
    }
    if (!in_bounds) continue;
    if (line == "Generals" || line == "Binaries" || line == "End") break;
    auto tok = util::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() == 2 && tok[1] == "free") {
      out[tok[0]] = {-kInf, kInf};
    } else if (tok.size() == 3 && tok[1] == "=") {
      double v = util::parse_real(tok[2], "bound");
      out[tok[0]] = {v, v};
    } else if (tok.size() == 3 && tok[1] == ">=") {
      out[tok[0]] = {util::parse_real(tok[2], "bound"), kInf};
    } else if (tok.size() == 3 && tok[1] == "<=") {
      out[tok[0]] = {0.0, util::parse_real(tok[2], "bound")};
    } else if (tok.size() == 5 && tok[1] == "<=" && tok[3] == "<=") {
      double lo = tok[0] == "-inf" ? -kInf : util::parse_real(tok[0], "bound");
      out[tok[2]] = {lo, util::parse_real(tok[4], "bound")};
    } else {
      throw std::runtime_error("unparsable bounds line: " + line);
    }
  }
  return out;
}

}  // namespace molinfer::milp
