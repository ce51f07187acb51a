#pragma once

#include <map>
#include <string>

#include "molinfer/milp/model.hpp"

namespace molinfer::milp {

// Deterministic CPLEX-style LP text: identical model, identical bytes.
// Feasibility-only models get an empty (constant zero) objective.
// Binary variables appear in the Binaries section and get no Bounds line.
std::string write_lp(const MilpModel& model);

// Parses the Bounds section of LP text emitted by write_lp back into
// (lower, upper) pairs by variable name. Round-trip companion to
// write_lp for bound values of up to 12 significant digits.
std::map<std::string, std::pair<double, double>> parse_lp_bounds(
    const std::string& lp_text);

}  // namespace molinfer::milp
