#include "molinfer/enc/topology.hpp"

#include <stdexcept>

#include "molinfer/desc/config.hpp"
#include "molinfer/desc/fringe.hpp"
#include "molinfer/util/text.hpp"

namespace molinfer::enc {

void TopologySpec::validate(const chem::ElementTable& table) const {
  if (rho < 0) throw std::runtime_error("topology: rho must be >= 0");
  if (n_interior_min < 1 || n_interior_max < n_interior_min) {
    throw std::runtime_error("topology: bad interior slot range");
  }
  auto check_ranges = [](const std::map<std::string, CountRange>& m,
                         const std::string& what) {
    for (const auto& [key, r] : m) {
      if (r.lb < 0 || r.ub < r.lb) {
        throw std::runtime_error("topology: bad bounds for " + what + " " + key);
      }
    }
  };
  check_ranges(elements, "element");
  check_ranges(ac, "ac");
  check_ranges(ec, "ec");
  check_ranges(cs, "cs");
  check_ranges(fringe, "fringe class");
  for (const auto& r : bond_totals) {
    if (r.lb < 0 || r.ub < r.lb) {
      throw std::runtime_error("topology: bad bond multiplicity bounds");
    }
  }
  for (const auto& [key, r] : elements) {
    (void)r;
    table.get(key);  // throws on unknown
    if (key == "H") throw std::runtime_error("topology: H is not a slot element");
  }
  for (const auto& [key, r] : ac) {
    (void)r;
    auto v = desc::parse_ac_key(key, table);
    if (!v.is_canonical()) {
      throw std::runtime_error("topology: ac key not canonical: " + key);
    }
  }
  for (const auto& [key, r] : cs) {
    (void)r;
    desc::parse_cs_key(key, table);
  }
  for (const auto& [key, r] : ec) {
    (void)r;
    auto g = desc::parse_ec_key(key, table);
    if (!g.is_canonical()) {
      throw std::runtime_error("topology: ec key not canonical: " + key);
    }
    if (!ac.count(g.adjacency().canonical().key())) {
      throw std::runtime_error("topology: ec key " + key +
                               " projects to an adjacency-configuration "
                               "missing from the ac section");
    }
    if (!cs.count(g.mu.key()) || !cs.count(g.mu_prime.key())) {
      throw std::runtime_error("topology: ec key " + key +
                               " uses a chemical symbol missing from the "
                               "cs section");
    }
  }
  for (const auto& [code, r] : fringe) {
    (void)r;
    if (rho == 0) {
      throw std::runtime_error("topology: fringe classes need rho >= 1");
    }
    auto t = desc::parse_fringe_code(code, table);
    auto info = desc::FringeClassInfo::build(t, rho);
    if (info.height > rho) {
      throw std::runtime_error("topology: fringe class " + code +
                               " is taller than rho");
    }
    if (info.n_exterior == 0) {
      throw std::runtime_error("topology: trivial fringe class " + code +
                               " (no exterior vertices) is implicit");
    }
  }
}

void TopologySpec::fill_from_registry(const desc::DescriptorRegistry& reg,
                                      const chem::ElementTable& table) {
  int big = 2 * n_interior_max;
  // Generous per-class cap; fringes can outnumber interior slots' edges.
  int fringe_big = n_interior_max;
  if (elements.empty()) {
    for (const auto& key : reg.keys_of(desc::DescriptorKind::kElement)) {
      if (key == "H") continue;
      elements[key] = {0, 8 * n_interior_max};
    }
  }
  if (ac.empty()) {
    for (const auto& key : reg.keys_of(desc::DescriptorKind::kAdjacency)) {
      ac[key] = {0, big};
    }
  }
  if (ec.empty()) {
    for (const auto& key : reg.keys_of(desc::DescriptorKind::kEdgeConfig)) {
      ec[key] = {0, big};
    }
  }
  if (cs.empty()) {
    for (const auto& key : reg.keys_of(desc::DescriptorKind::kSymbol)) {
      cs[key] = {0, n_interior_max};
    }
  }
  if (fringe.empty() && rho > 0) {
    for (const auto& key : reg.keys_of(desc::DescriptorKind::kFringe)) {
      fringe[key] = {0, fringe_big};
    }
  }
  bool bonds_unset = true;
  for (const auto& r : bond_totals) bonds_unset &= (r.lb == 0 && r.ub == 0);
  if (bonds_unset) {
    for (auto& r : bond_totals) r = {0, big};
  }
  (void)table;
}

std::string TopologySpec::serialize() const {
  std::string out;
  out += "[general]\n";
  out += "rho = " + std::to_string(rho) + "\n";
  out += "n_interior_min = " + std::to_string(n_interior_min) + "\n";
  out += "n_interior_max = " + std::to_string(n_interior_max) + "\n";
  auto section = [&out](const std::string& name,
                        const std::map<std::string, CountRange>& m) {
    if (m.empty()) return;
    out += "[" + name + "]\n";
    for (const auto& [key, r] : m) {
      out += key + " " + std::to_string(r.lb) + " " + std::to_string(r.ub) + "\n";
    }
  };
  section("elements", elements);
  section("ac", ac);
  section("ec", ec);
  section("cs", cs);
  section("fringe", fringe);
  out += "[bonds]\n";
  for (int m = 0; m < 3; ++m) {
    out += std::to_string(m + 1) + " " + std::to_string(bond_totals[m].lb) +
           " " + std::to_string(bond_totals[m].ub) + "\n";
  }
  return out;
}

TopologySpec TopologySpec::parse(const std::string& text) {
  TopologySpec ts;
  std::string section;
  int lineno = 0;
  bool bonds_seen = false;
  for (const auto& raw : util::split(text, '\n')) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    line = util::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto fail = [lineno](const std::string& msg) -> void {
      throw std::runtime_error("topology line " + std::to_string(lineno) +
                               ": " + msg);
    };
    if (section == "general") {
      auto kv = util::split(line, '=');
      if (kv.size() != 2) fail("expected `key = value`");
      std::string key = util::trim(kv[0]);
      int value = static_cast<int>(util::parse_int(util::trim(kv[1]), key));
      if (key == "rho") ts.rho = value;
      else if (key == "n_interior_min") ts.n_interior_min = value;
      else if (key == "n_interior_max") ts.n_interior_max = value;
      else fail("unknown general key: " + key);
      continue;
    }
    auto tok = util::split_ws(line);
    if (tok.size() != 3) fail("expected `key lb ub`");
    CountRange r{static_cast<int>(util::parse_int(tok[1], "lb")),
                 static_cast<int>(util::parse_int(tok[2], "ub"))};
    if (section == "elements") ts.elements[tok[0]] = r;
    else if (section == "ac") ts.ac[tok[0]] = r;
    else if (section == "ec") ts.ec[tok[0]] = r;
    else if (section == "cs") ts.cs[tok[0]] = r;
    else if (section == "fringe") ts.fringe[tok[0]] = r;
    else if (section == "bonds") {
      int m = static_cast<int>(util::parse_int(tok[0], "multiplicity"));
      if (m < 1 || m > 3) fail("bond multiplicity outside [1,3]");
      ts.bond_totals[m - 1] = r;
      bonds_seen = true;
    } else {
      fail("line outside a known section");
    }
  }
  if (!bonds_seen) {
    for (auto& r : ts.bond_totals) r = {0, 2 * ts.n_interior_max};
  }
  return ts;
}

}  // namespace molinfer::enc
