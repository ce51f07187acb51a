#include "molinfer/desc/config.hpp"

#include <cctype>
#include <stdexcept>

#include "molinfer/util/text.hpp"

namespace molinfer::desc {

std::string AdjacencyConfig::key() const {
  return a.symbol + "." + b.symbol + "." + std::to_string(mult);
}

std::string ChemicalSymbol::key() const {
  return element.symbol + std::to_string(degree);
}

std::string EdgeConfig::key() const {
  return mu.key() + "." + mu_prime.key() + "." + std::to_string(mult);
}

AdjacencyConfig parse_ac_key(const std::string& key,
                             const chem::ElementTable& table) {
  auto parts = util::split(key, '.');
  if (parts.size() != 3) {
    throw std::runtime_error("bad adjacency-configuration key: " + key);
  }
  AdjacencyConfig ac;
  ac.a = table.get(parts[0]);
  ac.b = table.get(parts[1]);
  ac.mult = static_cast<int>(util::parse_int(parts[2], "multiplicity"));
  if (ac.mult < 1 || ac.mult > 3) {
    throw std::runtime_error("bad multiplicity in key: " + key);
  }
  return ac;
}

ChemicalSymbol parse_cs_key(const std::string& key,
                            const chem::ElementTable& table) {
  // Trailing digit is the degree, the rest is the element symbol.
  if (key.size() < 2 || !std::isdigit(static_cast<unsigned char>(key.back()))) {
    throw std::runtime_error("bad chemical-symbol key: " + key);
  }
  ChemicalSymbol cs;
  cs.degree = key.back() - '0';
  cs.element = table.get(key.substr(0, key.size() - 1));
  if (cs.degree < 1 || cs.degree > 4) {
    throw std::runtime_error("chemical-symbol degree outside [1,4]: " + key);
  }
  return cs;
}

EdgeConfig parse_ec_key(const std::string& key,
                        const chem::ElementTable& table) {
  auto parts = util::split(key, '.');
  if (parts.size() != 3) {
    throw std::runtime_error("bad edge-configuration key: " + key);
  }
  EdgeConfig ec;
  ec.mu = parse_cs_key(parts[0], table);
  ec.mu_prime = parse_cs_key(parts[1], table);
  ec.mult = static_cast<int>(util::parse_int(parts[2], "multiplicity"));
  if (ec.mult < 1 || ec.mult > 3) {
    throw std::runtime_error("bad multiplicity in key: " + key);
  }
  return ec;
}

}  // namespace molinfer::desc
