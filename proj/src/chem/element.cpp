#include "molinfer/chem/element.hpp"

#include <stdexcept>

#include "molinfer/util/text.hpp"

namespace molinfer::chem {

ElementTable ElementTable::defaults() {
  ElementTable t;
  t.add({"H", 1, 1.008});
  t.add({"C", 4, 12.011});
  t.add({"N", 3, 14.007});
  t.add({"O", 2, 15.999});
  t.add({"F", 1, 18.998});
  t.add({"P", 5, 30.974});
  t.add({"Cl", 1, 35.45});
  t.add({"Br", 1, 79.904});
  t.add({"Si(4)", 4, 28.085});
  t.add({"S(2)", 2, 32.06});
  t.add({"S(4)", 4, 32.06});
  t.add({"S(6)", 6, 32.06});
  return t;
}

ElementTable ElementTable::parse(const std::string& text) {
  ElementTable t;
  int lineno = 0;
  for (const auto& raw : util::split(text, '\n')) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    auto tok = util::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 3) {
      throw std::runtime_error("element table line " + std::to_string(lineno) +
                               ": expected `symbol valence mass`");
    }
    ElementSpec e;
    e.symbol = tok[0];
    e.valence = static_cast<int>(util::parse_int(tok[1], "valence"));
    e.mass = util::parse_real(tok[2], "mass");
    if (e.mass < 0) {
      throw std::runtime_error("element table line " + std::to_string(lineno) +
                               ": negative mass");
    }
    t.add(std::move(e));
  }
  return t;
}

ElementTable ElementTable::load(const std::string& path) {
  return parse(util::read_file(path));
}

void ElementTable::add(ElementSpec e) {
  if (e.symbol.empty()) throw std::runtime_error("element symbol empty");
  if (e.valence < 1 || e.valence > 6) {
    throw std::runtime_error("element " + e.symbol + ": valence " +
                             std::to_string(e.valence) + " outside [1,6]");
  }
  for (const auto& x : entries_) {
    if (x.symbol == e.symbol && x.valence == e.valence) {
      throw std::runtime_error("duplicate element entry: " + e.symbol);
    }
  }
  entries_.push_back(std::move(e));
}

const ElementSpec* ElementTable::find(const std::string& symbol) const {
  for (const auto& e : entries_) {
    if (e.symbol == symbol) return &e;
  }
  return nullptr;
}

const ElementSpec& ElementTable::get(const std::string& symbol) const {
  const ElementSpec* e = find(symbol);
  if (!e) throw std::runtime_error("unknown element: " + symbol);
  return *e;
}

}  // namespace molinfer::chem
