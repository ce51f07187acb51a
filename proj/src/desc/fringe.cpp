#include "molinfer/desc/fringe.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace molinfer::desc {

namespace {

std::string code_below(const RootedTree& t,
                       const std::vector<std::vector<int>>& children, int v) {
  std::vector<std::string> kid_codes;
  for (int c : children[v]) {
    kid_codes.push_back(std::to_string(t.bond_mults[c]) +
                        code_below(t, children, c));
  }
  std::sort(kid_codes.begin(), kid_codes.end());
  std::string code = t.elements[v].symbol;
  if (!kid_codes.empty()) {
    code += "(";
    for (size_t i = 0; i < kid_codes.size(); ++i) {
      if (i) code += ",";
      code += kid_codes[i];
    }
    code += ")";
  }
  return code;
}

}  // namespace

std::string canonical_fringe_code(const RootedTree& t) {
  if (t.size() == 0) throw std::runtime_error("empty rooted tree");
  std::vector<std::vector<int>> children(t.size());
  for (int v = 1; v < t.size(); ++v) {
    if (t.parents[v] < 0 || t.parents[v] >= t.size()) {
      throw std::runtime_error("rooted tree has a bad parent pointer");
    }
    children[t.parents[v]].push_back(v);
  }
  return code_below(t, children, 0);
}

RootedTree fringe_to_rooted(const chem::ChemicalGraph& g,
                            const chem::FringeTree& f) {
  RootedTree t;
  t.elements.push_back(g.element(f.root));
  t.parents.push_back(-1);
  t.bond_mults.push_back(0);
  std::map<int, int> local;  // graph vertex -> tree index
  local[f.root] = 0;
  for (size_t i = 0; i < f.vertices.size(); ++i) {
    int v = f.vertices[i];
    int p = f.parents[i];
    int mult = 0;
    for (auto [w, ei] : g.adj(v)) {
      if (w == p) {
        mult = g.edges()[ei].mult;
        break;
      }
    }
    local[v] = t.size();
    t.elements.push_back(g.element(v));
    t.parents.push_back(local.at(p));
    t.bond_mults.push_back(mult);
  }
  return t;
}

namespace {

struct CodeParser {
  const std::string& s;
  const chem::ElementTable& table;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("fringe code '" + s + "' at offset " +
                             std::to_string(pos) + ": " + msg);
  }

  bool eof() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }

  // ELEMENT := letters [ '(' digits ')' ]   (the valence-suffix form)
  std::string element_token() {
    size_t start = pos;
    while (!eof() && (std::isalpha(static_cast<unsigned char>(peek())))) ++pos;
    if (pos == start) fail("expected element symbol");
    // A '(' directly followed by digits and ')' is a valence suffix, not
    // a child list (children always start with a multiplicity digit then
    // a letter).
    if (!eof() && peek() == '(') {
      size_t probe = pos + 1;
      size_t d = probe;
      while (d < s.size() && std::isdigit(static_cast<unsigned char>(s[d]))) ++d;
      if (d > probe && d < s.size() && s[d] == ')' ) {
        // Digits then ')': valence suffix only when what follows is not
        // a legal child continuation start. Children look like "(2C...",
        // i.e. digits then a letter, so digits-then-')' is unambiguous.
        pos = d + 1;
      }
    }
    return s.substr(start, pos - start);
  }

  int parse_node(RootedTree& t, int parent, int mult) {
    std::string sym = element_token();
    const chem::ElementSpec* e = table.find(sym);
    if (!e) fail("unknown element '" + sym + "'");
    int idx = t.size();
    t.elements.push_back(*e);
    t.parents.push_back(parent);
    t.bond_mults.push_back(mult);
    if (!eof() && peek() == '(') {
      ++pos;
      while (true) {
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
          fail("expected bond multiplicity");
        }
        int m = peek() - '0';
        ++pos;
        if (m < 1 || m > 3) fail("multiplicity outside [1,3]");
        parse_node(t, idx, m);
        if (eof()) fail("unterminated child list");
        if (peek() == ',') {
          ++pos;
          continue;
        }
        if (peek() == ')') {
          ++pos;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    return idx;
  }
};

}  // namespace

RootedTree parse_fringe_code(const std::string& code,
                             const chem::ElementTable& table) {
  CodeParser p{code, table};
  RootedTree t;
  p.parse_node(t, -1, 0);
  if (!p.eof()) p.fail("trailing characters");
  return t;
}

FringeClassInfo FringeClassInfo::build(const RootedTree& t, int height_target) {
  FringeClassInfo info;
  info.tree = t;
  info.code = canonical_fringe_code(t);
  info.root_element = t.elements[0];
  info.n_exterior = t.size() - 1;

  std::vector<std::vector<int>> children(t.size());
  std::vector<int> beta_sum(t.size(), 0);
  for (int v = 1; v < t.size(); ++v) {
    children[t.parents[v]].push_back(v);
    beta_sum[v] += t.bond_mults[v];
    beta_sum[t.parents[v]] += t.bond_mults[v];
  }
  for (int v = 1; v < t.size(); ++v) {
    if (beta_sum[v] > t.elements[v].valence) {
      throw std::runtime_error("fringe class " + info.code +
                               ": valence violation at an exterior vertex");
    }
  }
  info.root_children = static_cast<int>(children[0].size());
  info.root_beta = beta_sum[0];

  std::vector<int> depth(t.size(), 0);
  for (int v = 1; v < t.size(); ++v) {
    depth[v] = depth[t.parents[v]] + 1;  // parents precede children
    info.height = std::max(info.height, depth[v]);
    info.exterior_element_counts[t.elements[v].symbol] += 1;
    info.exterior_mass += t.elements[v].mass;
    info.hydrogen_contribution +=
        t.elements[v].valence - 2 * t.bond_mults[v];
  }
  // Subtree heights below each root child -> full-depth branch count.
  for (int c : children[0]) {
    int deepest = 0;
    for (int v = c; v < t.size(); ++v) {
      // Walk ancestry to see if v sits below c.
      int a = v;
      while (a > 0 && a != c) a = t.parents[a];
      if (a == c) deepest = std::max(deepest, depth[v] - depth[c]);
    }
    if (1 + deepest == height_target) ++info.full_branches;
  }
  return info;
}

}  // namespace molinfer::desc
