#include "molinfer/chem/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "molinfer/util/text.hpp"

namespace molinfer::chem {

namespace {

void check_simple(int n, const std::vector<Edge>& edges) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::runtime_error("edge endpoint out of range");
    }
    if (e.u == e.v) throw std::runtime_error("self-loop not allowed");
    if (e.mult < 1 || e.mult > 3) {
      throw std::runtime_error("bond multiplicity outside [1,3]");
    }
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) {
      throw std::runtime_error("duplicate edge " + std::to_string(key.first + 1) +
                               "-" + std::to_string(key.second + 1));
    }
  }
}

bool connected(int n, const std::vector<Edge>& edges) {
  if (n == 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> vis(n, 0);
  std::vector<int> stack = {0};
  vis[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[u]) {
      if (!vis[w]) {
        vis[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

}  // namespace

ChemicalGraph::ChemicalGraph(std::vector<ElementSpec> elements,
                             std::vector<Edge> edges, bool suppress) {
  if (elements.empty()) throw std::runtime_error("graph has no vertices");
  check_simple(static_cast<int>(elements.size()), edges);
  if (!connected(static_cast<int>(elements.size()), edges)) {
    throw std::runtime_error("graph is not connected");
  }
  // Valence bound on the raw graph first, so H with a double bond or an
  // overloaded heavy atom is rejected before suppression.
  {
    std::vector<int> bs(elements.size(), 0);
    for (const auto& e : edges) {
      bs[e.u] += e.mult;
      bs[e.v] += e.mult;
    }
    for (size_t v = 0; v < elements.size(); ++v) {
      if (bs[v] > elements[v].valence) {
        throw std::runtime_error(
            "valence violation at vertex " + std::to_string(v + 1) + " (" +
            elements[v].symbol + "): bond sum " + std::to_string(bs[v]) +
            " > " + std::to_string(elements[v].valence));
      }
    }
  }
  if (suppress) {
    auto sup = hydrogen_suppress(elements, edges);
    elements = std::move(sup.elements);
    edges = std::move(sup.edges);
  }
  elements_ = std::move(elements);
  edges_ = std::move(edges);
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  adj_.assign(elements_.size(), {});
  beta_sum_.assign(elements_.size(), 0);
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adj_[e.u].emplace_back(e.v, static_cast<int>(i));
    adj_[e.v].emplace_back(e.u, static_cast<int>(i));
    beta_sum_[e.u] += e.mult;
    beta_sum_[e.v] += e.mult;
  }
}

int ChemicalGraph::implicit_h_total() const {
  int total = 0;
  for (int v = 0; v < n(); ++v) total += implicit_h(v);
  return total;
}

double ChemicalGraph::mass_total() const {
  double total = 0;
  for (const auto& e : elements_) total += e.mass;
  return total;
}

SuppressResult hydrogen_suppress(const std::vector<ElementSpec>& elements,
                                 const std::vector<Edge>& edges) {
  int n = static_cast<int>(elements.size());
  std::vector<int> remap(n, -1);
  SuppressResult out;
  for (int v = 0; v < n; ++v) {
    if (!is_hydrogen(elements[v])) {
      remap[v] = static_cast<int>(out.elements.size());
      out.elements.push_back(elements[v]);
    }
  }
  if (out.elements.empty()) {
    throw std::runtime_error("graph consists only of hydrogen atoms");
  }
  out.removed_h.assign(out.elements.size(), 0);
  for (const auto& e : edges) {
    bool hu = is_hydrogen(elements[e.u]);
    bool hv = is_hydrogen(elements[e.v]);
    if (hu && hv) continue;  // H-H bond vanishes with both endpoints
    if (hu || hv) {
      int heavy = hu ? e.v : e.u;
      if (remap[heavy] >= 0) ++out.removed_h[remap[heavy]];
      continue;
    }
    out.edges.push_back({remap[e.u], remap[e.v], e.mult});
  }
  return out;
}

std::pair<ChemicalGraph, std::vector<int>> hydrogen_suppress(
    const ChemicalGraph& g) {
  auto sup = hydrogen_suppress(g.elements(), g.edges());
  std::vector<int> removed = sup.removed_h;
  return {ChemicalGraph(std::move(sup.elements), std::move(sup.edges),
                        /*suppress=*/false),
          std::move(removed)};
}

ChemicalGraph parse_graph(const std::string& text, const ElementTable& table) {
  auto lines = util::split(text, '\n');
  // Materialize non-empty payload lines with their 1-based line numbers.
  std::vector<std::pair<int, std::vector<std::string>>> rows;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    auto tok = util::split_ws(line);
    if (!tok.empty()) rows.emplace_back(static_cast<int>(i + 1), std::move(tok));
  }
  auto fail = [](int lineno, const std::string& msg) -> void {
    throw std::runtime_error("graph file line " + std::to_string(lineno) +
                             ": " + msg);
  };
  if (rows.empty()) throw std::runtime_error("graph file is empty");
  size_t r = 0;
  if (rows[r].second.size() != 2) fail(rows[r].first, "expected `n m` header");
  int n = static_cast<int>(util::parse_int(rows[r].second[0], "n"));
  int m = static_cast<int>(util::parse_int(rows[r].second[1], "m"));
  ++r;
  if (n < 1) throw std::runtime_error("graph must have at least one vertex");
  if (m < 0) throw std::runtime_error("negative edge count");
  if (rows.size() - r != static_cast<size_t>(n + m)) {
    throw std::runtime_error("graph file: expected " + std::to_string(n + m) +
                             " payload lines, found " +
                             std::to_string(rows.size() - r));
  }
  std::vector<ElementSpec> elements(n);
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i, ++r) {
    const auto& tok = rows[r].second;
    if (tok.size() != 2) fail(rows[r].first, "expected `index element`");
    int idx = static_cast<int>(util::parse_int(tok[0], "vertex index"));
    if (idx < 1 || idx > n) fail(rows[r].first, "vertex index out of range");
    if (seen[idx - 1]) fail(rows[r].first, "duplicate vertex index");
    seen[idx - 1] = 1;
    const ElementSpec* e = table.find(tok[1]);
    if (!e) fail(rows[r].first, "unknown element '" + tok[1] + "'");
    elements[idx - 1] = *e;
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i, ++r) {
    const auto& tok = rows[r].second;
    if (tok.size() != 3) fail(rows[r].first, "expected `u v mult`");
    Edge e;
    e.u = static_cast<int>(util::parse_int(tok[0], "u")) - 1;
    e.v = static_cast<int>(util::parse_int(tok[1], "v")) - 1;
    e.mult = static_cast<int>(util::parse_int(tok[2], "mult"));
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      fail(rows[r].first, "edge endpoint out of range");
    }
    edges.push_back(e);
  }
  return ChemicalGraph(std::move(elements), std::move(edges));
}

std::string write_graph(const ChemicalGraph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (int v = 0; v < g.n(); ++v) {
    out += std::to_string(v + 1) + " " + g.element(v).symbol + "\n";
  }
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " +
           std::to_string(e.mult) + "\n";
  }
  return out;
}

namespace {

std::string tree_code_from(const ChemicalGraph& g, int v, int parent) {
  std::vector<std::string> kids;
  for (auto [w, ei] : g.adj(v)) {
    if (w == parent) continue;
    kids.push_back(std::to_string(g.edges()[ei].mult) +
                   tree_code_from(g, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string code = g.element(v).symbol;
  if (!kids.empty()) {
    code += "(";
    for (size_t i = 0; i < kids.size(); ++i) {
      if (i) code += ",";
      code += kids[i];
    }
    code += ")";
  }
  return code;
}

}  // namespace

std::string canonical_tree_code(const ChemicalGraph& g) {
  if (g.m() != g.n() - 1) {
    throw std::runtime_error("canonical_tree_code requires an acyclic graph");
  }
  // Root at the tree centroid(s); take the smaller of the <=2 candidate
  // codes so the result is rooting-independent.
  std::vector<int> degree(g.n());
  for (int v = 0; v < g.n(); ++v) degree[v] = g.degree(v);
  std::vector<int> layer;
  std::vector<char> removed(g.n(), 0);
  int remaining = g.n();
  for (int v = 0; v < g.n(); ++v) {
    if (degree[v] <= 1) layer.push_back(v);
  }
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = 1;
      --remaining;
      for (auto [w, ei] : g.adj(v)) {
        (void)ei;
        if (!removed[w] && --degree[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::vector<int> centers;
  for (int v = 0; v < g.n(); ++v) {
    if (!removed[v]) centers.push_back(v);
  }
  std::string best;
  for (int c : centers) {
    std::string code = tree_code_from(g, c, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

}  // namespace molinfer::chem
