#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracles {

namespace {

struct EdgeKey {
  int u, v, m;
  bool operator<(const EdgeKey& o) const {
    return std::tie(u, v, m) < std::tie(o.u, o.v, o.m);
  }
};

std::set<EdgeKey> edge_set(const ChemicalGraph& g) {
  std::set<EdgeKey> s;
  for (const auto& e : g.edges()) {
    s.insert({std::min(e.u, e.v), std::max(e.u, e.v), e.mult});
  }
  return s;
}

}  // namespace

bool isomorphic(const ChemicalGraph& a, const ChemicalGraph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  std::vector<int> perm(a.n());
  std::iota(perm.begin(), perm.end(), 0);
  auto eb = edge_set(b);
  do {
    bool ok = true;
    for (int v = 0; v < a.n() && ok; ++v) {
      ok = a.element(v) == b.element(perm[v]);
    }
    for (const auto& e : a.edges()) {
      if (!ok) break;
      int u = perm[e.u], v = perm[e.v];
      ok = eb.count({std::min(u, v), std::max(u, v), e.mult}) > 0;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool rooted_isomorphic(const molinfer::desc::RootedTree& a,
                       const molinfer::desc::RootedTree& b) {
  if (a.size() != b.size()) return false;
  int n = a.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // Root must map to root; permute the rest.
  std::set<std::tuple<int, int, int>> eb;
  for (int v = 1; v < n; ++v) {
    int p = b.parents[v];
    eb.insert({std::min(p, v), std::max(p, v), b.bond_mults[v]});
  }
  do {
    if (perm[0] != 0) continue;
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      ok = a.elements[v] == b.elements[perm[v]];
    }
    for (int v = 1; v < n && ok; ++v) {
      int pu = perm[a.parents[v]], pv = perm[v];
      ok = eb.count({std::min(pu, pv), std::max(pu, pv), a.bond_mults[v]}) > 0;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace {

// All simple cycles: DFS from each start vertex, only visiting vertices
// with index >= start to avoid duplicates.
void cycle_dfs(const ChemicalGraph& g, int start, int u,
               std::vector<int>& path_edges, std::vector<char>& on_path,
               std::set<int>& cycle_edges) {
  for (auto [w, ei] : g.adj(u)) {
    if (w < start) continue;
    if (!path_edges.empty() && ei == path_edges.back()) continue;
    if (w == start && path_edges.size() >= 2) {
      for (int pe : path_edges) cycle_edges.insert(pe);
      cycle_edges.insert(ei);
      continue;
    }
    if (on_path[w]) continue;
    on_path[w] = 1;
    path_edges.push_back(ei);
    cycle_dfs(g, start, w, path_edges, on_path, cycle_edges);
    path_edges.pop_back();
    on_path[w] = 0;
  }
}

}  // namespace

std::vector<int> core_edges_by_cycles(const ChemicalGraph& g) {
  std::set<int> cycle_edges;
  for (int s = 0; s < g.n(); ++s) {
    std::vector<int> path_edges;
    std::vector<char> on_path(g.n(), 0);
    on_path[s] = 1;
    cycle_dfs(g, s, s, path_edges, on_path, cycle_edges);
  }
  std::vector<int> core(cycle_edges.begin(), cycle_edges.end());
  // Bridges whose two sides each contain a cycle edge.
  for (int ei = 0; ei < g.m(); ++ei) {
    if (cycle_edges.count(ei)) continue;
    // Split at the bridge.
    std::vector<int> side(g.n(), -1);
    std::vector<int> stack = {g.edges()[ei].u};
    side[g.edges()[ei].u] = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [w, e2] : g.adj(u)) {
        if (e2 == ei || side[w] == 0) continue;
        side[w] = 0;
        stack.push_back(w);
      }
    }
    bool cyc_u = false, cyc_v = false;
    for (int ce : cycle_edges) {
      const auto& e = g.edges()[ce];
      if (side[e.u] == 0 && side[e.v] == 0) cyc_u = true;
      if (side[e.u] != 0 && side[e.v] != 0) cyc_v = true;
    }
    if (cyc_u && cyc_v) core.push_back(ei);
  }
  std::sort(core.begin(), core.end());
  return core;
}

ChemicalGraph permuted(const ChemicalGraph& g, molinfer::util::Rng& rng) {
  std::vector<int> perm(g.n());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  std::vector<ElementSpec> elements(g.n());
  for (int v = 0; v < g.n(); ++v) elements[perm[v]] = g.element(v);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    edges.push_back({perm[e.u], perm[e.v], e.mult});
  }
  return ChemicalGraph(std::move(elements), std::move(edges),
                       /*suppress=*/false);
}

IpOracleResult solve_ip_by_enumeration(const molinfer::milp::MilpModel& m,
                                       uint64_t cap) {
  using molinfer::milp::Objective;
  using molinfer::milp::Sense;
  using molinfer::milp::VarKind;
  uint64_t space = 1;
  std::vector<int> lo(m.var_count()), width(m.var_count());
  for (int v = 0; v < m.var_count(); ++v) {
    const auto& var = m.var(v);
    if (var.kind == VarKind::kContinuous) {
      throw std::runtime_error("enumeration oracle needs pure integer models");
    }
    lo[v] = static_cast<int>(std::ceil(var.lower));
    int hi = static_cast<int>(std::floor(var.upper));
    if (hi < lo[v]) return {};
    width[v] = hi - lo[v] + 1;
    space *= static_cast<uint64_t>(width[v]);
    if (space > cap) throw std::runtime_error("enumeration space too large");
  }
  IpOracleResult result;
  std::vector<double> x(m.var_count());
  for (uint64_t code = 0; code < space; ++code) {
    uint64_t c = code;
    for (int v = 0; v < m.var_count(); ++v) {
      x[v] = lo[v] + static_cast<int>(c % width[v]);
      c /= width[v];
    }
    bool ok = true;
    for (const auto& con : m.constraints()) {
      double lhs = m.eval(con.expr, x);
      if (con.sense == Sense::kLe && lhs > con.rhs + 1e-9) ok = false;
      if (con.sense == Sense::kGe && lhs < con.rhs - 1e-9) ok = false;
      if (con.sense == Sense::kEq && std::fabs(lhs - con.rhs) > 1e-9) ok = false;
      if (!ok) break;
    }
    if (!ok) continue;
    result.feasible = true;
    if (m.objective_direction() != Objective::kNone) {
      double obj = m.eval(m.objective(), x);
      if (!result.best_objective ||
          (m.objective_direction() == Objective::kMinimize
               ? obj < *result.best_objective
               : obj > *result.best_objective)) {
        result.best_objective = obj;
      }
    }
  }
  return result;
}

namespace {

// Free tree shapes on n vertices, deduplicated from Pruefer sequences.
std::vector<std::vector<std::pair<int, int>>> tree_shapes(int n) {
  std::vector<std::vector<std::pair<int, int>>> shapes;
  if (n == 1) {
    shapes.push_back({});
    return shapes;
  }
  if (n == 2) {
    shapes.push_back({{0, 1}});
    return shapes;
  }
  std::set<std::string> seen;
  std::vector<int> seq(n - 2, 0);
  // Unlabeled canonical form by iterated leaf stripping signature.
  auto canon = [n](const std::vector<std::pair<int, int>>& edges) {
    // AHU on the unlabeled tree, rooted at centroid.
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::function<std::string(int, int)> code = [&](int u, int parent) {
      std::vector<std::string> kids;
      for (int w : adj[u]) {
        if (w != parent) kids.push_back(code(w, u));
      }
      std::sort(kids.begin(), kids.end());
      std::string s = "(";
      for (const auto& k : kids) s += k;
      return s + ")";
    };
    std::string best;
    for (int r = 0; r < n; ++r) {
      std::string s = code(r, -1);
      if (best.empty() || s < best) best = s;
    }
    return best;
  };
  while (true) {
    // Decode the Pruefer sequence.
    std::vector<int> degree(n, 1);
    for (int v : seq) degree[v]++;
    std::vector<std::pair<int, int>> edges;
    std::set<int> leaves;
    for (int v = 0; v < n; ++v) {
      if (degree[v] == 1) leaves.insert(v);
    }
    std::vector<int> deg = degree;
    for (int v : seq) {
      int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.push_back({std::min(leaf, v), std::max(leaf, v)});
      if (--deg[v] == 1) leaves.insert(v);
    }
    int a = *leaves.begin(), b = *std::next(leaves.begin());
    edges.push_back({std::min(a, b), std::max(a, b)});
    if (seen.insert(canon(edges)).second) shapes.push_back(edges);
    // Advance the sequence.
    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return shapes;
}

}  // namespace

std::vector<ChemicalGraph> enumerate_chemical_trees(
    int n, const std::vector<ElementSpec>& elements, int max_mult) {
  std::vector<ChemicalGraph> out;
  std::set<std::string> seen;
  for (const auto& shape : tree_shapes(n)) {
    int m = static_cast<int>(shape.size());
    std::vector<int> elem_idx(n, 0), mult(m, 1);
    auto beta_ok = [&]() {
      std::vector<int> beta(n, 0);
      for (int e = 0; e < m; ++e) {
        beta[shape[e].first] += mult[e];
        beta[shape[e].second] += mult[e];
      }
      for (int v = 0; v < n; ++v) {
        if (beta[v] > elements[elem_idx[v]].valence) return false;
      }
      return true;
    };
    // Odometer over element and multiplicity assignments.
    while (true) {
      if (beta_ok()) {
        std::vector<ElementSpec> es;
        for (int v = 0; v < n; ++v) es.push_back(elements[elem_idx[v]]);
        std::vector<Edge> edges;
        for (int e = 0; e < m; ++e) {
          edges.push_back({shape[e].first, shape[e].second, mult[e]});
        }
        ChemicalGraph g(std::move(es), std::move(edges), /*suppress=*/false);
        std::string code = molinfer::chem::canonical_tree_code(g);
        if (seen.insert(code).second) out.push_back(std::move(g));
      }
      // Advance odometer: multiplicities fastest, then elements.
      int e = m - 1;
      while (e >= 0 && mult[e] == max_mult) mult[e--] = 1;
      if (e >= 0) {
        ++mult[e];
        continue;
      }
      int v = n - 1;
      while (v >= 0 &&
             elem_idx[v] == static_cast<int>(elements.size()) - 1) {
        elem_idx[v--] = 0;
      }
      if (v < 0) break;
      ++elem_idx[v];
    }
  }
  return out;
}

std::vector<molinfer::desc::RootedTree> enumerate_rooted_trees(
    int max_n, const std::vector<ElementSpec>& elements, int max_mult) {
  using molinfer::desc::RootedTree;
  std::vector<RootedTree> out;
  // Parent arrays with parents[v] < v enumerate all rooted tree shapes.
  for (int n = 1; n <= max_n; ++n) {
    std::vector<int> parent(n, 0);
    std::function<void(int)> rec_shape = [&](int v) {
      if (v == n) {
        // Assign labels and multiplicities by odometer.
        std::vector<int> elem_idx(n, 0), mult(n, 1);  // mult[0] unused
        while (true) {
          RootedTree t;
          for (int i = 0; i < n; ++i) {
            t.elements.push_back(elements[elem_idx[i]]);
            t.parents.push_back(i == 0 ? -1 : parent[i]);
            t.bond_mults.push_back(i == 0 ? 0 : mult[i]);
          }
          out.push_back(std::move(t));
          int e = n - 1;
          while (e >= 1 && mult[e] == max_mult) mult[e--] = 1;
          if (e >= 1) {
            ++mult[e];
            continue;
          }
          int i = n - 1;
          while (i >= 0 &&
                 elem_idx[i] == static_cast<int>(elements.size()) - 1) {
            elem_idx[i--] = 0;
          }
          if (i < 0) break;
          ++elem_idx[i];
        }
        return;
      }
      for (int p = 0; p < v; ++p) {
        parent[v] = p;
        rec_shape(v + 1);
      }
    };
    rec_shape(1);
  }
  return out;
}

ChemicalGraph random_chemical_tree(int n,
                                   const std::vector<ElementSpec>& elements,
                                   molinfer::util::Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<ElementSpec> es;
    std::vector<Edge> edges;
    std::vector<int> beta(n, 0);
    es.push_back(elements[rng.below(elements.size())]);
    bool ok = true;
    for (int v = 1; v < n; ++v) {
      es.push_back(elements[rng.below(elements.size())]);
      // Attach to a random vertex with spare valence.
      std::vector<int> candidates;
      for (int u = 0; u < v; ++u) {
        if (beta[u] < es[u].valence) candidates.push_back(u);
      }
      if (candidates.empty()) {
        ok = false;
        break;
      }
      int u = candidates[rng.below(candidates.size())];
      int max_m = std::min(3, std::min(es[u].valence - beta[u],
                                       es[v].valence));
      int m = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_m)));
      edges.push_back({u, v, m});
      beta[u] += m;
      beta[v] += m;
    }
    if (!ok) continue;
    return ChemicalGraph(std::move(es), std::move(edges), /*suppress=*/false);
  }
  throw std::runtime_error("random_chemical_tree: no valid tree found");
}

}  // namespace oracles
