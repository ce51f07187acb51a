#include "molinfer/enc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace molinfer::enc {

using milp::LinExpr;
using milp::MilpModel;
using milp::Sense;
using milp::VarKind;

namespace {

std::string nm(const std::string& prefix, const std::string& tail) {
  return prefix + "_" + tail;
}

// Key strings are LP-unsafe (they may contain '.' at position 0 etc. is
// fine, but commas/parens from fringe codes are not); index-based names
// keep the LP file clean.
std::string idx2(const std::string& stem, int a, int b) {
  return stem + std::to_string(a) + "_" + std::to_string(b);
}

}  // namespace

LinExpr GraphEncoding::slot_alpha_code(int slot) const {
  LinExpr e;
  for (size_t a = 0; a < lambda_.size(); ++a) {
    e.add(alpha_vars_[slot][a], static_cast<double>(a + 1));
  }
  return e;
}

LinExpr GraphEncoding::slot_degree(int slot) const {
  LinExpr e;
  for (const auto& es : edges_) {
    if (es.u == slot || es.v == slot) e.add(es.use_var, 1.0);
  }
  for (size_t c = 0; c < fringes_.size(); ++c) {
    e.add(fringe_sel_vars_[slot][c],
          static_cast<double>(fringes_[c].root_children));
  }
  return e;
}

GraphEncoding encode_graph(MilpModel& model, const TopologySpec& ts,
                           const chem::ElementTable& table,
                           const std::string& p) {
  ts.validate(table);
  GraphEncoding enc;
  enc.n_slots_ = ts.n_interior_max;
  enc.rho_ = ts.rho;
  const int N = enc.n_slots_;

  for (const auto& [sym, r] : ts.elements) {
    (void)r;
    enc.lambda_.push_back(table.get(sym));
  }
  std::sort(enc.lambda_.begin(), enc.lambda_.end());
  if (enc.lambda_.empty()) {
    throw std::runtime_error("topology allows no elements");
  }
  const int L = static_cast<int>(enc.lambda_.size());
  auto elem_code = [&enc](const chem::ElementSpec& e) {
    for (size_t a = 0; a < enc.lambda_.size(); ++a) {
      if (enc.lambda_[a] == e) return static_cast<int>(a + 1);
    }
    return 0;  // element outside the slot vocabulary
  };

  // Directed vocabularies: canonical entry followed by its reversal.
  for (const auto& [key, r] : ts.ac) {
    (void)r;
    auto ac = desc::parse_ac_key(key, table);
    enc.ac_dir_.push_back(ac);
    if (!ac.symmetric()) enc.ac_dir_.push_back(ac.reversed());
  }
  for (const auto& [key, r] : ts.ec) {
    (void)r;
    auto ec = desc::parse_ec_key(key, table);
    enc.ec_dir_.push_back(ec);
    if (!ec.symmetric()) enc.ec_dir_.push_back(ec.reversed());
  }
  for (const auto& [key, r] : ts.cs) {
    (void)r;
    enc.symbols_.push_back(desc::parse_cs_key(key, table));
  }
  for (const auto& [code, r] : ts.fringe) {
    (void)r;
    enc.fringes_.push_back(
        desc::FringeClassInfo::build(desc::parse_fringe_code(code, table),
                                     ts.rho));
  }
  auto ac_code = [&enc](const desc::AdjacencyConfig& v) {
    for (size_t i = 0; i < enc.ac_dir_.size(); ++i) {
      if (enc.ac_dir_[i] == v) return static_cast<int>(i + 1);
    }
    return 0;
  };

  const int nac = static_cast<int>(enc.ac_dir_.size());
  const int nec = static_cast<int>(enc.ec_dir_.size());
  const int ncs = static_cast<int>(enc.symbols_.size());
  const int nfc = static_cast<int>(enc.fringes_.size());

  // ---- slot variables -------------------------------------------------
  for (int i = 0; i < N; ++i) {
    enc.v_vars_.push_back(model.add_binary(nm(p, "v" + std::to_string(i))));
  }
  for (int i = 0; i < N; ++i) {
    enc.alpha_vars_.emplace_back();
    LinExpr one_hot;
    for (int a = 0; a < L; ++a) {
      int var = model.add_binary(nm(p, idx2("alpha", i, a)));
      enc.alpha_vars_[i].push_back(var);
      one_hot.add(var, 1.0);
    }
    one_hot.add(enc.v_vars_[i], -1.0);
    model.add_constraint(nm(p, "alpha_onehot" + std::to_string(i)),
                         std::move(one_hot), Sense::kEq, 0);
  }

  // Interior slot count window and the used-prefix rule.
  {
    LinExpr total;
    for (int i = 0; i < N; ++i) total.add(enc.v_vars_[i], 1.0);
    model.add_constraint(nm(p, "nint_lo"), total, Sense::kGe, ts.n_interior_min);
    model.add_constraint(nm(p, "nint_hi"), total, Sense::kLe, ts.n_interior_max);
  }
  for (int i = 0; i + 1 < N; ++i) {
    model.add_constraint(
        nm(p, "prefix" + std::to_string(i)),
        LinExpr().add(enc.v_vars_[i], 1.0).add(enc.v_vars_[i + 1], -1.0),
        Sense::kGe, 0);
  }
  // Symmetry breaking: element codes non-decreasing along used slots.
  for (int i = 0; i + 1 < N; ++i) {
    LinExpr e = enc.slot_alpha_code(i);
    LinExpr next = enc.slot_alpha_code(i + 1);
    for (auto [var, c] : next.terms) e.add(var, -c);
    e.add(enc.v_vars_[i + 1], static_cast<double>(L));
    model.add_constraint(nm(p, "lex" + std::to_string(i)), std::move(e),
                         Sense::kLe, static_cast<double>(L));
  }

  // ---- edge slots ------------------------------------------------------
  for (int u = 0; u < N; ++u) {
    for (int v = u + 1; v < N; ++v) {
      GraphEncoding::EdgeSlot es;
      es.u = u;
      es.v = v;
      int ei = static_cast<int>(enc.edges_.size());
      es.use_var = model.add_binary(nm(p, "e" + std::to_string(ei)));
      model.add_constraint(
          nm(p, idx2("euse_u", ei, u)),
          LinExpr().add(es.use_var, 1.0).add(enc.v_vars_[u], -1.0), Sense::kLe,
          0);
      model.add_constraint(
          nm(p, idx2("euse_v", ei, v)),
          LinExpr().add(es.use_var, 1.0).add(enc.v_vars_[v], -1.0), Sense::kLe,
          0);
      LinExpr beta_onehot;
      for (int m = 0; m < 3; ++m) {
        es.beta_vars[m] = model.add_binary(nm(p, idx2("beta", ei, m + 1)));
        beta_onehot.add(es.beta_vars[m], 1.0);
      }
      beta_onehot.add(es.use_var, -1.0);
      model.add_constraint(nm(p, "beta_onehot" + std::to_string(ei)),
                           std::move(beta_onehot), Sense::kEq, 0);
      enc.edges_.push_back(std::move(es));
    }
  }
  const int E = static_cast<int>(enc.edges_.size());

  // Tree equation: edges = used slots - 1.
  {
    LinExpr e;
    for (const auto& es : enc.edges_) e.add(es.use_var, 1.0);
    for (int i = 0; i < N; ++i) e.add(enc.v_vars_[i], -1.0);
    model.add_constraint(nm(p, "tree"), std::move(e), Sense::kEq, -1);
  }

  // Single-commodity flow from slot 0 for connectivity.
  {
    std::vector<std::vector<int>> arc(E, std::vector<int>(2, -1));
    for (int ei = 0; ei < E; ++ei) {
      arc[ei][0] = model.add_var(nm(p, idx2("flow_f", ei, 0)),
                                 VarKind::kContinuous, 0, N - 1);
      arc[ei][1] = model.add_var(nm(p, idx2("flow_f", ei, 1)),
                                 VarKind::kContinuous, 0, N - 1);
      for (int d = 0; d < 2; ++d) {
        model.add_constraint(nm(p, idx2("flow_cap", ei, d)),
                             LinExpr()
                                 .add(arc[ei][d], 1.0)
                                 .add(enc.edges_[ei].use_var,
                                      -static_cast<double>(N - 1)),
                             Sense::kLe, 0);
      }
    }
    // arc[ei][0]: u -> v, arc[ei][1]: v -> u.
    for (int i = 0; i < N; ++i) {
      LinExpr net;  // inflow - outflow
      for (int ei = 0; ei < E; ++ei) {
        if (enc.edges_[ei].v == i) {
          net.add(arc[ei][0], 1.0).add(arc[ei][1], -1.0);
        } else if (enc.edges_[ei].u == i) {
          net.add(arc[ei][1], 1.0).add(arc[ei][0], -1.0);
        }
      }
      if (i == 0) {
        // Source pushes one unit to every other used slot.
        for (int j = 1; j < N; ++j) net.add(enc.v_vars_[j], 1.0);
        model.add_constraint(nm(p, "flow_src"), std::move(net), Sense::kEq, 0);
      } else {
        net.add(enc.v_vars_[i], -1.0);
        model.add_constraint(nm(p, "flow_node" + std::to_string(i)),
                             std::move(net), Sense::kEq, 0);
      }
    }
  }

  // ---- fringe class selection -------------------------------------------
  for (int i = 0; i < N; ++i) {
    enc.fringe_sel_vars_.emplace_back();
    LinExpr at_most_one;
    for (int c = 0; c < nfc; ++c) {
      int var = model.add_binary(nm(p, idx2("fc", i, c)));
      enc.fringe_sel_vars_[i].push_back(var);
      at_most_one.add(var, 1.0);
      // Root element of the class must match the slot element.
      int code = elem_code(enc.fringes_[c].root_element);
      if (code == 0) {
        throw std::runtime_error("fringe class " + enc.fringes_[c].code +
                                 " is rooted at a disallowed element");
      }
      model.add_constraint(
          nm(p, idx2("fc_root", i, c)),
          LinExpr().add(var, 1.0).add(enc.alpha_vars_[i][code - 1], -1.0),
          Sense::kLe, 0);
    }
    if (nfc > 0) {
      at_most_one.add(enc.v_vars_[i], -1.0);
      model.add_constraint(nm(p, "fc_choice" + std::to_string(i)),
                           std::move(at_most_one), Sense::kLe, 0);
    }
  }

  // ---- per-edge configuration channels ----------------------------------
  for (int ei = 0; ei < E; ++ei) {
    auto& es = enc.edges_[ei];
    const int u = es.u, v = es.v;
    // delta_ac family.
    LinExpr onehot, mult_link, tail_label, head_label;
    for (int a = 0; a < nac; ++a) {
      int var = model.add_binary(nm(p, idx2("dac", ei, a)));
      es.ac_vars.push_back(var);
      const auto& cfg = enc.ac_dir_[a];
      onehot.add(var, 1.0);
      mult_link.add(var, static_cast<double>(cfg.mult));
      tail_label.add(var, static_cast<double>(elem_code(cfg.a)));
      head_label.add(var, static_cast<double>(elem_code(cfg.b)));
    }
    {
      LinExpr e = onehot;
      e.add(es.use_var, -1.0);
      model.add_constraint(nm(p, "dac_onehot" + std::to_string(ei)),
                           std::move(e), Sense::kEq, 0);
    }
    {
      LinExpr e = mult_link;
      for (int m = 0; m < 3; ++m) {
        e.add(es.beta_vars[m], -static_cast<double>(m + 1));
      }
      model.add_constraint(nm(p, "dac_mult" + std::to_string(ei)),
                           std::move(e), Sense::kEq, 0);
    }
    int dac_p = model.add_var(nm(p, "dac_slackp" + std::to_string(ei)),
                              VarKind::kContinuous, 0, L);
    int dac_m = model.add_var(nm(p, "dac_slackm" + std::to_string(ei)),
                              VarKind::kContinuous, 0, L);
    {
      LinExpr e = tail_label;
      e.add(dac_p, 1.0);
      LinExpr au = enc.slot_alpha_code(u);
      for (auto [var, c] : au.terms) e.add(var, -c);
      model.add_constraint(nm(p, "dac_tail" + std::to_string(ei)),
                           std::move(e), Sense::kEq, 0);
    }
    {
      LinExpr e = head_label;
      e.add(dac_m, 1.0);
      LinExpr av = enc.slot_alpha_code(v);
      for (auto [var, c] : av.terms) e.add(var, -c);
      model.add_constraint(nm(p, "dac_head" + std::to_string(ei)),
                           std::move(e), Sense::kEq, 0);
    }
    model.add_constraint(nm(p, "dac_slack" + std::to_string(ei)),
                         LinExpr()
                             .add(dac_p, 1.0)
                             .add(dac_m, 1.0)
                             .add(es.use_var, 2.0 * L),
                         Sense::kLe, 2.0 * L);

    // delta_ec family.
    LinExpr ec_onehot, ec_proj, tail_deg, head_deg;
    for (int g = 0; g < nec; ++g) {
      int var = model.add_binary(nm(p, idx2("dec", ei, g)));
      es.ec_vars.push_back(var);
      const auto& cfg = enc.ec_dir_[g];
      ec_onehot.add(var, 1.0);
      int proj = ac_code(cfg.adjacency());
      if (proj == 0) {
        throw std::runtime_error(
            "edge-configuration projects outside the ac vocabulary");
      }
      ec_proj.add(var, static_cast<double>(proj));
      tail_deg.add(var, static_cast<double>(cfg.mu.degree));
      head_deg.add(var, static_cast<double>(cfg.mu_prime.degree));
    }
    {
      LinExpr e = ec_onehot;
      e.add(es.use_var, -1.0);
      model.add_constraint(nm(p, "dec_onehot" + std::to_string(ei)),
                           std::move(e), Sense::kEq, 0);
    }
    {
      // Coded adjacency-configuration of the chosen edge-configuration
      // must match the delta_ac choice.
      LinExpr e = ec_proj;
      for (int a = 0; a < nac; ++a) {
        e.add(es.ac_vars[a], -static_cast<double>(a + 1));
      }
      model.add_constraint(nm(p, "dec_proj" + std::to_string(ei)),
                           std::move(e), Sense::kEq, 0);
    }
    int dec_p = model.add_var(nm(p, "dec_slackp" + std::to_string(ei)),
                              VarKind::kContinuous, 0, 4);
    int dec_m = model.add_var(nm(p, "dec_slackm" + std::to_string(ei)),
                              VarKind::kContinuous, 0, 4);
    {
      LinExpr e = tail_deg;
      e.add(dec_p, 1.0);
      LinExpr du = enc.slot_degree(u);
      for (auto [var, c] : du.terms) e.add(var, -c);
      model.add_constraint(nm(p, "dec_tail" + std::to_string(ei)),
                           std::move(e), Sense::kEq, 0);
    }
    {
      LinExpr e = head_deg;
      e.add(dec_m, 1.0);
      LinExpr dv = enc.slot_degree(v);
      for (auto [var, c] : dv.terms) e.add(var, -c);
      model.add_constraint(nm(p, "dec_head" + std::to_string(ei)),
                           std::move(e), Sense::kEq, 0);
    }
    // 8(1 - e(i)) per the degree-channel deactivation pattern.
    model.add_constraint(nm(p, "dec_slack" + std::to_string(ei)),
                         LinExpr()
                             .add(dec_p, 1.0)
                             .add(dec_m, 1.0)
                             .add(es.use_var, 8.0),
                         Sense::kLe, 8.0);
  }

  // Per-multiplicity family totals (ac and ec agree with delta_beta).
  for (int m = 0; m < 3; ++m) {
    LinExpr ac_total, ec_total, beta_total;
    for (int ei = 0; ei < E; ++ei) {
      for (int a = 0; a < nac; ++a) {
        if (enc.ac_dir_[a].mult == m + 1) {
          ac_total.add(enc.edges_[ei].ac_vars[a], 1.0);
        }
      }
      for (int g = 0; g < nec; ++g) {
        if (enc.ec_dir_[g].mult == m + 1) {
          ec_total.add(enc.edges_[ei].ec_vars[g], 1.0);
        }
      }
      beta_total.add(enc.edges_[ei].beta_vars[m], 1.0);
    }
    {
      LinExpr e = ac_total;
      for (auto [var, c] : beta_total.terms) e.add(var, -c);
      model.add_constraint(nm(p, "ac_permult" + std::to_string(m + 1)),
                           std::move(e), Sense::kEq, 0);
    }
    {
      LinExpr e = ec_total;
      for (auto [var, c] : beta_total.terms) e.add(var, -c);
      model.add_constraint(nm(p, "ec_permult" + std::to_string(m + 1)),
                           std::move(e), Sense::kEq, 0);
    }
    int bt = model.add_var(nm(p, "bonds" + std::to_string(m + 1)),
                           VarKind::kInteger, ts.bond_totals[m].lb,
                           ts.bond_totals[m].ub);
    enc.bond_total_vars_[m] = bt;
    LinExpr e = beta_total;
    e.add(bt, -1.0);
    model.add_constraint(nm(p, "bonds_def" + std::to_string(m + 1)),
                         std::move(e), Sense::kEq, 0);
  }

  // Two-layer consistency: a used slot needs interior degree plus
  // full-depth fringe branches totalling at least 2, so that its height
  // reaches rho in the decoded graph (rho = 0 turns this off).
  if (ts.rho > 0) {
    for (int i = 0; i < N; ++i) {
      LinExpr e;
      for (const auto& es : enc.edges_) {
        if (es.u == i || es.v == i) e.add(es.use_var, 1.0);
      }
      for (int c = 0; c < nfc; ++c) {
        e.add(enc.fringe_sel_vars_[i][c],
              static_cast<double>(std::min(enc.fringes_[c].full_branches, 2)));
      }
      e.add(enc.v_vars_[i], -2.0);
      model.add_constraint(nm(p, "layer" + std::to_string(i)), std::move(e),
                           Sense::kGe, 0);
    }
  }

  // ---- valence ----------------------------------------------------------
  for (int i = 0; i < N; ++i) {
    LinExpr e;
    for (const auto& es : enc.edges_) {
      if (es.u != i && es.v != i) continue;
      for (int m = 0; m < 3; ++m) {
        e.add(es.beta_vars[m], static_cast<double>(m + 1));
      }
    }
    for (int c = 0; c < nfc; ++c) {
      e.add(enc.fringe_sel_vars_[i][c],
            static_cast<double>(enc.fringes_[c].root_beta));
    }
    for (int a = 0; a < L; ++a) {
      e.add(enc.alpha_vars_[i][a],
            -static_cast<double>(enc.lambda_[a].valence));
    }
    model.add_constraint(nm(p, "valence" + std::to_string(i)), std::move(e),
                         Sense::kLe, 0);
  }

  // ---- chemical symbol channel -------------------------------------------
  for (int i = 0; i < N; ++i) {
    enc.ns_sel_vars_.emplace_back();
    LinExpr onehot, elem_link, deg_link;
    for (int s = 0; s < ncs; ++s) {
      int var = model.add_binary(nm(p, idx2("dns", i, s)));
      enc.ns_sel_vars_[i].push_back(var);
      onehot.add(var, 1.0);
      int code = elem_code(enc.symbols_[s].element);
      // Symbols over disallowed elements stay as dead columns (code 0
      // forces the element link to reject them for used slots).
      elem_link.add(var, static_cast<double>(code));
      deg_link.add(var, static_cast<double>(enc.symbols_[s].degree));
    }
    {
      LinExpr e = onehot;
      e.add(enc.v_vars_[i], -1.0);
      model.add_constraint(nm(p, "dns_onehot" + std::to_string(i)),
                           std::move(e), Sense::kEq, 0);
    }
    {
      LinExpr e = elem_link;
      LinExpr a = enc.slot_alpha_code(i);
      for (auto [var, c] : a.terms) e.add(var, -c);
      model.add_constraint(nm(p, "dns_elem" + std::to_string(i)),
                           std::move(e), Sense::kEq, 0);
    }
    {
      LinExpr e = deg_link;
      LinExpr d = enc.slot_degree(i);
      for (auto [var, c] : d.terms) e.add(var, -c);
      model.add_constraint(nm(p, "dns_deg" + std::to_string(i)),
                           std::move(e), Sense::kEq, 0);
    }
  }

  // ---- aggregate counts ----------------------------------------------------
  int agg = 0;
  for (const auto& [key, r] : ts.ac) {
    auto cfg = desc::parse_ac_key(key, table);
    int var = model.add_var(nm(p, "ac_cnt" + std::to_string(agg)),
                            VarKind::kInteger, r.lb, r.ub);
    enc.ac_count_[key] = var;
    LinExpr sum;
    for (const auto& es : enc.edges_) {
      for (int a = 0; a < nac; ++a) {
        if (enc.ac_dir_[a] == cfg ||
            (!cfg.symmetric() && enc.ac_dir_[a] == cfg.reversed())) {
          sum.add(es.ac_vars[a], 1.0);
        }
      }
    }
    sum.add(var, -1.0);
    model.add_constraint(nm(p, "ac_agg" + std::to_string(agg)), std::move(sum),
                         Sense::kEq, 0);
    ++agg;
  }
  agg = 0;
  for (const auto& [key, r] : ts.ec) {
    auto cfg = desc::parse_ec_key(key, table);
    int var = model.add_var(nm(p, "ec_cnt" + std::to_string(agg)),
                            VarKind::kInteger, r.lb, r.ub);
    enc.ec_count_[key] = var;
    LinExpr sum;
    for (const auto& es : enc.edges_) {
      for (int g = 0; g < nec; ++g) {
        if (enc.ec_dir_[g] == cfg ||
            (!cfg.symmetric() && enc.ec_dir_[g] == cfg.reversed())) {
          sum.add(es.ec_vars[g], 1.0);
        }
      }
    }
    sum.add(var, -1.0);
    model.add_constraint(nm(p, "ec_agg" + std::to_string(agg)), std::move(sum),
                         Sense::kEq, 0);
    ++agg;
  }
  agg = 0;
  for (const auto& [key, r] : ts.cs) {
    int var = model.add_var(nm(p, "ns_cnt" + std::to_string(agg)),
                            VarKind::kInteger, r.lb, r.ub);
    enc.ns_count_[key] = var;
    auto cfg = desc::parse_cs_key(key, table);
    LinExpr sum;
    for (int i = 0; i < N; ++i) {
      for (int s = 0; s < ncs; ++s) {
        if (enc.symbols_[s] == cfg) sum.add(enc.ns_sel_vars_[i][s], 1.0);
      }
    }
    sum.add(var, -1.0);
    model.add_constraint(nm(p, "ns_agg" + std::to_string(agg)), std::move(sum),
                         Sense::kEq, 0);
    ++agg;
  }
  agg = 0;
  for (const auto& [code, r] : ts.fringe) {
    int var = model.add_var(nm(p, "fc_cnt" + std::to_string(agg)),
                            VarKind::kInteger, r.lb, r.ub);
    enc.fringe_count_[code] = var;
    LinExpr sum;
    for (int i = 0; i < N; ++i) {
      for (int c = 0; c < nfc; ++c) {
        if (enc.fringes_[c].code == code) {
          sum.add(enc.fringe_sel_vars_[i][c], 1.0);
        }
      }
    }
    sum.add(var, -1.0);
    model.add_constraint(nm(p, "fc_agg" + std::to_string(agg)), std::move(sum),
                         Sense::kEq, 0);
    ++agg;
  }
  // Element totals: slot atoms plus fringe exteriors.
  agg = 0;
  for (const auto& [sym, r] : ts.elements) {
    int var = model.add_var(nm(p, "na_cnt" + std::to_string(agg)),
                            VarKind::kInteger, r.lb, r.ub);
    enc.elem_count_[sym] = var;
    LinExpr sum;
    for (int i = 0; i < N; ++i) {
      for (int a = 0; a < L; ++a) {
        if (enc.lambda_[a].symbol == sym) sum.add(enc.alpha_vars_[i][a], 1.0);
      }
      for (int c = 0; c < nfc; ++c) {
        auto it = enc.fringes_[c].exterior_element_counts.find(sym);
        if (it != enc.fringes_[c].exterior_element_counts.end()) {
          sum.add(enc.fringe_sel_vars_[i][c], static_cast<double>(it->second));
        }
      }
    }
    sum.add(var, -1.0);
    model.add_constraint(nm(p, "na_agg" + std::to_string(agg)), std::move(sum),
                         Sense::kEq, 0);
    ++agg;
  }

  return enc;
}

chem::ChemicalGraph GraphEncoding::decode(
    const std::vector<double>& assignment) const {
  auto on = [&assignment](int var) { return assignment[var] > 0.5; };
  std::vector<int> slot_vertex(n_slots_, -1);
  std::vector<chem::ElementSpec> elements;
  std::vector<chem::Edge> edges;
  for (int i = 0; i < n_slots_; ++i) {
    if (!on(v_vars_[i])) continue;
    int chosen = -1;
    for (size_t a = 0; a < lambda_.size(); ++a) {
      if (on(alpha_vars_[i][a])) chosen = static_cast<int>(a);
    }
    if (chosen < 0) {
      throw std::runtime_error("decode: used slot without an element");
    }
    slot_vertex[i] = static_cast<int>(elements.size());
    elements.push_back(lambda_[chosen]);
  }
  for (const auto& es : edges_) {
    if (!on(es.use_var)) continue;
    int mult = 0;
    for (int m = 0; m < 3; ++m) {
      if (on(es.beta_vars[m])) mult = m + 1;
    }
    if (mult == 0 || slot_vertex[es.u] < 0 || slot_vertex[es.v] < 0) {
      throw std::runtime_error("decode: inconsistent edge slot");
    }
    edges.push_back({slot_vertex[es.u], slot_vertex[es.v], mult});
  }
  // Attach fringe templates.
  for (int i = 0; i < n_slots_; ++i) {
    if (slot_vertex[i] < 0) continue;
    for (size_t c = 0; c < fringes_.size(); ++c) {
      if (!on(fringe_sel_vars_[i][c])) continue;
      const desc::RootedTree& t = fringes_[c].tree;
      std::vector<int> tree_vertex(t.size(), -1);
      tree_vertex[0] = slot_vertex[i];
      for (int tv = 1; tv < t.size(); ++tv) {
        tree_vertex[tv] = static_cast<int>(elements.size());
        elements.push_back(t.elements[tv]);
        edges.push_back({tree_vertex[t.parents[tv]], tree_vertex[tv],
                         t.bond_mults[tv]});
      }
    }
  }
  return chem::ChemicalGraph(std::move(elements), std::move(edges),
                             /*suppress=*/false);
}

AffineExpr GraphEncoding::raw_expr(const desc::Descriptor& d) const {
  AffineExpr out;
  switch (d.kind) {
    case desc::DescriptorKind::kScalar:
      if (d.key == "n") {
        for (int i = 0; i < n_slots_; ++i) out.expr.add(v_vars_[i], 1.0);
        for (int i = 0; i < n_slots_; ++i) {
          for (size_t c = 0; c < fringes_.size(); ++c) {
            out.expr.add(fringe_sel_vars_[i][c],
                         static_cast<double>(fringes_[c].n_exterior));
          }
        }
      } else if (d.key == "rank") {
        // Tree scaffold: rank is identically zero.
      } else if (d.key == "n_int") {
        for (int i = 0; i < n_slots_; ++i) out.expr.add(v_vars_[i], 1.0);
      } else if (d.key == "m_int") {
        for (const auto& es : edges_) out.expr.add(es.use_var, 1.0);
      } else if (d.key == "n_h") {
        for (int i = 0; i < n_slots_; ++i) {
          for (size_t a = 0; a < lambda_.size(); ++a) {
            out.expr.add(alpha_vars_[i][a],
                         static_cast<double>(lambda_[a].valence));
          }
          for (size_t c = 0; c < fringes_.size(); ++c) {
            out.expr.add(fringe_sel_vars_[i][c],
                         static_cast<double>(fringes_[c].hydrogen_contribution));
          }
        }
        for (const auto& es : edges_) {
          for (int m = 0; m < 3; ++m) {
            out.expr.add(es.beta_vars[m], -2.0 * (m + 1));
          }
        }
      } else if (d.key == "avg_mass") {
        throw std::runtime_error(
            "avg_mass has no direct linear expression; handled by the "
            "feature link");
      } else {
        throw std::runtime_error("unknown scalar descriptor: " + d.key);
      }
      break;
    case desc::DescriptorKind::kElement: {
      // Built from the selector variables directly: fringe exteriors may
      // carry elements outside the slot vocabulary, which the bounded
      // count variable does not exist for.
      for (int i = 0; i < n_slots_; ++i) {
        for (size_t a = 0; a < lambda_.size(); ++a) {
          if (lambda_[a].symbol == d.key) {
            out.expr.add(alpha_vars_[i][a], 1.0);
          }
        }
        for (size_t c = 0; c < fringes_.size(); ++c) {
          auto it = fringes_[c].exterior_element_counts.find(d.key);
          if (it != fringes_[c].exterior_element_counts.end()) {
            out.expr.add(fringe_sel_vars_[i][c],
                         static_cast<double>(it->second));
          }
        }
      }
      break;
    }
    case desc::DescriptorKind::kSymbol: {
      auto it = ns_count_.find(d.key);
      if (it != ns_count_.end()) out.expr.add(it->second, 1.0);
      break;
    }
    case desc::DescriptorKind::kAdjacency: {
      auto it = ac_count_.find(d.key);
      if (it != ac_count_.end()) out.expr.add(it->second, 1.0);
      break;
    }
    case desc::DescriptorKind::kEdgeConfig: {
      auto it = ec_count_.find(d.key);
      if (it != ec_count_.end()) out.expr.add(it->second, 1.0);
      break;
    }
    case desc::DescriptorKind::kFringe: {
      auto it = fringe_count_.find(d.key);
      if (it != fringe_count_.end()) out.expr.add(it->second, 1.0);
      break;
    }
  }
  return out;
}

std::vector<int> encode_feature_link(MilpModel& model,
                                     const GraphEncoding& enc,
                                     const desc::DescriptorRegistry& reg,
                                     const desc::Normalization& norm,
                                     const std::string& p) {
  if (norm.size() != reg.size()) {
    throw std::runtime_error("normalization width differs from registry");
  }
  // Average mass needs the atom-count one-hot: n's value selects which
  // divisor turns the linear mass total into the mean.
  int max_fringe_atoms = 0;
  for (const auto& f : enc.fringes_) {
    max_fringe_atoms = std::max(max_fringe_atoms, f.n_exterior);
  }
  int n_max = enc.n_slots_ * (1 + max_fringe_atoms);
  double mass_hi = 0;
  for (const auto& e : enc.lambda_) mass_hi = std::max(mass_hi, e.mass);
  for (const auto& f : enc.fringes_) {
    // Exterior atoms may use elements outside the slot vocabulary.
    for (int v = 1; v < f.tree.size(); ++v) {
      mass_hi = std::max(mass_hi, f.tree.elements[v].mass);
    }
  }
  double mass_cap = mass_hi * n_max;

  int am_var = -1;
  {
    AffineExpr mass;
    for (int i = 0; i < enc.n_slots_; ++i) {
      for (size_t a = 0; a < enc.lambda_.size(); ++a) {
        mass.expr.add(enc.alpha_vars_[i][a], enc.lambda_[a].mass);
      }
      for (size_t c = 0; c < enc.fringes_.size(); ++c) {
        mass.expr.add(enc.fringe_sel_vars_[i][c], enc.fringes_[c].exterior_mass);
      }
    }
    AffineExpr n_expr =
        enc.raw_expr(desc::Descriptor{desc::DescriptorKind::kScalar, "n"});
    am_var = model.add_var(nm(p, "avg_mass"), VarKind::kContinuous, 0, mass_hi);
    LinExpr pick;
    LinExpr pick_n;
    for (int k = 1; k <= n_max; ++k) {
      int zk = model.add_binary(nm(p, "nsel" + std::to_string(k)));
      pick.add(zk, 1.0);
      pick_n.add(zk, static_cast<double>(k));
      // mass - k * am in [-cap, cap] opened only when n == k.
      LinExpr up = mass.expr;
      up.add(am_var, -static_cast<double>(k));
      up.add(zk, mass_cap);
      model.add_constraint(nm(p, "am_up" + std::to_string(k)), std::move(up),
                           Sense::kLe, mass_cap);
      LinExpr dn = mass.expr;
      dn.add(am_var, -static_cast<double>(k));
      dn.add(zk, -mass_cap);
      model.add_constraint(nm(p, "am_dn" + std::to_string(k)), std::move(dn),
                           Sense::kGe, -mass_cap);
    }
    model.add_constraint(nm(p, "nsel_onehot"), std::move(pick), Sense::kEq, 1);
    for (auto [var, c] : n_expr.expr.terms) pick_n.add(var, -c);
    model.add_constraint(nm(p, "nsel_link"), std::move(pick_n), Sense::kEq,
                         n_expr.constant);
  }

  std::vector<int> x_vars;
  for (int j = 0; j < reg.size(); ++j) {
    const auto& d = reg.at(j);
    int x = model.add_var(nm(p, "x" + std::to_string(j)), VarKind::kContinuous,
                          0, 1);
    x_vars.push_back(x);
    AffineExpr raw;
    if (d.kind == desc::DescriptorKind::kScalar && d.key == "avg_mass") {
      raw.expr.add(am_var, 1.0);
    } else {
      raw = enc.raw_expr(d);
    }
    if (norm.constant(j)) {
      // Constant descriptor: x is pinned to 0 and the raw value must hit
      // the constant, otherwise x would misreport the graph to the
      // prediction side.
      model.add_constraint(nm(p, "xfix" + std::to_string(j)),
                           LinExpr().add(x, 1.0), Sense::kEq, 0);
      LinExpr e = raw.expr;
      model.add_constraint(nm(p, "xconst" + std::to_string(j)), std::move(e),
                           Sense::kEq, norm.mins[j] - raw.constant);
    } else {
      // (max - min) * x - raw = -min + raw_const
      double range = norm.maxs[j] - norm.mins[j];
      LinExpr e;
      e.add(x, range);
      for (auto [var, c] : raw.expr.terms) e.add(var, -c);
      model.add_constraint(nm(p, "xlink" + std::to_string(j)), std::move(e),
                           Sense::kEq, raw.constant - norm.mins[j]);
    }
  }
  return x_vars;
}

}  // namespace molinfer::enc
