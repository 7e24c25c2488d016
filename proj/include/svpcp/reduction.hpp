#pragma once

#include "svpcp/csp.hpp"
#include "svpcp/solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace svpcp {

// ---- grouping ----

struct GroupingOptions {
  std::uint32_t degree_cap = 8;
};

struct Grouping {
  std::uint32_t requested_k = 0;
  std::uint32_t t = 0;
  // slots[x][i]: original vertex held by slot i of group x, or -1 for padding.
  std::vector<std::vector<std::int32_t>> slots;
  std::uint32_t splits = 0;  // extra groups created by degree splitting
  std::uint32_t replicas = 0;

  std::uint32_t k() const { return static_cast<std::uint32_t>(slots.size()); }
};

// Conjunction of slot equalities and colouring checks between groups a < b.
struct GroupConstraint {
  std::uint32_t a = 0, b = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> equal;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> differ;
  std::vector<std::uint32_t> edges;  // original edge indices covered here
};

struct GroupedCsp {
  Grouping grouping;
  std::vector<GroupConstraint> constraints;

  std::uint32_t max_degree() const {
    std::vector<std::set<std::uint32_t>> nb(grouping.k());
    for (const auto& c : constraints)
      if (c.a != c.b) {
        nb[c.a].insert(c.b);
        nb[c.b].insert(c.a);
      }
    std::uint32_t best = 0;
    for (const auto& s : nb) best = std::max(best, static_cast<std::uint32_t>(s.size()));
    return best;
  }
};

using GroupAssignment = std::vector<std::vector<std::uint32_t>>;

inline bool group_constraint_ok(const GroupConstraint& c, const GroupAssignment& s) {
  for (auto [i, j] : c.equal)
    if (s[c.a][i] != s[c.b][j]) return false;
  for (auto [i, j] : c.differ)
    if (!is_color(s[c.a][i]) || !is_color(s[c.b][j]) || s[c.a][i] == s[c.b][j]) return false;
  return true;
}

inline Rational grouped_val(const GroupedCsp& g, const GroupAssignment& s) {
  if (s.size() != g.grouping.k()) throw std::invalid_argument("grouping: assignment length");
  for (const auto& v : s)
    if (v.size() != g.grouping.t) throw std::invalid_argument("grouping: value width");
  if (g.constraints.empty()) return Rational(1);
  std::int64_t ok = 0;
  for (const auto& c : g.constraints) ok += group_constraint_ok(c, s);
  return Rational(ok, static_cast<std::int64_t>(g.constraints.size()));
}

inline GroupedCsp group_variables(const ColoringInstance& g, std::uint32_t k, const GroupingOptions& opt = {}) {
  g.validate();
  if (k < 2 || k > g.n)
    throw std::invalid_argument("grouping: k=" + std::to_string(k) + " outside [2, n=" + std::to_string(g.n) + "]");
  if (opt.degree_cap < 3) throw std::invalid_argument("grouping: degree cap must be at least 3");
  GroupedCsp out;
  Grouping& gr = out.grouping;
  gr.requested_k = k;
  gr.slots.assign(k, {});
  std::vector<std::int32_t> home(g.n);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    home[v] = static_cast<std::int32_t>(gr.slots[v % k].size());
    gr.slots[v % k].push_back(static_cast<std::int32_t>(v));
  }
  auto slot_of = [&](std::uint32_t grp, std::uint32_t v) -> std::int32_t {
    const auto& s = gr.slots[grp];
    auto it = std::find(s.begin(), s.end(), static_cast<std::int32_t>(v));
    return it == s.end() ? -1 : static_cast<std::int32_t>(it - s.begin());
  };

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> by_pair;
  auto pair_constraint = [&](std::uint32_t a, std::uint32_t b) -> GroupConstraint& {
    auto key = std::minmax(a, b);
    auto [it, fresh] = by_pair.emplace(std::pair(key.first, key.second), out.constraints.size());
    if (fresh) {
      GroupConstraint c;
      c.a = key.first;
      c.b = key.second;
      out.constraints.push_back(c);
    }
    return out.constraints[it->second];
  };
  // Adds the pair (slot i of group a, slot j of group b) to list `which`.
  auto add_pair = [&](std::uint32_t a, std::uint32_t i, std::uint32_t b, std::uint32_t j, bool equal,
                      std::int64_t edge) {
    auto& c = pair_constraint(a, b);
    auto p = c.a == a ? std::pair(i, j) : std::pair(j, i);
    auto& list = equal ? c.equal : c.differ;
    if (std::find(list.begin(), list.end(), p) == list.end()) list.push_back(p);
    if (edge >= 0) c.edges.push_back(static_cast<std::uint32_t>(edge));
  };

  for (std::uint32_t ei = 0; ei < g.edges.size(); ++ei) {
    auto [u, v] = g.edges[ei];
    const std::uint32_t bu = u % k, bv = v % k;
    if (bu != bv) {
      add_pair(bu, home[u], bv, home[v], false, ei);
      continue;
    }
    // Both ends in block b: cover through a replica of v in the next block.
    const std::uint32_t nb = (bu + 1) % k;
    std::int32_t rs = slot_of(nb, v);
    if (rs < 0) {
      rs = static_cast<std::int32_t>(gr.slots[nb].size());
      gr.slots[nb].push_back(static_cast<std::int32_t>(v));
      ++gr.replicas;
      add_pair(bu, home[v], nb, rs, true, -1);
    }
    add_pair(bu, home[u], nb, rs, false, ei);
  }

  // Degree splitting: a group with too many neighbours becomes a chain of
  // copies linked by full equality, each copy taking cap-2 neighbours.
  const std::uint32_t chunk = opt.degree_cap - 2;
  for (std::uint32_t x = 0; x < k; ++x) {
    std::vector<std::size_t> incident;
    for (std::size_t ci = 0; ci < out.constraints.size(); ++ci)
      if (out.constraints[ci].a == x || out.constraints[ci].b == x) incident.push_back(ci);
    if (incident.size() <= opt.degree_cap) continue;
    std::uint32_t prev = x;
    for (std::size_t start = chunk; start < incident.size(); start += chunk) {
      const std::uint32_t copy = static_cast<std::uint32_t>(gr.slots.size());
      gr.slots.push_back(gr.slots[x]);
      ++gr.splits;
      for (std::size_t i = start; i < std::min(incident.size(), start + chunk); ++i) {
        auto& c = out.constraints[incident[i]];
        // Re-point x to the copy, keeping a < b orientation.
        if (c.a == x) {
          c.a = copy;
        } else {
          c.b = copy;
        }
        if (c.a > c.b) {
          std::swap(c.a, c.b);
          for (auto& p : c.equal) std::swap(p.first, p.second);
          for (auto& p : c.differ) std::swap(p.first, p.second);
        }
      }
      GroupConstraint link;
      link.a = prev;
      link.b = copy;
      for (std::uint32_t i = 0; i < gr.slots[x].size(); ++i) link.equal.push_back({i, i});
      out.constraints.push_back(link);
      prev = copy;
    }
  }

  gr.t = 0;
  for (const auto& s : gr.slots) gr.t = std::max(gr.t, static_cast<std::uint32_t>(s.size()));
  for (auto& s : gr.slots) s.resize(gr.t, -1);
  return out;
}

// Slot values from a colouring; padding slots take 0.
inline GroupAssignment group_assignment(const GroupedCsp& g, const Assignment& coloring) {
  GroupAssignment s(g.grouping.k(), std::vector<std::uint32_t>(g.grouping.t, 0));
  for (std::uint32_t x = 0; x < g.grouping.k(); ++x)
    for (std::uint32_t i = 0; i < g.grouping.t; ++i)
      if (g.grouping.slots[x][i] >= 0) s[x][i] = coloring.at(g.grouping.slots[x][i]);
  return s;
}

inline std::optional<GroupAssignment> grouped_solve(const GroupedCsp& g, std::uint64_t budget = kDefaultSearchBudget) {
  const std::uint32_t t = g.grouping.t;
  SearchCsp s(std::vector<std::uint64_t>(static_cast<std::size_t>(g.grouping.k()) * t, full_mask(4)));
  const SubTable eq = SubTable::equality(4), diff = coloring_table();
  for (const auto& c : g.constraints) {
    for (auto [i, j] : c.equal) s.add_table(c.a * t + i, c.b * t + j, eq);
    for (auto [i, j] : c.differ) s.add_table(c.a * t + i, c.b * t + j, diff);
  }
  auto flat = s.solve(budget);
  if (!flat) return std::nullopt;
  GroupAssignment out(g.grouping.k(), std::vector<std::uint32_t>(t));
  for (std::uint32_t x = 0; x < g.grouping.k(); ++x)
    for (std::uint32_t i = 0; i < t; ++i) out[x][i] = (*flat)[x * t + i];
  return out;
}

// ---- colouring -> VecCSP ----

struct VecCopy {
  std::uint32_t group = 0;
  std::vector<std::uint32_t> perm;  // coordinate i holds slot perm[i]
};

struct VecReduction {
  GroupedCsp grouped;
  VecCspInstance inst{Field(2), 1, 0};
  std::vector<VecCopy> copies;  // one per VecCSP variable
  std::uint32_t max_matchings = 0;
};

inline Matrix permutation_link(const std::vector<std::uint32_t>& pa, const std::vector<std::uint32_t>& pb) {
  // P_a P_b^T: entry (i, l) is 1 iff both coordinates hold the same slot.
  Matrix m(pa.size(), pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t l = 0; l < pb.size(); ++l)
      if (pa[i] == pb[l]) m(i, l) = FieldElement(1);
  return m;
}

// Greedy proper edge colouring of a bipartite pair list; returns colour classes.
inline std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> matching_decomposition(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> classes;
  std::vector<std::set<std::uint32_t>> left, right;
  for (auto p : pairs) {
    std::size_t c = 0;
    while (c < classes.size() && (left[c].count(p.first) || right[c].count(p.second))) ++c;
    if (c == classes.size()) {
      classes.emplace_back();
      left.emplace_back();
      right.emplace_back();
    }
    classes[c].push_back(p);
    left[c].insert(p.first);
    right[c].insert(p.second);
  }
  return classes;
}

inline VecReduction coloring_to_veccsp(const ColoringInstance& g, std::uint32_t k, const GroupingOptions& opt = {}) {
  VecReduction r;
  r.grouped = group_variables(g, k, opt);
  const auto& gr = r.grouped.grouping;
  const std::uint32_t t = gr.t;
  r.inst = VecCspInstance(Field(2), static_cast<int>(t), 0);
  std::vector<std::uint32_t> identity(t);
  for (std::uint32_t i = 0; i < t; ++i) identity[i] = i;
  std::vector<std::vector<std::uint32_t>> by_group(gr.k());
  auto new_copy = [&](std::uint32_t group, std::vector<std::uint32_t> perm) {
    const auto id = static_cast<std::uint32_t>(r.copies.size());
    r.copies.push_back({group, std::move(perm)});
    by_group[group].push_back(id);
    return id;
  };
  const SubTable eq = SubTable::equality(4), diff = coloring_table();
  auto emit = [&](std::uint32_t a, std::uint32_t b, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                  const SubTable& sub) {
    auto classes = matching_decomposition(pairs);
    r.max_matchings = std::max(r.max_matchings, static_cast<std::uint32_t>(classes.size()));
    for (const auto& mu : classes) {
      // b's copy is permuted so slot j sits at coordinate i for (i, j) in mu.
      std::vector<std::uint32_t> pb(t, t);
      std::vector<bool> used(t, false);
      std::vector<std::uint32_t> q;
      for (auto [i, j] : mu) {
        pb[i] = j;
        used[j] = true;
        q.push_back(i);
      }
      std::uint32_t next = 0;
      for (std::uint32_t i = 0; i < t; ++i) {
        if (pb[i] != t) continue;
        while (used[next]) ++next;
        pb[i] = next;
        used[next] = true;
      }
      std::sort(q.begin(), q.end());
      const auto ca = new_copy(a, identity);
      const auto cb = new_copy(b, pb);
      r.inst.constraints.push_back(VecConstraint::parallel(ca, cb, sub, q));
    }
  };
  for (const auto& c : r.grouped.constraints) {
    if (!c.equal.empty()) emit(c.a, c.b, c.equal, eq);
    if (!c.differ.empty()) emit(c.a, c.b, c.differ, diff);
  }
  for (std::uint32_t x = 0; x < gr.k(); ++x)
    if (by_group[x].empty()) new_copy(x, identity);
  r.inst.num_vars = static_cast<std::uint32_t>(r.copies.size());
  for (std::uint32_t x = 0; x < gr.k(); ++x) {
    const auto& cs = by_group[x];
    for (std::size_t j = 0; j + 1 < cs.size(); ++j)
      r.inst.constraints.push_back(
          VecConstraint::linear(cs[j], cs[j + 1], permutation_link(r.copies[cs[j]].perm, r.copies[cs[j + 1]].perm)));
  }
  r.inst.validate();
  return r;
}

inline VecAssignment veccsp_assignment(const VecReduction& r, const GroupAssignment& s) {
  VecAssignment out;
  for (const auto& c : r.copies) {
    VecValue v(c.perm.size());
    for (std::size_t i = 0; i < c.perm.size(); ++i) v[i] = FieldElement(s.at(c.group).at(c.perm[i]));
    out.push_back(v);
  }
  return out;
}

// Slot values read back from any copy of each group.
inline GroupAssignment group_from_veccsp(const VecReduction& r, const VecAssignment& s) {
  const auto& gr = r.grouped.grouping;
  GroupAssignment out(gr.k(), std::vector<std::uint32_t>(gr.t, 0));
  std::vector<bool> done(gr.k(), false);
  for (std::size_t c = 0; c < r.copies.size(); ++c) {
    const auto& cp = r.copies[c];
    if (done[cp.group]) continue;
    done[cp.group] = true;
    for (std::size_t i = 0; i < cp.perm.size(); ++i) out[cp.group][cp.perm[i]] = s[c][i].value;
  }
  return out;
}

// ---- VecCSP -> SVecCSP ----

struct SvcspOptions {
  // Split x into x^l, x^p, x^a even when its parallel constraint already
  // covers every coordinate.
  bool literal = false;
};

struct SvReduction {
  SVecCspInstance inst{Field(2), 1, 0};
  std::uint32_t hat_vars = 0;
  std::uint32_t hat_linear = 0;
  std::uint32_t hat_parallel = 0;
  std::vector<std::uint32_t> lin_of, par_of, aux_of;  // per input variable; aux = ~0u when not split
  std::vector<std::int32_t> parallel_of;              // index of the input's parallel constraint, or -1
  // Linear constraints of the intermediate instance: hat u = M hat v.
  struct HatLinear {
    std::uint32_t u, v;
    Matrix m;
  };
  std::vector<HatLinear> hat_lin;
  std::vector<SubTable> effective_sub;  // per input constraint (parallel ones)
};

inline Matrix projection_matrix(int t, const std::vector<std::uint32_t>& q) {
  Matrix m(t, t);
  for (auto i : q) m(i, i) = FieldElement(1);
  return m;
}

inline SvReduction veccsp_to_svcsp(const VecCspInstance& g, const SvcspOptions& opt = {}) {
  g.validate();
  if (g.max_parallel_degree() > 1)
    throw std::invalid_argument("reduction: a variable touches more than one parallel constraint");
  SvReduction r;
  const std::uint32_t n = g.num_vars;
  const int t = g.t;
  const auto all = all_coords(t);
  r.parallel_of.assign(n, -1);
  for (std::size_t ci = 0; ci < g.constraints.size(); ++ci) {
    const auto& c = g.constraints[ci];
    if (c.kind == VecConstraint::Kind::Parallel) r.parallel_of[c.u] = r.parallel_of[c.v] = static_cast<std::int32_t>(ci);
  }
  r.lin_of.assign(n, 0);
  r.par_of.assign(n, 0);
  r.aux_of.assign(n, ~0u);
  std::uint32_t next = 0;
  for (std::uint32_t x = 0; x < n; ++x) {
    r.lin_of[x] = next++;
    r.par_of[x] = r.lin_of[x];
    if (r.parallel_of[x] < 0) continue;
    const auto& pc = g.constraints[r.parallel_of[x]];
    if (opt.literal || pc.coords != all) {
      r.par_of[x] = next++;
      r.aux_of[x] = next++;
    }
  }
  r.hat_vars = next;

  r.effective_sub.assign(g.constraints.size(), SubTable());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> hat_par;
  std::vector<SubTable> hat_par_sub;
  for (std::size_t ci = 0; ci < g.constraints.size(); ++ci) {
    const auto& c = g.constraints[ci];
    if (c.kind == VecConstraint::Kind::Linear) {
      r.hat_lin.push_back({r.lin_of[c.u], r.lin_of[c.v], c.matrix});
      continue;
    }
    SubTable sub = c.sub;
    if (c.coords.empty() && !sub.satisfiable()) sub = SubTable::always(sub.size);
    r.effective_sub[ci] = sub;
    hat_par.push_back({r.par_of[c.u], r.par_of[c.v]});
    hat_par_sub.push_back(sub);
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    if (r.aux_of[x] == ~0u) continue;
    Matrix mq = projection_matrix(t, g.constraints[r.parallel_of[x]].coords);
    r.hat_lin.push_back({r.aux_of[x], r.par_of[x], mq});
    r.hat_lin.push_back({r.aux_of[x], r.lin_of[x], mq});
  }
  r.hat_linear = static_cast<std::uint32_t>(r.hat_lin.size());
  r.hat_parallel = static_cast<std::uint32_t>(hat_par.size());

  const std::uint32_t k = r.hat_vars + r.hat_linear;
  r.inst = SVecCspInstance(g.field, t, k);
  auto& cs = r.inst.base.constraints;
  for (std::uint32_t u = 0; u < r.hat_vars; ++u) cs.push_back(VecConstraint::linear(k + u, u, Matrix::identity(t)));
  for (std::uint32_t j = 0; j < r.hat_linear; ++j) {
    const std::uint32_t i = r.hat_vars + j;
    cs.push_back(VecConstraint::linear(k + i, i, r.hat_lin[j].m));
  }
  const SubTable eq = SubTable::equality(g.field.order());
  for (std::size_t j = 0; j < hat_par.size(); ++j)
    cs.push_back(VecConstraint::parallel(hat_par[j].first, hat_par[j].second, hat_par_sub[j], all));
  for (std::uint32_t j = 0; j < r.hat_linear; ++j) {
    const std::uint32_t i = r.hat_vars + j;
    cs.push_back(VecConstraint::parallel(i, r.hat_lin[j].v, eq, all));      // x_e = x_v
    cs.push_back(VecConstraint::parallel(k + i, r.hat_lin[j].u, eq, all));  // y_e = x_u
  }
  return r;
}

inline VecAssignment svcsp_assignment(const VecCspInstance& g, const SvReduction& r, const VecAssignment& s) {
  check_vec_assignment(g, s);
  const int t = g.t;
  std::vector<VecValue> hat(r.hat_vars, VecValue(t));
  for (std::uint32_t x = 0; x < g.num_vars; ++x) {
    hat[r.lin_of[x]] = s[x];
    if (r.aux_of[x] == ~0u) continue;
    const auto ci = r.parallel_of[x];
    const auto& c = g.constraints[ci];
    auto [a, b] = r.effective_sub[ci].least_pair();
    VecValue p(t, FieldElement(x == c.u ? a : b));
    for (auto i : c.coords) p[i] = s[x][i];
    hat[r.par_of[x]] = p;
    hat[r.aux_of[x]] = mat_vec(g.field, projection_matrix(t, c.coords), s[x]);
  }
  const std::uint32_t k = r.inst.k;
  VecAssignment out(2 * k);
  for (std::uint32_t u = 0; u < r.hat_vars; ++u) out[u] = out[k + u] = hat[u];
  for (std::uint32_t j = 0; j < r.hat_linear; ++j) {
    const std::uint32_t i = r.hat_vars + j;
    out[i] = hat[r.hat_lin[j].v];
    out[k + i] = hat[r.hat_lin[j].u];
  }
  return out;
}

inline VecAssignment veccsp_from_svcsp(const VecCspInstance& g, const SvReduction& r, const VecAssignment& s) {
  VecAssignment out(g.num_vars);
  for (std::uint32_t x = 0; x < g.num_vars; ++x) out[x] = s.at(r.lin_of[x]);
  return out;
}

// ---- whole pipeline ----

struct PipelineOptions {
  GroupingOptions grouping;
  SvcspOptions svcsp;
};

struct ReductionReport {
  std::uint32_t n = 0, edges = 0, k = 0, groups = 0, t = 0, group_degree = 0, replicas = 0, splits = 0;
  std::uint32_t vec_vars = 0, vec_constraints = 0, vec_parallel = 0, vec_linear = 0, max_matchings = 0;
  std::uint32_t sv_k = 0, sv_constraints = 0, hat_vars = 0, hat_constraints = 0;
  double vec_var_factor = 0, vec_constraint_factor = 0;
  // |V| <= k_groups * (2 * cap * (2t - 1) + 1), |E| <= 2 |V|.
  std::uint64_t vec_var_bound = 0, vec_constraint_bound = 0;
};

struct PipelineResult {
  ColoringInstance source;
  VecReduction vec;
  SvReduction sv;
  ReductionReport report;
};

inline PipelineResult reduce_coloring(const ColoringInstance& g, std::uint32_t k, const PipelineOptions& opt = {}) {
  PipelineResult p;
  p.source = g;
  p.vec = coloring_to_veccsp(g, k, opt.grouping);
  p.sv = veccsp_to_svcsp(p.vec.inst, opt.svcsp);
  auto& rep = p.report;
  const auto& gr = p.vec.grouped.grouping;
  rep.n = g.n;
  rep.edges = static_cast<std::uint32_t>(g.edges.size());
  rep.k = k;
  rep.groups = gr.k();
  rep.t = gr.t;
  rep.group_degree = p.vec.grouped.max_degree();
  rep.replicas = gr.replicas;
  rep.splits = gr.splits;
  rep.vec_vars = p.vec.inst.num_vars;
  rep.vec_constraints = static_cast<std::uint32_t>(p.vec.inst.constraints.size());
  rep.vec_parallel = static_cast<std::uint32_t>(p.vec.inst.count(VecConstraint::Kind::Parallel));
  rep.vec_linear = static_cast<std::uint32_t>(p.vec.inst.count(VecConstraint::Kind::Linear));
  rep.max_matchings = p.vec.max_matchings;
  rep.sv_k = p.sv.inst.k;
  rep.sv_constraints = static_cast<std::uint32_t>(p.sv.inst.base.constraints.size());
  rep.hat_vars = p.sv.hat_vars;
  rep.hat_constraints = p.sv.hat_linear + p.sv.hat_parallel;
  rep.vec_var_factor = static_cast<double>(rep.vec_vars) / k;
  rep.vec_constraint_factor = static_cast<double>(rep.vec_constraints) / k;
  rep.vec_var_bound = static_cast<std::uint64_t>(rep.groups) * (2ull * opt.grouping.degree_cap * (2ull * rep.t - 1) + 1);
  rep.vec_constraint_bound = 2 * rep.vec_var_bound;
  return p;
}

inline VecAssignment pipeline_forward(const PipelineResult& p, const Assignment& coloring) {
  auto gs = group_assignment(p.vec.grouped, coloring);
  auto vs = veccsp_assignment(p.vec, gs);
  return svcsp_assignment(p.vec.inst, p.sv, vs);
}

// GF(4)-valued instance and assignment moved into a larger field.
inline SVecCspInstance svcsp_embed(const SVecCspInstance& g, const Field& target) {
  Embedding emb(g.field(), target);
  SVecCspInstance out(target, g.t(), g.k);
  for (const auto& c : g.base.constraints) {
    if (c.kind == VecConstraint::Kind::Linear) {
      Matrix m = c.matrix;
      for (auto& x : m.a) x = emb(x);
      out.base.constraints.push_back(VecConstraint::linear(c.u, c.v, m));
    } else {
      SubTable s(target.order());
      for (std::uint32_t a = 0; a < c.sub.size; ++a)
        for (std::uint32_t b = 0; b < c.sub.size; ++b)
          if (c.sub(a, b)) s.set(emb(FieldElement(a)).value, emb(FieldElement(b)).value, true);
      out.base.constraints.push_back(VecConstraint::parallel(c.u, c.v, s, c.coords));
    }
  }
  return out;
}

inline VecAssignment embed_assignment(const VecAssignment& s, const Field& from, const Field& to) {
  Embedding emb(from, to);
  VecAssignment out = s;
  for (auto& v : out)
    for (auto& x : v) x = emb(x);
  return out;
}

// ---- PCPP -> CSP ----

// A verifier with 2^r coin outcomes over positions [0, input) of y and
// [input, input+proof) of the proof, both over the same alphabet.
struct PcppDescriptor {
  std::uint32_t input_length = 0;
  std::uint32_t proof_length = 0;
  std::uint32_t alphabet = 2;
  std::uint64_t coin_outcomes = 1;
  std::function<std::vector<std::uint32_t>(std::uint64_t)> queries;
  std::function<bool(std::uint64_t, const std::vector<std::uint32_t>&)> accepts;
};

inline constexpr std::uint64_t kMaxPcppCoins = std::uint64_t{1} << 16;

struct PcppCsp {
  CspInstance csp;
  std::uint32_t first_coin_var = 0;
  std::vector<std::vector<std::uint32_t>> queries;  // I_r per coin outcome
};

// Configurations of z_r are encoded base-|alphabet|, query 0 least significant.
inline std::vector<std::uint32_t> decode_configuration(std::uint32_t code, std::uint32_t alphabet, std::size_t q) {
  std::vector<std::uint32_t> a(q);
  for (std::size_t i = 0; i < q; ++i) {
    a[i] = code % alphabet;
    code /= alphabet;
  }
  return a;
}

inline PcppCsp pcpp_to_csp(const PcppDescriptor& d) {
  if (d.coin_outcomes > kMaxPcppCoins) throw std::length_error("pcpp_to_csp: coin space too large to enumerate");
  PcppCsp out;
  const std::uint32_t base = d.input_length + d.proof_length;
  out.first_coin_var = base;
  std::uint32_t alphabet = d.alphabet;
  for (std::uint64_t r = 0; r < d.coin_outcomes; ++r) {
    out.queries.push_back(d.queries(r));
    std::uint64_t configs = 1;
    for (std::size_t i = 0; i < out.queries.back().size(); ++i) configs *= d.alphabet;
    if (configs > 64) throw std::length_error("pcpp_to_csp: configuration alphabet exceeds 64");
    alphabet = std::max<std::uint32_t>(alphabet, static_cast<std::uint32_t>(configs));
    for (auto pos : out.queries.back())
      if (pos >= base) throw std::out_of_range("pcpp_to_csp: query outside input and proof");
  }
  auto& g = out.csp;
  g.alphabet = alphabet;
  g.num_vars = base + static_cast<std::uint32_t>(d.coin_outcomes);
  g.domain.assign(g.num_vars, d.alphabet);
  for (std::uint64_t r = 0; r < d.coin_outcomes; ++r) {
    const auto& qr = out.queries[r];
    std::uint32_t configs = 1;
    for (std::size_t i = 0; i < qr.size(); ++i) configs *= d.alphabet;
    g.domain[base + r] = configs;
    for (std::size_t i = 0; i < qr.size(); ++i) {
      // (z_r, position i): z_r is accepting and agrees with the position.
      SubTable t(alphabet);
      for (std::uint32_t c = 0; c < configs; ++c) {
        auto a = decode_configuration(c, d.alphabet, qr.size());
        if (!d.accepts(r, a)) continue;
        t.set(c, a[i], true);
      }
      g.tables.push_back(t);
      g.constraints.push_back({base + static_cast<std::uint32_t>(r), qr[i], static_cast<std::uint32_t>(g.tables.size() - 1)});
    }
  }
  g.validate();
  return out;
}

// Two coin outcomes, each reading y_0 and y_1; accepts iff they are equal.
inline PcppDescriptor toy_equality_verifier() {
  PcppDescriptor d;
  d.input_length = 2;
  d.proof_length = 0;
  d.alphabet = 2;
  d.coin_outcomes = 2;
  d.queries = [](std::uint64_t r) {
    return r == 0 ? std::vector<std::uint32_t>{0, 1} : std::vector<std::uint32_t>{1, 0};
  };
  d.accepts = [](std::uint64_t, const std::vector<std::uint32_t>& a) { return a[0] == a[1]; };
  return d;
}

// Fraction of coin outcomes on which the verifier accepts y with proof pi.
inline Rational pcpp_acceptance(const PcppDescriptor& d, const std::vector<std::uint32_t>& word) {
  std::int64_t acc = 0;
  for (std::uint64_t r = 0; r < d.coin_outcomes; ++r) {
    std::vector<std::uint32_t> a;
    for (auto pos : d.queries(r)) a.push_back(word.at(pos));
    acc += d.accepts(r, a);
  }
  return Rational(acc, static_cast<std::int64_t>(d.coin_outcomes));
}

}  // namespace svpcp
