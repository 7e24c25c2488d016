#pragma once

#include "svpcp/csp.hpp"

#include <bit>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace svpcp {

inline constexpr std::uint64_t kDefaultSearchBudget = std::uint64_t{1} << 22;

// Finite-domain search over variables with values < 64. Binary table
// constraints are kept arc consistent; a linear row sum c_i z_i = 0 fixes its
// last unknown. Variables are branched in index order with values
// ascending, so the first solution found is the lexicographically least.
class SearchCsp {
 public:
  explicit SearchCsp(std::vector<std::uint64_t> domains) : dom_(std::move(domains)), watch_(dom_.size()) {
    for (auto d : dom_)
      if (d == 0) empty_ = true;
  }

  std::size_t num_vars() const { return dom_.size(); }

  void restrict(std::uint32_t v, std::uint64_t mask) {
    dom_.at(v) &= mask;
    if (dom_[v] == 0) empty_ = true;
  }

  void add_table(std::uint32_t u, std::uint32_t v, const SubTable& t) {
    if (t.size > 64) throw std::invalid_argument("solver: alphabet exceeds 64");
    if (u >= dom_.size() || v >= dom_.size()) throw std::out_of_range("solver: variable index");
    Binary b{u, v, std::vector<std::uint64_t>(t.size), std::vector<std::uint64_t>(t.size)};
    for (std::uint32_t a = 0; a < t.size; ++a)
      for (std::uint32_t c = 0; c < t.size; ++c)
        if (t(a, c)) {
          b.fwd[a] |= std::uint64_t{1} << c;
          b.bwd[c] |= std::uint64_t{1} << a;
        }
    if (u == v) {
      // Unary in disguise: keep the diagonal.
      std::uint64_t diag = 0;
      for (std::uint32_t a = 0; a < t.size; ++a)
        if (t(a, a)) diag |= std::uint64_t{1} << a;
      restrict(u, diag);
      return;
    }
    const auto id = static_cast<std::uint32_t>(binaries_.size());
    binaries_.push_back(std::move(b));
    watch_[u].push_back({false, id});
    watch_[v].push_back({false, id});
  }

  void add_linear(const Field& f, std::vector<std::pair<std::uint32_t, FieldElement>> terms) {
    if (f.order() > 64) throw std::invalid_argument("solver: field exceeds 64 elements");
    std::erase_if(terms, [](const auto& t) { return t.second.value == 0; });
    if (terms.empty()) return;
    const auto id = static_cast<std::uint32_t>(linears_.size());
    for (auto& [v, c] : terms) {
      if (v >= dom_.size()) throw std::out_of_range("solver: variable index");
      watch_[v].push_back({true, id});
    }
    linears_.push_back({f, std::move(terms)});
  }

  std::optional<std::vector<std::uint32_t>> solve(std::uint64_t budget = kDefaultSearchBudget) const {
    if (empty_) return std::nullopt;
    std::vector<std::uint64_t> d = dom_;
    std::vector<std::uint32_t> all(d.size());
    std::iota(all.begin(), all.end(), 0u);
    if (!propagate(d, all)) return std::nullopt;
    std::uint64_t nodes = 0;
    for (const auto& comp : components()) {
      if (!dfs(d, comp, 0, nodes, budget)) return std::nullopt;
    }
    std::vector<std::uint32_t> out(d.size());
    for (std::size_t v = 0; v < d.size(); ++v) out[v] = static_cast<std::uint32_t>(std::countr_zero(d[v]));
    return out;
  }

 private:
  struct Binary {
    std::uint32_t u, v;
    std::vector<std::uint64_t> fwd, bwd;
  };
  struct Linear {
    Field field;
    std::vector<std::pair<std::uint32_t, FieldElement>> terms;
  };
  struct Watch {
    bool linear;
    std::uint32_t id;
  };

  static bool single(std::uint64_t m) { return (m & (m - 1)) == 0; }

  static std::uint64_t support(const std::vector<std::uint64_t>& rows, std::uint64_t mask) {
    std::uint64_t s = 0;
    while (mask) {
      const int a = std::countr_zero(mask);
      mask &= mask - 1;
      if (static_cast<std::size_t>(a) < rows.size()) s |= rows[a];
    }
    return s;
  }

  bool narrow(std::vector<std::uint64_t>& d, std::uint32_t v, std::uint64_t mask,
              std::vector<std::uint32_t>& queue) const {
    const std::uint64_t nd = d[v] & mask;
    if (nd == d[v]) return true;
    d[v] = nd;
    if (nd == 0) return false;
    queue.push_back(v);
    return true;
  }

  bool propagate(std::vector<std::uint64_t>& d, std::vector<std::uint32_t> queue) const {
    while (!queue.empty()) {
      const std::uint32_t x = queue.back();
      queue.pop_back();
      for (const auto& w : watch_[x]) {
        if (!w.linear) {
          const Binary& b = binaries_[w.id];
          if (!narrow(d, b.v, support(b.fwd, d[b.u]), queue)) return false;
          if (!narrow(d, b.u, support(b.bwd, d[b.v]), queue)) return false;
          continue;
        }
        const Linear& l = linears_[w.id];
        int open = -1, unknown = 0;
        FieldElement acc;
        for (std::size_t i = 0; i < l.terms.size(); ++i) {
          const auto& [v, c] = l.terms[i];
          if (single(d[v])) {
            acc += l.field.mul(c, FieldElement(static_cast<std::uint32_t>(std::countr_zero(d[v]))));
          } else {
            ++unknown;
            open = static_cast<int>(i);
          }
        }
        if (unknown == 0) {
          if (acc.value != 0) return false;
        } else if (unknown == 1) {
          const auto& [v, c] = l.terms[open];
          const FieldElement forced = l.field.div(acc, c);
          if (!narrow(d, v, std::uint64_t{1} << forced.value, queue)) return false;
        }
      }
    }
    return true;
  }

  std::vector<std::vector<std::uint32_t>> components() const {
    std::vector<std::uint32_t> parent(dom_.size());
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](std::uint32_t a, std::uint32_t b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    for (const auto& b : binaries_) unite(b.u, b.v);
    for (const auto& l : linears_)
      for (std::size_t i = 1; i < l.terms.size(); ++i) unite(l.terms[0].first, l.terms[i].first);
    std::vector<std::vector<std::uint32_t>> by_root(dom_.size());
    for (std::uint32_t v = 0; v < dom_.size(); ++v) by_root[find(v)].push_back(v);
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& c : by_root)
      if (!c.empty()) out.push_back(std::move(c));
    return out;
  }

  bool dfs(std::vector<std::uint64_t>& d, const std::vector<std::uint32_t>& comp, std::size_t pos,
           std::uint64_t& nodes, std::uint64_t budget) const {
    while (pos < comp.size() && single(d[comp[pos]])) ++pos;
    if (pos == comp.size()) return true;
    const std::uint32_t v = comp[pos];
    std::uint64_t vals = d[v];
    while (vals) {
      if (++nodes > budget) throw std::length_error("solver: search budget exceeded");
      const std::uint64_t bit = vals & (~vals + 1);
      vals &= vals - 1;
      std::vector<std::uint64_t> trial = d;
      trial[v] = bit;
      if (propagate(trial, {v}) && dfs(trial, comp, pos + 1, nodes, budget)) {
        d.swap(trial);
        return true;
      }
    }
    return false;
  }

  std::vector<std::uint64_t> dom_;
  std::vector<std::vector<Watch>> watch_;
  std::vector<Binary> binaries_;
  std::vector<Linear> linears_;
  bool empty_ = false;
};

inline std::uint64_t full_mask(std::uint32_t n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Lexicographically first solution, or nullopt when unsatisfiable.
inline std::optional<Assignment> csp_brute_solve(const CspInstance& g, std::uint64_t budget = kDefaultSearchBudget) {
  g.validate();
  if (g.alphabet > 64) throw std::invalid_argument("solver: alphabet exceeds 64");
  std::vector<std::uint64_t> doms(g.num_vars);
  for (std::uint32_t v = 0; v < g.num_vars; ++v) doms[v] = full_mask(g.domain_size(v));
  SearchCsp s(std::move(doms));
  for (const auto& c : g.constraints) s.add_table(c.u, c.v, g.tables[c.table]);
  return s.solve(budget);
}

inline std::optional<Assignment> csp_brute_solve(const ColoringInstance& g,
                                                 std::uint64_t budget = kDefaultSearchBudget) {
  return csp_brute_solve(coloring_csp(g), budget);
}

// Scalar variable (v, i) is v*t + i.
inline SearchCsp vec_search(const VecCspInstance& g) {
  g.validate();
  const std::uint32_t t = static_cast<std::uint32_t>(g.t);
  SearchCsp s(std::vector<std::uint64_t>(static_cast<std::size_t>(g.num_vars) * t, full_mask(g.field.order())));
  for (const auto& c : g.constraints) {
    if (c.kind == VecConstraint::Kind::Parallel) {
      for (auto i : c.coords) s.add_table(c.u * t + i, c.v * t + i, c.sub);
      continue;
    }
    // sigma(u)_r + sum_c M[r][c] sigma(v)_c = 0
    for (std::uint32_t r = 0; r < t; ++r) {
      std::vector<std::pair<std::uint32_t, FieldElement>> terms{{c.u * t + r, FieldElement(1)}};
      for (std::uint32_t col = 0; col < t; ++col) terms.push_back({c.v * t + col, c.matrix(r, col)});
      s.add_linear(g.field, std::move(terms));
    }
  }
  return s;
}

inline std::optional<VecAssignment> csp_brute_solve(const VecCspInstance& g,
                                                    std::uint64_t budget = kDefaultSearchBudget) {
  auto flat = vec_search(g).solve(budget);
  if (!flat) return std::nullopt;
  VecAssignment out(g.num_vars, VecValue(g.t));
  for (std::uint32_t v = 0; v < g.num_vars; ++v)
    for (int i = 0; i < g.t; ++i) out[v][i] = FieldElement((*flat)[v * g.t + i]);
  return out;
}

inline std::optional<VecAssignment> csp_brute_solve(const SVecCspInstance& g,
                                                    std::uint64_t budget = kDefaultSearchBudget) {
  return csp_brute_solve(g.base, budget);
}

}  // namespace svpcp
