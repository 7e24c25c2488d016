#pragma once

#include "svpcp/field.hpp"
#include "svpcp/linalg.hpp"
#include "svpcp/rational.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace svpcp {

// a x a truth table, row-major: bits[x*a + y] = P(x, y).
struct SubTable {
  std::uint32_t size = 0;
  std::vector<std::uint8_t> bits;

  SubTable() = default;
  explicit SubTable(std::uint32_t a) : size(a), bits(static_cast<std::size_t>(a) * a, 0) {}

  bool operator()(std::uint32_t x, std::uint32_t y) const { return bits[static_cast<std::size_t>(x) * size + y] != 0; }
  void set(std::uint32_t x, std::uint32_t y, bool v) { bits[static_cast<std::size_t>(x) * size + y] = v; }

  bool satisfiable() const {
    return std::any_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; });
  }

  // Lexicographically least satisfying pair.
  std::pair<std::uint32_t, std::uint32_t> least_pair() const {
    for (std::uint32_t x = 0; x < size; ++x)
      for (std::uint32_t y = 0; y < size; ++y)
        if ((*this)(x, y)) return {x, y};
    throw std::domain_error("csp: sub-constraint is unsatisfiable");
  }

  static SubTable equality(std::uint32_t a) {
    SubTable t(a);
    for (std::uint32_t x = 0; x < a; ++x) t.set(x, x, true);
    return t;
  }
  static SubTable always(std::uint32_t a) {
    SubTable t(a);
    std::fill(t.bits.begin(), t.bits.end(), 1);
    return t;
  }

  friend bool operator==(const SubTable&, const SubTable&) = default;
};

// ---- generic binary CSP ----

struct CspConstraint {
  std::uint32_t u = 0, v = 0;
  std::uint32_t table = 0;
  friend bool operator==(const CspConstraint&, const CspConstraint&) = default;
};

// Variables take values in [0, domain_size(v)); constraints share tables over
// the grand alphabet.
struct CspInstance {
  std::uint32_t alphabet = 2;
  std::uint32_t num_vars = 0;
  std::vector<std::uint32_t> domain;  // empty: every variable uses the whole alphabet
  std::vector<SubTable> tables;
  std::vector<CspConstraint> constraints;

  std::uint32_t domain_size(std::uint32_t v) const { return domain.empty() ? alphabet : domain[v]; }

  void validate() const {
    if (alphabet == 0) throw std::invalid_argument("csp: empty alphabet");
    if (!domain.empty() && domain.size() != num_vars) throw std::invalid_argument("csp: domain list length");
    for (auto d : domain)
      if (d == 0 || d > alphabet) throw std::invalid_argument("csp: bad domain size");
    for (const auto& t : tables)
      if (t.size != alphabet || t.bits.size() != static_cast<std::size_t>(alphabet) * alphabet)
        throw std::invalid_argument("csp: table size differs from alphabet");
    for (const auto& c : constraints) {
      if (c.u >= num_vars || c.v >= num_vars) throw std::invalid_argument("csp: constraint variable out of range");
      if (c.u == c.v) throw std::invalid_argument("csp: constraint joins a variable to itself");
      if (c.table >= tables.size()) throw std::invalid_argument("csp: constraint table out of range");
    }
  }

  friend bool operator==(const CspInstance&, const CspInstance&) = default;
};

using Assignment = std::vector<std::uint32_t>;

inline Rational csp_val(const CspInstance& g, const Assignment& s) {
  if (s.size() != g.num_vars) throw std::invalid_argument("csp: assignment length");
  for (std::uint32_t v = 0; v < g.num_vars; ++v)
    if (s[v] >= g.domain_size(v)) throw std::out_of_range("csp: value outside domain");
  if (g.constraints.empty()) return Rational(1);
  std::int64_t ok = 0;
  for (const auto& c : g.constraints) ok += g.tables[c.table](s[c.u], s[c.v]);
  return Rational(ok, static_cast<std::int64_t>(g.constraints.size()));
}

// ---- 3-colouring of 4-regular multigraphs ----

// Colours are 0, 1 and omega inside GF(4) (values 0, 1, 2).
inline constexpr std::array<std::uint32_t, 3> kColors{0, 1, 2};

inline bool is_color(std::uint32_t a) { return a <= 2; }

inline SubTable coloring_table() {
  SubTable t(4);
  for (std::uint32_t a : kColors)
    for (std::uint32_t b : kColors) t.set(a, b, a != b);
  return t;
}

struct ColoringInstance {
  std::uint32_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  ColoringInstance() = default;
  ColoringInstance(std::uint32_t n_, std::vector<std::pair<std::uint32_t, std::uint32_t>> e)
      : n(n_), edges(std::move(e)) {
    validate();
  }

  void validate() const {
    std::vector<int> deg(n, 0);
    for (auto [a, b] : edges) {
      if (a >= n || b >= n) throw std::invalid_argument("coloring: edge endpoint out of range");
      if (a == b) throw std::invalid_argument("coloring: self-loop");
      ++deg[a];
      ++deg[b];
    }
    for (std::uint32_t v = 0; v < n; ++v)
      if (deg[v] != 4)
        throw std::invalid_argument("coloring: vertex " + std::to_string(v) + " has degree " +
                                    std::to_string(deg[v]) + ", expected 4");
  }

  friend bool operator==(const ColoringInstance&, const ColoringInstance&) = default;
};

inline CspInstance coloring_csp(const ColoringInstance& g) {
  CspInstance c;
  c.alphabet = 4;
  c.num_vars = g.n;
  c.tables = {coloring_table()};
  for (auto [a, b] : g.edges) c.constraints.push_back({a, b, 0});
  return c;
}

inline bool is_proper_coloring(const ColoringInstance& g, const Assignment& s) {
  return csp_val(coloring_csp(g), s) == Rational(1);
}

// ---- vector CSPs over F^t ----

using VecValue = std::vector<FieldElement>;
using VecAssignment = std::vector<VecValue>;

// LINEAR: sigma(u) = M sigma(v).
// PARALLEL: sub(sigma(u)_i, sigma(v)_i) for every i in coords.
struct VecConstraint {
  enum class Kind { Linear, Parallel };
  Kind kind = Kind::Linear;
  std::uint32_t u = 0, v = 0;
  Matrix matrix;
  SubTable sub;
  std::vector<std::uint32_t> coords;

  static VecConstraint linear(std::uint32_t u, std::uint32_t v, Matrix m) {
    VecConstraint c;
    c.kind = Kind::Linear;
    c.u = u;
    c.v = v;
    c.matrix = std::move(m);
    return c;
  }
  static VecConstraint parallel(std::uint32_t u, std::uint32_t v, SubTable s, std::vector<std::uint32_t> q) {
    VecConstraint c;
    c.kind = Kind::Parallel;
    c.u = u;
    c.v = v;
    c.sub = std::move(s);
    c.coords = std::move(q);
    return c;
  }

  friend bool operator==(const VecConstraint&, const VecConstraint&) = default;
};

inline std::vector<std::uint32_t> all_coords(int t) {
  std::vector<std::uint32_t> q(t);
  for (int i = 0; i < t; ++i) q[i] = static_cast<std::uint32_t>(i);
  return q;
}

struct VecCspInstance {
  Field field;
  int t = 1;
  std::uint32_t num_vars = 0;
  std::vector<VecConstraint> constraints;

  VecCspInstance(Field f, int t_, std::uint32_t n) : field(std::move(f)), t(t_), num_vars(n) {}

  void validate() const {
    if (t < 1) throw std::invalid_argument("veccsp: t must be positive");
    for (const auto& c : constraints) {
      if (c.u >= num_vars || c.v >= num_vars) throw std::invalid_argument("veccsp: variable out of range");
      if (c.u == c.v) throw std::invalid_argument("veccsp: constraint joins a variable to itself");
      if (c.kind == VecConstraint::Kind::Linear) {
        if (c.matrix.rows != static_cast<std::size_t>(t) || c.matrix.cols != static_cast<std::size_t>(t))
          throw std::invalid_argument("veccsp: matrix must be t x t");
        for (auto x : c.matrix.a)
          if (!field.contains(x)) throw std::invalid_argument("veccsp: matrix entry outside field");
      } else {
        if (c.sub.size != field.order()) throw std::invalid_argument("veccsp: sub-constraint must be |F| x |F|");
        for (std::size_t i = 0; i < c.coords.size(); ++i)
          if (c.coords[i] >= static_cast<std::uint32_t>(t) || (i && c.coords[i] <= c.coords[i - 1]))
            throw std::invalid_argument("veccsp: coordinate set must be sorted and inside [t]");
      }
    }
  }

  // Largest number of parallel constraints touching one variable.
  std::uint32_t max_parallel_degree() const {
    std::vector<std::uint32_t> deg(num_vars, 0);
    std::uint32_t best = 0;
    for (const auto& c : constraints)
      if (c.kind == VecConstraint::Kind::Parallel) {
        best = std::max({best, ++deg[c.u], ++deg[c.v]});
      }
    return best;
  }

  std::size_t count(VecConstraint::Kind k) const {
    return static_cast<std::size_t>(std::count_if(constraints.begin(), constraints.end(),
                                                  [k](const VecConstraint& c) { return c.kind == k; }));
  }

  friend bool operator==(const VecCspInstance& a, const VecCspInstance& b) {
    return a.field == b.field && a.t == b.t && a.num_vars == b.num_vars && a.constraints == b.constraints;
  }
};

inline bool vec_satisfied(const Field& f, const VecConstraint& c, const VecValue& su, const VecValue& sv) {
  if (c.kind == VecConstraint::Kind::Linear) return mat_vec(f, c.matrix, sv) == su;
  for (auto i : c.coords)
    if (!c.sub(su[i].value, sv[i].value)) return false;
  return true;
}

inline void check_vec_assignment(const VecCspInstance& g, const VecAssignment& s) {
  if (s.size() != g.num_vars) throw std::invalid_argument("veccsp: assignment length");
  for (const auto& v : s) {
    if (v.size() != static_cast<std::size_t>(g.t)) throw std::invalid_argument("veccsp: value width");
    for (auto x : v)
      if (!g.field.contains(x)) throw std::out_of_range("veccsp: value outside field");
  }
}

inline Rational csp_val(const VecCspInstance& g, const VecAssignment& s) {
  check_vec_assignment(g, s);
  if (g.constraints.empty()) return Rational(1);
  std::int64_t ok = 0;
  for (const auto& c : g.constraints) ok += vec_satisfied(g.field, c, s[c.u], s[c.v]);
  return Rational(ok, static_cast<std::int64_t>(g.constraints.size()));
}

// Variables x_1..x_k are 0..k-1 and y_1..y_k are k..2k-1. Every parallel
// constraint covers all coordinates; the linear constraints are exactly
// y_i = M_i x_i.
struct SVecCspInstance {
  VecCspInstance base;
  std::uint32_t k = 0;

  SVecCspInstance(Field f, int t, std::uint32_t k_) : base(std::move(f), t, 2 * k_), k(k_) {}
  SVecCspInstance(VecCspInstance b, std::uint32_t k_) : base(std::move(b)), k(k_) {}

  const Field& field() const { return base.field; }
  int t() const { return base.t; }
  std::uint32_t x(std::uint32_t i) const { return i; }
  std::uint32_t y(std::uint32_t i) const { return k + i; }

  // M_i, read from the linear constraint y_i = M_i x_i.
  const Matrix& matrix(std::uint32_t i) const {
    for (const auto& c : base.constraints)
      if (c.kind == VecConstraint::Kind::Linear && c.u == y(i) && c.v == x(i)) return c.matrix;
    throw std::invalid_argument("svcsp: no linear constraint for index " + std::to_string(i));
  }

  std::vector<Matrix> matrices() const {
    std::vector<Matrix> m;
    for (std::uint32_t i = 0; i < k; ++i) m.push_back(matrix(i));
    return m;
  }

  friend bool operator==(const SVecCspInstance& a, const SVecCspInstance& b) {
    return a.k == b.k && a.base == b.base;
  }
};

inline std::vector<std::string> svcsp_shape_check(const SVecCspInstance& g) {
  std::vector<std::string> out;
  const auto& b = g.base;
  if (b.num_vars != 2 * g.k)
    out.push_back("S1: " + std::to_string(b.num_vars) + " variables, expected 2k=" + std::to_string(2 * g.k));
  if (b.field.bits() < 1) out.push_back("S2: field is not of characteristic 2");
  std::vector<int> lin(g.k, 0);
  for (std::size_t j = 0; j < b.constraints.size(); ++j) {
    const auto& c = b.constraints[j];
    if (c.kind == VecConstraint::Kind::Parallel) {
      if (c.coords != all_coords(b.t))
        out.push_back("S3: parallel constraint " + std::to_string(j) + " is restricted to a proper coordinate subset");
      continue;
    }
    if (c.v < g.k && c.u >= g.k && c.u < 2 * g.k && c.u - g.k == c.v) {
      if (++lin[c.v] > 1) out.push_back("S4: index " + std::to_string(c.v) + " has more than one linear constraint");
    } else {
      out.push_back("S4: linear constraint " + std::to_string(j) + " joins " + std::to_string(c.u) + " and " +
                    std::to_string(c.v) + ", not y_i = M_i x_i");
    }
  }
  for (std::uint32_t i = 0; i < g.k; ++i)
    if (lin[i] == 0) out.push_back("S4: index " + std::to_string(i) + " has no linear constraint");
  return out;
}

inline Rational csp_val(const SVecCspInstance& g, const VecAssignment& s) { return csp_val(g.base, s); }

}  // namespace svpcp
