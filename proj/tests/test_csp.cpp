#include <gtest/gtest.h>

#include "svpcp/graphs.hpp"
#include "svpcp/rng.hpp"
#include "svpcp/solver.hpp"

using namespace svpcp;

namespace {

// Full product enumeration in lexicographic order.
std::optional<Assignment> enumerate_first(const CspInstance& g) {
  Assignment a(g.num_vars, 0);
  while (true) {
    if (csp_val(g, a) == Rational(1)) return a;
    int i = static_cast<int>(g.num_vars) - 1;
    while (i >= 0 && a[i] + 1 == g.domain_size(i)) a[i--] = 0;
    if (i < 0) return std::nullopt;
    ++a[i];
  }
}

bool three_colorable(const ColoringInstance& g) {
  Assignment a(g.n, 0);
  while (true) {
    bool ok = true;
    for (auto [u, v] : g.edges) ok = ok && a[u] != a[v];
    if (ok) return true;
    int i = static_cast<int>(g.n) - 1;
    while (i >= 0 && a[i] == 2) a[i--] = 0;
    if (i < 0) return false;
    ++a[i];
  }
}

CspInstance random_csp(Rng& rng, std::uint32_t a, std::uint32_t n, int m) {
  CspInstance g;
  g.alphabet = a;
  g.num_vars = n;
  for (int i = 0; i < 3; ++i) {
    SubTable t(a);
    for (auto& b : t.bits) b = rng.below(10) < 6;
    g.tables.push_back(t);
  }
  for (int i = 0; i < m; ++i) {
    std::uint32_t u = static_cast<std::uint32_t>(rng.below(n)), v;
    do v = static_cast<std::uint32_t>(rng.below(n));
    while (v == u);
    g.constraints.push_back({u, v, static_cast<std::uint32_t>(rng.below(3))});
  }
  return g;
}

}  // namespace

TEST(CspVal, Examples) {
  CspInstance g;
  g.alphabet = 2;
  g.num_vars = 3;
  EXPECT_EQ(csp_val(g, {0, 0, 0}), Rational(1));
  SubTable neq(2);
  neq.set(0, 1, true);
  neq.set(1, 0, true);
  g.tables = {neq};
  g.constraints = {{0, 1, 0}};
  EXPECT_EQ(csp_val(g, {0, 1, 0}), Rational(1));
  g.constraints = {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}};
  EXPECT_EQ(csp_val(g, {0, 1, 0}), Rational(2, 3));
  EXPECT_THROW(csp_val(g, {0, 1}), std::invalid_argument);
  EXPECT_THROW(csp_val(g, {0, 1, 2}), std::out_of_range);
}

TEST(CspVal, ValidationErrors) {
  CspInstance g;
  g.alphabet = 2;
  g.num_vars = 2;
  g.tables = {SubTable::always(2)};
  g.constraints = {{0, 2, 0}};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.constraints = {{0, 1, 1}};
  EXPECT_THROW(g.validate(), std::invalid_argument);
}

TEST(Coloring, RegularityAndChecks) {
  EXPECT_THROW(ColoringInstance(3, {{0, 1}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(ColoringInstance(2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}}), std::invalid_argument);
  auto oct = octahedron();
  auto sol = csp_brute_solve(oct);
  ASSERT_TRUE(sol.has_value());
  EXPECT_TRUE(is_proper_coloring(oct, *sol));
  // Lexicographically first proper colouring of C6(1,2).
  EXPECT_EQ(*sol, (Assignment{0, 1, 2, 0, 1, 2}));
  Assignment bad = *sol;
  bad[0] = 3;  // omega + 1 is not a colour
  EXPECT_FALSE(is_proper_coloring(oct, bad));
  Assignment mono = *sol;
  mono[1] = mono[0];
  EXPECT_FALSE(is_proper_coloring(oct, mono));
  EXPECT_FALSE(csp_brute_solve(complete_graph5()).has_value());
}

TEST(Coloring, CorpusMatchesEnumeration) {
  int sat = 0;
  for (const auto& [name, g] : coloring_corpus()) {
    EXPECT_LE(g.n, 8u);
    auto sol = csp_brute_solve(g);
    EXPECT_EQ(sol.has_value(), three_colorable(g)) << name;
    if (sol) {
      EXPECT_TRUE(is_proper_coloring(g, *sol)) << name;
    }
    sat += sol.has_value();
  }
  EXPECT_GT(sat, 0);
  EXPECT_LT(sat, static_cast<int>(coloring_corpus().size()));
}

TEST(Solver, LexFirstAgainstEnumeration) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_csp(rng, 2 + static_cast<std::uint32_t>(rng.below(3)), 5, 1 + static_cast<int>(rng.below(8)));
    if (trial % 4 == 0) {
      g.domain.assign(g.num_vars, g.alphabet);
      g.domain[rng.below(5)] = 1;
    }
    EXPECT_EQ(csp_brute_solve(g), enumerate_first(g)) << trial;
  }
}

TEST(Solver, NoConstraintsGivesDefault) {
  CspInstance g;
  g.alphabet = 5;
  g.num_vars = 4;
  EXPECT_EQ(csp_brute_solve(g), (Assignment{0, 0, 0, 0}));
}

TEST(Solver, BudgetExceeded) {
  // Pigeonhole: 6 mutually different variables over 5 values.
  CspInstance g;
  g.alphabet = 5;
  g.num_vars = 6;
  SubTable neq = SubTable::always(5);
  for (std::uint32_t a = 0; a < 5; ++a) neq.set(a, a, false);
  g.tables = {neq};
  for (std::uint32_t a = 0; a < 6; ++a)
    for (std::uint32_t b = a + 1; b < 6; ++b) g.constraints.push_back({a, b, 0});
  EXPECT_THROW(csp_brute_solve(g, 5), std::length_error);
  EXPECT_FALSE(csp_brute_solve(g).has_value());
}

TEST(VecCsp, SolverMatchesEnumeration) {
  Field f(2);
  Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    VecCspInstance g(f, 2, 3);
    for (int c = 0; c < 3; ++c) {
      std::uint32_t u = static_cast<std::uint32_t>(rng.below(3)), v = (u + 1 + static_cast<std::uint32_t>(rng.below(2))) % 3;
      if (rng.bit()) {
        Matrix m(2, 2);
        for (auto& x : m.a) x = FieldElement(static_cast<std::uint32_t>(rng.below(4)));
        g.constraints.push_back(VecConstraint::linear(u, v, m));
      } else {
        SubTable s(4);
        for (auto& b : s.bits) b = rng.below(3) != 0;
        std::vector<std::uint32_t> q;
        for (std::uint32_t i = 0; i < 2; ++i)
          if (rng.bit()) q.push_back(i);
        g.constraints.push_back(VecConstraint::parallel(u, v, s, q));
      }
    }
    std::optional<VecAssignment> want;
    for (std::uint32_t code = 0; code < 4096 && !want; ++code) {
      VecAssignment a(3, VecValue(2));
      for (int i = 0; i < 6; ++i) a[i / 2][i % 2] = FieldElement(code >> (2 * (5 - i)) & 3u);
      if (csp_val(g, a) == Rational(1)) want = a;
    }
    EXPECT_EQ(csp_brute_solve(g), want) << trial;
  }
}

TEST(VecCsp, LinearEvaluation) {
  Field f(3);
  Matrix m(2, 2);
  m(0, 0) = FieldElement(3);
  m(0, 1) = FieldElement(1);
  m(1, 1) = FieldElement(7);
  auto c = VecConstraint::linear(0, 1, m);
  VecValue v{FieldElement(2), FieldElement(5)};
  VecValue u = mat_vec(f, m, v);
  EXPECT_EQ(u[0], f.mul(FieldElement(3), FieldElement(2)) + FieldElement(5));
  EXPECT_TRUE(vec_satisfied(f, c, u, v));
  EXPECT_EQ(vec_satisfied(f, c, u, v), vec_satisfied(f, VecConstraint::linear(0, 1, m), u, v));
  u[1] += FieldElement(1);
  EXPECT_FALSE(vec_satisfied(f, c, u, v));
}

TEST(SVecCsp, ShapeCheck) {
  Field f(2);
  SVecCspInstance g(f, 2, 2);
  for (std::uint32_t i = 0; i < 2; ++i) g.base.constraints.push_back(VecConstraint::linear(2 + i, i, Matrix::identity(2)));
  g.base.constraints.push_back(VecConstraint::parallel(0, 3, SubTable::equality(4), {0, 1}));
  EXPECT_TRUE(svcsp_shape_check(g).empty());
  EXPECT_EQ(g.matrix(1), Matrix::identity(2));

  auto s4 = g;
  s4.base.constraints[0] = VecConstraint::linear(3, 0, Matrix::identity(2));  // y_2 = M x_1
  auto v = svcsp_shape_check(s4);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].substr(0, 3), "S4:");

  auto s3 = g;
  s3.base.constraints[2].coords = {1};
  v = svcsp_shape_check(s3);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].substr(0, 3), "S3:");

  auto s1 = g;
  s1.base.num_vars = 5;
  EXPECT_EQ(svcsp_shape_check(s1)[0].substr(0, 3), "S1:");
}
