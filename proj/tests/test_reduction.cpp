#include <gtest/gtest.h>

#include "svpcp/graphs.hpp"
#include "svpcp/reduction.hpp"
#include "svpcp/rng.hpp"

using namespace svpcp;

namespace {

std::optional<Assignment> first_coloring(const ColoringInstance& g) {
  Assignment a(g.n, 0);
  while (true) {
    if (is_proper_coloring(g, a)) return a;
    int i = static_cast<int>(g.n) - 1;
    while (i >= 0 && a[i] == 2) a[i--] = 0;
    if (i < 0) return std::nullopt;
    ++a[i];
  }
}

}  // namespace

TEST(Grouping, SingletonGroupsMirrorTheGraph) {
  auto g = octahedron();
  auto gc = group_variables(g, 6);
  EXPECT_EQ(gc.grouping.t, 1u);
  EXPECT_EQ(gc.grouping.k(), 6u);
  EXPECT_EQ(gc.grouping.replicas, 0u);
  EXPECT_EQ(gc.constraints.size(), g.edges.size());
  for (const auto& c : gc.constraints) {
    EXPECT_TRUE(c.equal.empty());
    EXPECT_EQ(c.differ.size(), 1u);
  }
  // Multi-edges collapse into one pair constraint.
  EXPECT_EQ(group_variables(doubled_cycle(3), 3).constraints.size(), 3u);
}

TEST(Grouping, RejectsBadK) {
  auto g = octahedron();
  EXPECT_THROW(group_variables(g, 1), std::invalid_argument);
  EXPECT_THROW(group_variables(g, 7), std::invalid_argument);
  GroupingOptions o;
  o.degree_cap = 2;
  EXPECT_THROW(group_variables(g, 3, o), std::invalid_argument);
}

TEST(Grouping, EveryEdgeCovered) {
  for (const auto& [name, g] : coloring_corpus())
    for (std::uint32_t k = 2; k <= std::min(g.n, 4u); ++k) {
      auto gc = group_variables(g, k);
      std::vector<int> covered(g.edges.size(), 0);
      for (const auto& c : gc.constraints)
        for (auto e : c.edges) ++covered[e];
      for (std::size_t e = 0; e < covered.size(); ++e) EXPECT_EQ(covered[e], 1) << name << " k=" << k << " e=" << e;
      for (const auto& s : gc.grouping.slots) EXPECT_EQ(s.size(), gc.grouping.t);
    }
}

TEST(Grouping, PreservesColorability) {
  for (const auto& [name, g] : coloring_corpus())
    for (std::uint32_t k = 2; k <= g.n; ++k) {
      auto gc = group_variables(g, k);
      auto want = first_coloring(g);
      auto got = grouped_solve(gc);
      EXPECT_EQ(got.has_value(), want.has_value()) << name << " k=" << k;
      if (want) {
        EXPECT_EQ(grouped_val(gc, group_assignment(gc, *want)), Rational(1)) << name;
      }
    }
}

TEST(Grouping, DegreeCapSplits) {
  // k5 + doubled triangle with k=8: group 0 holds vertex 0 and 8 neighbours
  // would exceed a cap of 3.
  auto g = disjoint_union(complete_graph5(), doubled_cycle(3));
  GroupingOptions o;
  o.degree_cap = 3;
  auto gc = group_variables(g, 8, o);
  EXPECT_GT(gc.grouping.splits, 0u);
  EXPECT_LE(gc.max_degree(), 3u);
  EXPECT_FALSE(grouped_solve(gc).has_value());

  auto oct = octahedron();
  auto gs = group_variables(oct, 6, o);
  EXPECT_GT(gs.grouping.splits, 0u);
  EXPECT_LE(gs.max_degree(), 3u);
  auto col = first_coloring(oct);
  EXPECT_EQ(grouped_val(gs, group_assignment(gs, *col)), Rational(1));
  EXPECT_TRUE(grouped_solve(gs).has_value());
}

TEST(Grouping, ViolatedEdgeLowersValue) {
  auto g = octahedron();
  auto gc = group_variables(g, 3);
  Assignment mono(6, 0);
  EXPECT_LT(grouped_val(gc, group_assignment(gc, mono)), Rational(1));
}

TEST(Matching, DecompositionIsProper) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 1}, {2, 2}};
  auto cls = matching_decomposition(pairs);
  std::size_t total = 0;
  for (const auto& m : cls) {
    std::set<std::uint32_t> l, r;
    for (auto [a, b] : m) {
      EXPECT_TRUE(l.insert(a).second);
      EXPECT_TRUE(r.insert(b).second);
    }
    total += m.size();
  }
  EXPECT_EQ(total, pairs.size());
  EXPECT_LE(cls.size(), 3u);
}

TEST(VecReduction, ShapeAndForwardMap) {
  for (const auto& [name, g] : coloring_corpus()) {
    auto r = coloring_to_veccsp(g, std::min(g.n, 3u));
    EXPECT_LE(r.inst.max_parallel_degree(), 1u) << name;
    EXPECT_EQ(r.inst.field.order(), 4u);
    for (const auto& c : r.inst.constraints)
      if (c.kind == VecConstraint::Kind::Linear) {
        // Permutation links: every row and column has exactly one 1.
        for (std::size_t i = 0; i < c.matrix.rows; ++i) {
          int ones = 0;
          for (std::size_t j = 0; j < c.matrix.cols; ++j) ones += c.matrix(i, j).value;
          EXPECT_EQ(ones, 1);
        }
      }
    auto col = first_coloring(g);
    if (!col) continue;
    auto gs = group_assignment(r.grouped, *col);
    auto vs = veccsp_assignment(r, gs);
    EXPECT_EQ(csp_val(r.inst, vs), Rational(1)) << name;
    EXPECT_EQ(group_from_veccsp(r, vs), gs);
  }
}

TEST(VecReduction, PreservesColorability) {
  for (const auto& [name, g] : coloring_corpus())
    for (std::uint32_t k : {2u, 3u, 4u}) {
      if (k > g.n) continue;
      auto r = coloring_to_veccsp(g, k);
      auto sol = csp_brute_solve(r.inst);
      EXPECT_EQ(sol.has_value(), first_coloring(g).has_value()) << name << " k=" << k;
      if (sol) {
        auto back = group_from_veccsp(r, *sol);
        EXPECT_EQ(grouped_val(r.grouped, back), Rational(1)) << name;
      }
    }
}

TEST(Svcsp, ProjectionSplit) {
  // One parallel constraint on coordinate 0 only, plus a linear constraint.
  Field f(2);
  VecCspInstance g(f, 2, 3);
  Matrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = FieldElement(1);
  g.constraints.push_back(VecConstraint::linear(2, 0, swap));
  g.constraints.push_back(VecConstraint::parallel(0, 1, coloring_table(), {0}));
  auto r = veccsp_to_svcsp(g);
  EXPECT_TRUE(svcsp_shape_check(r.inst).empty());
  EXPECT_EQ(r.hat_vars, 3u + 4u);
  EXPECT_EQ(r.hat_linear, 1u + 4u);
  EXPECT_EQ(r.inst.k, r.hat_vars + r.hat_linear);
  auto sol = csp_brute_solve(g);
  ASSERT_TRUE(sol.has_value());
  auto fwd = svcsp_assignment(g, r, *sol);
  EXPECT_EQ(csp_val(r.inst, fwd), Rational(1));
  auto sv = csp_brute_solve(r.inst);
  ASSERT_TRUE(sv.has_value());
  EXPECT_EQ(csp_val(g, veccsp_from_svcsp(g, r, *sv)), Rational(1));
  // M_i are identities, projections, the swap or the link matrices.
  for (const auto& m : r.inst.matrices()) EXPECT_EQ(m.rows, 2u);
}

TEST(Svcsp, EmptyCoordsUnsatisfiableSubIsReplaced) {
  Field f(2);
  VecCspInstance g(f, 1, 2);
  g.constraints.push_back(VecConstraint::parallel(0, 1, SubTable(4), {}));
  EXPECT_TRUE(csp_brute_solve(g).has_value());
  auto r = veccsp_to_svcsp(g);
  EXPECT_TRUE(r.effective_sub[0].satisfiable());
  EXPECT_TRUE(csp_brute_solve(r.inst).has_value());
  auto fwd = svcsp_assignment(g, r, *csp_brute_solve(g));
  EXPECT_EQ(csp_val(r.inst, fwd), Rational(1));
}

TEST(Svcsp, RejectsTwoParallelConstraintsOnOneVariable) {
  Field f(2);
  VecCspInstance g(f, 1, 3);
  g.constraints.push_back(VecConstraint::parallel(0, 1, SubTable::always(4), {0}));
  g.constraints.push_back(VecConstraint::parallel(0, 2, SubTable::always(4), {0}));
  EXPECT_THROW(veccsp_to_svcsp(g), std::invalid_argument);
}

TEST(Svcsp, IdentityOnlyInput) {
  Field f(2);
  VecCspInstance g(f, 2, 2);
  g.constraints.push_back(VecConstraint::linear(1, 0, Matrix::identity(2)));
  auto r = veccsp_to_svcsp(g);
  for (const auto& m : r.inst.matrices()) EXPECT_EQ(m, Matrix::identity(2));
  VecAssignment s{{FieldElement(2), FieldElement(3)}, {FieldElement(2), FieldElement(3)}};
  EXPECT_EQ(csp_val(r.inst, svcsp_assignment(g, r, s)), Rational(1));
}

TEST(Svcsp, RandomInstancesAgree) {
  Field f(2);
  Rng rng(77);
  for (int trial = 0; trial < 80; ++trial) {
    VecCspInstance g(f, 2, 4);
    std::vector<bool> has_par(4, false);
    for (int c = 0; c < 4; ++c) {
      std::uint32_t u = static_cast<std::uint32_t>(rng.below(4)), v = (u + 1 + static_cast<std::uint32_t>(rng.below(3))) % 4;
      if (rng.bit() || has_par[u] || has_par[v]) {
        Matrix m(2, 2);
        for (auto& x : m.a) x = FieldElement(static_cast<std::uint32_t>(rng.below(4)));
        g.constraints.push_back(VecConstraint::linear(u, v, m));
      } else {
        SubTable s(4);
        for (auto& b : s.bits) b = rng.below(4) == 0;
        std::vector<std::uint32_t> q;
        for (std::uint32_t i = 0; i < 2; ++i)
          if (rng.bit()) q.push_back(i);
        g.constraints.push_back(VecConstraint::parallel(u, v, s, q));
        has_par[u] = has_par[v] = true;
      }
    }
    for (bool literal : {false, true}) {
      auto r = veccsp_to_svcsp(g, {literal});
      EXPECT_TRUE(svcsp_shape_check(r.inst).empty());
      auto a = csp_brute_solve(g);
      auto b = csp_brute_solve(r.inst);
      ASSERT_EQ(a.has_value(), b.has_value()) << trial;
      if (a) {
        EXPECT_EQ(csp_val(r.inst, svcsp_assignment(g, r, *a)), Rational(1)) << trial;
        EXPECT_EQ(csp_val(g, veccsp_from_svcsp(g, r, *b)), Rational(1)) << trial;
      }
    }
  }
}

TEST(Pipeline, CorpusSatisfiabilityMatches) {
  int sat = 0;
  for (const auto& [name, g] : coloring_corpus()) {
    auto p = reduce_coloring(g, std::min(g.n, 3u));
    EXPECT_TRUE(svcsp_shape_check(p.sv.inst).empty()) << name;
    auto want = first_coloring(g);
    auto got = csp_brute_solve(p.sv.inst);
    EXPECT_EQ(got.has_value(), want.has_value()) << name;
    if (want) {
      EXPECT_EQ(csp_val(p.sv.inst, pipeline_forward(p, *want)), Rational(1)) << name;
      ++sat;
    }
    EXPECT_LE(p.report.vec_vars, p.report.vec_var_bound) << name;
    EXPECT_LE(p.report.vec_constraints, p.report.vec_constraint_bound) << name;
  }
  EXPECT_GT(sat, 0);
}

TEST(Pipeline, OctahedronSizes) {
  // k=3 is what the prover uses: K=21 fits B=21 at m=2, d=5.
  auto small = reduce_coloring(octahedron(), 3);
  EXPECT_EQ(small.report.t, 2u);
  EXPECT_EQ(small.report.vec_vars, 12u);
  EXPECT_EQ(small.report.vec_constraints, 15u);
  EXPECT_EQ(small.report.sv_k, 21u);
  EXPECT_EQ(small.report.sv_constraints, 45u);

  auto p = reduce_coloring(octahedron(), 6);
  EXPECT_EQ(p.report.t, 1u);
  EXPECT_EQ(p.report.vec_vars, 24u);
  EXPECT_EQ(p.report.vec_parallel, 12u);
  EXPECT_EQ(p.report.sv_k, 42u);
  PipelineOptions lit;
  lit.svcsp.literal = true;
  auto q = reduce_coloring(octahedron(), 6, lit);
  EXPECT_GT(q.report.sv_k, p.report.sv_k);
  EXPECT_TRUE(svcsp_shape_check(q.sv.inst).empty());
  EXPECT_TRUE(csp_brute_solve(q.sv.inst).has_value());
}

TEST(Pipeline, LiteralSplitPreservesUnsat) {
  PipelineOptions lit;
  lit.svcsp.literal = true;
  auto q = reduce_coloring(complete_graph5(), 5, lit);
  EXPECT_FALSE(csp_brute_solve(q.sv.inst).has_value());
}

TEST(Pipeline, EmbedIntoLargerField) {
  auto g = octahedron();
  auto p = reduce_coloring(g, 3);
  Field big(4);
  auto e = svcsp_embed(p.sv.inst, big);
  EXPECT_TRUE(svcsp_shape_check(e).empty());
  auto s = pipeline_forward(p, *first_coloring(g));
  EXPECT_EQ(csp_val(e, embed_assignment(s, p.sv.inst.field(), big)), Rational(1));
  Assignment mono(6, 0);
  auto bad = svcsp_assignment(p.vec.inst, p.sv, veccsp_assignment(p.vec, group_assignment(p.vec.grouped, mono)));
  EXPECT_EQ(csp_val(e, embed_assignment(bad, p.sv.inst.field(), big)), csp_val(p.sv.inst, bad));
}

TEST(PcppToCsp, ToyVerifierCounts) {
  auto d = toy_equality_verifier();
  auto out = pcpp_to_csp(d);
  EXPECT_EQ(out.csp.num_vars - out.first_coin_var, 2u);
  EXPECT_EQ(out.csp.constraints.size(), 4u);
}

TEST(PcppToCsp, CompletenessAndSoundnessByBruteForce) {
  auto d = toy_equality_verifier();
  auto out = pcpp_to_csp(d);
  const auto& g = out.csp;
  for (std::uint32_t y = 0; y < 4; ++y) {
    std::vector<std::uint32_t> word{y & 1u, y >> 1};
    const bool good = pcpp_acceptance(d, word) == Rational(1);
    Rational best(0);
    for (std::uint32_t z0 = 0; z0 < g.domain_size(2); ++z0)
      for (std::uint32_t z1 = 0; z1 < g.domain_size(3); ++z1)
        best = std::max(best, csp_val(g, {word[0], word[1], z0, z1}));
    if (good) {
      EXPECT_EQ(best, Rational(1)) << y;
    } else {
      // Rejection probability 1 with 2 queries.
      EXPECT_EQ(pcpp_acceptance(d, word), Rational(0));
      EXPECT_EQ(best, Rational(1, 2)) << y;
    }
  }
}

TEST(PcppToCsp, CoinSpaceTooLarge) {
  auto d = toy_equality_verifier();
  d.coin_outcomes = kMaxPcppCoins + 1;
  EXPECT_THROW(pcpp_to_csp(d), std::length_error);
}
