// Acceptance suite. Prints one PASS/FAIL line per criterion; `--only N` runs a
// single one. Exit status is nonzero when any selected criterion fails.

#include "svpcp/svpcp.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace svpcp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Message random_message(const RmParams& p, Rng& rng) {
  Message msg(p.message_length(), std::vector<FieldElement>(p.t));
  for (auto& v : msg)
    for (auto& x : v) x = FieldElement(static_cast<std::uint32_t>(rng.below(p.field.order())));
  return msg;
}

// Codeword entries packed e*t bits per point, low point first.
std::vector<std::uint64_t> all_codewords(const RmParams& p) {
  const std::size_t b = p.message_length();
  const std::uint64_t q = p.field.order();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < b * p.t; ++i) count *= q;
  std::vector<std::uint64_t> out;
  for (std::uint64_t w = 0; w < count; ++w) {
    Message msg(b, std::vector<FieldElement>(p.t));
    std::uint64_t r = w;
    for (auto& v : msg)
      for (auto& x : v) {
        x = FieldElement(static_cast<std::uint32_t>(r % q));
        r /= q;
      }
    auto tbl = rm_encode(p, msg);
    std::uint64_t packed = 0;
    const int width = p.field.bits() * p.t;
    for (std::uint64_t i = 0; i < tbl.size(); ++i)
      for (int k = 0; k < p.t; ++k)
        packed |= static_cast<std::uint64_t>(tbl.at(i, k).value) << (i * width + k * p.field.bits());
    out.push_back(packed);
  }
  return out;
}

std::uint64_t min_pairwise_distance(const std::vector<std::uint64_t>& words, int width, std::uint64_t points) {
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  std::uint64_t best = points;
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      std::uint64_t diff = words[a] ^ words[b], dist = 0;
      for (std::uint64_t i = 0; i < points; ++i) dist += (diff >> (i * width) & mask) != 0;
      best = std::min(best, dist);
    }
  return best;
}

Outcome rm_distance() {
  Field f(2);
  std::ostringstream os;
  bool ok = true;
  for (int t : {1, 2}) {
    RmParams p(f, 2, 1, t);
    auto words = all_codewords(p);
    const std::uint64_t pairs = words.size() * (words.size() - 1) / 2;
    Rational frac(static_cast<std::int64_t>(min_pairwise_distance(words, 2 * t, p.num_points())),
                  static_cast<std::int64_t>(p.num_points()));
    ok = ok && frac == Rational(3, 4);
    os << "t=" << t << ": " << pairs << " pairs, min distance " << to_string(frac) << "; ";
  }
  os << "expected 3/4";
  return {ok, os.str()};
}

Outcome ldt_completeness() {
  RmParams p(Field(3), 2, 2, 2);
  Rng rng(derive_seed(2, "acceptance", 0));
  Rational worst(1);
  std::uint64_t outcomes = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto tbl = rm_encode(p, random_message(p, rng));
    auto s = biased_construct(p.field, p.m, Rational(1, 2), rng.next());
    auto g = pldt_prove(tbl, s);
    PldtVerifier v(tbl, g, s, p.d);
    outcomes += v.outcomes();
    worst = std::min(worst, coin_enumerate(v));
  }
  return {worst == Rational(1), "10 codewords, " + std::to_string(outcomes) + " coin outcomes, min acceptance " +
                                    to_string(worst)};
}

Outcome ldt_soundness() {
  RmParams p(Field(3), 2, 2, 2);
  const std::uint64_t n = p.num_points(), trials = 10000;
  auto s = biased_construct(p.field, p.m, Rational(1, 2), 31);
  const std::uint64_t outcomes = 2 * n * s.size();
  std::ostringstream os;
  bool ok = true;
  double prev_rate = -1, prev_half = 0;
  for (double delta : {0.05, 0.1, 0.2, 0.4}) {
    const auto flips = static_cast<std::uint64_t>(std::llround(delta * n));
    std::uint64_t rejects = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      Rng rng(derive_seed(3, "soundness", static_cast<std::uint64_t>(delta * 1000) * trials + i));
      auto data = rm_encode(p, random_message(p, rng)).data();
      std::vector<std::uint64_t> idx(n);
      for (std::uint64_t k = 0; k < n; ++k) idx[k] = k;
      for (std::uint64_t k = 0; k < flips; ++k) {
        std::swap(idx[k], idx[k + rng.below(n - k)]);
        for (int c = 0; c < p.t; ++c)
          data[idx[k] * p.t + c] = FieldElement(static_cast<std::uint32_t>(rng.below(p.field.order())));
      }
      ParallelTable tbl(p, std::move(data));
      auto g = pldt_prove(tbl, s);
      PldtVerifier v(tbl, g, s, p.d);
      rejects += !v.run_value(rng.below(outcomes)).accepted;
    }
    const double rate = static_cast<double>(rejects) / trials;
    auto [lo, hi] = wilson_interval(rejects, trials);
    const double half = (hi - lo) / 2;
    ok = ok && rejects > 0 && rate >= std::ldexp(delta, -40);
    if (prev_rate >= 0) ok = ok && rate + std::max(half, prev_half) >= prev_rate;
    prev_rate = rate;
    prev_half = half;
    char buf[96];
    std::snprintf(buf, sizeof buf, "delta=%.2f rate=%.4f [%.4f,%.4f]; ", delta, rate, lo, hi);
    os << buf;
  }
  os << "positive and non-decreasing";
  return {ok, os.str()};
}

Outcome cldt_exactness() {
  Field f(2);
  RmParams p(f, 1, 1, 1);
  auto s = biased_construct(f, 1, Rational(1), 0);
  auto c = cldt_build(f, 1, 1, s);
  int accepted = 0, agree = 0;
  for (std::uint32_t w = 0; w < 256; ++w) {
    std::vector<FieldElement> vals(4);
    for (int i = 0; i < 4; ++i) vals[i] = FieldElement(w >> (2 * i) & 3u);
    ParallelTable tbl(p, vals);
    const bool in = c.eval(table_slice_bits(tbl, 0));
    accepted += in;
    agree += in == rm_fit_exact(tbl, 1).has_value();
  }
  return {accepted == 16 && agree == 256,
          std::to_string(accepted) + " of 256 tables accepted, " + std::to_string(agree) + " agree with the fit"};
}

Outcome bias_certification() {
  bool ok = true;
  std::ostringstream os;
  for (auto [e, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 4}, {8, 2}}) {
    Field f(e);
    PointSpace ps(f.order(), m);
    std::vector<std::uint64_t> all(ps.size());
    for (std::uint64_t i = 0; i < ps.size(); ++i) all[i] = i;
    ok = ok && bias_exact(BiasedSet(f, m, all)) == Rational(0);
    ok = ok && bias_exact(BiasedSet(f, m, {0})) == Rational(1);
  }
  os << "whole space 0, zero set 1; ";
  int built = 0;
  Rational worst_gap(-1);
  for (auto [e, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}, {4, 3}, {2, 6}, {8, 2}})
    for (auto lam : {Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
      Field f(e);
      auto s = biased_construct(f, m, lam, derive_seed(5, "bias", built));
      const Rational b = bias_exact(s);
      ok = ok && b <= lam && s.lambda_verified && *s.lambda_verified == b;
      worst_gap = std::max(worst_gap, b - lam);
      ++built;
    }
  os << built << " constructed sets, max(bias - claim) " << to_string(worst_gap);
  return {ok, os.str()};
}

Outcome ecc_contract() {
  bool ok = true;
  std::ostringstream os;
  for (int n : {4, 8, 12}) {
    auto c = ecc_make(n, derive_seed(6, "ecc", n));
    const int dist = ecc_min_distance(c);
    ok = ok && c.length() == 7 * n && dist == c.min_distance && Rational(dist, c.length()) >= Rational(1, 100);
    os << "n=" << n << " len=" << c.length() << " dist=" << dist << "; ";
  }
  os << "need relative distance >= 1/100 and rate 7";
  return {ok, os.str()};
}

// Independent 3^n enumeration.
bool three_colorable(const ColoringInstance& g) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < g.n; ++i) total *= 3;
  for (std::uint64_t w = 0; w < total; ++w) {
    std::vector<std::uint32_t> col(g.n);
    std::uint64_t r = w;
    for (auto& c : col) {
      c = r % 3;
      r /= 3;
    }
    bool good = true;
    for (auto [u, v] : g.edges) good = good && col[u] != col[v];
    if (good) return true;
  }
  return false;
}

Outcome reduction_soundness() {
  int agree = 0, total = 0, sat = 0;
  bool has_k5 = false, has_oct = false;
  for (const auto& [name, g] : coloring_corpus()) {
    has_k5 |= name == "k5";
    has_oct |= name == "octahedron";
    auto p = reduce_coloring(g, std::min(g.n, 3u));
    const bool want = three_colorable(g);
    const bool src = csp_brute_solve(g).has_value();
    const bool out = csp_brute_solve(p.sv.inst).has_value();
    agree += want == src && src == out;
    sat += want;
    ++total;
  }
  return {agree == total && total >= 10 && has_k5 && has_oct,
          std::to_string(agree) + "/" + std::to_string(total) + " graphs agree (" + std::to_string(sat) +
              " colourable)"};
}

struct OctahedronRun {
  std::shared_ptr<const SvsatSetup> setup;
  SvsatInputs in;
  SvsatBundle bundle;
  ExhaustiveBackend backend;
};

// Octahedron at k=3, lifted into GF(16) with m=2.
const OctahedronRun& octahedron_run() {
  static const OctahedronRun run = [] {
    auto g = octahedron();
    auto p = reduce_coloring(g, 3);
    auto col = csp_brute_solve(g);
    Field big(4);
    auto inst = svcsp_embed(p.sv.inst, big);
    auto sol = embed_assignment(pipeline_forward(p, *col), p.sv.inst.field(), big);
    const int m = 2, d = svsat_degree_for(inst.k, big, m);
    RmParams params(big, m, d, inst.t());
    auto s = biased_construct(big, m, Rational(1, 2), derive_seed(8, "biased", 0));
    auto setup = svsat_setup(inst, params, s, ecc_make(big.bits(), derive_seed(8, "ecc", 0)));
    OctahedronRun r{setup, SvsatInputs{ParallelTable(params), ParallelTable(params)},
                    SvsatBundle{ParallelTable(params.with_degree(2 * d)), {}, {}}, {}};
    auto [in, b] = svsat_prove(*setup, sol, r.backend);
    r.in = std::move(in);
    r.bundle = std::move(b);
    return r;
  }();
  return run;
}

Outcome svsat_completeness() {
  const auto& r = octahedron_run();
  SvsatVerifier v(r.setup, r.in, r.bundle, r.backend);
  auto rep = enumerate_report(v);
  std::ostringstream os;
  os << "k=" << r.setup->g.k << " t=" << r.setup->g.t() << " GF(2^" << r.setup->params.field.bits()
     << ") m=" << r.setup->params.m << " d=" << r.setup->params.d << ", " << rep.paths
     << " coin paths, acceptance " << to_string(rep.acceptance);
  return {rep.acceptance == Rational(1), os.str()};
}

Outcome svsat_t3_calibration() {
  const auto& r = octahedron_run();
  auto tampered = r.bundle;
  tampered.zhat.at(0)[0] += FieldElement(1);
  SvsatVerifier v(r.setup, r.in, tampered, r.backend);
  auto rep = enumerate_report(v);
  const auto n = static_cast<std::int64_t>(r.setup->params.num_points());
  const Rational measured = Rational(1) - rep.acceptance, expected(1, 3 * n);
  std::ostringstream os;
  os << "rejection " << to_string(measured) << ", expected " << to_string(expected) << " (T3 "
     << to_string(rep.branch_rejection["T3"]) << ", T2 ldt " << to_string(rep.branch_rejection["T2:pi2/ldt"])
     << ", T2 ckt " << to_string(rep.branch_rejection["T2:pi2/ckt"]) << ")";
  return {measured == expected, os.str()};
}

Outcome pcpp_fact() {
  auto d = toy_equality_verifier();
  auto out = pcpp_to_csp(d);
  const auto& g = out.csp;
  std::int64_t q = 0;
  for (const auto& i : out.queries) q = std::max<std::int64_t>(q, static_cast<std::int64_t>(i.size()));
  bool ok = true;
  std::ostringstream os;
  for (std::uint32_t y = 0; y < 4; ++y) {
    std::vector<std::uint32_t> word{y & 1u, y >> 1};
    const Rational acc = pcpp_acceptance(d, word);
    Rational best(0);
    for (std::uint32_t z0 = 0; z0 < g.domain_size(2); ++z0)
      for (std::uint32_t z1 = 0; z1 < g.domain_size(3); ++z1)
        best = std::max(best, csp_val(g, {word[0], word[1], z0, z1}));
    if (acc == Rational(1)) {
      ok = ok && best == Rational(1);
    } else {
      const Rational eps = Rational(1) - acc;
      ok = ok && best <= Rational(1) - eps / q;
    }
    os << "y=" << word[0] << word[1] << " val " << to_string(best) << "; ";
  }
  os << "q=" << q;
  return {ok, os.str()};
}

Outcome hatz_degree() {
  RmParams p(Field(4), 2, 3, 2);
  Rng rng(derive_seed(11, "hatz", 0));
  const std::size_t b = p.message_length();
  int good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto mx = random_message(p, rng);
    std::vector<Matrix> mats(b, Matrix(p.t, p.t));
    for (auto& m : mats)
      for (auto& x : m.a) x = FieldElement(static_cast<std::uint32_t>(rng.below(p.field.order())));
    Message my(b);
    for (std::size_t j = 0; j < b; ++j) my[j] = mat_vec(p.field, mats[j], mx[j]);
    auto z = z_table_build(rm_encode(p, mx), rm_encode(p, my), matrix_encode(p, mats));
    good += rm_fit_exact(z, 2 * p.d).has_value();
  }
  return {good == 100, std::to_string(good) + "/100 z tables fit degree " + std::to_string(2 * p.d)};
}

// Random table with degree <= d in each variable separately.
ParallelTable individual_degree_table(const RmParams& p, Rng& rng) {
  auto ps = p.points();
  const auto& f = p.field;
  std::uint64_t monos = 1;
  for (int i = 0; i < p.m; ++i) monos *= p.d + 1;
  std::vector<FieldElement> coeff(monos * p.t);
  for (auto& c : coeff) c = FieldElement(static_cast<std::uint32_t>(rng.below(f.order())));
  std::vector<FieldElement> data(ps.size() * p.t);
  for (std::uint64_t idx = 0; idx < ps.size(); ++idx) {
    auto x = ps.coords(idx);
    for (std::uint64_t a = 0; a < monos; ++a) {
      FieldElement mono(1);
      std::uint64_t r = a;
      for (int i = 0; i < p.m; ++i) {
        for (std::uint64_t k = 0; k < r % (p.d + 1); ++k) mono = f.mul(mono, x[i]);
        r /= p.d + 1;
      }
      for (int c = 0; c < p.t; ++c) data[idx * p.t + c] += f.mul(mono, coeff[a * p.t + c]);
    }
  }
  return ParallelTable(p, std::move(data));
}

Outcome exact_characterization() {
  RmParams p(Field(3), 2, 2, 2);
  Rng rng(derive_seed(12, "exact", 0));
  auto ps = p.points();
  std::vector<std::uint64_t> dirs{ps.index(std::vector<FieldElement>{FieldElement(1), FieldElement(0)}),
                                  ps.index(std::vector<FieldElement>{FieldElement(0), FieldElement(1)})};
  int pass = 0, fit = 0, flipped_fail = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto tbl = individual_degree_table(p, rng);
    pass += exact_char_check(tbl, dirs, p.d);
    fit += rm_fit_exact(tbl, p.m * p.d).has_value();
    auto data = tbl.data();
    data[rng.below(data.size())] += FieldElement(1 + static_cast<std::uint32_t>(rng.below(p.field.order() - 1)));
    flipped_fail += !exact_char_check(ParallelTable(p, std::move(data)), dirs, p.d);
  }
  return {pass == 100 && fit == 100 && flipped_fail == 100,
          std::to_string(pass) + "/100 pass, " + std::to_string(fit) + "/100 fit degree m*d, " +
              std::to_string(flipped_fail) + "/100 flipped tables fail"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "rm distance", rm_distance},
      {2, "ldt completeness", ldt_completeness},
      {3, "ldt soundness", ldt_soundness},
      {4, "cldt exactness", cldt_exactness},
      {5, "bias certification", bias_certification},
      {6, "ecc contract", ecc_contract},
      {7, "reduction soundness", reduction_soundness},
      {8, "svsat completeness", svsat_completeness},
      {9, "svsat t3 calibration", svsat_t3_calibration},
      {10, "pcpp to csp", pcpp_fact},
      {11, "hatz degree", hatz_degree},
      {12, "exact characterisation", exact_characterization},
  };
  int failed = 0;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " (" << t
              << ")" << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
