// svpcp: command-line driver for the reduction, prover and verifiers.
//
// Exit status: 0 accepted, 1 usage or configuration error, 2 rejection
// witnessed, 3 malformed input.

#include "svpcp/io.hpp"
#include "svpcp/svpcp.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>

using namespace svpcp;
namespace fs = std::filesystem;

namespace {

constexpr int kExitAccept = 0, kExitUsage = 1, kExitReject = 2, kExitMalformed = 3;

struct StageError : std::runtime_error {
  std::string stage;
  int code;
  StageError(std::string s, const std::string& msg, int c) : std::runtime_error(msg), stage(std::move(s)), code(c) {}
};

template <class F>
auto stage(const std::string& name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const FormatError& e) {
    throw StageError(name, e.what(), kExitMalformed);
  } catch (const std::exception& e) {
    throw StageError(name, e.what(), kExitUsage);
  }
}

struct Globals {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string mode;
  std::uint64_t trials = 2000;
  bool timing = false;
};

std::string mode_or(const Globals& g, const std::string& fallback) { return g.mode.empty() ? fallback : g.mode; }

Field target_field(int e) {
  return stage("field", [&] {
    Field f(e);
    if (e % 2) throw std::invalid_argument("GF(2^" + std::to_string(e) + ") has no GF(4) subfield; e must be even");
    return f;
  });
}

Json rational_json(const Rational& r) { return {{"exact", to_string(r)}, {"value", to_double(r)}}; }

Json reduction_json(const ReductionReport& r) {
  return {{"n", r.n},
          {"edges", r.edges},
          {"k", r.k},
          {"groups", r.groups},
          {"t", r.t},
          {"group_degree", r.group_degree},
          {"replicas", r.replicas},
          {"splits", r.splits},
          {"vec_vars", r.vec_vars},
          {"vec_constraints", r.vec_constraints},
          {"vec_parallel", r.vec_parallel},
          {"vec_linear", r.vec_linear},
          {"max_matchings", r.max_matchings},
          {"sv_k", r.sv_k},
          {"sv_constraints", r.sv_constraints},
          {"hat_vars", r.hat_vars},
          {"hat_constraints", r.hat_constraints},
          {"vec_var_factor", r.vec_var_factor},
          {"vec_constraint_factor", r.vec_constraint_factor},
          {"vec_var_bound", r.vec_var_bound},
          {"vec_constraint_bound", r.vec_constraint_bound}};
}

// Runs the verifier in the requested mode and fills the report; returns
// whether a rejection was witnessed.
bool run_verifier(const Verifier& v, const Globals& g, const std::string& mode, Json& report) {
  return stage("verify", [&] {
    if (mode == "enumerate") {
      auto rep = enumerate_report(v);
      report["mode"] = "enumerate";
      report["acceptance_probability"] = rational_json(rep.acceptance);
      report["coin_paths"] = rep.paths;
      report["rejecting_paths"] = rep.rejecting_paths;
      report["coin_bits"] = rep.coin_bits;
      report["max_queries"] = rep.max_queries;
      Json br = Json::object();
      for (const auto& [k, r] : rep.branch_rejection) br[k] = rational_json(r);
      report["branch_rejection"] = br;
      if (rep.first_rejection) report["first_rejection"] = rep.first_rejection->to_string();
      return rep.acceptance < Rational(1);
    }
    if (mode == "sample") {
      auto s = coin_sample(v, g.trials, derive_seed(g.seed, "verify", 0));
      report["mode"] = "sample";
      report["trials"] = s.trials;
      report["accepts"] = s.accepts;
      report["acceptance_rate"] = s.rate;
      report["ci"] = {s.ci_lo, s.ci_hi};
      report["coin_bits"] = v.coin_tree().coin_bits();
      return s.accepts < s.trials;
    }
    throw std::invalid_argument("mode must be enumerate or sample");
  });
}

void emit(const Json& report, const fs::path& path) {
  const std::string text = report.dump(2) + "\n";
  write_file(path, text);
  std::cout << text;
}

// Colouring with the most satisfied edges, lexicographically first.
Assignment best_coloring(const ColoringInstance& g) {
  if (g.n > 12) throw std::invalid_argument("wrong-solution adversary needs n <= 12");
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < g.n; ++i) total *= 3;
  Assignment best;
  std::size_t best_ok = 0;
  for (std::uint64_t w = 0; w < total; ++w) {
    Assignment c(g.n);
    std::uint64_t r = w;
    for (auto& x : c) {
      x = r % 3;
      r /= 3;
    }
    std::size_t ok = 0;
    for (auto [u, v] : g.edges) ok += c[u] != c[v];
    if (best.empty() || ok > best_ok) best = c, best_ok = ok;
  }
  return best;
}

struct SvsatOptions {
  int e = 4, m = 2, d = 0;
  std::string lambda = "1/2";
  std::string backend = "exhaustive";

  void add(CLI::App* app) {
    app->add_option("--e", e, "field bits of the proof field (even)")->capture_default_str();
    app->add_option("--m", m, "number of variables")->capture_default_str();
    app->add_option("--d", d, "degree; 0 picks the least that fits k");
    app->add_option("--lambda", lambda, "bias of the direction set")->capture_default_str();
    app->add_option("--backend", backend, "circuit-value backend")->capture_default_str();
  }
};

struct Prepared {
  SVecCspInstance inst;
  ProofConfig cfg;
  BiasedSet dirs;
  std::shared_ptr<const SvsatSetup> setup;
};

Prepared prepare(const SVecCspInstance& source, const SvsatOptions& o, std::uint64_t seed) {
  Field big = target_field(o.e);
  return stage("params", [&] {
    if (!(source.field() == Field(2))) throw std::invalid_argument("instance must be over GF(4)");
    auto inst = svcsp_embed(source, big);
    ProofConfig cfg;
    cfg.m = o.m;
    cfg.d = o.d ? o.d : svsat_degree_for(inst.k, big, o.m);
    cfg.lambda = parse_rational(o.lambda);
    cfg.seed = seed;
    auto dirs = config_directions(big, cfg);
    auto setup = config_setup(inst, cfg, dirs);
    return Prepared{std::move(inst), cfg, std::move(dirs), std::move(setup)};
  });
}

Json params_json(const Prepared& p, const std::string& backend) {
  return {{"e", p.inst.field().bits()},     {"m", p.cfg.m},
          {"d", p.cfg.d},                   {"t", p.inst.t()},
          {"k", p.inst.k},                  {"lambda", to_string(p.cfg.lambda)},
          {"seed", p.cfg.seed},             {"directions", p.dirs.size()},
          {"backend", backend},
          {"proven_regime", ldt_in_proven_regime(p.inst.field(), p.cfg.m, p.cfg.d, p.cfg.lambda)}};
}

// ---- subcommands ----

int cmd_reduce(const Globals&, const std::string& in, std::uint32_t k, const std::string& out,
               const std::string& report_path, bool literal) {
  auto g = stage("input", [&] { return coloring_from_json(read_json(read_file(in), in)); });
  PipelineOptions opt;
  opt.svcsp.literal = literal;
  auto r = stage("reduce", [&] { return reduce_coloring(g, k, opt); });
  write_file(out, to_json(r.sv.inst).dump(1) + "\n");
  Json rep = reduction_json(r.report);
  rep["literal_split"] = literal;
  if (!report_path.empty()) write_file(report_path, rep.dump(2) + "\n");
  std::cout << rep.dump(2) << "\n";
  return kExitAccept;
}

int cmd_pipeline(const Globals& g, const std::string& in, std::uint32_t k, const SvsatOptions& o,
                 const std::string& adversary) {
  const auto start = std::chrono::steady_clock::now();
  target_field(o.e);
  const fs::path dir = g.out_dir;
  auto src = stage("input", [&] { return coloring_from_json(read_json(read_file(in), in)); });
  auto red = stage("reduce", [&] {
    if (k) return reduce_coloring(src, k);
    // Smallest SVecCSP over every admissible group count.
    std::optional<PipelineResult> best;
    for (std::uint32_t kk = 2; kk <= src.n; ++kk) {
      auto r = reduce_coloring(src, kk);
      if (!best || r.report.sv_k < best->report.sv_k) best = std::move(r);
    }
    return std::move(*best);
  });
  write_file(dir / "svcsp.json", to_json(red.sv.inst).dump(1) + "\n");

  auto coloring = stage("solve", [&] {
    if (adversary == "wrong-solution") return best_coloring(src);
    auto c = csp_brute_solve(src);
    if (!c) throw std::invalid_argument("instance is not 3-colourable; try --adversary wrong-solution");
    return *c;
  });
  const bool proper = is_proper_coloring(src, coloring);
  auto prep = prepare(red.sv.inst, o, g.seed);
  auto backend = stage("params", [&] { return make_backend(o.backend); });
  auto sol = embed_assignment(pipeline_forward(red, coloring), red.sv.inst.field(), prep.inst.field());
  auto [in_tables, bundle] = stage("prove", [&] {
    return svsat_prove(*prep.setup, sol, *backend, proper ? ProveMode::Strict : ProveMode::Force);
  });

  stage("adversary", [&] {
    Rng rng(derive_seed(g.seed, "adversary", 0));
    const auto& f = prep.inst.field();
    if (adversary == "none" || adversary == "wrong-solution") return 0;
    if (adversary == "single-point") {
      const auto p = rng.below(bundle.zhat.size());
      bundle.zhat.at(p)[rng.below(prep.inst.t())] += FieldElement(1 + static_cast<std::uint32_t>(rng.below(f.order() - 1)));
    } else if (adversary == "random-table") {
      for (std::uint64_t p = 0; p < bundle.zhat.size(); ++p)
        for (auto& x : bundle.zhat.at(p)) x = FieldElement(static_cast<std::uint32_t>(rng.below(f.order())));
    } else if (adversary == "identity") {
      bundle.zhat = in_tables.yhat.relabel(bundle.zhat.params().d);
    } else if (adversary == "shuffled-proof") {
      auto& lines = bundle.pi1.ldt.at(0).lines;
      std::vector<LinePoly> polys;
      for (auto& [key, lp] : lines) polys.push_back(lp);
      for (std::size_t i = polys.size(); i > 1; --i) std::swap(polys[i - 1], polys[rng.below(i)]);
      std::size_t i = 0;
      for (auto& [key, lp] : lines) lp = polys[i++];
    } else {
      throw std::invalid_argument("unknown adversary '" + adversary + "'");
    }
    return 0;
  });

  auto manifest = stage("write", [&] {
    return svbundle_write(dir / "bundle", SvsatArtifacts{prep.inst, prep.cfg, prep.dirs, in_tables, bundle});
  });
  SvsatVerifier v(prep.setup, in_tables, bundle, *backend);
  Json report;
  report["stage"] = "pipeline";
  report["input"] = fs::path(in).filename().string();
  report["adversary"] = adversary;
  report["proper_coloring"] = proper;
  report["parameters"] = params_json(prep, o.backend);
  report["reduction"] = reduction_json(red.report);
  report["bundle"] = fs::relative(manifest, dir).string();
  const bool rejected = run_verifier(v, g, mode_or(g, "enumerate"), report);
  if (g.timing)
    report["timing_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(report, dir / "report.json");
  return rejected ? kExitReject : kExitAccept;
}

int cmd_prove(const Globals& g, const std::string& instance, const std::string& assignment, const SvsatOptions& o) {
  auto src = stage("input", [&] { return svcsp_from_json(read_json(read_file(instance), instance)); });
  auto prep = prepare(src, o, g.seed);
  auto backend = stage("params", [&] { return make_backend(o.backend); });
  auto sol = stage("solve", [&] {
    if (!assignment.empty())
      return vec_assignment_from_json(src.field(), read_json(read_file(assignment), assignment));
    auto s = csp_brute_solve(src);
    if (!s) throw std::invalid_argument("instance is unsatisfiable");
    return *s;
  });
  auto big = embed_assignment(sol, src.field(), prep.inst.field());
  auto [in_tables, bundle] = stage("prove", [&] { return svsat_prove(*prep.setup, big, *backend); });
  auto manifest = stage("write", [&] {
    return svbundle_write(fs::path(g.out_dir), SvsatArtifacts{prep.inst, prep.cfg, prep.dirs, in_tables, bundle});
  });
  Json report{{"stage", "prove"}, {"parameters", params_json(prep, o.backend)}, {"bundle", manifest.filename().string()}};
  std::cout << report.dump(2) << "\n";
  return kExitAccept;
}

int cmd_verify(const Globals& g, const std::string& path, const std::string& report_path) {
  auto a = stage("load", [&] { return svbundle_read(path); });
  auto setup = stage("load", [&] {
    try {
      return config_setup(a.instance, a.config, a.directions);
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("bundle parameters: ") + e.what());
    }
  });
  auto backend = stage("load", [&] {
    try {
      return make_backend(a.bundle.pi1.backend);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  });
  SvsatVerifier v(setup, a.inputs, a.bundle, *backend);
  Json report{{"stage", "verify"},
              {"bundle", fs::path(path).filename().string()},
              {"proven_regime", ldt_in_proven_regime(a.instance.field(), a.config.m, a.config.d, a.config.lambda)}};
  const bool rejected = run_verifier(v, g, mode_or(g, "enumerate"), report);
  if (!report_path.empty()) write_file(report_path, report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return rejected ? kExitReject : kExitAccept;
}

int cmd_sweep(const Globals& g, int e, int m, int d, int t, const std::string& lambda, const std::string& deltas,
              const std::string& out) {
  if (mode_or(g, "sample") != "sample") throw StageError("config", "soundness-sweep runs in sample mode only", kExitUsage);
  RmParams p = stage("params", [&] { return RmParams(Field(e), m, d, t); });
  auto lam = stage("params", [&] { return parse_rational(lambda); });
  std::vector<double> levels;
  stage("params", [&] {
    std::istringstream is(deltas);
    for (std::string tok; std::getline(is, tok, ',');) {
      const double x = std::stod(tok);
      if (x < 0 || x > 1) throw std::invalid_argument("delta outside [0,1]");
      levels.push_back(x);
    }
    if (levels.empty()) throw std::invalid_argument("no delta levels");
    return 0;
  });
  auto s = stage("biased", [&] { return biased_construct(p.field, m, lam, derive_seed(g.seed, "biased", 0)); });
  const std::uint64_t n = p.num_points(), outcomes = 2 * n * s.size();
  std::ostringstream csv;
  csv << "delta,trials,rejects,rate,ci_lo,ci_hi\n";
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const auto flips = static_cast<std::uint64_t>(std::llround(levels[li] * n));
    std::uint64_t rejects = 0;
    for (std::uint64_t i = 0; i < g.trials; ++i) {
      Rng rng(derive_seed(g.seed, "sweep", li * g.trials + i));
      Message msg(p.message_length(), std::vector<FieldElement>(t));
      for (auto& v : msg)
        for (auto& x : v) x = FieldElement(static_cast<std::uint32_t>(rng.below(p.field.order())));
      auto data = rm_encode(p, msg).data();
      std::vector<std::uint64_t> idx(n);
      for (std::uint64_t k = 0; k < n; ++k) idx[k] = k;
      for (std::uint64_t k = 0; k < flips; ++k) {
        std::swap(idx[k], idx[k + rng.below(n - k)]);
        for (int c = 0; c < t; ++c)
          data[idx[k] * t + c] = FieldElement(static_cast<std::uint32_t>(rng.below(p.field.order())));
      }
      ParallelTable tbl(p, std::move(data));
      auto proof = pldt_prove(tbl, s);
      PldtVerifier v(tbl, proof, s, d);
      rejects += !v.run_value(rng.below(outcomes)).accepted;
    }
    auto [lo, hi] = wilson_interval(rejects, g.trials);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.4f,%llu,%llu,%.6f,%.6f,%.6f\n", levels[li],
                  static_cast<unsigned long long>(g.trials), static_cast<unsigned long long>(rejects),
                  g.trials ? static_cast<double>(rejects) / g.trials : 0.0, lo, hi);
    csv << buf;
  }
  const fs::path path = out.empty() ? fs::path(g.out_dir) / "sweep.csv" : fs::path(out);
  write_file(path, csv.str());
  std::cout << csv.str();
  return kExitAccept;
}

int cmd_encode(const Globals& g, int e, int m, int d, int t, const std::string& in, const std::string& out) {
  const fs::path path = out.empty() ? fs::path(g.out_dir) / "table.rmtbl" : fs::path(out);
  ParallelTable tbl = stage("encode", [&] {
    if (!in.empty()) {
      auto src = rmtbl_read(read_file(in));
      auto msg = rm_fit_exact(src, src.params().d);
      if (!msg) throw StageError("encode", "input table is not a codeword of degree " + std::to_string(src.params().d), kExitReject);
      return rm_encode(src.params(), *msg);
    }
    RmParams p(Field(e), m, d, t);
    Rng rng(derive_seed(g.seed, "encode", 0));
    Message msg(p.message_length(), std::vector<FieldElement>(t));
    for (auto& v : msg)
      for (auto& x : v) x = FieldElement(static_cast<std::uint32_t>(rng.below(p.field.order())));
    return rm_encode(p, msg);
  });
  const std::string text = rmtbl_write(tbl);
  write_file(path, text);
  std::cout << "wrote " << path.filename().string() << " sha256=" << sha256_hex(text) << "\n";
  return kExitAccept;
}

int cmd_biased(const Globals& g, int e, int m, const std::string& lambda, const std::string& out) {
  auto s = stage("biased", [&] {
    Field f(e);
    return biased_construct(f, m, parse_rational(lambda), derive_seed(g.seed, "biased", 0));
  });
  const fs::path path = out.empty() ? fs::path(g.out_dir) / "biased.bset" : fs::path(out);
  write_file(path, bset_write(s));
  Json rep{{"file", path.filename().string()},
           {"size", s.size()},
           {"lambda_claimed", to_string(s.lambda_claimed)},
           {"verified", s.lambda_verified.has_value()}};
  if (s.lambda_verified) rep["bias_exact"] = to_string(*s.lambda_verified);
  std::cout << rep.dump(2) << "\n";
  return kExitAccept;
}

int cmd_ldt_test(const Globals& g, const std::string& table, const std::string& bset, const std::string& proof,
                 const std::string& lambda) {
  auto tbl = stage("input", [&] { return rmtbl_read(read_file(table)); });
  const auto& p = tbl.params();
  auto s = stage("biased", [&] {
    if (!bset.empty()) return bset_read(read_file(bset));
    return biased_construct(p.field, p.m, parse_rational(lambda), derive_seed(g.seed, "biased", 0));
  });
  auto oracle = stage("input", [&] {
    if (!proof.empty()) return lorc_read(read_file(proof));
    return pldt_prove(tbl, s);
  });
  auto v = stage("input", [&] { return PldtVerifier(tbl, oracle, s, p.d); });
  Json report{{"stage", "ldt-test"},
              {"e", p.field.bits()},
              {"m", p.m},
              {"d", p.d},
              {"t", p.t},
              {"directions", s.size()},
              {"honest_proof", proof.empty()},
              {"proven_regime", v.in_proven_regime()}};
  const bool rejected = run_verifier(v, g, mode_or(g, "enumerate"), report);
  std::cout << report.dump(2) << "\n";
  return rejected ? kExitReject : kExitAccept;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svpcp: vector-CSP reductions and PCPP verifiers"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "root seed")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "directory for artifacts")->capture_default_str();
  app.add_option("--mode", g.mode, "enumerate or sample")->check(CLI::IsMember({"enumerate", "sample"}));
  app.add_option("--trials", g.trials, "trials in sample mode")->capture_default_str();
  app.add_flag("--timing", g.timing, "add wall-clock timing to reports");

  std::string in, out, report, adversary = "none", instance, assignment, bundle, table, bset, proof;
  std::string lambda = "1/2", deltas = "0,0.05,0.1,0.2,0.4";
  std::uint32_t k = 3, pipe_k = 0;
  bool literal = false;
  int e = 3, m = 2, d = 2, t = 2;
  SvsatOptions so;

  auto* red = app.add_subcommand("reduce", "4-regular colouring to SVecCSP");
  red->add_option("--in", in, "colouring instance (JSON)")->required();
  red->add_option("--k", k, "number of groups")->capture_default_str();
  red->add_option("--out", out, "output SVecCSP instance")->required();
  red->add_option("--report", report, "size report (JSON)");
  red->add_flag("--literal", literal, "split every variable with a parallel constraint");

  auto* pipe = app.add_subcommand("pipeline", "reduce, prove and verify a colouring instance");
  pipe->add_option("--in", in, "colouring instance (JSON)")->required();
  pipe->add_option("--k", pipe_k, "number of groups; 0 picks the smallest output")->capture_default_str();
  pipe->add_option("--adversary", adversary, "none, wrong-solution, single-point, random-table, identity, shuffled-proof")
      ->capture_default_str();
  so.add(pipe);

  auto* prove = app.add_subcommand("prove", "build an SVSat proof bundle");
  prove->add_option("--instance", instance, "SVecCSP instance over GF(4)")->required();
  prove->add_option("--assignment", assignment, "satisfying assignment (JSON); solved if absent");
  so.add(prove);

  auto* ver = app.add_subcommand("verify", "check an SVSat proof bundle");
  ver->add_option("--bundle", bundle, "bundle manifest")->required();
  ver->add_option("--report", report, "write the report here as well");

  auto* sweep = app.add_subcommand("soundness-sweep", "low-degree test rejection rate against corruption");
  sweep->add_option("--e", e)->capture_default_str();
  sweep->add_option("--m", m)->capture_default_str();
  sweep->add_option("--d", d)->capture_default_str();
  sweep->add_option("--t", t)->capture_default_str();
  sweep->add_option("--lambda", lambda)->capture_default_str();
  sweep->add_option("--deltas", deltas, "comma-separated corruption fractions")->capture_default_str();
  sweep->add_option("--out", out, "CSV path (default <out-dir>/sweep.csv)");

  auto* enc = app.add_subcommand("encode", "encode a seeded message, or re-encode an RMTBL codeword");
  enc->add_option("--e", e)->capture_default_str();
  enc->add_option("--m", m)->capture_default_str();
  enc->add_option("--d", d)->capture_default_str();
  enc->add_option("--t", t)->capture_default_str();
  enc->add_option("--in", in, "existing RMTBL table");
  enc->add_option("--out", out, "RMTBL path (default <out-dir>/table.rmtbl)");

  auto* bia = app.add_subcommand("biased", "construct and certify a small-bias direction set");
  bia->add_option("--e", e)->capture_default_str();
  bia->add_option("--m", m)->capture_default_str();
  bia->add_option("--lambda", lambda)->capture_default_str();
  bia->add_option("--out", out, "BSET path (default <out-dir>/biased.bset)");

  auto* ldt = app.add_subcommand("ldt-test", "run the parallel low-degree test on a table");
  ldt->add_option("--table", table, "RMTBL table")->required();
  ldt->add_option("--bset", bset, "direction set (BSET); constructed if absent");
  ldt->add_option("--proof", proof, "line oracle (LORC); honest if absent");
  ldt->add_option("--lambda", lambda)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*red) return cmd_reduce(g, in, k, out, report, literal);
    if (*pipe) return cmd_pipeline(g, in, pipe_k, so, adversary);
    if (*prove) return cmd_prove(g, instance, assignment, so);
    if (*ver) return cmd_verify(g, bundle, report);
    if (*sweep) return cmd_sweep(g, e, m, d, t, lambda, deltas, out);
    if (*enc) return cmd_encode(g, e, m, d, t, in, out);
    if (*bia) return cmd_biased(g, e, m, lambda, out);
    if (*ldt) return cmd_ldt_test(g, table, bset, proof, lambda);
  } catch (const StageError& err) {
    std::cerr << "error [" << err.stage << "]: " << err.what() << "\n";
    return err.code;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
