#pragma once

#include "svpcp/biased.hpp"
#include "svpcp/builders.hpp"
#include "svpcp/coins.hpp"
#include "svpcp/ecc.hpp"
#include "svpcp/ldt.hpp"
#include "svpcp/rmcode.hpp"
#include "svpcp/solver.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace svpcp {

// ---- MultiTest ----

// Circuits shared by every MultiTest instance over the same (c, u, params).
struct MultiTestSetup {
  RmParams params;  // degree bound of the tested tables
  BiasedSet directions;
  EccCode code;
  std::uint32_t u = 1;
  Circuit c;       // over u flattened tables
  Circuit cldt;    // one coordinate slice of one table
  Circuit cprime;  // over u lifted tables

  MultiTestSetup(RmParams p, BiasedSet s, EccCode e) : params(std::move(p)), directions(std::move(s)), code(std::move(e)) {}
};

inline std::shared_ptr<const MultiTestSetup> multitest_setup(const Circuit& c, std::uint32_t u, const RmParams& params,
                                                             const BiasedSet& s, const EccCode& code,
                                                             std::uint64_t cap = kMaxGates) {
  if (u < 1) throw std::invalid_argument("multitest: need at least one table");
  if (!(s.field == params.field) || s.m != params.m)
    throw std::invalid_argument("multitest: direction set does not match parameters");
  auto out = std::make_shared<MultiTestSetup>(params, s, code);
  out->u = u;
  out->c = c;
  out->cldt = cldt_build(params.field, params.m, params.d, s, cap);
  out->cprime = build_Cprime(c, u, params, code, out->cldt, cap);
  return out;
}

struct MultiTestProof {
  std::vector<LineOracle> ldt;                    // one per table
  std::string backend = "exhaustive";
  std::vector<std::vector<std::uint8_t>> ckt;     // one CktVal proof per coordinate

  friend bool operator==(const MultiTestProof&, const MultiTestProof&) = default;
};

// Honest prover. With `force` the language check is skipped, which is how
// the wrong-solution adversary produces its bundle.
inline MultiTestProof multitest_prove(const MultiTestSetup& setup, const std::vector<const ParallelTable*>& tables,
                                      const CktValBackend& backend, bool force = false) {
  if (tables.size() != setup.u)
    throw std::invalid_argument("multitest: expected " + std::to_string(setup.u) + " tables");
  for (const auto* t : tables)
    if (!(t->params() == setup.params)) throw std::invalid_argument("multitest: table parameters differ");
  if (!force) {
    for (std::size_t j = 0; j < tables.size(); ++j)
      if (!rm_fit_exact(*tables[j], setup.params.d))
        throw std::invalid_argument("multitest: table " + std::to_string(j) + " is not a codeword");
    if (!parallel_satisfies(setup.c, flat_word(tables)))
      throw std::invalid_argument("multitest: tables do not parallel-satisfy the circuit");
  }
  MultiTestProof p;
  p.backend = backend.name();
  for (const auto* t : tables) p.ldt.push_back(pldt_prove(*t, setup.directions));
  p.ckt.assign(setup.params.t, std::vector<std::uint8_t>(backend.proof_length(setup.cprime), 0));
  return p;
}

// Branch A: the augmented low-degree test on every table with shared coins.
// Branch B: the CktVal backend on C' for all coordinates at once, each
// queried lifted bit computed from one table entry.
class MultiTestVerifier : public Verifier {
 public:
  MultiTestVerifier(std::shared_ptr<const MultiTestSetup> setup, std::vector<const ParallelTable*> tables,
                    const MultiTestProof& proof, const CktValBackend& backend, std::string name = "mt",
                    std::vector<std::string> table_names = {})
      : setup_(std::move(setup)), tables_(std::move(tables)), proof_(proof), backend_(backend),
        name_(std::move(name)), table_names_(std::move(table_names)), cache_(std::make_shared<Cache>()) {
    if (tables_.size() != setup_->u) throw std::invalid_argument("multitest: table count differs from setup");
    for (const auto* t : tables_)
      if (t->size() != setup_->params.num_points() || t->width() != setup_->params.t)
        throw std::invalid_argument("multitest: table shape differs from setup");
    if (table_names_.empty())
      for (std::size_t j = 0; j < tables_.size(); ++j) table_names_.push_back("T" + std::to_string(j + 1));
  }

  std::uint64_t ldt_outcomes() const { return 2 * setup_->params.num_points() * setup_->directions.size(); }

  CoinTree coin_tree() const override {
    return CoinTree::mixture({CoinTree::leaf(ldt_outcomes()), CoinTree::leaf(backend_.coin_outcomes(setup_->cprime))});
  }

  Transcript run(const Coins& coins) const override {
    if (coins.size() != 2 || coins[0] > 1) throw std::invalid_argument("multitest: bad coin path");
    Transcript t;
    t.coins = coins;
    if (coins[0] == 0) {
      t.branch = name_ + "/ldt";
      run_ldt(coins[1], t);
    } else {
      t.branch = name_ + "/ckt";
      run_ckt(coins[1], t);
    }
    return t;
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::uint64_t, Transcript> ckt;
  };

  bool malformed(Transcript& t) const {
    if (proof_.ldt.size() != tables_.size()) {
      t.reason = "malformed bundle: ldt proof count";
      return true;
    }
    if (proof_.backend != backend_.name()) {
      t.reason = "malformed bundle: backend tag";
      return true;
    }
    return false;
  }

  void run_ldt(std::uint64_t r, Transcript& t) const {
    if (malformed(t)) return;
    if (r >= ldt_outcomes()) throw std::out_of_range("multitest: ldt coins out of range");
    for (std::size_t j = 0; j < tables_.size(); ++j) {
      auto o = augldtest(*tables_[j], proof_.ldt[j], setup_->directions, r, setup_->params.d);
      t.queries.push_back({table_names_[j], o.table_position});
      t.queries.push_back({name_ + ".ldt" + std::to_string(j + 1), o.proof_position});
      if (!o.accepted) {
        t.reason = table_names_[j] + ": " + o.reason;
        return;
      }
    }
    t.accepted = true;
  }

  void run_ckt(std::uint64_t r, Transcript& t) const {
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      auto it = cache_->ckt.find(r);
      if (it != cache_->ckt.end()) {
        const Coins coins = t.coins;
        const std::string branch = t.branch;
        t = it->second;
        t.coins = coins;
        t.branch = branch;
        return;
      }
    }
    Transcript fresh;
    decide_ckt(r, fresh);
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->ckt.emplace(r, fresh);
    t.queries = fresh.queries;
    t.accepted = fresh.accepted;
    t.reason = fresh.reason;
  }

  void decide_ckt(std::uint64_t r, Transcript& t) const {
    if (malformed(t)) return;
    const auto& c = setup_->cprime;
    const std::uint64_t plen = backend_.proof_length(c);
    if (proof_.ckt.size() != static_cast<std::size_t>(setup_->params.t)) {
      t.reason = "malformed bundle: ckt proof count";
      return;
    }
    for (const auto& p : proof_.ckt)
      if (p.size() != plen) {
        t.reason = "malformed bundle: ckt proof length";
        return;
      }
    const auto qs = backend_.queries(c, r);
    const std::uint64_t n = setup_->params.num_points();
    const std::uint64_t len = static_cast<std::uint64_t>(setup_->code.length());
    const int width = setup_->params.t;
    std::set<std::pair<std::uint64_t, std::uint64_t>> touched;
    std::set<std::uint64_t> proof_touched;
    bool ok = true;
    std::vector<std::uint64_t> answers(qs.size());
    // Lifted blocks are computed once per entry and coordinate chunk.
    std::map<std::pair<std::uint64_t, int>, std::vector<std::uint8_t>> blocks;
    for (int base = 0; base < width && ok; base += 64) {
      const int lanes = std::min(64, width - base);
      blocks.clear();
      for (std::size_t i = 0; i < qs.size(); ++i) {
        const std::uint64_t pos = qs[i];
        std::uint64_t word = 0;
        if (pos < c.input_count()) {
          const std::uint64_t entry = pos / len, bit = pos % len;
          touched.insert({entry / n, entry % n});
          for (int l = 0; l < lanes; ++l) {
            auto key = std::pair(entry, base + l);
            auto it = blocks.find(key);
            if (it == blocks.end())
              it = blocks.emplace(key, ecc_encode(setup_->code, tables_[entry / n]->at(entry % n, base + l).value)).first;
            word |= static_cast<std::uint64_t>(it->second[bit]) << l;
          }
        } else {
          const std::uint64_t ppos = pos - c.input_count();
          proof_touched.insert(ppos);
          for (int l = 0; l < lanes; ++l) word |= static_cast<std::uint64_t>(proof_.ckt[base + l].at(ppos) & 1u) << l;
        }
        answers[i] = word;
      }
      const std::uint64_t mask = lanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
      const std::uint64_t acc = backend_.decide(c, r, answers) & mask;
      if (acc != mask) {
        ok = false;
        t.reason = "C' rejects coordinate " + std::to_string(base + std::countr_zero(~acc & mask));
      }
    }
    for (auto [j, k] : touched) t.queries.push_back({table_names_[j], k});
    for (auto p : proof_touched) t.queries.push_back({name_ + ".ckt", p});
    t.accepted = ok;
  }

  std::shared_ptr<const MultiTestSetup> setup_;
  std::vector<const ParallelTable*> tables_;
  const MultiTestProof& proof_;
  const CktValBackend& backend_;
  std::string name_;
  std::vector<std::string> table_names_;
  std::shared_ptr<Cache> cache_;
};

// ---- SVSat ----

// Smallest d with C(m+d, m) >= k and 2d < |F|.
inline int svsat_degree_for(std::uint32_t k, const Field& f, int m) {
  for (int d = 0; 2 * d < static_cast<int>(f.order()); ++d)
    if (binomial_capped(m + d, d, kMaxTablePoints) >= k) return d;
  throw std::invalid_argument("svsat: no degree d with 2d < |F| gives B >= k=" + std::to_string(k));
}

struct SvsatSetup {
  SVecCspInstance g;
  RmParams params;  // degree d
  BiasedSet directions;
  EccCode code;
  MatrixTable mhat;
  Circuit cp, cl;
  std::shared_ptr<const MultiTestSetup> t1, t2;
};

inline std::shared_ptr<const SvsatSetup> svsat_setup(const SVecCspInstance& g, const RmParams& params,
                                                     const BiasedSet& s, const EccCode& code,
                                                     std::uint64_t cap = kMaxGates) {
  if (!(g.field() == params.field)) throw std::invalid_argument("svsat: instance field differs from parameters");
  if (g.t() != params.t) throw std::invalid_argument("svsat: instance width differs from parameters");
  if (2 * params.d >= static_cast<int>(params.q())) throw std::invalid_argument("svsat: need 2d < |F|");
  if (g.k > params.message_length())
    throw std::invalid_argument("svsat: k=" + std::to_string(g.k) + " exceeds B=" + std::to_string(params.message_length()));
  auto cp = build_Cp(g, params, cap);
  auto cl = build_Cl(g.k, params, cap);
  auto t1 = multitest_setup(cp, 2, params, s, code, cap);
  auto t2 = multitest_setup(cl, 1, params.with_degree(2 * params.d), s, code, cap);
  return std::make_shared<SvsatSetup>(
      SvsatSetup{g, params, s, code, matrix_encode(params, g.matrices()), std::move(cp), std::move(cl), t1, t2});
}

struct SvsatInputs {
  ParallelTable xhat, yhat;
};

struct SvsatBundle {
  ParallelTable zhat;
  MultiTestProof pi1, pi2;
};

enum class ProveMode { Strict, Force };

inline ParallelTable encode_assignment_half(const RmParams& p, const VecAssignment& s, std::uint32_t first,
                                            std::uint32_t k) {
  Message msg(p.message_length(), std::vector<FieldElement>(p.t));
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto& v = s.at(first + i);
    if (v.size() != static_cast<std::size_t>(p.t)) throw std::invalid_argument("svsat: value width differs from t");
    msg[i] = v;
  }
  return rm_encode(p, msg);
}

inline std::pair<SvsatInputs, SvsatBundle> svsat_prove(const SvsatSetup& setup, const VecAssignment& s,
                                                       const CktValBackend& backend,
                                                       ProveMode mode = ProveMode::Strict) {
  const auto& g = setup.g;
  check_vec_assignment(g.base, s);
  const bool force = mode == ProveMode::Force;
  if (!force && csp_val(g, s) != Rational(1)) throw std::invalid_argument("svsat: assignment is not a solution");
  SvsatInputs in{encode_assignment_half(setup.params, s, 0, g.k), encode_assignment_half(setup.params, s, g.k, g.k)};
  SvsatBundle b{z_table_build(in.xhat, in.yhat, setup.mhat), {}, {}};
  b.pi1 = multitest_prove(*setup.t1, {&in.xhat, &in.yhat}, backend, force);
  b.pi2 = multitest_prove(*setup.t2, {&b.zhat}, backend, force);
  return {std::move(in), std::move(b)};
}

// Uniform choice among T1, T2 and T3; T3 draws one point of F^m.
class SvsatVerifier : public Verifier {
 public:
  SvsatVerifier(std::shared_ptr<const SvsatSetup> setup, const SvsatInputs& in, const SvsatBundle& b,
                const CktValBackend& backend)
      : setup_(std::move(setup)), in_(in), b_(b),
        t1_(setup_->t1, {&in_.xhat, &in_.yhat}, b_.pi1, backend, "pi1", {"xhat", "yhat"}),
        t2_(setup_->t2, {&b_.zhat}, b_.pi2, backend, "pi2", {"zhat"}) {
    const auto& p = setup_->params;
    if (!(in.xhat.params() == p) || !(in.yhat.params() == p) || !(b.zhat.params() == p.with_degree(2 * p.d)))
      throw std::invalid_argument("svsat: table parameters differ from setup");
  }

  CoinTree coin_tree() const override {
    return CoinTree::mixture({t1_.coin_tree(), t2_.coin_tree(), CoinTree::leaf(setup_->params.num_points())});
  }

  Transcript run(const Coins& coins) const override {
    if (coins.empty() || coins[0] > 2) throw std::invalid_argument("svsat: bad coin path");
    const Coins rest(coins.begin() + 1, coins.end());
    Transcript t;
    if (coins[0] == 0) {
      t = t1_.run(rest);
      t.branch = "T1:" + t.branch;
    } else if (coins[0] == 1) {
      t = t2_.run(rest);
      t.branch = "T2:" + t.branch;
    } else {
      if (rest.size() != 1) throw std::invalid_argument("svsat: bad coin path");
      t = run_t3(rest[0]);
    }
    t.coins = coins;
    return t;
  }

  Transcript run_t3(std::uint64_t p) const {
    const auto& params = setup_->params;
    if (p >= params.num_points()) throw std::out_of_range("svsat: point out of range");
    Transcript t;
    t.branch = "T3";
    t.queries = {{"zhat", p}, {"yhat", p}, {"xhat", p}};
    const Field& f = params.field;
    Matrix m = setup_->mhat.at(p);
    auto xv = in_.xhat.at(p), yv = in_.yhat.at(p), zv = b_.zhat.at(p);
    for (int r = 0; r < params.t; ++r) {
      FieldElement acc = yv[r];
      for (int c = 0; c < params.t; ++c) acc += f.mul(m(r, c), xv[c]);
      if (acc != zv[r]) {
        t.reason = "zhat(p) != yhat(p) - Mhat(p) xhat(p)";
        return t;
      }
    }
    t.accepted = true;
    return t;
  }

 private:
  std::shared_ptr<const SvsatSetup> setup_;
  const SvsatInputs& in_;
  const SvsatBundle& b_;
  MultiTestVerifier t1_, t2_;
};

// ---- enumeration with statistics ----

struct EnumerationReport {
  Rational acceptance{0};
  std::uint64_t paths = 0;
  std::uint64_t rejecting_paths = 0;
  std::uint64_t max_queries = 0;
  std::uint64_t coin_bits = 0;
  std::map<std::string, Rational> branch_rejection;  // weighted rejection mass per branch
  std::optional<Transcript> first_rejection;
};

inline EnumerationReport enumerate_report(const Verifier& v, std::uint64_t cap = kMaxEnumeration) {
  CoinTree tree = v.coin_tree();
  if (tree.paths() > cap)
    throw std::length_error("coins: " + std::to_string(tree.paths()) + " outcomes exceed the enumeration cap");
  EnumerationReport rep;
  rep.paths = tree.paths();
  rep.coin_bits = tree.coin_bits();
  Coins path;
  std::function<Rational(const CoinTree&, const Rational&)> walk = [&](const CoinTree& t, const Rational& w) {
    if (t.is_leaf()) {
      std::int64_t acc = 0;
      const Rational each = w / static_cast<std::int64_t>(t.outcomes);
      for (std::uint64_t r = 0; r < t.outcomes; ++r) {
        path.push_back(r);
        Transcript tr = v.run(path);
        path.pop_back();
        rep.max_queries = std::max<std::uint64_t>(rep.max_queries, tr.queries.size());
        if (tr.accepted) {
          ++acc;
          continue;
        }
        ++rep.rejecting_paths;
        auto [it, fresh] = rep.branch_rejection.emplace(tr.branch, Rational(0));
        it->second += each;
        if (!rep.first_rejection) rep.first_rejection = tr;
      }
      return Rational(acc, static_cast<std::int64_t>(t.outcomes));
    }
    Rational sum(0);
    const std::int64_t k = static_cast<std::int64_t>(t.children.size());
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      path.push_back(i);
      sum += walk(t.children[i], w / k);
      path.pop_back();
    }
    return sum / k;
  };
  rep.acceptance = walk(tree, Rational(1));
  return rep;
}

}  // namespace svpcp
