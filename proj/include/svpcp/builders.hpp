#pragma once

#include "svpcp/circuit.hpp"
#include "svpcp/csp.hpp"
#include "svpcp/ecc.hpp"
#include "svpcp/rmcode.hpp"

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace svpcp {

// Tables are flattened entry-major: entry k of table j occupies bits
// (j*N + k)*e .. +e, low bit first. Lifted words use 7e-bit blocks instead.

inline ParallelWord flat_word(std::span<const ParallelTable* const> tables) {
  if (tables.empty()) throw std::invalid_argument("builders: no tables");
  const auto& p = tables[0]->params();
  const int e = p.field.bits();
  const std::uint64_t n = p.num_points();
  ParallelWord w(tables.size() * n * e, p.t);
  for (std::size_t j = 0; j < tables.size(); ++j) {
    if (tables[j]->size() != n || tables[j]->width() != p.t)
      throw std::invalid_argument("builders: tables differ in shape");
    for (std::uint64_t k = 0; k < n; ++k)
      for (int c = 0; c < p.t; ++c) {
        std::uint32_t v = tables[j]->at(k, c).value;
        for (int b = 0; b < e; ++b) w.at((j * n + k) * e + b, c) = v >> b & 1u;
      }
  }
  return w;
}

inline ParallelWord lifted_word(const EccCode& code, std::span<const ParallelTable* const> tables) {
  if (tables.empty()) throw std::invalid_argument("builders: no tables");
  const auto& p = tables[0]->params();
  if (code.n != p.field.bits()) throw std::invalid_argument("builders: code width differs from field bits");
  const std::uint64_t n = p.num_points();
  const std::size_t len = static_cast<std::size_t>(code.length());
  ParallelWord w(tables.size() * n * len, p.t);
  for (std::size_t j = 0; j < tables.size(); ++j)
    for (std::uint64_t k = 0; k < n; ++k)
      for (int c = 0; c < p.t; ++c) {
        auto block = ecc_encode(code, tables[j]->at(k, c).value);
        for (std::size_t b = 0; b < len; ++b) w.at((j * n + k) * len + b, c) = block[b];
      }
  return w;
}

// The subfield H: GF(4) inside F (all of F when F is GF(4)).
inline std::vector<FieldElement> subfield_H(const Field& f) { return subfield_image(f); }

inline bool subfield_is_whole(const Field& f) { return f.bits() == 2; }

namespace detail {

inline std::vector<Wire> entry_wires(int e, std::uint64_t n, std::uint32_t table, std::uint64_t point) {
  std::vector<Wire> w(e);
  for (int b = 0; b < e; ++b) w[b] = static_cast<Wire>((table * n + point) * e + b);
  return w;
}

}  // namespace detail

// C_p over x^ (table 0) and y^ (table 1): every variable's systematic read
// lies in H and every parallel sub-constraint holds.
inline Circuit build_Cp(const SVecCspInstance& g, const RmParams& params, std::uint64_t cap = kMaxGates) {
  if (!(g.field() == params.field)) throw std::invalid_argument("builders: instance field differs from code field");
  auto violations = svcsp_shape_check(g);
  if (!violations.empty()) throw std::invalid_argument("builders: instance not in SVecCSP shape: " + violations[0]);
  auto code = RmCode::shared(params);
  const auto& xi = code->interpolation_set();
  if (g.k > xi.size())
    throw std::invalid_argument("builders: k=" + std::to_string(g.k) + " exceeds B=" + std::to_string(xi.size()));
  const int e = params.field.bits();
  const std::uint64_t n = params.num_points();
  const std::uint64_t inputs = 2 * n * e;
  if (inputs > cap) throw std::length_error("builders: C_p input exceeds gate budget");
  CircuitBuilder cb(static_cast<std::uint32_t>(inputs), cap);
  const auto h = subfield_H(params.field);
  const bool whole = subfield_is_whole(params.field);

  // ind[v][a]: variable v reads the a-th element of H.
  std::vector<std::vector<Wire>> ind(2 * g.k);
  auto indicators = [&](std::uint32_t v) -> const std::vector<Wire>& {
    if (ind[v].empty()) {
      auto w = detail::entry_wires(e, n, v < g.k ? 0 : 1, xi[v % g.k]);
      for (auto x : h) ind[v].push_back(cb.equals_const(w, x.value));
    }
    return ind[v];
  };

  std::vector<Wire> checks;
  if (!whole)
    for (std::uint32_t v = 0; v < 2 * g.k; ++v) checks.push_back(cb.or_all(indicators(v)));
  for (const auto& c : g.base.constraints) {
    if (c.kind != VecConstraint::Kind::Parallel) continue;
    const auto& iu = indicators(c.u);
    const auto& iv = indicators(c.v);
    std::vector<Wire> rows;
    for (std::size_t a = 0; a < h.size(); ++a) {
      std::vector<Wire> ok;
      for (std::size_t b = 0; b < h.size(); ++b)
        if (c.sub(h[a].value, h[b].value)) ok.push_back(iv[b]);
      if (!ok.empty()) rows.push_back(cb.AND(iu[a], cb.or_all(ok)));
    }
    checks.push_back(cb.or_all(rows));
  }
  return std::move(cb).finish(cb.and_all(checks));
}

// C_l: the first k systematic entries are zero. `params` carries the
// message degree d that fixes the systematic set.
inline Circuit build_Cl(std::uint32_t k, const RmParams& params, std::uint64_t cap = kMaxGates) {
  auto code = RmCode::shared(params);
  const auto& xi = code->interpolation_set();
  if (k > xi.size())
    throw std::invalid_argument("builders: k=" + std::to_string(k) + " exceeds B=" + std::to_string(xi.size()));
  const int e = params.field.bits();
  const std::uint64_t n = params.num_points();
  if (n * e > cap) throw std::length_error("builders: C_l input exceeds gate budget");
  CircuitBuilder cb(static_cast<std::uint32_t>(n * e), cap);
  std::vector<Wire> zero;
  for (std::uint32_t i = 0; i < k; ++i)
    for (auto w : detail::entry_wires(e, n, 0, xi[i])) zero.push_back(cb.NOT(w));
  return std::move(cb).finish(cb.and_all(zero));
}

// C' over u lifted tables: every block is a codeword, every decoded table
// passes cldt, and the decoded concatenation satisfies c.
inline Circuit build_Cprime(const Circuit& c, std::uint32_t u, const RmParams& params, const EccCode& code,
                            const Circuit& cldt, std::uint64_t cap = kMaxGates) {
  const int e = params.field.bits();
  const std::uint64_t n = params.num_points();
  if (code.n != e) throw std::invalid_argument("builders: code width differs from field bits");
  if (c.input_count() != u * n * e)
    throw std::invalid_argument("builders: circuit has " + std::to_string(c.input_count()) + " inputs, expected " +
                                std::to_string(u * n * e));
  if (cldt.input_count() != n * e) throw std::invalid_argument("builders: cldt arity mismatch");
  const std::uint64_t len = static_cast<std::uint64_t>(code.length());
  const std::uint64_t inputs = u * n * len;
  if (inputs > cap) throw std::length_error("builders: C' input exceeds gate budget");
  CircuitBuilder cb(static_cast<std::uint32_t>(inputs), cap);

  std::vector<Wire> decoded(u * n * e), s1;
  std::vector<Wire> block(len);
  for (std::uint64_t j = 0; j < u; ++j)
    for (std::uint64_t k = 0; k < n; ++k) {
      const std::uint64_t base = (j * n + k) * len;
      for (std::uint64_t b = 0; b < len; ++b) block[b] = static_cast<Wire>(base + b);
      s1.push_back(ecc_check_circuit(cb, code, block));
      for (int b = 0; b < e; ++b) decoded[(j * n + k) * e + b] = block[b];
    }
  std::vector<Wire> parts{cb.and_all(s1)};
  for (std::uint64_t j = 0; j < u; ++j)
    parts.push_back(cb.inline_circuit(cldt, std::span<const Wire>(decoded).subspan(j * n * e, n * e)));
  parts.push_back(cb.inline_circuit(c, decoded));
  return std::move(cb).finish(cb.and_all(parts));
}

// ---- CktVal PCPP backends ----

// Query positions for fixed coins never depend on the input, so a verifier
// can run one backend instance on every coordinate with shared coins.
class CktValBackend {
 public:
  virtual ~CktValBackend() = default;
  virtual std::string name() const = 0;
  virtual std::uint64_t coin_outcomes(const Circuit& c) const = 0;
  virtual std::vector<std::uint64_t> queries(const Circuit& c, std::uint64_t r) const = 0;
  virtual std::uint64_t proof_length(const Circuit& c) const = 0;
  // answers[i] holds the queried bit i for up to 64 coordinates; bit j of
  // the result is the decision on coordinate j.
  virtual std::uint64_t decide(const Circuit& c, std::uint64_t r, std::span<const std::uint64_t> answers) const = 0;
};

// Reads every input bit, no proof, no coins.
class ExhaustiveBackend final : public CktValBackend {
 public:
  std::string name() const override { return "exhaustive"; }
  std::uint64_t coin_outcomes(const Circuit&) const override { return 1; }
  std::vector<std::uint64_t> queries(const Circuit& c, std::uint64_t r) const override {
    if (r != 0) throw std::out_of_range("cktval: exhaustive backend has a single coin outcome");
    std::vector<std::uint64_t> q(c.input_count());
    for (std::uint64_t i = 0; i < q.size(); ++i) q[i] = i;
    return q;
  }
  std::uint64_t proof_length(const Circuit&) const override { return 0; }
  std::uint64_t decide(const Circuit& c, std::uint64_t, std::span<const std::uint64_t> answers) const override {
    return c.eval_words(answers);
  }
};

inline std::unique_ptr<CktValBackend> make_backend(const std::string& name) {
  if (name == "exhaustive") return std::make_unique<ExhaustiveBackend>();
  throw std::invalid_argument("cktval: unknown backend '" + name + "'");
}

struct CktValDecision {
  bool accepted = false;
  std::vector<std::uint64_t> queries;
};

inline CktValDecision cktval_pcpp(const CktValBackend& backend, const Circuit& c, std::span<const std::uint8_t> z,
                                  std::uint64_t r = 0) {
  if (z.size() != c.input_count()) throw std::invalid_argument("cktval: input length mismatch");
  CktValDecision d;
  d.queries = backend.queries(c, r);
  std::vector<std::uint64_t> answers(d.queries.size());
  for (std::size_t i = 0; i < answers.size(); ++i) answers[i] = z[d.queries[i]] & 1u;
  d.accepted = backend.decide(c, r, answers) & 1u;
  return d;
}

inline constexpr std::uint32_t kMaxProximityInputs = 20;

struct ProximityReport {
  std::uint64_t satisfying = 0;
  std::optional<std::uint64_t> distance;  // none when nothing satisfies c
  std::uint64_t length = 0;
};

// Hamming distance from z to the satisfying set of c, by enumeration.
inline ProximityReport cktval_proximity(const Circuit& c, std::span<const std::uint8_t> z) {
  const std::uint32_t n = c.input_count();
  if (n > kMaxProximityInputs) throw std::length_error("cktval: proximity needs at most 20 inputs");
  if (z.size() != n) throw std::invalid_argument("cktval: input length mismatch");
  std::uint64_t zval = 0;
  for (std::uint32_t i = 0; i < n; ++i) zval |= static_cast<std::uint64_t>(z[i] & 1u) << i;
  ProximityReport rep;
  rep.length = n;
  std::vector<std::uint64_t> words(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t base = 0; base < total; base += 64) {
    const std::uint64_t width = std::min<std::uint64_t>(64, total - base);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint64_t w = 0;
      for (std::uint64_t j = 0; j < width; ++j) w |= ((base + j) >> i & 1u) << j;
      words[i] = w;
    }
    std::uint64_t acc = c.eval_words(words);
    for (std::uint64_t j = 0; j < width; ++j) {
      if (!(acc >> j & 1u)) continue;
      ++rep.satisfying;
      std::uint64_t dist = static_cast<std::uint64_t>(std::popcount((base + j) ^ zval));
      if (!rep.distance || dist < *rep.distance) rep.distance = dist;
    }
  }
  return rep;
}

}  // namespace svpcp
