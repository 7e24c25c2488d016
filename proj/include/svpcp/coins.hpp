#pragma once

#include "svpcp/rational.hpp"
#include "svpcp/rng.hpp"
#include "svpcp/transcript.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace svpcp {

inline constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 22;

inline std::uint64_t ceil_log2(std::uint64_t n) {
  std::uint64_t b = 0;
  while ((std::uint64_t{1} << b) < n) ++b;
  return b;
}

// Randomness of a verifier: a uniform choice among sub-verifiers, or a leaf
// with `outcomes` equally likely values. A coin path lists the branch index
// at each mixture followed by the leaf value.
struct CoinTree {
  std::uint64_t outcomes = 1;
  std::vector<CoinTree> children;

  static CoinTree leaf(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("coins: empty leaf");
    CoinTree t;
    t.outcomes = n;
    return t;
  }
  static CoinTree mixture(std::vector<CoinTree> cs) {
    if (cs.empty()) throw std::invalid_argument("coins: empty mixture");
    CoinTree t;
    t.children = std::move(cs);
    return t;
  }

  bool is_leaf() const { return children.empty(); }

  // Selector bits plus the most expensive branch.
  std::uint64_t coin_bits() const {
    if (is_leaf()) return ceil_log2(outcomes);
    std::uint64_t best = 0;
    for (const auto& c : children) best = std::max(best, c.coin_bits());
    return ceil_log2(children.size()) + best;
  }

  std::uint64_t paths() const {
    if (is_leaf()) return outcomes;
    std::uint64_t s = 0;
    for (const auto& c : children) s += c.paths();
    return s;
  }
};

class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual CoinTree coin_tree() const = 0;
  virtual Transcript run(const Coins& coins) const = 0;
};

// Uniform draw of a coin path; a k-way selector uses ceil(log2 k) raw bits
// with rejection, matching the coin accounting.
inline Coins sample_coins(const CoinTree& t, Rng& rng) {
  Coins c;
  const CoinTree* cur = &t;
  while (!cur->is_leaf()) {
    const std::uint64_t k = cur->children.size();
    const std::uint64_t bits = ceil_log2(k);
    std::uint64_t v;
    do {
      v = bits ? rng.next() >> (64 - bits) : 0;
    } while (v >= k);
    c.push_back(v);
    cur = &cur->children[v];
  }
  c.push_back(rng.below(cur->outcomes));
  return c;
}

// Exact acceptance probability by walking every coin path.
inline Rational coin_enumerate(const Verifier& v, std::uint64_t cap = kMaxEnumeration) {
  CoinTree tree = v.coin_tree();
  if (tree.paths() > cap)
    throw std::length_error("coins: " + std::to_string(tree.paths()) +
                            " outcomes exceed the enumeration cap");
  Coins path;
  std::function<Rational(const CoinTree&)> walk = [&](const CoinTree& t) -> Rational {
    if (t.is_leaf()) {
      std::int64_t acc = 0;
      for (std::uint64_t r = 0; r < t.outcomes; ++r) {
        path.push_back(r);
        if (v.run(path).accepted) ++acc;
        path.pop_back();
      }
      return Rational(acc, static_cast<std::int64_t>(t.outcomes));
    }
    Rational sum(0);
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      path.push_back(i);
      sum += walk(t.children[i]);
      path.pop_back();
    }
    return sum / static_cast<std::int64_t>(t.children.size());
  };
  return walk(tree);
}

struct SampleResult {
  std::uint64_t trials = 0;
  std::uint64_t accepts = 0;
  double rate = 0;  // acceptance rate
  double ci_lo = 0, ci_hi = 0;
};

// Wilson score interval for k successes in n trials.
inline std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054) {
  if (n == 0) return {0.0, 1.0};
  const double p = static_cast<double>(k) / n, nn = static_cast<double>(n);
  const double denom = 1 + z * z / nn;
  const double centre = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// Monte Carlo acceptance; trial i uses its own seed derived from the root.
inline SampleResult coin_sample(const Verifier& v, std::uint64_t trials, std::uint64_t seed) {
  CoinTree tree = v.coin_tree();
  SampleResult r;
  r.trials = trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, "coin_sample", i));
    if (v.run(sample_coins(tree, rng)).accepted) ++r.accepts;
  }
  r.rate = trials ? static_cast<double>(r.accepts) / trials : 0;
  std::tie(r.ci_lo, r.ci_hi) = wilson_interval(r.accepts, trials);
  return r;
}

}  // namespace svpcp
