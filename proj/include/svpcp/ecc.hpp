#pragma once

#include "svpcp/circuit.hpp"
#include "svpcp/field.hpp"
#include "svpcp/rng.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace svpcp {

inline constexpr int kEccMaxBits = 16;
inline constexpr int kEccRate = 7;

// Systematic binary linear code {0,1}^n -> {0,1}^{7n}. Codeword bit j is the
// parity of msg & columns[j]; the first n columns are unit vectors.
struct EccCode {
  int n = 0;
  std::vector<std::uint32_t> columns;
  int min_distance = 0;

  int length() const { return kEccRate * n; }

  // Required distance for relative distance 0.01: ceil(0.07 n).
  static int required_distance(int n) { return (7 * n + 99) / 100; }

  friend bool operator==(const EccCode&, const EccCode&) = default;
};

inline int ecc_weight(const EccCode& c, std::uint32_t msg) {
  int w = 0;
  for (auto col : c.columns) w += std::popcount(msg & col) & 1;
  return w;
}

// Minimum weight over all nonzero messages; equals the minimum pairwise
// distance because the code is linear.
inline int ecc_min_distance(const EccCode& c) {
  int best = c.length();
  for (std::uint32_t msg = 1; msg < (1u << c.n); ++msg) best = std::min(best, ecc_weight(c, msg));
  return best;
}

// Seeded random parity part, redrawn until the distance is certified.
inline EccCode ecc_make(int n, std::uint64_t seed, int max_attempts = 64) {
  if (n < 1 || n > kEccMaxBits)
    throw std::invalid_argument("ecc: n=" + std::to_string(n) + " outside [1, 16]");
  const int need = std::max(1, EccCode::required_distance(n));
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, "ecc", static_cast<std::uint64_t>(attempt)));
    EccCode c;
    c.n = n;
    for (int j = 0; j < n; ++j) c.columns.push_back(1u << j);
    for (int j = n; j < kEccRate * n; ++j) {
      std::uint32_t col;
      do {
        col = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n));
      } while (col == 0);
      c.columns.push_back(col);
    }
    c.min_distance = ecc_min_distance(c);
    if (c.min_distance >= need) return c;
  }
  throw std::runtime_error("ecc: distance could not be certified for n=" + std::to_string(n));
}

inline std::vector<std::uint8_t> ecc_encode(const EccCode& c, std::uint32_t msg) {
  if (c.n < 32 && msg >> c.n) throw std::out_of_range("ecc: message wider than n");
  std::vector<std::uint8_t> w(c.columns.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::popcount(msg & c.columns[j]) & 1;
  return w;
}

// Exact codewords only; anything else is rejected, never corrected.
inline std::optional<std::uint32_t> ecc_decode(const EccCode& c, std::span<const std::uint8_t> word) {
  if (word.size() != static_cast<std::size_t>(c.length())) throw std::invalid_argument("ecc: wrong word length");
  std::uint32_t msg = 0;
  for (int i = 0; i < c.n; ++i) msg |= static_cast<std::uint32_t>(word[i] & 1u) << i;
  auto re = ecc_encode(c, msg);
  for (std::size_t j = 0; j < re.size(); ++j)
    if (re[j] != (word[j] & 1u)) return std::nullopt;
  return msg;
}

// Lifted flattening of a field slice: entry k becomes block k of 7e bits.
inline std::vector<std::uint8_t> enc_parallel(const EccCode& c, const Field& f, std::span<const FieldElement> z) {
  if (c.n != f.bits())
    throw std::invalid_argument("ecc: code width " + std::to_string(c.n) + " != field bits " +
                                std::to_string(f.bits()));
  std::vector<std::uint8_t> out;
  out.reserve(z.size() * c.length());
  for (auto x : z) {
    if (!f.contains(x)) throw std::out_of_range("ecc: value outside field");
    auto w = ecc_encode(c, x.value);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

// Wire that is 1 iff `block` is a codeword. The message bits are block[0..n).
inline Wire ecc_check_circuit(CircuitBuilder& cb, const EccCode& c, std::span<const Wire> block) {
  if (block.size() != static_cast<std::size_t>(c.length())) throw std::invalid_argument("ecc: block width");
  std::vector<Wire> ok;
  std::vector<Wire> terms;
  for (int j = c.n; j < c.length(); ++j) {
    terms.assign(1, block[j]);
    for (int i = 0; i < c.n; ++i)
      if (c.columns[j] >> i & 1u) terms.push_back(block[i]);
    ok.push_back(cb.NOT(cb.parity(terms)));
  }
  return cb.and_all(ok);
}

}  // namespace svpcp
