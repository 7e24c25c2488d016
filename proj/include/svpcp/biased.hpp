#pragma once

#include "svpcp/field.hpp"
#include "svpcp/rational.hpp"
#include "svpcp/rmcode.hpp"
#include "svpcp/rng.hpp"

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

namespace svpcp {

inline constexpr std::uint64_t kMaxBiasEnumeration = std::uint64_t{1} << 16;

// A multiset of directions in F^m, stored as point indices.
struct BiasedSet {
  Field field;
  int m = 1;
  std::vector<std::uint64_t> vectors;
  Rational lambda_claimed{1};
  std::optional<Rational> lambda_verified;

  BiasedSet(Field f, int m_, std::vector<std::uint64_t> v, Rational claimed = Rational(1))
      : field(std::move(f)), m(m_), vectors(std::move(v)), lambda_claimed(claimed) {}

  PointSpace points() const { return PointSpace(field.order(), m); }
  std::size_t size() const { return vectors.size(); }
};

namespace detail {

// In-place Walsh-Hadamard transform over Z.
inline void walsh_hadamard(std::vector<std::int64_t>& h) {
  for (std::size_t len = 1; len < h.size(); len <<= 1)
    for (std::size_t i = 0; i < h.size(); i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        std::int64_t a = h[j], b = h[j + len];
        h[j] = a + b;
        h[j + len] = a - b;
      }
}

}  // namespace detail

// max over nonzero a of |E_{y in S} (-1)^Tr(<a,y>)|.
//
// For fixed y the map a -> Tr(<a,y>) is GF(2)-linear in the bits of a, so it
// equals parity(a & w_y) for a mask w_y; the character sums for all a are then
// one Walsh-Hadamard transform of the histogram of the masks.
inline Rational bias_exact(const BiasedSet& s) {
  auto ps = s.points();
  if (ps.size() > kMaxBiasEnumeration)
    throw std::invalid_argument("biased: |F|^m exceeds the 2^16 enumeration cap");
  if (s.vectors.empty()) throw std::invalid_argument("biased: empty set");
  const int e = s.field.bits();
  std::vector<std::int64_t> hist(ps.size(), 0);
  std::vector<FieldElement> y(s.m);
  for (std::uint64_t idx : s.vectors) {
    if (idx >= ps.size()) throw std::out_of_range("biased: vector outside F^m");
    ps.coords(idx, y);
    std::uint64_t w = 0;
    for (int i = 0; i < s.m; ++i) {
      const int shift = (s.m - 1 - i) * e;
      for (int b = 0; b < e; ++b) {
        FieldElement xb(1u << b);
        if (parity(s.field.mul(xb, y[i]).value & s.field.trace_mask()))
          w |= std::uint64_t{1} << (shift + b);
      }
    }
    ++hist[w];
  }
  detail::walsh_hadamard(hist);
  std::int64_t best = 0;
  for (std::size_t a = 1; a < hist.size(); ++a) best = std::max<std::int64_t>(best, std::llabs(hist[a]));
  return Rational(best, static_cast<std::int64_t>(s.vectors.size()));
}

// Size of the random set: 2 * ceil(m*e / lambda^2).
inline std::uint64_t biased_target_size(int m, int e, const Rational& lambda) {
  const unsigned __int128 num = static_cast<unsigned __int128>(m) * e * lambda.denominator() *
                                lambda.denominator();
  const unsigned __int128 den = static_cast<unsigned __int128>(lambda.numerator()) * lambda.numerator();
  unsigned __int128 c = (num + den - 1) / den;
  if (c > (std::uint64_t{1} << 40)) return std::uint64_t{1} << 41;
  return 2 * static_cast<std::uint64_t>(c);
}

inline BiasedSet standard_basis_set(const Field& f, int m) {
  PointSpace ps(f.order(), m);
  std::vector<std::uint64_t> v;
  std::vector<FieldElement> c(m);
  for (int i = 0; i < m; ++i) {
    std::fill(c.begin(), c.end(), FieldElement{});
    c[i] = FieldElement(1);
    v.push_back(ps.index(c));
  }
  return BiasedSet(f, m, std::move(v), Rational(1));
}

struct BiasedOptions {
  bool require_verified = false;
  int max_attempts = 64;
};

// Random multiset of nonzero directions with verified bias when |F|^m <= 2^16.
// lambda >= 1 yields the standard basis; a size at or above |F|^m yields all of F^m.
inline BiasedSet biased_construct(const Field& f, int m, const Rational& lambda, std::uint64_t seed,
                                  const BiasedOptions& opt = {}) {
  if (lambda <= Rational(0)) throw std::invalid_argument("biased: lambda must be positive");
  PointSpace ps(f.order(), m);
  if (ps.size() > kMaxTablePoints) throw std::invalid_argument("biased: |F|^m exceeds 2^20");
  const bool can_verify = ps.size() <= kMaxBiasEnumeration;
  if (opt.require_verified && !can_verify)
    throw std::invalid_argument("biased: verification requested but |F|^m exceeds 2^16");
  if (lambda >= Rational(1)) {
    auto s = standard_basis_set(f, m);
    if (can_verify) s.lambda_verified = bias_exact(s);
    return s;
  }
  const std::uint64_t n = biased_target_size(m, f.bits(), lambda);
  if (n >= ps.size()) {
    std::vector<std::uint64_t> all(ps.size());
    for (std::uint64_t i = 0; i < ps.size(); ++i) all[i] = i;
    BiasedSet s(f, m, std::move(all), lambda);
    s.lambda_verified = Rational(0);
    return s;
  }
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    std::vector<std::uint64_t> v(n);
    for (auto& x : v) x = 1 + rng.below(ps.size() - 1);
    BiasedSet s(f, m, std::move(v), lambda);
    if (!can_verify) return s;
    Rational b = bias_exact(s);
    if (b <= lambda) {
      s.lambda_verified = b;
      return s;
    }
  }
  throw std::runtime_error("biased: no set within the claimed bias after retries");
}

}  // namespace svpcp
