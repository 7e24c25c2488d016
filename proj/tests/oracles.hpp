#pragma once

// Slow, independent reference computations used only by tests.

#include <cstdint>
#include <vector>

namespace oracle {

// Carry-less multiply then reduce by the modulus, bit by bit.
inline std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int e) {
  std::uint64_t prod = 0;
  for (int i = 0; i < e; ++i)
    if (b >> i & 1u) prod ^= static_cast<std::uint64_t>(a) << i;
  for (int i = 2 * e - 2; i >= e; --i)
    if (prod >> i & 1u) prod ^= static_cast<std::uint64_t>(modulus) << (i - e);
  return static_cast<std::uint32_t>(prod);
}

inline std::uint32_t gf_pow(std::uint32_t a, std::uint64_t n, std::uint32_t modulus, int e) {
  std::uint32_t r = 1;
  for (std::uint64_t i = 0; i < n; ++i) r = gf_mul(r, a, modulus, e);
  return r;
}

// Irreducible iff no root-free factorisation: check every polynomial of
// degree 1..e-1 for exact division using schoolbook long division.
inline bool irreducible(std::uint32_t p, int e) {
  for (std::uint32_t q = 2; q < (1u << e); ++q) {
    int dq = 31 - __builtin_clz(q);
    if (dq == 0 || dq >= e) continue;
    std::uint32_t r = p;
    for (int i = e; i >= dq; --i)
      if (r >> i & 1u) r ^= q << (i - dq);
    if (r == 0) return false;
  }
  return true;
}

inline unsigned trace(std::uint32_t a, std::uint32_t modulus, int e) {
  std::uint32_t acc = 0, s = a;
  for (int i = 0; i < e; ++i) {
    acc ^= s;
    s = gf_mul(s, s, modulus, e);
  }
  return acc & 1u;
}

}  // namespace oracle
