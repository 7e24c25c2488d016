#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace svpcp {

// An element of GF(2^e) in the polynomial basis: bit b is the coefficient of x^b.
struct FieldElement {
  std::uint32_t value = 0;

  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t v) : value(v) {}

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

// Characteristic 2: addition needs no field context.
constexpr FieldElement operator+(FieldElement a, FieldElement b) {
  return FieldElement(a.value ^ b.value);
}
constexpr FieldElement operator-(FieldElement a, FieldElement b) { return a + b; }
constexpr FieldElement& operator+=(FieldElement& a, FieldElement b) {
  a.value ^= b.value;
  return a;
}

namespace detail {

inline int poly_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
  return a;
}

inline std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b, std::uint32_t modulus,
                              int e) {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> e & 1u) a ^= modulus;
  }
  return r;
}

}  // namespace detail

inline bool is_irreducible(std::uint64_t poly) {
  const int d = detail::poly_degree(poly);
  if (d < 1) return false;
  for (std::uint64_t q = 2; detail::poly_degree(q) <= d / 2; ++q)
    if (detail::poly_mod(poly, q) == 0) return false;
  return true;
}

// Least irreducible polynomial of degree e, read as an integer bitmask.
inline std::uint32_t canonical_modulus(int e) {
  if (e < 1 || e > 16) throw std::invalid_argument("field: e must be in [1,16]");
  for (std::uint32_t p = 1u << e;; ++p)
    if (is_irreducible(p)) return p;
}

class Field {
 public:
  static constexpr int kMinBits = 2;
  static constexpr int kMaxBits = 16;

  explicit Field(int e) : Field(e, e >= 1 && e <= 16 ? canonical_modulus(e) : 0) {}

  Field(int e, std::uint32_t modulus) {
    if (e < kMinBits || e > kMaxBits)
      throw std::invalid_argument("field: e=" + std::to_string(e) +
                                  " outside supported range [2,16]");
    if (detail::poly_degree(modulus) != e || !is_irreducible(modulus))
      throw std::invalid_argument("field: modulus is not an irreducible polynomial of degree e");
    auto t = std::make_shared<Tables>();
    t->e = e;
    t->modulus = modulus;
    t->order = 1u << e;
    build(*t);
    tables_ = std::move(t);
  }

  int bits() const { return tables_->e; }
  std::uint32_t modulus() const { return tables_->modulus; }
  std::uint32_t order() const { return tables_->order; }

  FieldElement element(std::uint32_t v) const {
    if (v >= order()) throw std::out_of_range("field: element out of range");
    return FieldElement(v);
  }
  bool contains(FieldElement a) const { return a.value < order(); }

  FieldElement add(FieldElement a, FieldElement b) const { return a + b; }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.value == 0 || b.value == 0) return {};
    const auto& t = *tables_;
    return FieldElement(t.exp[t.log[a.value] + t.log[b.value]]);
  }

  FieldElement inv(FieldElement a) const {
    if (a.value == 0) throw std::domain_error("field: inverse of zero");
    const auto& t = *tables_;
    return FieldElement(t.exp[(t.order - 1 - t.log[a.value]) % (t.order - 1)]);
  }

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  FieldElement pow(FieldElement a, std::uint64_t n) const {
    if (n == 0) return FieldElement(1);
    if (a.value == 0) return {};
    const auto& t = *tables_;
    return FieldElement(t.exp[(t.log[a.value] * (n % (t.order - 1))) % (t.order - 1)]);
  }

  // Absolute trace to GF(2): a + a^2 + a^4 + ... + a^(2^(e-1)).
  unsigned trace(FieldElement a) const {
    FieldElement s = a, acc = a;
    for (int i = 1; i < bits(); ++i) {
      s = mul(s, s);
      acc += s;
    }
    return acc.value & 1u;
  }

  // Tr is GF(2)-linear, so Tr(a) = parity(a & trace_mask()).
  std::uint32_t trace_mask() const { return tables_->trace_mask; }

  FieldElement generator() const { return FieldElement(tables_->exp[1]); }

  friend bool operator==(const Field& a, const Field& b) {
    return a.bits() == b.bits() && a.modulus() == b.modulus();
  }

 private:
  struct Tables {
    int e = 0;
    std::uint32_t modulus = 0;
    std::uint32_t order = 0;
    std::uint32_t trace_mask = 0;
    std::vector<std::uint32_t> exp;  // doubled so log sums need no reduction
    std::vector<std::uint32_t> log;
  };

  static void build(Tables& t) {
    const std::uint32_t n = t.order - 1;
    std::uint32_t g = 2;
    for (;; ++g) {
      // Order of g divides n; it is primitive iff g^(n/p) != 1 for each prime p | n.
      bool primitive = true;
      std::uint32_t rest = n;
      for (std::uint32_t p = 2; p <= rest; ++p) {
        if (rest % p) continue;
        while (rest % p == 0) rest /= p;
        std::uint32_t acc = 1, base = g;
        for (std::uint32_t k = n / p; k; k >>= 1) {
          if (k & 1u) acc = detail::mul_slow(acc, base, t.modulus, t.e);
          base = detail::mul_slow(base, base, t.modulus, t.e);
        }
        if (acc == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive || n == 1) break;
    }
    if (n == 1) g = 1;
    t.exp.assign(2 * static_cast<std::size_t>(n) + 1, 0);
    t.log.assign(t.order, 0);
    std::uint32_t v = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      t.exp[i] = v;
      t.log[v] = i;
      v = detail::mul_slow(v, g, t.modulus, t.e);
    }
    for (std::uint32_t i = n; i < t.exp.size(); ++i) t.exp[i] = t.exp[i - n];
    for (int b = 0; b < t.e; ++b) {
      std::uint32_t s = 1u << b, acc = s;
      for (int i = 1; i < t.e; ++i) {
        s = detail::mul_slow(s, s, t.modulus, t.e);
        acc ^= s;
      }
      if (acc & 1u) t.trace_mask |= 1u << b;
    }
  }

  std::shared_ptr<const Tables> tables_;
};

inline unsigned parity(std::uint64_t v) {
  return static_cast<unsigned>(__builtin_parityll(v));
}

// ---- GF(4) inside GF(2^e) ----

// Image of omega: the smaller of the two elements of multiplicative order 3.
inline FieldElement subfield_omega(const Field& f) {
  if (f.bits() % 2 != 0)
    throw std::domain_error("field: GF(4) does not embed into GF(2^" +
                            std::to_string(f.bits()) + ")");
  for (std::uint32_t v = 2; v < f.order(); ++v) {
    FieldElement a(v);
    if (f.mul(a, f.mul(a, a)) == FieldElement(1)) return a;
  }
  throw std::logic_error("field: no element of order 3");
}

// GF(4) elements are encoded as a0 + a1*omega -> bits (a1 a0).
inline FieldElement subfield_embed(FieldElement a, const Field& target) {
  if (a.value > 3) throw std::out_of_range("field: not a GF(4) element");
  FieldElement w = subfield_omega(target);
  FieldElement r(a.value & 1u);
  if (a.value & 2u) r += w;
  return r;
}

inline std::vector<FieldElement> subfield_image(const Field& target) {
  std::vector<FieldElement> img;
  for (std::uint32_t v = 0; v < 4; ++v) img.push_back(subfield_embed(FieldElement(v), target));
  return img;
}

// Embedding of `from` into `to`: identity when equal, the GF(4) map otherwise.
class Embedding {
 public:
  Embedding(const Field& from, const Field& to) : from_(from), to_(to) {
    if (from == to) {
      identity_ = true;
      return;
    }
    if (from.bits() != 2)
      throw std::domain_error("field: only GF(4) subfields are supported");
    image_ = subfield_image(to);
  }

  FieldElement operator()(FieldElement a) const { return identity_ ? a : image_.at(a.value); }

  // Inverse map; nullopt-like sentinel via bool flag.
  bool preimage(FieldElement b, FieldElement& out) const {
    if (identity_) {
      out = b;
      return to_.contains(b);
    }
    for (std::uint32_t v = 0; v < image_.size(); ++v)
      if (image_[v] == b) {
        out = FieldElement(v);
        return true;
      }
    return false;
  }

  const Field& source() const { return from_; }
  const Field& target() const { return to_; }
  bool identity() const { return identity_; }

 private:
  Field from_, to_;
  bool identity_ = false;
  std::vector<FieldElement> image_;
};

// ---- hex text encoding ----

inline std::string to_hex(FieldElement a) {
  std::ostringstream os;
  os << std::hex << a.value;
  return os.str();
}

inline FieldElement parse_hex(const Field& f, const std::string& s) {
  if (s.empty()) throw std::invalid_argument("field: empty hex element");
  std::uint32_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9')
      d = c - '0';
    else if (c >= 'a' && c <= 'f')
      d = c - 'a' + 10;
    else
      throw std::invalid_argument("field: bad hex digit in '" + s + "'");
    v = v * 16 + static_cast<std::uint32_t>(d);
    if (v >= f.order()) throw std::out_of_range("field: hex element out of range: " + s);
  }
  return FieldElement(v);
}

// ---- univariate polynomials ----

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<FieldElement> coeffs) : c_(std::move(coeffs)) { trim(); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FieldElement{}; }

  FieldElement eval(const Field& f, FieldElement x) const {
    FieldElement acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = f.mul(acc, x) + *it;
    return acc;
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().value == 0) c_.pop_back();
  }
  std::vector<FieldElement> c_;
};

inline bool is_degree_at_most(const UniPoly& p, int d) { return p.degree() <= d; }

// Lagrange interpolation through distinct x-coordinates.
inline UniPoly interpolate(const Field& f, std::span<const std::pair<FieldElement, FieldElement>> pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pts[i].first == pts[j].first)
        throw std::invalid_argument("interpolate: repeated x-coordinate");
  std::vector<FieldElement> result(n);
  std::vector<FieldElement> basis;
  for (std::size_t i = 0; i < n; ++i) {
    basis.assign(1, FieldElement(1));
    FieldElement denom(1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      // basis *= (X - x_j)
      basis.push_back(FieldElement{});
      for (std::size_t k = basis.size() - 1; k > 0; --k)
        basis[k] = basis[k - 1] + f.mul(basis[k], pts[j].first);
      basis[0] = f.mul(basis[0], pts[j].first);
      denom = f.mul(denom, pts[i].first + pts[j].first);
    }
    FieldElement scale = f.div(pts[i].second, denom);
    for (std::size_t k = 0; k < basis.size(); ++k) result[k] += f.mul(basis[k], scale);
  }
  return UniPoly(std::move(result));
}

}  // namespace svpcp
