#pragma once

#include "svpcp/biased.hpp"
#include "svpcp/circuit.hpp"
#include "svpcp/coins.hpp"
#include "svpcp/field.hpp"
#include "svpcp/linalg.hpp"
#include "svpcp/rmcode.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace svpcp {

// ---- lines ----

// Canonical form of {x + i*y}: direction scaled so its first nonzero
// coordinate (the pivot) is 1, base chosen with a zero pivot coordinate,
// which is the lexicographically least point of the line. A zero direction
// is the singleton {x} with pivot -1.
struct CanonicalLine {
  std::uint64_t base = 0;
  std::uint64_t dir = 0;
  int pivot = -1;

  bool singleton() const { return pivot < 0; }
  friend bool operator==(const CanonicalLine&, const CanonicalLine&) = default;
};

using LineKey = std::uint64_t;

inline CanonicalLine canonical_line(const Field& f, const PointSpace& ps, std::uint64_t x,
                                    std::uint64_t y) {
  auto cx = ps.coords(x), cy = ps.coords(y);
  int pivot = 0;
  while (pivot < ps.m() && cy[pivot].value == 0) ++pivot;
  if (pivot == ps.m()) return {x, 0, -1};
  FieldElement s = f.inv(cy[pivot]);
  for (auto& v : cy) v = f.mul(v, s);
  FieldElement shift = cx[pivot];
  for (int i = 0; i < ps.m(); ++i) cx[i] += f.mul(shift, cy[i]);
  return {ps.index(cx), ps.index(cy), pivot};
}

inline LineKey line_key(const PointSpace& ps, const CanonicalLine& l) { return l.base * ps.size() + l.dir; }

inline CanonicalLine line_from_key(const PointSpace& ps, LineKey key) {
  CanonicalLine l{key / ps.size(), key % ps.size(), -1};
  auto cy = ps.coords(l.dir);
  for (int i = 0; i < ps.m(); ++i)
    if (cy[i].value) {
      l.pivot = i;
      break;
    }
  return l;
}

// Points of the line ordered by parameter i = 0, 1, ..., q-1.
inline std::vector<std::uint64_t> line_points(const Field& f, const PointSpace& ps, const CanonicalLine& l) {
  if (l.singleton()) return {l.base};
  auto cb = ps.coords(l.base), cd = ps.coords(l.dir);
  std::vector<std::uint64_t> pts(ps.q());
  std::vector<FieldElement> p(ps.m());
  for (std::uint32_t i = 0; i < ps.q(); ++i) {
    for (int c = 0; c < ps.m(); ++c) p[c] = cb[c] + f.mul(FieldElement(i), cd[c]);
    pts[i] = ps.index(p);
  }
  return pts;
}

// Parameter of a point on a canonical line.
inline FieldElement line_param(const PointSpace& ps, const CanonicalLine& l, std::uint64_t point) {
  if (l.singleton()) return FieldElement(0);
  return ps.coords(point)[l.pivot];
}

// ---- line polynomials and oracles ----

// t univariate polynomials of degree <= d, coefficient-major per coordinate.
struct LinePoly {
  int t = 1;
  int d = 0;
  std::vector<FieldElement> c;  // c[k*(d+1) + j]: coordinate k, coefficient of i^j

  LinePoly() = default;
  LinePoly(int t_, int d_) : t(t_), d(d_), c(static_cast<std::size_t>(t_) * (d_ + 1)) {}

  FieldElement coeff(int k, int j) const { return c[k * (d + 1) + j]; }
  FieldElement& coeff(int k, int j) { return c[k * (d + 1) + j]; }

  UniPoly poly(int k) const {
    return UniPoly(std::vector<FieldElement>(c.begin() + k * (d + 1), c.begin() + (k + 1) * (d + 1)));
  }

  int degree() const {
    int best = -1;
    for (int k = 0; k < t; ++k) best = std::max(best, poly(k).degree());
    return best;
  }

  FieldElement eval(const Field& f, int k, FieldElement x) const {
    FieldElement acc;
    for (int j = d; j >= 0; --j) acc = f.mul(acc, x) + coeff(k, j);
    return acc;
  }

  friend bool operator==(const LinePoly&, const LinePoly&) = default;
};

struct LineOracle {
  Field field;
  int m = 1;
  int d = 0;
  int t = 1;
  std::map<LineKey, LinePoly> lines;

  LineOracle(Field f, int m_, int d_, int t_) : field(std::move(f)), m(m_), d(d_), t(t_) {}

  const LinePoly* find(LineKey k) const {
    auto it = lines.find(k);
    return it == lines.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return lines.size(); }

  friend bool operator==(const LineOracle& a, const LineOracle& b) {
    return a.field == b.field && a.m == b.m && a.d == b.d && a.t == b.t && a.lines == b.lines;
  }
};

namespace detail {

inline std::vector<FieldElement> poly_divmod(const Field& f, std::vector<FieldElement> num,
                                             const std::vector<FieldElement>& den,
                                             std::vector<FieldElement>& rem) {
  int dd = static_cast<int>(den.size()) - 1;
  while (dd >= 0 && den[dd].value == 0) --dd;
  if (dd < 0) throw std::domain_error("poly: division by zero");
  int dn = static_cast<int>(num.size()) - 1;
  std::vector<FieldElement> quo(std::max(dn - dd + 1, 1));
  FieldElement lead_inv = f.inv(den[dd]);
  for (int i = dn; i >= dd; --i) {
    FieldElement c = f.mul(num[i], lead_inv);
    if (c.value == 0) continue;
    quo[i - dd] = c;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] += f.mul(c, den[j]);
  }
  rem = std::move(num);
  return quo;
}

// Berlekamp-Welch on evaluations at 0..n-1; nullopt when no polynomial lies
// within the unique-decoding radius.
inline std::optional<std::vector<FieldElement>> berlekamp_welch(const Field& f,
                                                                std::span<const FieldElement> vals,
                                                                int d) {
  const int n = static_cast<int>(vals.size());
  const int r = (n - d - 1) / 2;
  if (r < 0) return std::nullopt;
  // Unknowns: E_0..E_{r-1} (E monic of degree r) and Q_0..Q_{r+d}.
  const int ne = r, nq = r + d + 1, cols = ne + nq;
  Matrix a(n, cols + 1);
  for (int i = 0; i < n; ++i) {
    FieldElement x(static_cast<std::uint32_t>(i)), pw(1);
    std::vector<FieldElement> pows(std::max(nq, r + 1));
    for (auto& p : pows) {
      p = pw;
      pw = f.mul(pw, x);
    }
    // Q(x) - y E(x) = y x^r
    for (int j = 0; j < ne; ++j) a(i, j) = f.mul(vals[i], pows[j]);
    for (int j = 0; j < nq; ++j) a(i, ne + j) = pows[j];
    a(i, cols) = f.mul(vals[i], pows[r]);
  }
  // Gaussian elimination, free variables set to zero.
  std::vector<int> pivcol;
  int row = 0;
  for (int col = 0; col < cols && row < n; ++col) {
    int p = row;
    while (p < n && a(p, col).value == 0) ++p;
    if (p == n) continue;
    for (int j = 0; j <= cols; ++j) std::swap(a(p, j), a(row, j));
    FieldElement s = f.inv(a(row, col));
    for (int j = 0; j <= cols; ++j) a(row, j) = f.mul(a(row, j), s);
    for (int i = 0; i < n; ++i) {
      if (i == row || a(i, col).value == 0) continue;
      FieldElement c = a(i, col);
      for (int j = 0; j <= cols; ++j) a(i, j) += f.mul(c, a(row, j));
    }
    pivcol.push_back(col);
    ++row;
  }
  for (int i = row; i < n; ++i)
    if (a(i, cols).value) return std::nullopt;
  std::vector<FieldElement> sol(cols);
  for (int i = 0; i < row; ++i) sol[pivcol[i]] = a(i, cols);
  std::vector<FieldElement> e(sol.begin(), sol.begin() + ne), q(sol.begin() + ne, sol.end());
  e.push_back(FieldElement(1));
  std::vector<FieldElement> rem;
  auto p = poly_divmod(f, q, e, rem);
  for (auto v : rem)
    if (v.value) return std::nullopt;
  for (std::size_t j = d + 1; j < p.size(); ++j)
    if (p[j].value) return std::nullopt;
  p.resize(d + 1);
  UniPoly up(p);
  int agree = 0;
  for (int i = 0; i < n; ++i) agree += up.eval(f, FieldElement(static_cast<std::uint32_t>(i))) == vals[i];
  if (agree < n - r) return std::nullopt;
  return p;
}

}  // namespace detail

inline constexpr std::uint64_t kMaxBruteFit = std::uint64_t{1} << 20;

// Closest polynomial of degree <= d to values indexed by parameter 0..n-1,
// returned as d+1 coefficients. Ties go to the lexicographically least
// coefficient vector (c_0 compared first). Exhaustive over all |F|^(d+1)
// polynomials when that is at most 2^20; otherwise unique decoding, falling
// back to the zero polynomial.
inline std::vector<FieldElement> closest_poly(const Field& f, std::span<const FieldElement> vals, int d) {
  const std::size_t n = vals.size();
  std::vector<FieldElement> out(d + 1);
  if (n == 0) return out;
  // Fast path: the values already lie on a degree-d polynomial.
  if (n > static_cast<std::size_t>(d)) {
    std::vector<std::pair<FieldElement, FieldElement>> pts;
    for (int i = 0; i <= d; ++i) pts.push_back({FieldElement(static_cast<std::uint32_t>(i)), vals[i]});
    UniPoly p = interpolate(f, pts);
    bool exact = true;
    for (std::size_t i = d + 1; i < n && exact; ++i)
      exact = p.eval(f, FieldElement(static_cast<std::uint32_t>(i))) == vals[i];
    if (exact) {
      for (std::size_t j = 0; j < p.coeffs().size(); ++j) out[j] = p.coeffs()[j];
      return out;
    }
  } else if (n == 1) {
    out[0] = vals[0];
    return out;
  }
  const std::uint32_t q = f.order();
  std::uint64_t space = 1;
  bool brute = true;
  for (int j = 0; j <= d && brute; ++j) {
    space *= q;
    brute = space <= kMaxBruteFit;
  }
  if (!brute) {
    auto bw = detail::berlekamp_welch(f, vals, d);
    if (bw) return *bw;
    return out;
  }
  // Enumerate the tail (c_1..c_d) in lexicographic order; for each tail the
  // agreement of every c_0 is a histogram of residuals.
  std::vector<std::vector<FieldElement>> pw(n, std::vector<FieldElement>(d + 1));
  for (std::size_t i = 0; i < n; ++i) {
    FieldElement x(static_cast<std::uint32_t>(i)), acc(1);
    for (int j = 0; j <= d; ++j) {
      pw[i][j] = acc;
      acc = f.mul(acc, x);
    }
  }
  std::vector<int> best_count(q, -1);
  std::vector<std::vector<FieldElement>> best_tail(q);
  std::vector<FieldElement> tail(d, FieldElement{});
  std::vector<int> hist(q);
  while (true) {
    std::fill(hist.begin(), hist.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      FieldElement r = vals[i];
      for (int j = 1; j <= d; ++j) r += f.mul(tail[j - 1], pw[i][j]);
      ++hist[r.value];
    }
    for (std::uint32_t c0 = 0; c0 < q; ++c0)
      if (hist[c0] > best_count[c0]) {
        best_count[c0] = hist[c0];
        best_tail[c0] = tail;
      }
    // Next tail; c_1 is the most significant digit.
    int pos = d - 1;
    while (pos >= 0 && tail[pos].value == q - 1) {
      tail[pos] = FieldElement{};
      --pos;
    }
    if (pos < 0) break;
    tail[pos] = FieldElement(tail[pos].value + 1);
  }
  int top = *std::max_element(best_count.begin(), best_count.end());
  for (std::uint32_t c0 = 0; c0 < q; ++c0)
    if (best_count[c0] == top) {
      out[0] = FieldElement(c0);
      for (int j = 1; j <= d; ++j) out[j] = best_tail[c0][j - 1];
      break;
    }
  return out;
}

inline LinePoly line_fit_canonical(const ParallelTable& tbl, const CanonicalLine& l, int d) {
  const auto& p = tbl.params();
  auto pts = line_points(p.field, p.points(), l);
  LinePoly lp(p.t, d);
  std::vector<FieldElement> vals(pts.size());
  for (int k = 0; k < p.t; ++k) {
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = tbl.at(pts[i], k);
    auto c = closest_poly(p.field, vals, d);
    for (int j = 0; j <= d; ++j) lp.coeff(k, j) = c[j];
  }
  return lp;
}

// Best degree-d fit, coordinate by coordinate, on the line {x + i*y}.
inline LinePoly line_fit(const ParallelTable& tbl, std::uint64_t x, std::uint64_t y, int d) {
  const auto& p = tbl.params();
  return line_fit_canonical(tbl, canonical_line(p.field, p.points(), x, y), d);
}

// Honest proof: fits for every line with a direction in S, plus every line
// through the origin.
inline LineOracle pldt_prove(const ParallelTable& tbl, const BiasedSet& s) {
  const auto& p = tbl.params();
  if (!(s.field == p.field) || s.m != p.m) throw std::invalid_argument("ldt: direction set does not match table");
  auto ps = p.points();
  LineOracle g(p.field, p.m, p.d, p.t);
  auto add = [&](std::uint64_t x, std::uint64_t y) {
    auto l = canonical_line(p.field, ps, x, y);
    auto key = line_key(ps, l);
    if (g.lines.count(key)) return;
    g.lines.emplace(key, line_fit_canonical(tbl, l, p.d));
  };
  for (std::uint64_t y : s.vectors)
    for (std::uint64_t x = 0; x < ps.size(); ++x) add(x, y);
  for (std::uint64_t z = 0; z < ps.size(); ++z) add(0, z);
  return g;
}

// ---- tests and the verifier ----

struct LdtOutcome {
  bool accepted = false;
  std::string reason;
  std::uint64_t table_position = 0;
  LineKey proof_position = 0;
};

// Accept iff f(x) equals g(line through x in direction y) at x.
inline LdtOutcome ldt_check(const ParallelTable& tbl, const LineOracle& g, std::uint64_t x, std::uint64_t y,
                            int d) {
  const auto& p = tbl.params();
  auto ps = p.points();
  auto l = canonical_line(p.field, ps, x, y);
  LdtOutcome o;
  o.table_position = x;
  o.proof_position = line_key(ps, l);
  const LinePoly* lp = g.find(o.proof_position);
  if (!lp) {
    o.reason = "missing proof symbol";
    return o;
  }
  if (lp->t != p.t || lp->degree() > d) {
    o.reason = "malformed proof symbol";
    return o;
  }
  FieldElement i = line_param(ps, l, x);
  for (int k = 0; k < p.t; ++k)
    if (lp->eval(p.field, k, i) != tbl.at(x, k)) {
      o.reason = "line disagrees with table";
      return o;
    }
  o.accepted = true;
  return o;
}

inline LdtOutcome ldtest(const ParallelTable& tbl, const LineOracle& g, const BiasedSet& s, std::uint64_t x,
                         std::size_t s_index) {
  return ldt_check(tbl, g, x, s.vectors.at(s_index), tbl.params().d);
}

struct LdtCoins {
  bool origin_branch = false;
  std::uint64_t x = 0;
  std::size_t s_index = 0;
};

// Mixed-radix split of r < 2 * |F|^m * |S|: branch bit, point, direction index.
inline LdtCoins decode_ldt_coins(std::uint64_t r, std::uint64_t points, std::size_t s_size) {
  if (r >= 2 * points * s_size) throw std::out_of_range("ldt: coins out of range");
  LdtCoins c;
  c.origin_branch = r % 2;
  r /= 2;
  c.x = r % points;
  c.s_index = r / points;
  return c;
}

inline LdtOutcome augldtest(const ParallelTable& tbl, const LineOracle& g, const BiasedSet& s,
                            std::uint64_t coins, int d) {
  auto c = decode_ldt_coins(coins, tbl.size(), s.size());
  if (c.origin_branch) return ldt_check(tbl, g, c.x, c.x, d);
  return ldt_check(tbl, g, c.x, s.vectors[c.s_index], d);
}

// Whether (|F|, m, d, lambda) lie in the range where the soundness bound is proven:
// |F| >= max(6md, 2^100 m log|F|) and lambda <= 2^-100 / (m log|F|).
inline bool ldt_in_proven_regime(const Field& f, int m, int d, const Rational& lambda) {
  const long double q = f.order(), e = f.bits();
  const long double big = std::ldexp(1.0L, 100) * m * e;
  if (q < 6.0L * m * d || q < big) return false;
  return to_double(lambda) <= 1.0L / big;
}

// One table query and one proof query per run.
class PldtVerifier : public Verifier {
 public:
  PldtVerifier(const ParallelTable& tbl, const LineOracle& g, const BiasedSet& s, int d,
               std::string table_name = "table", std::string proof_name = "proof")
      : tbl_(tbl), g_(g), s_(s), d_(d), table_name_(std::move(table_name)), proof_name_(std::move(proof_name)) {
    if (s.vectors.empty()) throw std::invalid_argument("ldt: empty direction set");
    if (!(s.field == tbl.params().field) || s.m != tbl.params().m)
      throw std::invalid_argument("ldt: direction set does not match table");
  }

  std::uint64_t outcomes() const { return 2 * tbl_.size() * s_.size(); }
  CoinTree coin_tree() const override { return CoinTree::leaf(outcomes()); }

  Transcript run(const Coins& coins) const override {
    if (coins.size() != 1) throw std::invalid_argument("ldt: expected a single leaf coin");
    return run_value(coins[0]);
  }

  Transcript run_value(std::uint64_t r) const {
    auto o = augldtest(tbl_, g_, s_, r, d_);
    Transcript t;
    t.coins = {r};
    t.branch = decode_ldt_coins(r, tbl_.size(), s_.size()).origin_branch ? "origin" : "direction";
    t.queries = {{table_name_, o.table_position}, {proof_name_, o.proof_position}};
    t.accepted = o.accepted;
    t.reason = o.reason;
    return t;
  }

  bool in_proven_regime() const {
    return ldt_in_proven_regime(tbl_.params().field, tbl_.params().m, d_, s_.lambda_claimed);
  }

 private:
  const ParallelTable& tbl_;
  const LineOracle& g_;
  const BiasedSet& s_;
  int d_;
  std::string table_name_, proof_name_;
};

// ---- exact characterisation and the decision circuit ----

// Every line with direction in `dirs` restricts to degree <= d in every coordinate.
inline bool exact_char_check(const ParallelTable& tbl, const std::vector<std::uint64_t>& dirs, int d) {
  const auto& p = tbl.params();
  auto ps = p.points();
  Matrix span(dirs.size(), p.m);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    auto c = ps.coords(dirs[i]);
    for (int j = 0; j < p.m; ++j) span(i, j) = c[j];
  }
  if (mat_rank(p.field, span) != static_cast<std::size_t>(p.m))
    throw std::invalid_argument("ldt: directions do not span F^m");
  std::set<LineKey> seen;
  std::vector<std::pair<FieldElement, FieldElement>> pts;
  for (std::uint64_t y : dirs)
    for (std::uint64_t x = 0; x < ps.size(); ++x) {
      auto l = canonical_line(p.field, ps, x, y);
      if (!seen.insert(line_key(ps, l)).second) continue;
      auto line = line_points(p.field, ps, l);
      for (int k = 0; k < p.t; ++k) {
        pts.clear();
        for (std::size_t i = 0; i < line.size(); ++i)
          pts.push_back({FieldElement(static_cast<std::uint32_t>(i)), tbl.at(line[i], k)});
        if (interpolate(p.field, pts).degree() > d) return false;
      }
    }
  return true;
}

namespace detail {

// 0/1 matrix of multiplication by c: column b is c * x^b.
inline std::vector<std::uint32_t> mul_columns(const Field& f, FieldElement c) {
  std::vector<std::uint32_t> cols(f.bits());
  for (int b = 0; b < f.bits(); ++b) cols[b] = f.mul(c, FieldElement(1u << b)).value;
  return cols;
}

}  // namespace detail

// Wire that is 1 iff the values along the line have degree <= d. Point k's
// bits are wires[k*e .. k*e+e). The interpolant through the first d+1
// parameters must reproduce every later value.
inline Wire line_degree_circuit(CircuitBuilder& cb, const Field& f, const std::vector<std::uint64_t>& line,
                                std::span<const Wire> wires, int d) {
  const int e = f.bits();
  const int n = static_cast<int>(line.size());
  if (n <= d + 1) return cb.constant(true);
  std::vector<Wire> checks;
  std::vector<std::vector<std::uint32_t>> mulcols(d + 1);
  for (int i = d + 1; i < n; ++i) {
    // Lagrange weights of nodes 0..d at parameter i.
    FieldElement xi(static_cast<std::uint32_t>(i));
    for (int a = 0; a <= d; ++a) {
      FieldElement num(1), den(1), xa(static_cast<std::uint32_t>(a));
      for (int b = 0; b <= d; ++b) {
        if (b == a) continue;
        FieldElement xb(static_cast<std::uint32_t>(b));
        num = f.mul(num, xi + xb);
        den = f.mul(den, xa + xb);
      }
      mulcols[a] = detail::mul_columns(f, f.div(num, den));
    }
    for (int bit = 0; bit < e; ++bit) {
      std::vector<Wire> terms{wires[line[i] * e + bit]};
      for (int a = 0; a <= d; ++a)
        for (int b = 0; b < e; ++b)
          if (mulcols[a][b] >> bit & 1u) terms.push_back(wires[line[a] * e + b]);
      checks.push_back(cb.NOT(cb.parity(terms)));
    }
  }
  return cb.and_all(checks);
}

// Circuit over the bits of one coordinate slice (entry k at bits k*e..k*e+e)
// that is the conjunction, over every coin outcome of the augmented test, of
// "the line's interpolant has degree <= d and matches the table at the
// queried point". The second half holds by construction, so each distinct
// line contributes one degree check.
inline Circuit cldt_build(const Field& f, int m, int d, const BiasedSet& s, std::uint64_t cap = kMaxGates) {
  PointSpace ps(f.order(), m);
  if (ps.size() > kMaxTablePoints) throw std::invalid_argument("ldt: |F|^m exceeds 2^20");
  const std::uint64_t bits = ps.size() * f.bits();
  if (bits > cap) throw std::length_error("ldt: circuit input exceeds gate budget");
  CircuitBuilder cb(static_cast<std::uint32_t>(bits), cap);
  std::vector<Wire> wires(bits);
  for (std::uint64_t i = 0; i < bits; ++i) wires[i] = cb.input(static_cast<std::uint32_t>(i));
  std::set<LineKey> seen;
  std::vector<Wire> parts;
  auto add = [&](std::uint64_t x, std::uint64_t y) {
    auto l = canonical_line(f, ps, x, y);
    if (!seen.insert(line_key(ps, l)).second) return;
    parts.push_back(line_degree_circuit(cb, f, line_points(f, ps, l), wires, d));
  };
  for (std::uint64_t y : s.vectors)
    for (std::uint64_t x = 0; x < ps.size(); ++x) add(x, y);
  for (std::uint64_t z = 0; z < ps.size(); ++z) add(0, z);
  Wire out = cb.and_all(parts);
  return std::move(cb).finish(out);
}

// Bits of one coordinate slice in the layout cldt_build expects.
inline std::vector<std::uint8_t> table_slice_bits(const ParallelTable& tbl, int coord) {
  const int e = tbl.params().field.bits();
  std::vector<std::uint8_t> bits(tbl.size() * e);
  for (std::uint64_t i = 0; i < tbl.size(); ++i) {
    std::uint32_t v = tbl.at(i, coord).value;
    for (int b = 0; b < e; ++b) bits[i * e + b] = v >> b & 1u;
  }
  return bits;
}

}  // namespace svpcp
