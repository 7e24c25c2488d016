#pragma once

#include "svpcp/field.hpp"
#include "svpcp/linalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace svpcp {

inline constexpr std::uint64_t kMaxTablePoints = std::uint64_t{1} << 20;

// F^m with points indexed lexicographically (first coordinate most significant).
class PointSpace {
 public:
  PointSpace(std::uint32_t q, int m) : q_(q), m_(m) {
    if (m < 1) throw std::invalid_argument("points: m must be positive");
    size_ = 1;
    for (int i = 0; i < m; ++i) {
      if (size_ > (std::uint64_t{1} << 40) / q) throw std::invalid_argument("points: space too large");
      size_ *= q;
    }
  }

  std::uint32_t q() const { return q_; }
  int m() const { return m_; }
  std::uint64_t size() const { return size_; }

  void coords(std::uint64_t idx, std::span<FieldElement> out) const {
    for (int i = m_ - 1; i >= 0; --i) {
      out[i] = FieldElement(static_cast<std::uint32_t>(idx % q_));
      idx /= q_;
    }
  }
  std::vector<FieldElement> coords(std::uint64_t idx) const {
    std::vector<FieldElement> v(m_);
    coords(idx, v);
    return v;
  }

  std::uint64_t index(std::span<const FieldElement> p) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < m_; ++i) idx = idx * q_ + p[i].value;
    return idx;
  }

 private:
  std::uint32_t q_;
  int m_;
  std::uint64_t size_;
};

// Number of monomials of total degree <= d in m variables, saturating at `cap`.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

struct RmParams {
  Field field;
  int m = 1;
  int d = 0;
  int t = 1;

  RmParams(Field f, int m_, int d_, int t_) : field(std::move(f)), m(m_), d(d_), t(t_) {
    validate();
  }

  std::uint32_t q() const { return field.order(); }
  PointSpace points() const { return PointSpace(q(), m); }
  std::uint64_t num_points() const { return points().size(); }
  std::size_t message_length() const {
    return static_cast<std::size_t>(binomial_capped(m + d, d, kMaxTablePoints));
  }

  RmParams with_degree(int d2) const { return RmParams(field, m, d2, t); }
  RmParams with_width(int t2) const { return RmParams(field, m, d, t2); }

  friend bool operator==(const RmParams& a, const RmParams& b) {
    return a.field == b.field && a.m == b.m && a.d == b.d && a.t == b.t;
  }

 private:
  void validate() const {
    if (m < 1 || d < 0 || t < 1) throw std::invalid_argument("rm: need m>=1, d>=0, t>=1");
    if (static_cast<std::uint64_t>(d) >= q())
      throw std::invalid_argument("rm: field size must exceed the degree");
    std::uint64_t n = 1;
    for (int i = 0; i < m; ++i) {
      n *= q();
      if (n > kMaxTablePoints) throw std::invalid_argument("rm: |F|^m exceeds 2^20");
    }
    if (binomial_capped(m + d, d, kMaxTablePoints) > n)
      throw std::invalid_argument("rm: |F|^m is smaller than the message length");
  }
};

// Dense evaluation table: |F|^m entries, each a t-vector.
class ParallelTable {
 public:
  explicit ParallelTable(RmParams p)
      : params_(std::move(p)), data_(params_.num_points() * params_.t) {}
  ParallelTable(RmParams p, std::vector<FieldElement> data)
      : params_(std::move(p)), data_(std::move(data)) {
    if (data_.size() != params_.num_points() * params_.t)
      throw std::invalid_argument("table: wrong number of entries");
  }

  const RmParams& params() const { return params_; }
  std::uint64_t size() const { return params_.num_points(); }
  int width() const { return params_.t; }

  std::span<const FieldElement> at(std::uint64_t idx) const {
    return {data_.data() + idx * params_.t, static_cast<std::size_t>(params_.t)};
  }
  std::span<FieldElement> at(std::uint64_t idx) {
    return {data_.data() + idx * params_.t, static_cast<std::size_t>(params_.t)};
  }
  FieldElement at(std::uint64_t idx, int coord) const { return data_[idx * params_.t + coord]; }

  const std::vector<FieldElement>& data() const { return data_; }

  // Same entries, relabelled with another degree bound.
  ParallelTable relabel(int d) const { return ParallelTable(params_.with_degree(d), data_); }

  // Single coordinate slice as a width-1 table.
  ParallelTable slice(int coord) const {
    std::vector<FieldElement> v(size());
    for (std::uint64_t i = 0; i < size(); ++i) v[i] = at(i, coord);
    return ParallelTable(params_.with_width(1), std::move(v));
  }

  friend bool operator==(const ParallelTable& a, const ParallelTable& b) {
    return a.params_ == b.params_ && a.data_ == b.data_;
  }

 private:
  RmParams params_;
  std::vector<FieldElement> data_;
};

// Length-B sequence of t-vectors.
using Message = std::vector<std::vector<FieldElement>>;

// Monomials of total degree <= d with an evaluation recipe: each monomial
// is a lower one times a single variable.
class MonomialBasis {
 public:
  MonomialBasis(int m, int d) : m_(m), d_(d) {
    std::map<std::vector<std::uint8_t>, std::size_t> index;
    std::vector<std::uint8_t> zero(m, 0);
    exps_.push_back(zero);
    index[zero] = 0;
    parent_.push_back(0);
    var_.push_back(-1);
    for (int deg = 1; deg <= d; ++deg) {
      std::vector<std::uint8_t> e(m, 0);
      enumerate(e, 0, deg, [&](const std::vector<std::uint8_t>& ex) {
        int v = 0;
        while (ex[v] == 0) ++v;
        auto par = ex;
        --par[v];
        index[ex] = exps_.size();
        exps_.push_back(ex);
        parent_.push_back(index.at(par));
        var_.push_back(v);
      });
    }
  }

  std::size_t size() const { return exps_.size(); }
  const std::vector<std::uint8_t>& exponents(std::size_t i) const { return exps_[i]; }

  void eval(const Field& f, std::span<const FieldElement> point, std::span<FieldElement> out) const {
    out[0] = FieldElement(1);
    for (std::size_t i = 1; i < exps_.size(); ++i) out[i] = f.mul(out[parent_[i]], point[var_[i]]);
  }

 private:
  template <class F>
  void enumerate(std::vector<std::uint8_t>& e, int pos, int left, F&& fn) {
    if (pos == m_ - 1) {
      e[pos] = static_cast<std::uint8_t>(left);
      fn(e);
      e[pos] = 0;
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[pos] = static_cast<std::uint8_t>(k);
      enumerate(e, pos + 1, left - k, fn);
    }
    e[pos] = 0;
  }

  int m_, d_;
  std::vector<std::vector<std::uint8_t>> exps_;
  std::vector<std::size_t> parent_;
  std::vector<int> var_;
};

// Interpolation set and inverse evaluation matrix for degree-d polynomials on F^m.
// Shared between tables with the same (field, m, d); immutable once built.
class RmCode {
 public:
  static std::shared_ptr<const RmCode> shared(const RmParams& p) {
    static std::mutex mu;
    static std::map<std::tuple<int, std::uint32_t, int, int>, std::shared_ptr<const RmCode>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p.field.bits(), p.field.modulus(), p.m, p.d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto code = std::shared_ptr<const RmCode>(new RmCode(p));
    cache.emplace(key, code);
    return code;
  }

  const Field& field() const { return field_; }
  int m() const { return m_; }
  int d() const { return d_; }
  const PointSpace& points() const { return space_; }
  std::size_t message_length() const { return basis_.size(); }
  const MonomialBasis& monomials() const { return basis_; }

  // xi_1..xi_B as point indices, in selection order.
  const std::vector<std::uint64_t>& interpolation_set() const { return xi_; }

  // Coefficients (B x w) of the polynomial with prescribed values at xi (B x w).
  std::vector<FieldElement> coefficients(std::span<const FieldElement> values, std::size_t w) const {
    const std::size_t b = basis_.size();
    std::vector<FieldElement> c(b * w);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j) {
        FieldElement s = inv_(i, j);
        if (s.value == 0) continue;
        for (std::size_t k = 0; k < w; ++k) c[i * w + k] += field_.mul(s, values[j * w + k]);
      }
    return c;
  }

  // Evaluates coefficient rows (B x w) at every point; out is |F|^m x w.
  void evaluate_all(std::span<const FieldElement> coeffs, std::size_t w,
                    std::span<FieldElement> out) const {
    const std::size_t b = basis_.size();
    std::vector<FieldElement> pt(m_), mono(b);
    for (std::uint64_t idx = 0; idx < space_.size(); ++idx) {
      space_.coords(idx, pt);
      basis_.eval(field_, pt, mono);
      FieldElement* o = out.data() + idx * w;
      for (std::size_t k = 0; k < w; ++k) o[k] = FieldElement{};
      for (std::size_t i = 0; i < b; ++i) {
        if (mono[i].value == 0) continue;
        const FieldElement* c = coeffs.data() + i * w;
        for (std::size_t k = 0; k < w; ++k) o[k] += field_.mul(mono[i], c[k]);
      }
    }
  }

  // Value at one point of the polynomial with the given coefficient rows.
  void evaluate_at(std::span<const FieldElement> coeffs, std::size_t w, std::uint64_t idx,
                   std::span<FieldElement> out) const {
    const std::size_t b = basis_.size();
    std::vector<FieldElement> pt(m_), mono(b);
    space_.coords(idx, pt);
    basis_.eval(field_, pt, mono);
    for (std::size_t k = 0; k < w; ++k) out[k] = FieldElement{};
    for (std::size_t i = 0; i < b; ++i) {
      if (mono[i].value == 0) continue;
      for (std::size_t k = 0; k < w; ++k) out[k] += field_.mul(mono[i], coeffs[i * w + k]);
    }
  }

 private:
  explicit RmCode(const RmParams& p)
      : field_(p.field), m_(p.m), d_(p.d), space_(p.q(), p.m), basis_(p.m, p.d) {
    const std::size_t b = basis_.size();
    EchelonBasis eb(field_, b);
    std::vector<FieldElement> pt(m_), mono(b);
    for (std::uint64_t idx = 0; idx < space_.size() && xi_.size() < b; ++idx) {
      space_.coords(idx, pt);
      basis_.eval(field_, pt, mono);
      if (eb.insert(mono)) xi_.push_back(idx);
    }
    if (xi_.size() != b) throw std::logic_error("rm: interpolation set incomplete");
    // V[j][i] = monomial i at xi_j; coefficients = V^{-1} values.
    Matrix v(b, b);
    for (std::size_t j = 0; j < b; ++j) {
      space_.coords(xi_[j], pt);
      basis_.eval(field_, pt, mono);
      for (std::size_t i = 0; i < b; ++i) v(j, i) = mono[i];
    }
    auto inv = mat_inverse(field_, v);
    if (!inv) throw std::logic_error("rm: interpolation matrix singular");
    inv_ = std::move(*inv);
  }

  Field field_;
  int m_, d_;
  PointSpace space_;
  MonomialBasis basis_;
  std::vector<std::uint64_t> xi_;
  Matrix inv_;
};

inline std::vector<FieldElement> flatten_message(const Message& msg, std::size_t b, int t) {
  if (msg.size() != b)
    throw std::invalid_argument("rm: message length " + std::to_string(msg.size()) +
                                " != " + std::to_string(b));
  std::vector<FieldElement> flat(b * t);
  for (std::size_t j = 0; j < b; ++j) {
    if (msg[j].size() != static_cast<std::size_t>(t))
      throw std::invalid_argument("rm: message entry has wrong width");
    for (int k = 0; k < t; ++k) flat[j * t + k] = msg[j][k];
  }
  return flat;
}

inline ParallelTable rm_encode(const RmParams& p, const Message& msg) {
  auto code = RmCode::shared(p);
  const std::size_t b = code->message_length();
  auto flat = flatten_message(msg, b, p.t);
  for (auto v : flat)
    if (!p.field.contains(v)) throw std::out_of_range("rm: message element outside field");
  auto coeffs = code->coefficients(flat, p.t);
  std::vector<FieldElement> out(p.num_points() * p.t);
  code->evaluate_all(coeffs, p.t, out);
  return ParallelTable(p, std::move(out));
}

// Entry j (0-based) of the systematic part.
inline std::vector<FieldElement> rm_systematic_read(const ParallelTable& tbl, std::size_t j) {
  auto code = RmCode::shared(tbl.params());
  const auto& xi = code->interpolation_set();
  if (j >= xi.size())
    throw std::out_of_range("rm: systematic index " + std::to_string(j) + " >= B=" +
                            std::to_string(xi.size()));
  auto v = tbl.at(xi[j]);
  return {v.begin(), v.end()};
}

// Interpolates from the degree-d set and checks the whole table agrees.
inline std::optional<Message> rm_fit_exact(const ParallelTable& tbl, int d) {
  RmParams p = tbl.params().with_degree(d);
  auto code = RmCode::shared(p);
  const std::size_t b = code->message_length();
  const std::size_t t = static_cast<std::size_t>(p.t);
  std::vector<FieldElement> vals(b * t);
  const auto& xi = code->interpolation_set();
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t k = 0; k < t; ++k) vals[j * t + k] = tbl.at(xi[j], static_cast<int>(k));
  auto coeffs = code->coefficients(vals, t);
  std::vector<FieldElement> out(t);
  for (std::uint64_t idx = 0; idx < tbl.size(); ++idx) {
    code->evaluate_at(coeffs, t, idx, out);
    for (std::size_t k = 0; k < t; ++k)
      if (out[k] != tbl.at(idx, static_cast<int>(k))) return std::nullopt;
  }
  Message msg(b);
  for (std::size_t j = 0; j < b; ++j) msg[j].assign(vals.begin() + j * t, vals.begin() + (j + 1) * t);
  return msg;
}

// Fraction of points where two tables disagree in any coordinate, as num/den.
inline std::pair<std::uint64_t, std::uint64_t> table_distance(const ParallelTable& a,
                                                              const ParallelTable& b) {
  if (a.size() != b.size() || a.width() != b.width())
    throw std::invalid_argument("rm: tables have different shapes");
  std::uint64_t diff = 0;
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    auto x = a.at(i), y = b.at(i);
    if (!std::equal(x.begin(), x.end(), y.begin())) ++diff;
  }
  return {diff, a.size()};
}

// Low-degree extension of k t-by-t matrices, zero-padded to length B.
// Entries are computed on demand from the coefficient tensor.
class MatrixTable {
 public:
  MatrixTable(const RmParams& p, const std::vector<Matrix>& mats) : params_(p) {
    code_ = RmCode::shared(p);
    const std::size_t b = code_->message_length();
    if (mats.size() > b)
      throw std::invalid_argument("rm: " + std::to_string(mats.size()) +
                                  " matrices exceed message length " + std::to_string(b));
    const std::size_t t = static_cast<std::size_t>(p.t);
    const std::size_t w = t * t;
    std::vector<FieldElement> vals(b * w);
    for (std::size_t j = 0; j < mats.size(); ++j) {
      if (mats[j].rows != t || mats[j].cols != t)
        throw std::invalid_argument("rm: matrix must be t x t");
      std::copy(mats[j].a.begin(), mats[j].a.end(), vals.begin() + j * w);
    }
    coeffs_ = code_->coefficients(vals, w);
  }

  const RmParams& params() const { return params_; }

  Matrix at(std::uint64_t idx) const {
    const std::size_t t = static_cast<std::size_t>(params_.t);
    Matrix m(t, t);
    code_->evaluate_at(coeffs_, t * t, idx, m.a);
    return m;
  }

 private:
  RmParams params_;
  std::shared_ptr<const RmCode> code_;
  std::vector<FieldElement> coeffs_;
};

inline MatrixTable matrix_encode(const RmParams& p, const std::vector<Matrix>& mats) {
  return MatrixTable(p, mats);
}

// z(p) = y(p) + M(p) x(p); a degree-2d table.
inline ParallelTable z_table_build(const ParallelTable& x, const ParallelTable& y,
                                   const MatrixTable& m) {
  const RmParams& p = x.params();
  if (!(y.params() == p) || !(m.params() == p))
    throw std::invalid_argument("rm: z-table inputs disagree on parameters");
  RmParams pz = p.with_degree(2 * p.d);
  const Field& f = p.field;
  const std::size_t t = static_cast<std::size_t>(p.t);
  std::vector<FieldElement> out(p.num_points() * t);
  for (std::uint64_t idx = 0; idx < p.num_points(); ++idx) {
    Matrix mp = m.at(idx);
    auto xv = x.at(idx), yv = y.at(idx);
    for (std::size_t r = 0; r < t; ++r) {
      FieldElement acc = yv[r];
      for (std::size_t c = 0; c < t; ++c) acc += f.mul(mp(r, c), xv[c]);
      out[idx * t + r] = acc;
    }
  }
  return ParallelTable(pz, std::move(out));
}

}  // namespace svpcp
