#pragma once

#include <cstdint>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace svpcp {

// Hard cap on circuit size for every builder.
inline constexpr std::uint64_t kMaxGates = std::uint64_t{1} << 24;

enum class GateKind : std::uint8_t { Input, Const, And, Or, Not };

inline const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::Input: return "INPUT";
    case GateKind::Const: return "CONST";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
  }
  return "?";
}

// For INPUT, a is the input index; for CONST, a is the value; NOT uses a only.
struct Gate {
  GateKind kind;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  friend bool operator==(const Gate&, const Gate&) = default;
};

using Wire = std::uint32_t;

class Circuit {
 public:
  Circuit() = default;
  Circuit(std::vector<Gate> gates, std::uint32_t inputs, Wire output)
      : gates_(std::move(gates)), inputs_(inputs), output_(output) {
    validate();
  }

  std::uint32_t input_count() const { return inputs_; }
  std::size_t size() const { return gates_.size(); }
  Wire output() const { return output_; }
  const std::vector<Gate>& gates() const { return gates_; }

  bool eval(std::span<const std::uint8_t> bits) const {
    if (bits.size() != inputs_) throw std::invalid_argument("circuit: wrong input length");
    std::vector<std::uint8_t> v(gates_.size());
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      const Gate& g = gates_[i];
      switch (g.kind) {
        case GateKind::Input: v[i] = bits[g.a] & 1u; break;
        case GateKind::Const: v[i] = static_cast<std::uint8_t>(g.a); break;
        case GateKind::And: v[i] = v[g.a] & v[g.b]; break;
        case GateKind::Or: v[i] = v[g.a] | v[g.b]; break;
        case GateKind::Not: v[i] = v[g.a] ^ 1u; break;
      }
    }
    return v[output_] != 0;
  }

  // Bit-sliced evaluation of up to 64 independent assignments.
  std::uint64_t eval_words(std::span<const std::uint64_t> words) const {
    if (words.size() != inputs_) throw std::invalid_argument("circuit: wrong input length");
    std::vector<std::uint64_t> v(gates_.size());
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      const Gate& g = gates_[i];
      switch (g.kind) {
        case GateKind::Input: v[i] = words[g.a]; break;
        case GateKind::Const: v[i] = g.a ? ~std::uint64_t{0} : 0; break;
        case GateKind::And: v[i] = v[g.a] & v[g.b]; break;
        case GateKind::Or: v[i] = v[g.a] | v[g.b]; break;
        case GateKind::Not: v[i] = ~v[g.a]; break;
      }
    }
    return v[output_];
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void validate() const {
    if (gates_.empty()) throw std::invalid_argument("circuit: no gates");
    if (output_ >= gates_.size()) throw std::invalid_argument("circuit: output out of range");
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      const Gate& g = gates_[i];
      switch (g.kind) {
        case GateKind::Input:
          if (g.a >= inputs_) throw std::invalid_argument("circuit: input index out of range");
          break;
        case GateKind::Const:
          if (g.a > 1) throw std::invalid_argument("circuit: constant must be 0 or 1");
          break;
        case GateKind::And:
        case GateKind::Or:
          if (g.b >= i) throw std::invalid_argument("circuit: gates not in topological order");
          [[fallthrough]];
        case GateKind::Not:
          if (g.a >= i) throw std::invalid_argument("circuit: gates not in topological order");
          break;
      }
    }
  }

  std::vector<Gate> gates_;
  std::uint32_t inputs_ = 0;
  Wire output_ = 0;
};

class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::uint32_t inputs, std::uint64_t cap = kMaxGates)
      : inputs_(inputs), cap_(cap) {
    if (inputs > cap) throw std::length_error("circuit: input count exceeds gate cap");
    gates_.reserve(inputs + 2);
    for (std::uint32_t i = 0; i < inputs; ++i) gates_.push_back({GateKind::Input, i, 0});
  }

  std::uint32_t input_count() const { return inputs_; }
  std::size_t size() const { return gates_.size(); }
  Wire input(std::uint32_t i) const {
    if (i >= inputs_) throw std::out_of_range("circuit: input index");
    return i;
  }

  Wire constant(bool v) {
    Wire& w = v ? one_ : zero_;
    if (w == kNone) w = push({GateKind::Const, v ? 1u : 0u, 0});
    return w;
  }

  Wire AND(Wire a, Wire b) {
    if (is_const(a, false) || is_const(b, false)) return constant(false);
    if (is_const(a, true)) return b;
    if (is_const(b, true) || a == b) return a;
    return push({GateKind::And, a, b});
  }

  Wire OR(Wire a, Wire b) {
    if (is_const(a, true) || is_const(b, true)) return constant(true);
    if (is_const(a, false)) return b;
    if (is_const(b, false) || a == b) return a;
    return push({GateKind::Or, a, b});
  }

  Wire NOT(Wire a) {
    if (is_const(a, false)) return constant(true);
    if (is_const(a, true)) return constant(false);
    if (gates_[a].kind == GateKind::Not) return gates_[a].a;
    return push({GateKind::Not, a, 0});
  }

  Wire XOR(Wire a, Wire b) {
    if (is_const(a, false)) return b;
    if (is_const(b, false)) return a;
    if (is_const(a, true)) return NOT(b);
    if (is_const(b, true)) return NOT(a);
    if (a == b) return constant(false);
    return AND(OR(a, b), NOT(AND(a, b)));
  }

  Wire XNOR(Wire a, Wire b) { return NOT(XOR(a, b)); }

  Wire and_all(std::span<const Wire> ws) { return reduce(ws, true); }
  Wire or_all(std::span<const Wire> ws) { return reduce(ws, false); }

  Wire parity(std::span<const Wire> ws) {
    if (ws.empty()) return constant(false);
    std::vector<Wire> cur(ws.begin(), ws.end());
    while (cur.size() > 1) {
      std::vector<Wire> next;
      for (std::size_t i = 0; i + 1 < cur.size(); i += 2) next.push_back(XOR(cur[i], cur[i + 1]));
      if (cur.size() % 2) next.push_back(cur.back());
      cur.swap(next);
    }
    return cur[0];
  }

  // bits[i] is bit i of the compared value.
  Wire equals_const(std::span<const Wire> bits, std::uint64_t value) {
    std::vector<Wire> lits;
    for (std::size_t i = 0; i < bits.size(); ++i)
      lits.push_back(value >> i & 1u ? bits[i] : NOT(bits[i]));
    return and_all(lits);
  }

  // Copies `c` with its inputs bound to `args`; returns the copy's output.
  Wire inline_circuit(const Circuit& c, std::span<const Wire> args) {
    if (args.size() != c.input_count()) throw std::invalid_argument("circuit: inline arity mismatch");
    std::vector<Wire> map(c.size());
    const auto& gs = c.gates();
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const Gate& g = gs[i];
      switch (g.kind) {
        case GateKind::Input: map[i] = args[g.a]; break;
        case GateKind::Const: map[i] = constant(g.a != 0); break;
        case GateKind::And: map[i] = AND(map[g.a], map[g.b]); break;
        case GateKind::Or: map[i] = OR(map[g.a], map[g.b]); break;
        case GateKind::Not: map[i] = NOT(map[g.a]); break;
      }
    }
    return map[c.output()];
  }

  Circuit finish(Wire out) && { return Circuit(std::move(gates_), inputs_, out); }

 private:
  static constexpr Wire kNone = ~Wire{0};

  bool is_const(Wire w, bool v) const { return w == (v ? one_ : zero_); }

  Wire push(Gate g) {
    if (gates_.size() >= cap_)
      throw std::length_error("circuit: gate budget of " + std::to_string(cap_) + " exceeded");
    gates_.push_back(g);
    return static_cast<Wire>(gates_.size() - 1);
  }

  Wire reduce(std::span<const Wire> ws, bool conj) {
    if (ws.empty()) return constant(conj);
    std::vector<Wire> cur(ws.begin(), ws.end());
    while (cur.size() > 1) {
      std::vector<Wire> next;
      for (std::size_t i = 0; i + 1 < cur.size(); i += 2)
        next.push_back(conj ? AND(cur[i], cur[i + 1]) : OR(cur[i], cur[i + 1]));
      if (cur.size() % 2) next.push_back(cur.back());
      cur.swap(next);
    }
    return cur[0];
  }

  std::uint32_t inputs_;
  std::uint64_t cap_;
  std::vector<Gate> gates_;
  Wire zero_ = kNone, one_ = kNone;
};

// k entries of t bits each; entry-major.
struct ParallelWord {
  std::size_t k = 0;
  int t = 1;
  std::vector<std::uint8_t> bits;

  ParallelWord() = default;
  ParallelWord(std::size_t k_, int t_) : k(k_), t(t_), bits(k_ * static_cast<std::size_t>(t_)) {}

  std::uint8_t at(std::size_t i, int coord) const { return bits[i * t + coord]; }
  std::uint8_t& at(std::size_t i, int coord) { return bits[i * t + coord]; }

  std::vector<std::uint8_t> coordinate(int coord) const {
    std::vector<std::uint8_t> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = at(i, coord);
    return v;
  }

  friend bool operator==(const ParallelWord&, const ParallelWord&) = default;
};

// Per-coordinate acceptance mask of c over a parallel word (bit j = coordinate j).
inline std::vector<std::uint64_t> parallel_eval(const Circuit& c, const ParallelWord& w) {
  if (w.k != c.input_count()) throw std::invalid_argument("circuit: parallel word length mismatch");
  std::vector<std::uint64_t> out;
  for (int base = 0; base < w.t; base += 64) {
    const int width = std::min(64, w.t - base);
    std::vector<std::uint64_t> words(w.k, 0);
    for (std::size_t i = 0; i < w.k; ++i)
      for (int j = 0; j < width; ++j)
        if (w.at(i, base + j)) words[i] |= std::uint64_t{1} << j;
    out.push_back(c.eval_words(words));
  }
  return out;
}

inline bool parallel_satisfies(const Circuit& c, const ParallelWord& w) {
  auto masks = parallel_eval(c, w);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const int width = std::min(64, w.t - static_cast<int>(i) * 64);
    const std::uint64_t full = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    if ((masks[i] & full) != full) return false;
  }
  return true;
}

// ---- text format: header, then one gate per line "id kind in1 in2" ----

inline std::string circuit_serialize(const Circuit& c) {
  std::ostringstream os;
  os << "CIRCUIT v1 inputs=" << c.input_count() << " gates=" << c.size() << " output=" << c.output()
     << "\n";
  const auto& gs = c.gates();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const Gate& g = gs[i];
    os << i << ' ' << gate_kind_name(g.kind) << ' ' << g.a << ' ';
    if (g.kind == GateKind::And || g.kind == GateKind::Or)
      os << g.b;
    else
      os << '-';
    os << '\n';
  }
  return os.str();
}

inline Circuit circuit_parse(const std::string& text) {
  std::istringstream is(text);
  std::string magic, ver, in_s, g_s, o_s;
  if (!(is >> magic >> ver >> in_s >> g_s >> o_s) || magic != "CIRCUIT" || ver != "v1")
    throw std::invalid_argument("circuit: bad header");
  auto field = [](const std::string& s, const std::string& key) {
    if (s.rfind(key + "=", 0) != 0) throw std::invalid_argument("circuit: expected " + key);
    return std::stoull(s.substr(key.size() + 1));
  };
  const auto inputs = field(in_s, "inputs"), count = field(g_s, "gates"), out = field(o_s, "output");
  if (count > kMaxGates) throw std::length_error("circuit: gate budget exceeded");
  std::vector<Gate> gates;
  gates.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t id;
    std::string kind, a, b;
    if (!(is >> id >> kind >> a >> b) || id != i) throw std::invalid_argument("circuit: bad gate line");
    Gate g{GateKind::Input, static_cast<std::uint32_t>(std::stoul(a)), 0};
    if (kind == "INPUT")
      g.kind = GateKind::Input;
    else if (kind == "CONST")
      g.kind = GateKind::Const;
    else if (kind == "NOT")
      g.kind = GateKind::Not;
    else if (kind == "AND" || kind == "OR") {
      g.kind = kind == "AND" ? GateKind::And : GateKind::Or;
      g.b = static_cast<std::uint32_t>(std::stoul(b));
    } else
      throw std::invalid_argument("circuit: unknown gate kind " + kind);
    gates.push_back(g);
  }
  return Circuit(std::move(gates), static_cast<std::uint32_t>(inputs), static_cast<Wire>(out));
}

inline std::string parallel_word_serialize(const ParallelWord& w) {
  std::ostringstream os;
  os << "PW v1 " << w.k << ' ' << w.t << '\n';
  for (std::size_t i = 0; i < w.k; ++i) {
    for (int j = 0; j < w.t; ++j) os << static_cast<char>('0' + w.at(i, j));
    os << '\n';
  }
  return os.str();
}

inline ParallelWord parallel_word_parse(const std::string& text) {
  std::istringstream is(text);
  std::string magic, ver;
  std::size_t k;
  int t;
  if (!(is >> magic >> ver >> k >> t) || magic != "PW" || ver != "v1" || t < 1)
    throw std::invalid_argument("parallel word: bad header");
  ParallelWord w(k, t);
  for (std::size_t i = 0; i < k; ++i) {
    std::string row;
    if (!(is >> row) || row.size() != static_cast<std::size_t>(t))
      throw std::invalid_argument("parallel word: bad row");
    for (int j = 0; j < t; ++j) {
      if (row[j] != '0' && row[j] != '1') throw std::invalid_argument("parallel word: bad bit");
      w.at(i, j) = static_cast<std::uint8_t>(row[j] - '0');
    }
  }
  return w;
}

}  // namespace svpcp
