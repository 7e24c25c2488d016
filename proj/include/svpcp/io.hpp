#pragma once

#include "svpcp/biased.hpp"
#include "svpcp/csp.hpp"
#include "svpcp/ldt.hpp"
#include "svpcp/pcpp.hpp"
#include "svpcp/rmcode.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace svpcp {

// Raised for any unreadable or inconsistent file; callers map it to the
// "malformed" exit status.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    out.push_back(l);
  }
  return out;
}

// key=value fields of a header line.
inline std::map<std::string, std::string> header_fields(const std::vector<std::string>& words, std::size_t from) {
  std::map<std::string, std::string> kv;
  for (std::size_t i = from; i < words.size(); ++i) {
    auto eq = words[i].find('=');
    if (eq == std::string::npos) throw FormatError("header field without '=': " + words[i]);
    kv[words[i].substr(0, eq)] = words[i].substr(eq + 1);
  }
  return kv;
}

inline long long to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad integer for " + what + ": '" + s + "'");
  }
}

inline FieldElement hex_elem(const Field& f, const std::string& s, const std::string& where) {
  try {
    return parse_hex(f, s);
  } catch (const std::exception& e) {
    throw FormatError(where + ": " + e.what());
  }
}

template <class F>
auto wrap(const std::string& what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(what + ": " + e.what());
  }
}

}  // namespace detail

// ---- RMTBL ----

inline std::string rmtbl_write(const ParallelTable& tbl) {
  const auto& p = tbl.params();
  std::ostringstream os;
  os << "RMTBL v1 e=" << p.field.bits() << " m=" << p.m << " d=" << p.d << " t=" << p.t << "\n";
  for (std::uint64_t i = 0; i < tbl.size(); ++i) {
    for (int k = 0; k < p.t; ++k) os << (k ? " " : "") << to_hex(tbl.at(i, k));
    os << "\n";
  }
  return os.str();
}

inline ParallelTable rmtbl_read(const std::string& text) {
  auto lines = detail::lines_of(text);
  if (lines.empty()) throw FormatError("rmtbl: empty file");
  auto head = detail::split_ws(lines[0]);
  if (head.size() != 6 || head[0] != "RMTBL" || head[1] != "v1") throw FormatError("rmtbl: bad header");
  auto kv = detail::header_fields(head, 2);
  for (const char* key : {"e", "m", "d", "t"})
    if (!kv.count(key)) throw FormatError(std::string("rmtbl: header lacks ") + key);
  RmParams p = detail::wrap("rmtbl", [&] {
    return RmParams(Field(static_cast<int>(detail::to_int(kv["e"], "e"))), static_cast<int>(detail::to_int(kv["m"], "m")),
                    static_cast<int>(detail::to_int(kv["d"], "d")), static_cast<int>(detail::to_int(kv["t"], "t")));
  });
  if (lines.size() - 1 != p.num_points())
    throw FormatError("rmtbl: expected " + std::to_string(p.num_points()) + " entries, found " +
                      std::to_string(lines.size() - 1));
  std::vector<FieldElement> data;
  data.reserve(p.num_points() * p.t);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto w = detail::split_ws(lines[i]);
    if (w.size() != static_cast<std::size_t>(p.t)) throw FormatError("rmtbl: line " + std::to_string(i + 1) + ": wrong width");
    for (const auto& x : w) data.push_back(detail::hex_elem(p.field, x, "rmtbl: line " + std::to_string(i + 1)));
  }
  return ParallelTable(p, std::move(data));
}

// ---- LORC ----

inline std::string lorc_write(const LineOracle& g) {
  std::ostringstream os;
  os << "LORC v1 e=" << g.field.bits() << " m=" << g.m << " d=" << g.d << " t=" << g.t << " n=" << g.lines.size()
     << "\n";
  for (const auto& [key, lp] : g.lines) {
    os << key;
    os << " " << lp.d;
    for (const auto& c : lp.c) os << " " << to_hex(c);
    os << "\n";
  }
  return os.str();
}

// Each record is `key deg c...` with t*(deg+1) coefficients; deg is the
// symbol's stored degree bound, which a malformed proof may exceed.
inline LineOracle lorc_read(const std::string& text) {
  auto lines = detail::lines_of(text);
  if (lines.empty()) throw FormatError("lorc: empty file");
  auto head = detail::split_ws(lines[0]);
  if (head.size() != 7 || head[0] != "LORC" || head[1] != "v1") throw FormatError("lorc: bad header");
  auto kv = detail::header_fields(head, 2);
  for (const char* key : {"e", "m", "d", "t", "n"})
    if (!kv.count(key)) throw FormatError(std::string("lorc: header lacks ") + key);
  Field f = detail::wrap("lorc", [&] { return Field(static_cast<int>(detail::to_int(kv["e"], "e"))); });
  LineOracle g(f, static_cast<int>(detail::to_int(kv["m"], "m")), static_cast<int>(detail::to_int(kv["d"], "d")),
               static_cast<int>(detail::to_int(kv["t"], "t")));
  const auto n = detail::to_int(kv["n"], "n");
  if (g.t < 1 || g.d < 0 || g.m < 1) throw FormatError("lorc: bad parameters");
  if (static_cast<long long>(lines.size()) - 1 != n) throw FormatError("lorc: record count differs from header");
  LineKey prev = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "lorc: line " + std::to_string(i + 1);
    auto w = detail::split_ws(lines[i]);
    if (w.size() < 2) throw FormatError(where + ": short record");
    const auto key = static_cast<LineKey>(detail::to_int(w[0], "key"));
    const int deg = static_cast<int>(detail::to_int(w[1], "degree"));
    if (deg < 0 || deg >= static_cast<int>(f.order())) throw FormatError(where + ": bad degree");
    if (i > 1 && key <= prev) throw FormatError(where + ": keys not strictly increasing");
    prev = key;
    if (w.size() != 2 + static_cast<std::size_t>(g.t) * (deg + 1)) throw FormatError(where + ": wrong coefficient count");
    LinePoly lp(g.t, deg);
    for (std::size_t j = 0; j < lp.c.size(); ++j) lp.c[j] = detail::hex_elem(f, w[2 + j], where);
    g.lines.emplace(key, std::move(lp));
  }
  return g;
}

// ---- BSET ----

inline std::string bset_write(const BiasedSet& s) {
  std::ostringstream os;
  os << "BSET v1 " << s.field.bits() << " " << s.m << " " << s.lambda_claimed.numerator() << " "
     << s.lambda_claimed.denominator() << " " << s.vectors.size() << "\n";
  auto ps = s.points();
  for (auto v : s.vectors) {
    auto c = ps.coords(v);
    for (int i = 0; i < s.m; ++i) os << (i ? " " : "") << to_hex(c[i]);
    os << "\n";
  }
  return os.str();
}

inline BiasedSet bset_read(const std::string& text) {
  auto lines = detail::lines_of(text);
  if (lines.empty()) throw FormatError("bset: empty file");
  auto head = detail::split_ws(lines[0]);
  if (head.size() != 7 || head[0] != "BSET" || head[1] != "v1") throw FormatError("bset: bad header");
  Field f = detail::wrap("bset", [&] { return Field(static_cast<int>(detail::to_int(head[2], "e"))); });
  const int m = static_cast<int>(detail::to_int(head[3], "m"));
  const auto num = detail::to_int(head[4], "lambda_num"), den = detail::to_int(head[5], "lambda_den");
  const auto n = detail::to_int(head[6], "n");
  if (m < 1 || den <= 0) throw FormatError("bset: bad parameters");
  if (static_cast<long long>(lines.size()) - 1 != n) throw FormatError("bset: point count differs from header");
  PointSpace ps = detail::wrap("bset", [&] { return PointSpace(f.order(), m); });
  std::vector<std::uint64_t> v;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto w = detail::split_ws(lines[i]);
    if (w.size() != static_cast<std::size_t>(m)) throw FormatError("bset: line " + std::to_string(i + 1) + ": wrong width");
    std::vector<FieldElement> c;
    for (const auto& x : w) c.push_back(detail::hex_elem(f, x, "bset: line " + std::to_string(i + 1)));
    v.push_back(ps.index(c));
  }
  return BiasedSet(f, m, std::move(v), Rational(num, den));
}

// ---- JSON instances ----

using Json = nlohmann::json;

namespace detail {

inline std::string table_bits(const SubTable& t) {
  std::string s;
  for (auto b : t.bits) s.push_back(b ? '1' : '0');
  return s;
}

inline SubTable table_from_bits(std::uint32_t size, const std::string& s) {
  if (s.size() != static_cast<std::size_t>(size) * size) throw FormatError("instance: truth table has wrong length");
  SubTable t(size);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw FormatError("instance: truth table must be a bit string");
    t.bits[i] = s[i] == '1';
  }
  return t;
}

inline Json field_json(const Field& f) {
  std::ostringstream os;
  os << std::hex << f.modulus();
  return Json{{"e", f.bits()}, {"modulus", os.str()}};
}

inline Field field_from_json(const Json& j) {
  return wrap("instance field", [&] {
    return Field(j.at("e").get<int>(), static_cast<std::uint32_t>(std::stoul(j.at("modulus").get<std::string>(), nullptr, 16)));
  });
}

inline Json vec_constraints_json(const VecCspInstance& g) {
  Json cs = Json::array();
  for (const auto& c : g.constraints) {
    if (c.kind == VecConstraint::Kind::Linear) {
      Json m = Json::array();
      for (const auto& x : c.matrix.a) m.push_back(to_hex(x));
      cs.push_back({{"type", "linear"}, {"u", c.u}, {"v", c.v}, {"matrix", m}});
    } else {
      cs.push_back({{"type", "parallel"}, {"u", c.u}, {"v", c.v}, {"sub", table_bits(c.sub)}, {"coords", c.coords}});
    }
  }
  return cs;
}

inline VecCspInstance vec_from_json(const Json& j) {
  Field f = field_from_json(j.at("field"));
  const int t = j.at("t").get<int>();
  VecCspInstance g(f, t, j.at("num_vars").get<std::uint32_t>());
  for (const auto& c : j.at("constraints")) {
    const auto type = c.at("type").get<std::string>();
    const auto u = c.at("u").get<std::uint32_t>(), v = c.at("v").get<std::uint32_t>();
    if (type == "linear") {
      const auto& m = c.at("matrix");
      if (m.size() != static_cast<std::size_t>(t) * t) throw FormatError("instance: matrix must be t x t");
      Matrix mm(t, t);
      for (std::size_t i = 0; i < m.size(); ++i) mm.a[i] = hex_elem(f, m[i].get<std::string>(), "instance matrix");
      g.constraints.push_back(VecConstraint::linear(u, v, mm));
    } else if (type == "parallel") {
      g.constraints.push_back(VecConstraint::parallel(u, v, table_from_bits(f.order(), c.at("sub").get<std::string>()),
                                                      c.at("coords").get<std::vector<std::uint32_t>>()));
    } else {
      throw FormatError("instance: unknown constraint type '" + type + "'");
    }
  }
  wrap("instance", [&] {
    g.validate();
    return 0;
  });
  return g;
}

}  // namespace detail

inline Json to_json(const ColoringInstance& g) {
  Json e = Json::array();
  for (auto [u, v] : g.edges) e.push_back({u, v});
  return {{"kind", "coloring"}, {"n", g.n}, {"edges", e}};
}

inline Json to_json(const CspInstance& g) {
  Json t = Json::array();
  for (const auto& x : g.tables) t.push_back(detail::table_bits(x));
  Json c = Json::array();
  for (const auto& x : g.constraints) c.push_back({x.u, x.v, x.table});
  return {{"kind", "csp"}, {"alphabet", g.alphabet}, {"num_vars", g.num_vars}, {"domain", g.domain}, {"tables", t}, {"constraints", c}};
}

inline Json to_json(const VecCspInstance& g) {
  return {{"kind", "veccsp"}, {"field", detail::field_json(g.field)}, {"t", g.t}, {"num_vars", g.num_vars},
          {"constraints", detail::vec_constraints_json(g)}};
}

inline Json to_json(const SVecCspInstance& g) {
  Json j = to_json(g.base);
  j["kind"] = "svcsp";
  j["k"] = g.k;
  return j;
}

inline std::string instance_kind(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw FormatError("instance: missing kind tag");
  return j["kind"].get<std::string>();
}

inline ColoringInstance coloring_from_json(const Json& j) {
  if (instance_kind(j) != "coloring") throw FormatError("instance: expected kind coloring");
  return detail::wrap("instance", [&] {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
    for (const auto& x : j.at("edges")) e.push_back({x.at(0).get<std::uint32_t>(), x.at(1).get<std::uint32_t>()});
    return ColoringInstance(j.at("n").get<std::uint32_t>(), std::move(e));
  });
}

inline CspInstance csp_from_json(const Json& j) {
  if (instance_kind(j) != "csp") throw FormatError("instance: expected kind csp");
  return detail::wrap("instance", [&] {
    CspInstance g;
    g.alphabet = j.at("alphabet").get<std::uint32_t>();
    g.num_vars = j.at("num_vars").get<std::uint32_t>();
    g.domain = j.at("domain").get<std::vector<std::uint32_t>>();
    for (const auto& t : j.at("tables")) g.tables.push_back(detail::table_from_bits(g.alphabet, t.get<std::string>()));
    for (const auto& c : j.at("constraints"))
      g.constraints.push_back({c.at(0).get<std::uint32_t>(), c.at(1).get<std::uint32_t>(), c.at(2).get<std::uint32_t>()});
    g.validate();
    return g;
  });
}

inline VecCspInstance veccsp_from_json(const Json& j) {
  if (instance_kind(j) != "veccsp") throw FormatError("instance: expected kind veccsp");
  return detail::wrap("instance", [&] { return detail::vec_from_json(j); });
}

inline SVecCspInstance svcsp_from_json(const Json& j) {
  if (instance_kind(j) != "svcsp") throw FormatError("instance: expected kind svcsp");
  return detail::wrap("instance", [&] {
    auto base = detail::vec_from_json(j);
    const auto k = j.at("k").get<std::uint32_t>();
    if (base.num_vars != 2 * k) throw FormatError("instance: svcsp needs 2k variables");
    return SVecCspInstance(std::move(base), k);
  });
}

inline Json to_json(const Field&, const VecAssignment& s) {
  Json vals = Json::array();
  for (const auto& v : s) {
    Json row = Json::array();
    for (auto x : v) row.push_back(to_hex(x));
    vals.push_back(row);
  }
  return {{"kind", "vec_assignment"}, {"values", vals}};
}

inline VecAssignment vec_assignment_from_json(const Field& f, const Json& j) {
  if (instance_kind(j) != "vec_assignment") throw FormatError("assignment: expected kind vec_assignment");
  return detail::wrap("assignment", [&] {
    VecAssignment s;
    for (const auto& row : j.at("values")) {
      VecValue v;
      for (const auto& x : row) v.push_back(detail::hex_elem(f, x.get<std::string>(), "assignment"));
      s.push_back(v);
    }
    return s;
  });
}

inline Json read_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw FormatError(what + ": invalid JSON: " + e.what());
  }
}

// ---- files and content hashes ----

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw FormatError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& data) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << data;
}

// ---- SVBUNDLE ----

// Everything a verifier needs to rebuild the circuits, plus the proof.
struct ProofConfig {
  int m = 2, d = 5;
  Rational lambda{1, 2};
  std::uint64_t seed = 1;

  std::uint64_t biased_seed() const { return derive_seed(seed, "biased", 0); }
  std::uint64_t ecc_seed() const { return derive_seed(seed, "ecc", 0); }
};

inline BiasedSet config_directions(const Field& f, const ProofConfig& c) {
  return biased_construct(f, c.m, c.lambda, c.biased_seed());
}

inline std::shared_ptr<const SvsatSetup> config_setup(const SVecCspInstance& g, const ProofConfig& c,
                                                      const BiasedSet& dirs) {
  RmParams p(g.field(), c.m, c.d, g.t());
  return svsat_setup(g, p, dirs, ecc_make(g.field().bits(), c.ecc_seed()));
}

struct SvsatArtifacts {
  SVecCspInstance instance;
  ProofConfig config;
  BiasedSet directions;
  SvsatInputs inputs;
  SvsatBundle bundle;
};

namespace detail {

inline std::string ckt_write(const MultiTestProof& p) {
  std::ostringstream os;
  os << "CKTP v1 " << p.backend << " " << p.ckt.size() << "\n";
  for (const auto& bits : p.ckt) {
    os << bits.size() << " ";
    for (auto b : bits) os << (b ? '1' : '0');
    os << "\n";
  }
  return os.str();
}

inline void ckt_read(const std::string& text, MultiTestProof& p) {
  auto lines = lines_of(text);
  if (lines.empty()) throw FormatError("ckt proof: empty file");
  auto head = split_ws(lines[0]);
  if (head.size() != 4 || head[0] != "CKTP" || head[1] != "v1") throw FormatError("ckt proof: bad header");
  p.backend = head[2];
  const auto n = to_int(head[3], "count");
  if (static_cast<long long>(lines.size()) - 1 != n) throw FormatError("ckt proof: count differs from header");
  p.ckt.clear();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto w = split_ws(lines[i]);
    if (w.empty() || w.size() > 2) throw FormatError("ckt proof: bad line " + std::to_string(i + 1));
    const auto len = to_int(w[0], "length");
    const std::string bits = w.size() == 2 ? w[1] : "";
    if (static_cast<long long>(bits.size()) != len) throw FormatError("ckt proof: length differs on line " + std::to_string(i + 1));
    std::vector<std::uint8_t> v;
    for (char c : bits) {
      if (c != '0' && c != '1') throw FormatError("ckt proof: non-bit character");
      v.push_back(c == '1');
    }
    p.ckt.push_back(std::move(v));
  }
}

}  // namespace detail

// Manifest lines: `SVBUNDLE v1`, `param <key> <value>`, then
// `file <role> <sha256> <name>` for every referenced file.
inline std::filesystem::path svbundle_write(const std::filesystem::path& dir, const SvsatArtifacts& a) {
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> files{
      {"instance", {"instance.json", to_json(a.instance).dump(1) + "\n"}},
      {"directions", {"directions.bset", bset_write(a.directions)}},
      {"xhat", {"xhat.rmtbl", rmtbl_write(a.inputs.xhat)}},
      {"yhat", {"yhat.rmtbl", rmtbl_write(a.inputs.yhat)}},
      {"zhat", {"zhat.rmtbl", rmtbl_write(a.bundle.zhat)}},
  };
  auto add_proof = [&](const std::string& name, const MultiTestProof& p) {
    for (std::size_t j = 0; j < p.ldt.size(); ++j)
      files.push_back({name + ".ldt" + std::to_string(j + 1), {name + "_ldt" + std::to_string(j + 1) + ".lorc", lorc_write(p.ldt[j])}});
    files.push_back({name + ".ckt", {name + "_ckt.txt", detail::ckt_write(p)}});
  };
  add_proof("pi1", a.bundle.pi1);
  add_proof("pi2", a.bundle.pi2);
  std::ostringstream man;
  man << "SVBUNDLE v1\n";
  man << "param e " << a.instance.field().bits() << "\n";
  man << "param m " << a.config.m << "\n";
  man << "param d " << a.config.d << "\n";
  man << "param t " << a.instance.t() << "\n";
  man << "param lambda " << to_string(a.config.lambda) << "\n";
  man << "param seed " << a.config.seed << "\n";
  man << "param ecc_seed " << a.config.ecc_seed() << "\n";
  for (const auto& [role, nf] : files) {
    write_file(dir / nf.first, nf.second);
    man << "file " << role << " " << sha256_hex(nf.second) << " " << nf.first << "\n";
  }
  auto path = dir / "bundle.svb";
  write_file(path, man.str());
  return path;
}

inline SvsatArtifacts svbundle_read(const std::filesystem::path& manifest) {
  auto lines = detail::lines_of(read_file(manifest));
  if (lines.empty() || lines[0] != "SVBUNDLE v1") throw FormatError("bundle: bad header");
  std::map<std::string, std::string> params, files;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto w = detail::split_ws(lines[i]);
    if (w.empty()) continue;
    if (w[0] == "param" && w.size() == 3) {
      params[w[1]] = w[2];
    } else if (w[0] == "file" && w.size() == 4) {
      auto text = read_file(manifest.parent_path() / w[3]);
      if (sha256_hex(text) != w[2]) throw FormatError("bundle: hash mismatch for " + w[3]);
      files[w[1]] = std::move(text);
    } else {
      throw FormatError("bundle: bad line " + std::to_string(i + 1));
    }
  }
  auto need = [&](const std::map<std::string, std::string>& m, const std::string& key) -> const std::string& {
    auto it = m.find(key);
    if (it == m.end()) throw FormatError("bundle: missing " + key);
    return it->second;
  };
  ProofConfig cfg;
  cfg.m = static_cast<int>(detail::to_int(need(params, "m"), "m"));
  cfg.d = static_cast<int>(detail::to_int(need(params, "d"), "d"));
  cfg.lambda = detail::wrap("bundle", [&] { return parse_rational(need(params, "lambda")); });
  cfg.seed = std::strtoull(need(params, "seed").c_str(), nullptr, 10);
  auto inst = svcsp_from_json(read_json(need(files, "instance"), "bundle instance"));
  if (detail::to_int(need(params, "e"), "e") != inst.field().bits() || detail::to_int(need(params, "t"), "t") != inst.t())
    throw FormatError("bundle: parameters disagree with the instance");
  if (need(params, "ecc_seed") != std::to_string(cfg.ecc_seed())) throw FormatError("bundle: ecc seed disagrees with seed");
  auto dirs = bset_read(need(files, "directions"));
  auto x = rmtbl_read(need(files, "xhat")), y = rmtbl_read(need(files, "yhat")), z = rmtbl_read(need(files, "zhat"));
  auto load_proof = [&](const std::string& name) {
    MultiTestProof p;
    detail::ckt_read(need(files, name + ".ckt"), p);
    for (int j = 1;; ++j) {
      auto it = files.find(name + ".ldt" + std::to_string(j));
      if (it == files.end()) break;
      p.ldt.push_back(lorc_read(it->second));
    }
    return p;
  };
  auto pi1 = load_proof("pi1");
  auto pi2 = load_proof("pi2");
  return SvsatArtifacts{std::move(inst), cfg, std::move(dirs), SvsatInputs{std::move(x), std::move(y)},
                        SvsatBundle{std::move(z), std::move(pi1), std::move(pi2)}};
}

}  // namespace svpcp
