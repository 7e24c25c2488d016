#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace svpcp {

// One oracle access: which oracle (by name) and which position in it.
struct Query {
  std::string oracle;
  std::uint64_t position = 0;
  friend bool operator==(const Query&, const Query&) = default;
};

using Coins = std::vector<std::uint64_t>;

struct Transcript {
  Coins coins;
  std::string branch;
  std::vector<Query> queries;
  bool accepted = false;
  std::string reason;

  std::string to_string() const {
    std::ostringstream os;
    os << "coins=";
    for (std::size_t i = 0; i < coins.size(); ++i) os << (i ? "," : "") << coins[i];
    os << " branch=" << branch << " queries=" << queries.size() << " [";
    for (std::size_t i = 0; i < queries.size() && i < 16; ++i)
      os << (i ? " " : "") << queries[i].oracle << "@" << queries[i].position;
    if (queries.size() > 16) os << " ...";
    os << "] " << (accepted ? "ACCEPT" : "REJECT");
    if (!reason.empty()) os << " (" << reason << ")";
    return os.str();
  }

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

}  // namespace svpcp
