#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace svpcp {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

// Accepts "p/q", "p" or a short decimal such as "0.25".
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      std::int64_t num = std::stoll(s.substr(0, slash));
      std::int64_t den = std::stoll(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string frac = s.substr(dot + 1);
    if (frac.size() > 12) throw std::invalid_argument("too many decimals");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::string whole = s.substr(0, dot);
    bool neg = !whole.empty() && whole[0] == '-';
    std::int64_t w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
    std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    std::int64_t num = std::llabs(w) * den + f;
    return Rational(neg ? -num : num, den);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

}  // namespace svpcp
