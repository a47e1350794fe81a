#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost releases before 1.75 recurse forever on mixed rational/integer
// equality under C++20 rewritten comparisons. Exact overloads win overload
// resolution and sidestep the loop.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(int b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) { return a == rational<std::int64_t>(b); }
inline bool operator==(std::int64_t b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
}  // namespace boost

namespace bcrepair {

using Rational = boost::rational<std::int64_t>;

// Parses "p/q", "p" or a plain decimal such as "0.25".
inline Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty fraction");
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      std::size_t used = 0;
      const auto num = std::stoll(s.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(s);
      const auto den_str = s.substr(slash + 1);
      const auto den = std::stoll(den_str, &used);
      if (used != den_str.size()) throw std::invalid_argument(s);
      if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t used = 0;
      const auto num = std::stoll(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(s);
      std::int64_t den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      return Rational(num, den);
    }
    std::size_t used = 0;
    const auto num = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return Rational(num);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a fraction: '" + s + "'");
  }
}

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

inline bool is_integer(const Rational& q) { return q.denominator() == 1; }

// A nonnegative edge or cut capacity: an exact rational, or the Infinity
// sentinel. Infinity is never represented as a large finite number.
class Capacity {
 public:
  constexpr Capacity() = default;
  Capacity(Rational value) : value_(value) {}  // NOLINT: implicit by intent
  Capacity(std::int64_t value) : value_(value) {}  // NOLINT

  static Capacity infinity() {
    Capacity c;
    c.infinite_ = true;
    return c;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  const Rational& value() const {
    if (infinite_) throw std::logic_error("value() on infinite capacity");
    return value_;
  }

  Capacity& operator+=(const Capacity& o) {
    if (o.infinite_) infinite_ = true;
    if (!infinite_) value_ += o.value_;
    return *this;
  }
  friend Capacity operator+(Capacity a, const Capacity& b) { return a += b; }

  friend bool operator==(const Capacity& a, const Capacity& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const Capacity& a, const Capacity& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Capacity& a, const Capacity& b) { return !(b < a); }
  friend bool operator>(const Capacity& a, const Capacity& b) { return b < a; }
  friend bool operator>=(const Capacity& a, const Capacity& b) { return !(a < b); }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

inline std::string to_string(const Capacity& c) {
  return c.is_infinite() ? std::string("inf") : to_string(c.value());
}

inline std::ostream& operator<<(std::ostream& os, const Capacity& c) {
  return os << to_string(c);
}

inline std::int64_t lcm_of_denominators(std::initializer_list<Rational> values) {
  std::int64_t l = 1;
  for (const auto& v : values) l = std::lcm(l, v.denominator());
  return l;
}

}  // namespace bcrepair
