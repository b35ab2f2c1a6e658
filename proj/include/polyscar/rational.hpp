#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "polyscar/error.hpp"

namespace polyscar {

using BigInt = boost::multiprecision::cpp_int;

/**
 * Exact rational number over arbitrary-precision integers.
 *
 * Invariants: gcd(|num|, den) == 1 and den > 0 after every operation;
 * zero is represented as 0/1.
 */
class Ratio {
public:
  Ratio() : num_(0), den_(1) {}
  Ratio(long n) : num_(n), den_(1) {}
  Ratio(BigInt n) : num_(std::move(n)), den_(1) {}
  Ratio(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  Ratio(long n, long d) : num_(n), den_(d) { normalize(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  Ratio operator-() const { return Ratio(raw{}, -num_, den_); }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return Ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Ratio operator-(const Ratio& a, const Ratio& b) {
    return Ratio(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    return Ratio(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.num_ == 0) throw Error(errc::domain, "division by zero ratio");
    return Ratio(a.num_ * b.den_, a.den_ * b.num_);
  }
  Ratio& operator+=(const Ratio& o) { return *this = *this + o; }
  Ratio& operator-=(const Ratio& o) { return *this = *this - o; }
  Ratio& operator*=(const Ratio& o) { return *this = *this * o; }
  Ratio& operator/=(const Ratio& o) { return *this = *this / o; }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Ratio& a, const Ratio& b) { return !(a == b); }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }

  Ratio abs() const { return num_ < 0 ? -*this : *this; }

  BigInt floor() const {
    BigInt q = num_ / den_;
    if (num_ < 0 && q * den_ != num_) --q;
    return q;
  }

  double to_double() const {
    // Scale down huge operands first so the conversion stays in range.
    BigInt n = num_, d = den_;
    while (boost::multiprecision::abs(n) > BigInt(1) << 900 || d > BigInt(1) << 900) {
      n >>= 64;
      d >>= 64;
      if (d == 0) return 0.0;
    }
    return n.convert_to<double>() / d.convert_to<double>();
  }

  std::string str() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

  // Parses "p/q", "p", or a plain decimal like "-12.5".
  static Ratio parse(const std::string& text);

private:
  struct raw {};
  Ratio(raw, BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_ == 0) throw Error(errc::domain, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
    num_ /= g;
    den_ /= g;
  }

  BigInt num_, den_;
};

inline Ratio Ratio::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(errc::config, "empty numeric literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    return Ratio(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Ratio(BigInt(s));
  std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  bool neg = !ip.empty() && ip[0] == '-';
  if (neg || (!ip.empty() && ip[0] == '+')) ip = ip.substr(1);
  if (ip.empty()) ip = "0";
  BigInt den = 1;
  for (size_t i = 0; i < fp.size(); ++i) den *= 10;
  BigInt num = BigInt(ip) * den + (fp.empty() ? BigInt(0) : BigInt(fp));
  if (neg) num = -num;
  return Ratio(num, den);
}

inline BigInt lcm_pair(const BigInt& a, const BigInt& b) {
  return a / boost::multiprecision::gcd(a, b) * b;
}

// Least common multiple of a nonempty list of positive integers.
inline BigInt lcm_list(const std::vector<BigInt>& values) {
  if (values.empty()) throw Error(errc::domain, "lcm_list: empty list");
  BigInt l = 1;
  for (const auto& v : values) {
    if (v <= 0) throw Error(errc::domain, "lcm_list: nonpositive entry");
    l = lcm_pair(l, v);
  }
  return l;
}

} // namespace polyscar
