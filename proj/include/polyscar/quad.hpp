#pragma once

#include <cmath>
#include <ostream>

#include "polyscar/rational.hpp"

namespace polyscar {

/**
 * Exact element of the quadratic field Q(sqrt(s)): value = a + b*sqrt(s),
 * s a fixed square-free positive integer. s == 1 collapses to the rationals.
 * Mixed-s arithmetic is allowed only when one operand is rational.
 */
class Quad {
public:
  Quad() : a_(0), b_(0), s_(1) {}
  Quad(Ratio a) : a_(std::move(a)), b_(0), s_(1) {}
  Quad(long a) : a_(a), b_(0), s_(1) {}
  Quad(Ratio a, Ratio b, long s) : a_(std::move(a)), b_(std::move(b)), s_(s) {
    if (s_ < 1) throw Error(errc::domain, "Quad: s must be >= 1");
    if (s_ == 1) { a_ += b_; b_ = Ratio(0); }
    if (b_.is_zero()) s_ = 1;
  }

  static Quad sqrt_of(long s) { return Quad(Ratio(0), Ratio(1), s); }

  const Ratio& rat() const { return a_; }
  const Ratio& coef() const { return b_; }
  long s() const { return s_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  friend Quad operator+(const Quad& x, const Quad& y) {
    long s = merge_s(x, y);
    return Quad(x.a_ + y.a_, x.b_ + y.b_, s);
  }
  friend Quad operator-(const Quad& x, const Quad& y) {
    long s = merge_s(x, y);
    return Quad(x.a_ - y.a_, x.b_ - y.b_, s);
  }
  Quad operator-() const { return Quad(-a_, -b_, s_); }
  friend Quad operator*(const Quad& x, const Quad& y) {
    long s = merge_s(x, y);
    return Quad(x.a_ * y.a_ + x.b_ * y.b_ * Ratio(s), x.a_ * y.b_ + x.b_ * y.a_, s);
  }
  friend Quad operator/(const Quad& x, const Quad& y) {
    if (y.is_zero()) throw Error(errc::domain, "Quad: division by zero");
    long s = merge_s(x, y);
    Ratio norm = y.a_ * y.a_ - y.b_ * y.b_ * Ratio(s); // conj product
    if (norm.is_zero()) throw Error(errc::internal, "Quad: zero field norm (s not square-free?)");
    Quad num = x * Quad(y.a_, -y.b_, s);
    return Quad(num.a_ / norm, num.b_ / norm, s);
  }
  Quad& operator+=(const Quad& o) { return *this = *this + o; }
  Quad& operator-=(const Quad& o) { return *this = *this - o; }
  Quad& operator*=(const Quad& o) { return *this = *this * o; }

  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2 * s.
    Ratio lhs = a_ * a_, rhs = b_ * b_ * Ratio(s_);
    if (lhs == rhs) return 0; // only possible when s is a perfect square
    bool a_dominates = lhs > rhs;
    return a_dominates ? sa : sb;
  }

  friend bool operator==(const Quad& x, const Quad& y) { return (x - y).is_zero(); }
  friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }
  friend bool operator<(const Quad& x, const Quad& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Quad& x, const Quad& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const Quad& x, const Quad& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const Quad& x, const Quad& y) { return (x - y).sign() >= 0; }

  Quad abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(double(s_)); }

  std::string str() const {
    if (b_.is_zero()) return a_.str();
    std::string out = a_.is_zero() ? std::string() : a_.str();
    if (!out.empty() && b_.sign() > 0) out += "+";
    out += b_.str() + "*sqrt(" + std::to_string(s_) + ")";
    return out;
  }
  friend std::ostream& operator<<(std::ostream& os, const Quad& q) { return os << q.str(); }

private:
  static long merge_s(const Quad& x, const Quad& y) {
    if (x.b_.is_zero()) return y.s_;
    if (y.b_.is_zero()) return x.s_;
    if (x.s_ != y.s_) throw Error(errc::internal, "Quad: mixing different radicands");
    return x.s_;
  }

  Ratio a_, b_;
  long s_;
};

struct Vec2Q {
  Quad x, y;

  friend Vec2Q operator+(const Vec2Q& u, const Vec2Q& v) { return {u.x + v.x, u.y + v.y}; }
  friend Vec2Q operator-(const Vec2Q& u, const Vec2Q& v) { return {u.x - v.x, u.y - v.y}; }
  Vec2Q operator-() const { return {-x, -y}; }
  friend Vec2Q operator*(const Quad& c, const Vec2Q& v) { return {c * v.x, c * v.y}; }
  friend bool operator==(const Vec2Q& u, const Vec2Q& v) { return u.x == v.x && u.y == v.y; }
  friend bool operator!=(const Vec2Q& u, const Vec2Q& v) { return !(u == v); }

  Quad dot(const Vec2Q& v) const { return x * v.x + y * v.y; }
  Quad cross(const Vec2Q& v) const { return x * v.y - y * v.x; }
  Quad norm_sq() const { return x * x + y * y; }
  double dx() const { return x.to_double(); }
  double dy() const { return y.to_double(); }
};

// Exact linear map (the EPP placements are all orthogonal, but the struct
// does not assume it).
struct Mat2Q {
  Quad m00, m01, m10, m11;

  Vec2Q apply(const Vec2Q& v) const {
    return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
  }
  Mat2Q compose(const Mat2Q& o) const { // this * o
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Quad det() const { return m00 * m11 - m01 * m10; }

  static Mat2Q identity() { return {Quad(1), Quad(0), Quad(0), Quad(1)}; }
  // Rotation with exact cos/sin values supplied by the caller.
  static Mat2Q rotation(const Quad& c, const Quad& s) { return {c, -s, s, c}; }
  // Reflection across the line through the origin at angle t, given cos(2t), sin(2t).
  static Mat2Q reflection(const Quad& c2, const Quad& s2) { return {c2, s2, s2, -c2}; }
};

} // namespace polyscar
