#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyscar/rational.hpp"

namespace polyscar {

/**
 * Continued-fraction machinery and the period-reduction procedure.
 *
 * Irrational targets are carried symbolically together with a 50-digit
 * decimal expansion; all error bounds are evaluated in exact rational
 * arithmetic against that expansion.
 */

namespace constants {
// 50 decimal digits.
inline const char* SQRT2 = "1.41421356237309504880168872420969807856967187537694";
inline const char* SQRT3 = "1.73205080756887729352744634150587236694280525381038";
inline const char* INV_SQRT2 = "0.70710678118654752440084436210484903928483593768847";
inline constexpr int DECIMAL_DIGITS = 50;
} // namespace constants

struct CfApprox {
  std::string target_tag;          // "sqrt2", "sqrt3", or "decimal:<literal>"
  Ratio target_value;              // exact rational stand-in (50-digit truncation)
  std::vector<Ratio> convergents;  // p_k / q_k, denominators strictly increasing
  std::vector<Ratio> epsilons;     // |target - p_k/q_k|, exact vs. target_value

  const Ratio& best() const { return convergents.back(); }
};

namespace detail {

inline Ratio resolve_constant(const std::string& tag) {
  if (tag == "sqrt2" || tag == "sqrt(2)") return Ratio::parse(constants::SQRT2);
  if (tag == "sqrt3" || tag == "sqrt(3)") return Ratio::parse(constants::SQRT3);
  if (tag == "1/sqrt2" || tag == "inv_sqrt2") return Ratio::parse(constants::INV_SQRT2);
  if (tag.rfind("decimal:", 0) == 0) return Ratio::parse(tag.substr(8));
  // Accept bare decimal literals as well.
  if (!tag.empty() && (isdigit(static_cast<unsigned char>(tag[0])) || tag[0] == '-' ||
                       tag[0] == '.' || tag[0] == '+'))
    return Ratio::parse(tag);
  throw Error(errc::config, "unsupported irrational constant tag: " + tag);
}

// Partial quotients of a nonnegative rational, standard Euclidean loop.
inline std::vector<BigInt> partial_quotients(Ratio x, size_t max_terms) {
  std::vector<BigInt> a;
  BigInt p = x.num(), q = x.den();
  while (q != 0 && a.size() < max_terms) {
    BigInt quo = p / q;
    if (p < 0 && quo * q != p) --quo; // floor for negative numerators
    a.push_back(quo);
    BigInt rem = p - quo * q;
    p = q;
    q = rem;
  }
  return a;
}

} // namespace detail

/**
 * First `count` continued-fraction convergents of the target constant,
 * with exact absolute errors. Denominators are capped at 10^20 so the
 * 50-digit expansion always dominates the truncation error.
 */
inline CfApprox convergents(const std::string& target, int count) {
  if (count < 1) throw Error(errc::domain, "convergents: count must be >= 1");
  CfApprox out;
  out.target_tag = target;
  out.target_value = detail::resolve_constant(target);

  auto a = detail::partial_quotients(out.target_value, static_cast<size_t>(count));
  BigInt pm1 = 1, pm0 = 0, qm1 = 0, qm0 = 1; // p_{-1}, p_{-2}, ...
  const BigInt qcap = BigInt("100000000000000000000");
  for (const auto& ak : a) {
    BigInt p = ak * pm1 + pm0;
    BigInt q = ak * qm1 + qm0;
    if (q > qcap)
      throw Error(errc::resource, "convergents: denominator cap exceeded; best q=" + qm1.str());
    out.convergents.emplace_back(p, q);
    out.epsilons.push_back((out.target_value - out.convergents.back()).abs());
    pm0 = pm1; pm1 = p;
    qm0 = qm1; qm1 = q;
  }
  if (out.convergents.size() < static_cast<size_t>(count))
    throw Error(errc::resource, "convergents: target is rational with a shorter expansion");
  return out;
}

/**
 * Best rational approximation p/q of angle/pi with |angle/pi - p/q| < tolerance,
 * q minimal among CF convergents. `angle_over_pi` is exact if the angle is a
 * rational multiple of pi, else a decimal literal of the ratio.
 */
inline Ratio approximate_angle(const Ratio& angle_over_pi, const Ratio& tolerance) {
  if (tolerance.sign() <= 0) throw Error(errc::domain, "approximate_angle: tolerance must be > 0");
  if (angle_over_pi <= Ratio(0) || angle_over_pi >= Ratio(1))
    throw Error(errc::domain, "approximate_angle: angle must lie in (0, pi)");
  // The constant table carries 50 digits; below that we cannot certify.
  Ratio floor_tol(BigInt(1), boost::multiprecision::pow(BigInt(10), constants::DECIMAL_DIGITS - 5));
  if (tolerance < floor_tol)
    throw Error(errc::resource,
                "approximate_angle: tolerance below available precision; best achievable ~1e-45");

  auto quotients = detail::partial_quotients(angle_over_pi, 64);
  BigInt pm1 = 1, pm0 = 0, qm1 = 0, qm0 = 1;
  Ratio best_err;
  const BigInt qcap = BigInt("100000000000000000000");
  for (const auto& ak : quotients) {
    BigInt p = ak * pm1 + pm0;
    BigInt q = ak * qm1 + qm0;
    Ratio cand(p, q);
    best_err = (angle_over_pi - cand).abs();
    if (best_err < tolerance) return cand;
    if (q > qcap) break;
    pm0 = pm1; pm1 = p;
    qm0 = qm1; qm1 = q;
  }
  throw Error(errc::resource,
              "approximate_angle: tolerance not reached; best |err| = " + best_err.str());
}

inline Ratio approximate_angle(const std::string& angle_over_pi, const Ratio& tolerance) {
  return approximate_angle(detail::resolve_constant(angle_over_pi), tolerance);
}

/**
 * Euclidean reduction witness: given a lattice relation coefficient
 * P/q1j (P coprime to q1j), the remainder chain b_1 > b_2 > ... > 1
 * certifies that D1/q1j is itself a lattice vector. An empty chain means
 * q1j == 1; a leading 0 means q1j already divides the numerator.
 */
struct ReductionWitness {
  BigInt numerator;            // P = p1j * q2j * qj (after clearing the divisor)
  BigInt divisor;              // q1j
  std::vector<BigInt> chain;   // Appendix-A remainders
  Ratio certified;             // 1/q1j, the certified multiple of D1
};

inline ReductionWitness reduce_period(const Ratio& coefficient, const BigInt& divisor) {
  if (divisor <= 0) throw Error(errc::domain, "reduce_period: divisor must be positive");
  ReductionWitness w;
  w.divisor = divisor;
  w.certified = Ratio(BigInt(1), divisor);
  // coefficient = P / q1j with the stated divisor; recover P exactly.
  if (divisor % coefficient.den() != 0)
    throw Error(errc::domain, "reduce_period: divisor incompatible with coefficient");
  w.numerator = boost::multiprecision::abs(coefficient.num()) * (divisor / coefficient.den());
  if (divisor == 1) return w; // D1 itself, nothing to prove

  BigInt r = w.numerator % divisor;
  if (r == 0) {
    w.chain.push_back(0); // exact divisibility, certified immediately
    return w;
  }
  if (boost::multiprecision::gcd(w.numerator, divisor) != 1)
    throw Error(errc::domain, "reduce_period: numerator and divisor are not coprime");
  BigInt a = divisor, b = r;
  w.chain.push_back(b);
  while (b != 1) {
    BigInt nb = a % b;
    a = b;
    b = nb;
    w.chain.push_back(b);
  }
  return w;
}

} // namespace polyscar
