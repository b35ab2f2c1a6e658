#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "polyscar/skeleton.hpp"

namespace polyscar {

inline constexpr double PI = 3.14159265358979323846264338327950288;

struct SpectrumEntry {
  Family family = Family::Rectangle;
  Variant variant = Variant::None;
  std::string skeleton;            // "aperiodic" or "periodic:<label>"
  long m = 0, n = 0;
  std::map<std::string, long> aux; // c, k, l, q, r, m2, n2, gamma, omega ...
  std::array<double, 2> momentum{0, 0};
  double e0 = 0;                   // semiclassical correction, 0 on aperiodic skeletons
  double energy = 0;
  double validity = 0;             // sqrt(2 e0)/|p_parallel|; soft asymptotic flag
};

struct CompatibilityReport {
  bool satisfied = false;
  std::pair<BigInt, BigInt> r_s{0, 1}; // C2 D1 cos(alpha)/(C1 D2), reduced
  std::pair<BigInt, BigInt> k_l{1, 1}; // rectangle / L-shape coprime pair
  std::string constraint;
};

namespace detail {

inline long variant_scale(const PeriodLattice& lat) {
  if (lat.family != Family::Triangle) return 1;
  if (!lat.approx) throw Error(errc::needs_approximation, "triangle spectrum needs u/q");
  const Ratio& uq = *lat.approx;
  BigInt s = (lat.variant == Variant::Q) ? uq.den() : uq.num();
  return s.convert_to<long>();
}

} // namespace detail

/**
 * Aperiodic-skeleton level for the given quantum numbers. The momentum is the
 * solution of p.D1 = 2 pi C1 m, p.D2 = 2 pi C2 n, which reduces to the
 * closed family forms; the energy is purely kinetic.
 */
inline SpectrumEntry spectrum_aperiodic(const BilliardSpec& spec, const PeriodLattice& lat,
                                        long m, long n) {
  if (m == 0 && n == 0) throw Error(errc::domain, "spectrum_aperiodic: |m|+|n| must be > 0");
  SpectrumEntry e;
  e.family = spec.family;
  e.variant = lat.variant;
  e.skeleton = "aperiodic";
  e.m = m;
  e.n = n;
  switch (spec.family) {
    case Family::Triangle: {
      if (m == 0 || n == 0)
        throw Error(errc::kind,
                    "triangle aperiodic skeleton requires m != 0 and n != 0 "
                    "(otherwise the skeleton is periodic)");
      long s = detail::variant_scale(lat);
      e.momentum = {PI * s * m, PI * s * n};
      e.energy = 0.5 * PI * PI * double(s) * double(s) * (double(m) * m + double(n) * n);
      break;
    }
    case Family::Parallelogram: {
      double q = lat.C1.convert_to<double>();
      e.momentum = {2.0 * PI / 3.0 * (m + n) * q, 2.0 * PI / std::sqrt(3.0) * (m - n) * q};
      e.energy = 8.0 * PI * PI * q * q / 9.0 *
                 (double(m) * m - double(m) * n + double(n) * n);
      break;
    }
    case Family::Rectangle: {
      double a = spec.size_a.to_double(), b = spec.size_b.to_double();
      e.momentum = {PI * m / a, PI * n / b};
      e.energy = 0.5 * PI * PI * (double(m) * m / (a * a) + double(n) * n / (b * b));
      break;
    }
    case Family::LShape: {
      double a = spec.la.to_double(), c = spec.lc.to_double();
      double alpha = spec.l_alpha().convert_to<double>();
      double zeta = spec.l_zeta().convert_to<double>();
      e.momentum = {PI * m * alpha / a, PI * n * zeta / c};
      e.energy = 0.5 * PI * PI *
                 (double(m) * m * alpha * alpha / (a * a) +
                  double(n) * n * zeta * zeta / (c * c));
      break;
    }
  }
  return e;
}

/**
 * Size-compatibility condition for quantizing on the periodic skeleton of
 * the given direction. Bouncing-ball directions and the triangle and
 * parallelogram families are unconstrained.
 */
inline CompatibilityReport check_compatibility(const BilliardSpec& spec,
                                               const DirectionClass& dir) {
  if (!dir.periodic) throw Error(errc::kind, "check_compatibility: aperiodic direction");
  CompatibilityReport rep;
  switch (spec.family) {
    case Family::Triangle: {
      rep.satisfied = true;
      rep.r_s = {0, 1}; // D1 orthogonal to the vertical skeleton: cos(alpha) = 0
      rep.constraint = "no restriction on the triangle (the ratio condition holds for all D_i)";
      return rep;
    }
    case Family::Parallelogram: {
      rep.satisfied = true;
      rep.r_s = {1, 2}; // C2 D1 cos(alpha) / (C1 D2) with D1 at 60 deg to d8
      rep.constraint = "no restriction on the parallelogram";
      return rep;
    }
    case Family::Rectangle: {
      Quad qx = dir.period->x / (Quad(2) * spec.size_a);
      Quad qy = dir.period->y / (Quad(2) * spec.size_b);
      BigInt q = boost::multiprecision::abs(qx.rat().num());
      BigInt r = boost::multiprecision::abs(qy.rat().num());
      if (q == 0 || r == 0) {
        rep.satisfied = true;
        rep.k_l = {1, 1};
        rep.constraint = "bouncing ball: no constraint on a, b";
        return rep;
      }
      // b^2/a^2 must be rational, = l q / (k r).
      Quad b2 = spec.size_b * spec.size_b;
      Quad a2 = spec.size_a * spec.size_a;
      Quad rho = b2 / a2;
      if (!rho.is_rational()) {
        rep.satisfied = false;
        rep.constraint = "b^2/a^2 is irrational; no coprime (k,l) realize b^2/a^2 = lq/(kr)";
        return rep;
      }
      Ratio lk = rho.rat() * Ratio(r) / Ratio(q); // l/k
      rep.satisfied = true;
      rep.k_l = {lk.den(), lk.num()};             // (k, l)
      rep.r_s = {lk.num() * q, lk.den() * r};
      Ratio rs(rep.r_s.first, rep.r_s.second);
      rep.r_s = {rs.num(), rs.den()};
      rep.constraint = "b^2/a^2 = l q/(k r) with (k,l)=(" + rep.k_l.first.str() + "," +
                       rep.k_l.second.str() + ")";
      return rep;
    }
    case Family::LShape: {
      bool bouncing = dir.direction.x.is_zero() || dir.direction.y.is_zero();
      if (bouncing) {
        rep.satisfied = true;
        rep.constraint = "bouncing ball: no constraint";
        return rep;
      }
      // c^2/a^2 = (l/k) zeta^2/(alpha delta)
      Ratio rho = (spec.lc * spec.lc) / (spec.la * spec.la);
      Ratio lk = rho * Ratio(spec.l_alpha() * spec.l_delta()) /
                 Ratio(spec.l_zeta() * spec.l_zeta());
      rep.satisfied = true;
      rep.k_l = {lk.den(), lk.num()};
      rep.constraint = "c^2/a^2 = (l/k) zeta^2/(alpha delta) with (k,l)=(" +
                       rep.k_l.first.str() + "," + rep.k_l.second.str() + ")";
      return rep;
    }
  }
  throw Error(errc::internal, "check_compatibility: unknown family");
}

/**
 * Rectangle quantum-number remapping (c,k,l,q,r,n) -> (m'', n'', m) with
 * m'' = ck + nr, n'' = cl - nq, m = c(kq + lr).
 */
inline std::array<long, 3> remap_quantum_numbers(long c, long k, long l, long q, long r, long n) {
  return {c * k + n * r, c * l - n * q, c * (k * q + l * r)};
}

// L-shape quantum-number remapping (gamma, k, l, omega; alpha, delta) -> (m, n, m'').
inline std::array<long, 3> remap_lshape(long gamma, long k, long l, long omega, long alpha,
                                        long delta) {
  long m = gamma * k + omega * delta;
  long n = gamma * l - omega * alpha;
  long m2 = m * alpha + n * delta;
  return {m, n, m2};
}

/**
 * Periodic-skeleton level. The momentum is quantized along the skeleton
 * period; e0 comes from the transverse period refined by the POC lattice.
 */
inline SpectrumEntry spectrum_periodic(const BilliardSpec& spec, const PeriodLattice& lat,
                                       const DirectionClass& dir, long m, long n) {
  auto rep = check_compatibility(spec, dir);
  if (!rep.satisfied)
    throw Error(errc::compatibility, "periodic quantization impossible: " + rep.constraint);
  SpectrumEntry e;
  e.family = spec.family;
  e.variant = lat.variant;
  e.m = m;
  e.n = n;
  switch (spec.family) {
    case Family::Triangle: {
      if (m < 1) throw Error(errc::domain, "triangle periodic skeleton: m >= 1");
      long s = detail::variant_scale(lat);
      e.skeleton = "periodic:D6";
      e.momentum = {0.0, PI * s * m}; // along the vertical skeleton
      e.e0 = 0.5 * PI * PI * double(s) * double(s) * double(n) * n;
      e.energy = 0.5 * PI * PI * double(s) * double(s) * (double(m) * m + double(n) * n);
      e.validity = m == 0 ? 0.0 : std::abs(double(n) / double(m));
      break;
    }
    case Family::Parallelogram: {
      if (m < std::labs(n))
        throw Error(errc::domain, "parallelogram periodic skeleton: m >= |n|");
      double q = lat.C1.convert_to<double>();
      e.skeleton = "periodic:d8";
      double p = 2.0 * PI / std::sqrt(3.0) * (m - n) * q;
      e.momentum = {0.0, p};
      e.e0 = 2.0 / 9.0 * PI * PI * double(m + n) * (m + n) * q * q;
      e.energy = PI * PI * q * q *
                 (2.0 / 3.0 * double(m - n) * (m - n) + 2.0 / 9.0 * double(m + n) * (m + n));
      e.validity = (m == n) ? 1e30 : std::abs(double(m + n) / (std::sqrt(3.0) * double(m - n)));
      break;
    }
    case Family::Rectangle: {
      if (m < 1) throw Error(errc::domain, "rectangle periodic skeleton: m >= 1");
      Quad qx = dir.period->x / (Quad(2) * spec.size_a);
      Quad qy = dir.period->y / (Quad(2) * spec.size_b);
      long q = qx.rat().num().convert_to<long>();
      long r = qy.rat().num().convert_to<long>();
      double a = spec.size_a.to_double(), b = spec.size_b.to_double();
      double wsq = double(q) * q * a * a + double(r) * r * b * b;
      e.skeleton = "periodic:D" + std::to_string(q) + std::to_string(r);
      e.aux["q"] = q;
      e.aux["r"] = r;
      if (q != 0 && r != 0) {
        // matching across the POCs quantizes m to multiples of kq + lr
        long k = rep.k_l.first.convert_to<long>(), l = rep.k_l.second.convert_to<long>();
        long unit = k * q + l * r;
        if (m % unit != 0)
          throw Error(errc::domain, "rectangle periodic skeleton: m must be a multiple of kq+lr=" +
                                        std::to_string(unit));
        e.aux["c"] = m / unit;
      }
      double pl = 2.0 * PI * m / (2.0 * std::sqrt(wsq));
      e.momentum = {pl * q * a / std::sqrt(wsq), pl * r * b / std::sqrt(wsq)};
      if (q == 0 || r == 0) {
        // bouncing ball: transverse quantization over the full side
        double across = (q == 0) ? a : b;
        e.e0 = 0.5 * PI * PI * double(n) * n / (across * across);
      } else {
        e.e0 = 0.5 * PI * PI * double(n) * n * wsq / (a * a * b * b);
      }
      e.energy = 0.5 * PI * PI * double(m) * m / wsq + e.e0;
      e.validity = std::sqrt(2.0 * e.e0) / pl;
      break;
    }
    case Family::LShape: {
      bool bouncing = dir.direction.x.is_zero() || dir.direction.y.is_zero();
      if (bouncing) {
        // bouncing-ball skeletons carry the aperiodic spectrum split into a
        // longitudinal momentum and a transverse correction
        auto base = spectrum_aperiodic(spec, lat, m, n);
        bool along_y = dir.direction.x.is_zero();
        e.skeleton = along_y ? "periodic:bounce-y" : "periodic:bounce-x";
        double pl = along_y ? base.momentum[1] : base.momentum[0];
        double pt = along_y ? base.momentum[0] : base.momentum[1];
        e.momentum = along_y ? std::array<double, 2>{0.0, pl} : std::array<double, 2>{pl, 0.0};
        e.e0 = 0.5 * pt * pt;
        e.energy = base.energy;
        e.validity = pl == 0 ? 1e30 : std::abs(pt / pl);
        break;
      }
      // diagonal D-skeleton: m plays gamma, n plays omega
      long gamma = m, omega = n;
      long k = rep.k_l.first.convert_to<long>(), l = rep.k_l.second.convert_to<long>();
      long alpha = spec.l_alpha().convert_to<long>();
      long delta = spec.l_delta().convert_to<long>();
      double a = spec.la.to_double(), d = spec.ld.to_double();
      double hyp = std::sqrt(a * a + d * d);
      long m2 = gamma * (k * alpha + l * delta);
      e.skeleton = "periodic:D";
      e.aux["gamma"] = gamma;
      e.aux["omega"] = omega;
      e.aux["m2"] = m2;
      double pl = PI * m2 / hyp;
      e.momentum = {pl * a / hyp, pl * d / hyp};
      double sin_per = d / hyp;
      e.e0 = 0.5 * PI * PI * double(omega) * omega * double(delta) * delta * double(alpha) *
             alpha / (a * a * sin_per * sin_per);
      e.energy = 0.5 * PI * PI * double(m2) * m2 / (hyp * hyp) + e.e0;
      e.validity = pl == 0 ? 1e30 : std::sqrt(2.0 * e.e0) / pl;
      break;
    }
  }
  return e;
}

// --- batch tables -----------------------------------------------------------

inline bool entry_less(const SpectrumEntry& a, const SpectrumEntry& b) {
  if (a.energy != b.energy) return a.energy < b.energy;
  if (a.m != b.m) return a.m < b.m;
  return a.n < b.n;
}

/**
 * Aperiodic spectrum table. Triangle quantum numbers are canonicalized to
 * 1 <= n < m (the antisymmetrized product form vanishes identically at m = n);
 * the other families
 * use the natural positive ranges.
 */
inline std::vector<SpectrumEntry> aperiodic_table(const BilliardSpec& spec,
                                                  const PeriodLattice& lat, long max_m,
                                                  long max_n) {
  if (max_m < 1 || max_n < 1) throw Error(errc::domain, "empty quantum-number range");
  std::vector<SpectrumEntry> out;
  for (long m = 1; m <= max_m; ++m) {
    for (long n = 1; n <= max_n; ++n) {
      if (spec.family == Family::Triangle && n >= m) continue;
      out.push_back(spectrum_aperiodic(spec, lat, m, n));
    }
  }
  std::sort(out.begin(), out.end(), entry_less);
  return out;
}

inline std::vector<SpectrumEntry> periodic_table(const BilliardSpec& spec,
                                                 const PeriodLattice& lat,
                                                 const DirectionClass& dir, long max_m,
                                                 long max_n) {
  if (max_m < 1) throw Error(errc::domain, "empty quantum-number range");
  long stride = 1;
  if (spec.family == Family::Rectangle) {
    Quad qx = dir.period->x / (Quad(2) * spec.size_a);
    Quad qy = dir.period->y / (Quad(2) * spec.size_b);
    long q = qx.rat().num().convert_to<long>();
    long r = qy.rat().num().convert_to<long>();
    if (q != 0 && r != 0) {
      auto rep = check_compatibility(spec, dir);
      if (!rep.satisfied)
        throw Error(errc::compatibility, "periodic quantization impossible: " + rep.constraint);
      stride = (rep.k_l.first * q + rep.k_l.second * r).convert_to<long>();
    }
  }
  std::vector<SpectrumEntry> out;
  for (long m = stride; m <= max_m * stride; m += stride)
    for (long n = 0; n <= max_n; ++n) {
      if (spec.family == Family::Parallelogram && m < n) continue;
      out.push_back(spectrum_periodic(spec, lat, dir, m, n));
    }
  std::sort(out.begin(), out.end(), entry_less);
  return out;
}

} // namespace polyscar
