#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyscar/cf.hpp"
#include "polyscar/quad.hpp"

namespace polyscar {

enum class Family { Triangle, Parallelogram, Rectangle, LShape };
enum class BoundaryCond { Dirichlet, Neumann };
enum class Variant { U, Q, None };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Triangle: return "triangle";
    case Family::Parallelogram: return "parallelogram";
    case Family::Rectangle: return "rectangle";
    case Family::LShape: return "lshape";
  }
  return "?";
}

/**
 * One billiard from the four supported families.
 *
 * Triangle: the right triangle with angles pi/8, 3pi/8, pi/2, placed with the
 * pi/8 vertex O at the origin, F = (sqrt2+1, 0), H = (sqrt2+1, 1). Sizes are
 * fixed by the angles.
 *
 * Parallelogram: unit side at pi/3 to a side of rational length L (paper's
 * representative is L = 4); vertices O, (L,0), (L+1/2, sqrt3/2), (1/2, sqrt3/2).
 *
 * Rectangle: [0,a] x [0,b]; a, b may be quadratic irrationals.
 *
 * L-shape: big rectangle [0,a] x [0,c] minus the open notch (b,a] x (d,c],
 * with b/a = beta/alpha and d/c = delta/zeta in lowest terms. The coprime
 * pairs are derived from the sizes.
 */
struct BilliardSpec {
  Family family = Family::Rectangle;
  std::vector<Ratio> angles; // interior angles as multiples of pi

  // rectangle sides (also used as the L-shape bounding box when family == LShape)
  Quad size_a{Ratio(1)}, size_b{Ratio(1)};
  // parallelogram long side
  Ratio L{4};
  // L-shape sizes (rational: the doubly-rational requirement)
  Ratio la, lb, lc, ld;

  static BilliardSpec bs_triangle() {
    BilliardSpec s;
    s.family = Family::Triangle;
    s.angles = {Ratio(1, 8), Ratio(3, 8), Ratio(1, 2)};
    return s;
  }
  static BilliardSpec rectangle(Quad a, Quad b) {
    BilliardSpec s;
    s.family = Family::Rectangle;
    s.angles = {Ratio(1, 2), Ratio(1, 2), Ratio(1, 2), Ratio(1, 2)};
    s.size_a = std::move(a);
    s.size_b = std::move(b);
    if (s.size_a.sign() <= 0 || s.size_b.sign() <= 0)
      throw Error(errc::config, "rectangle sides must be positive");
    return s;
  }
  static BilliardSpec parallelogram(Ratio Lside) {
    BilliardSpec s;
    s.family = Family::Parallelogram;
    s.angles = {Ratio(1, 3), Ratio(2, 3), Ratio(1, 3), Ratio(2, 3)};
    s.L = std::move(Lside);
    if (s.L.sign() <= 0) throw Error(errc::config, "parallelogram L must be positive");
    return s;
  }
  static BilliardSpec lshape(Ratio a, Ratio b, Ratio c, Ratio d) {
    BilliardSpec s;
    s.family = Family::LShape;
    // five right angles and the reentrant 3pi/2 corner
    s.angles = {Ratio(1, 2), Ratio(1, 2), Ratio(1, 2), Ratio(3, 2), Ratio(1, 2), Ratio(1, 2)};
    s.la = std::move(a); s.lb = std::move(b); s.lc = std::move(c); s.ld = std::move(d);
    if (!(Ratio(0) < s.lb && s.lb < s.la && Ratio(0) < s.ld && s.ld < s.lc))
      throw Error(errc::config, "lshape requires 0 < b < a and 0 < d < c");
    return s;
  }

  long quad_s() const {
    switch (family) {
      case Family::Triangle: return 2;
      case Family::Parallelogram: return 3;
      default: return 1;
    }
  }

  // Coprime L-shape exponents: b/a = beta/alpha, d/c = delta/zeta.
  BigInt l_alpha() const { return (lb / la).den(); }
  BigInt l_beta() const { return (lb / la).num(); }
  BigInt l_delta() const { return (ld / lc).num(); }
  BigInt l_zeta() const { return (ld / lc).den(); }

  // Counterclockwise billiard polygon in exact coordinates.
  std::vector<Vec2Q> polygon() const {
    const Quad r2 = Quad::sqrt_of(2);
    const Quad r3h = Quad(Ratio(0), Ratio(1, 2), 3); // sqrt3/2
    switch (family) {
      case Family::Triangle:
        return {{Quad(0), Quad(0)}, {r2 + Quad(1), Quad(0)}, {r2 + Quad(1), Quad(1)}};
      case Family::Parallelogram: {
        Quad Lq{L};
        return {{Quad(0), Quad(0)}, {Lq, Quad(0)},
                {Lq + Quad(Ratio(1, 2)), r3h}, {Quad(Ratio(1, 2)), r3h}};
      }
      case Family::Rectangle:
        return {{Quad(0), Quad(0)}, {size_a, Quad(0)}, {size_a, size_b}, {Quad(0), size_b}};
      case Family::LShape: {
        Quad a{la}, b{lb}, c{lc}, d{ld};
        return {{Quad(0), Quad(0)}, {a, Quad(0)}, {a, d}, {b, d}, {b, c}, {Quad(0), c}};
      }
    }
    throw Error(errc::internal, "polygon: unknown family");
  }
};

// C = lcm of the angle denominators q_k.
inline BigInt angle_lcm(const BilliardSpec& spec) {
  std::vector<BigInt> dens;
  for (const auto& ang : spec.angles) dens.push_back(ang.den());
  return lcm_list(dens);
}

// Genus of the invariant surface, g = 1 + (C/2) * sum (p_k - 1)/q_k.
inline BigInt genus(const BilliardSpec& spec) {
  if (spec.angles.empty()) throw Error(errc::domain, "genus: no angles");
  Ratio sum(0);
  Ratio angle_total(0);
  for (const auto& ang : spec.angles) {
    if (ang.sign() <= 0) throw Error(errc::domain, "genus: angles must be positive");
    sum += Ratio(ang.num() - 1, ang.den());
    angle_total += ang;
  }
  long n = static_cast<long>(spec.angles.size());
  if (angle_total != Ratio(n - 2))
    throw Error(errc::internal, "genus: angle sum is not (n-2)*pi");
  Ratio g = Ratio(1) + Ratio(angle_lcm(spec), 2) * sum;
  if (!g.is_integer())
    throw Error(errc::internal, "genus: non-integer result, malformed angle set");
  return g.num();
}

/**
 * One mirror image of the billiard in its elementary polygon pattern.
 * All four families unfold around a single fan vertex at the origin, so a
 * placement is an exact orthogonal linear map. eta is the plane-wave sign
 * of the boundary-condition assembly.
 */
struct EppImage {
  int index = 1;       // 1..2C, identity first
  Mat2Q map;           // billiard point -> EPP position
  int eta = 1;
  bool reflection = false;
};

inline std::vector<EppImage> build_epp(const BilliardSpec& spec, BoundaryCond bc) {
  if (bc != BoundaryCond::Dirichlet && bc != BoundaryCond::Neumann)
    throw Error(errc::unsupported_boundary, "only Dirichlet and Neumann are realizable");
  std::vector<EppImage> images;

  auto push = [&](const Mat2Q& m, bool refl) {
    EppImage im;
    im.index = static_cast<int>(images.size()) + 1;
    im.map = m;
    im.reflection = refl;
    im.eta = (bc == BoundaryCond::Dirichlet && refl) ? -1 : 1;
    images.push_back(im);
  };

  switch (spec.family) {
    case Family::Triangle: {
      // Dihedral group of order 16 at the pi/8 vertex: rotations by k*pi/4
      // and reflections across theta = k*pi/8. cos/sin live in Q(sqrt2).
      const Quad c45 = Quad(Ratio(0), Ratio(1, 2), 2), s45 = c45; // sqrt2/2
      const Quad one(1), zero(0);
      const Quad cs[8] = {one, c45, zero, -c45, -one, -c45, zero, c45};
      const Quad sn[8] = {zero, s45, one, s45, zero, -s45, -one, -s45};
      push(Mat2Q::identity(), false);
      for (int k = 1; k < 8; ++k) push(Mat2Q::rotation(cs[k], sn[k]), false);
      // reflection across angle k*pi/8 uses cos/sin of k*pi/4
      for (int k = 0; k < 8; ++k) push(Mat2Q::reflection(cs[k], sn[k]), true);
      break;
    }
    case Family::Parallelogram: {
      // Dihedral group of order 6 at the pi/3 vertex; entries in Q(sqrt3).
      const Quad half(Ratio(1, 2)), r3h = Quad(Ratio(0), Ratio(1, 2), 3);
      const Quad c[3] = {Quad(1), -half, -half};          // cos 0, 120, 240
      const Quad s[3] = {Quad(0), r3h, -r3h};             // sin 0, 120, 240
      push(Mat2Q::identity(), false);
      for (int k = 1; k < 3; ++k) push(Mat2Q::rotation(c[k], s[k]), false);
      for (int k = 0; k < 3; ++k) push(Mat2Q::reflection(c[k], s[k]), true);
      break;
    }
    case Family::Rectangle:
    case Family::LShape: {
      // Klein group at the right-angle corner: (x,y), (-x,y), (x,-y), (-x,-y).
      const Quad one(1);
      push(Mat2Q::identity(), false);
      push({-one, Quad(0), Quad(0), one}, true);
      push({one, Quad(0), Quad(0), -one}, true);
      push({-one, Quad(0), Quad(0), -one}, false);
      break;
    }
  }

  BigInt twoC = 2 * angle_lcm(spec);
  if (BigInt(static_cast<long>(images.size())) != twoC)
    throw Error(errc::internal, "build_epp: image count != 2C");
  return images;
}

enum class LatticeClass { IntegerCase, DrpbCase, IrrationalCase };

// Expansion of an extra period over the generators: vec = c1*D1 + c2*D2.
struct LatticeRelation {
  std::string name;
  Ratio c1, c2;
};

/**
 * Projected period lattice: two generators, the expansions of the remaining
 * independent periods over them, and the Appendix-A scale divisors C1, C2
 * entering the quantization p.D_i = 2*pi*C_i*(m|n).
 */
struct PeriodLattice {
  Family family = Family::Rectangle;
  Variant variant = Variant::None; // triangle u- or q-approximation
  Vec2Q D1, D2;
  BigInt C1{1}, C2{1};
  std::vector<LatticeRelation> relations;
  LatticeClass cls = LatticeClass::IntegerCase;
  std::optional<Ratio> approx; // u/q when a reduction RPB->DRPB was applied
};

namespace detail {
// gcd of relation numerators over a common denominator: the divisor C such
// that D/C is realized by integer combinations of the colinear periods.
inline BigInt span_divisor(const std::vector<Ratio>& coeffs) {
  BigInt den = 1;
  for (const auto& c : coeffs) den = lcm_pair(den, c.den());
  BigInt g = 0;
  for (const auto& c : coeffs) {
    BigInt num = boost::multiprecision::abs(c.num()) * (den / c.den());
    g = g == 0 ? num : boost::multiprecision::gcd(g, num);
  }
  return g == 0 ? BigInt(1) : den / boost::multiprecision::gcd(den, g);
}
} // namespace detail

inline PeriodLattice period_lattice(const BilliardSpec& spec,
                                    std::optional<Ratio> approx = std::nullopt,
                                    Variant variant = Variant::U) {
  PeriodLattice lat;
  lat.family = spec.family;
  switch (spec.family) {
    case Family::Rectangle: {
      lat.D1 = {Quad(2) * spec.size_a, Quad(0)};
      lat.D2 = {Quad(0), Quad(2) * spec.size_b};
      lat.cls = LatticeClass::IntegerCase;
      lat.variant = Variant::None;
      return lat;
    }
    case Family::Parallelogram: {
      lat.D1 = {Quad(Ratio(3, 2)), Quad(Ratio(0), Ratio(1, 2), 3)};
      lat.D2 = {Quad(Ratio(3, 2)), Quad(Ratio(0), Ratio(-1, 2), 3)};
      const Ratio& Lr = spec.L;
      lat.relations.push_back({"d8", Ratio(1), Ratio(-1)});     // d8 = D1 - D2
      lat.relations.push_back({"T_AB", Ratio(0), -Lr});         // unit-edge gluing = -L*D2
      lat.relations.push_back({"T_AB'", -Lr, Ratio(0)});        // mirror gluing = -L*D1
      lat.C1 = lat.C2 = Lr.den();
      lat.cls = Lr.is_integer() ? LatticeClass::IntegerCase : LatticeClass::DrpbCase;
      lat.variant = Variant::None;
      return lat;
    }
    case Family::LShape: {
      lat.D1 = {Quad(2) * Quad(spec.la), Quad(0)};
      lat.D2 = {Quad(0), Quad(2) * Quad(spec.lc)};
      Ratio rx = spec.lb / spec.la, ry = spec.ld / spec.lc;
      lat.relations.push_back({"D2x", rx, Ratio(0)});
      lat.relations.push_back({"D2y", Ratio(0), ry});
      lat.C1 = rx.den(); // alpha
      lat.C2 = ry.den(); // zeta
      lat.cls = (rx.is_integer() && ry.is_integer()) ? LatticeClass::IntegerCase
                                                     : LatticeClass::DrpbCase;
      lat.variant = Variant::None;
      return lat;
    }
    case Family::Triangle: {
      lat.D1 = {Quad(2), Quad(0)};
      lat.D2 = {Quad(0), Quad(2)};
      if (!approx) {
        // True sqrt2 coefficients: the projected lattice is dense.
        throw Error(errc::needs_approximation,
                    "triangle period lattice is IrrationalCase; supply a CF approximation u/q");
      }
      Ratio uq = *approx;
      if (uq.sign() <= 0) throw Error(errc::config, "triangle approx u/q must be positive");
      Ratio u(uq.num()), q(uq.den());
      lat.approx = uq;
      lat.variant = variant;
      // Substituted sqrt2: u-variant uses 2q/u in the geometry (periods D/u),
      // q-variant uses u/q (periods D/q). 1/sqrt2 = sqrt2/2 substitutes as sub/2.
      Ratio sub = (variant == Variant::Q) ? uq : Ratio(2) * q / u;
      Ratio half_sub = sub / Ratio(2);
      lat.relations.push_back({"D3", half_sub, half_sub});            // 45-degree edge pair
      lat.relations.push_back({"D4", half_sub, -half_sub});
      lat.relations.push_back({"D6", Ratio(0), sub + Ratio(1)});      // vertical octagon gluing
      lat.relations.push_back({"D9", Ratio(0), sub + Ratio(2)});
      // Scale divisors come from the colinear (orbit-generated) relations.
      lat.C2 = detail::span_divisor({sub + Ratio(1), sub + Ratio(2)});
      lat.C1 = lat.C2; // the EPP is symmetric under the quarter turn
      lat.cls = LatticeClass::DrpbCase;
      return lat;
    }
  }
  throw Error(errc::internal, "period_lattice: unknown family");
}

} // namespace polyscar
