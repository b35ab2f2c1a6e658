#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "polyscar/geometry.hpp"

namespace polyscar {

/**
 * The EPP as an exact translation surface: a plane polygon whose boundary
 * edges are identified pairwise by translations. Marked points are the
 * images of the billiard vertices (cone points and regular vertex images);
 * straight lines through them are the singular diagonals.
 */
struct SurfaceEdge {
  Vec2Q a, b;        // endpoints, polygon boundary ccw
  Vec2Q glue;        // translation mapping this edge onto its partner
  int partner = -1;  // index of the glued edge
};

enum class Where { Inside, Boundary, Outside };

// Exact crossing-number point location with explicit boundary detection.
inline Where polygon_locate(const std::vector<Vec2Q>& poly, const Vec2Q& p) {
  bool inside = false;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2Q& a = poly[i];
    const Vec2Q& b = poly[(i + 1) % n];
    Vec2Q ab = b - a, ap = p - a;
    Quad cross = ab.cross(ap);
    if (cross.sign() == 0) { // on the supporting line: inside the segment?
      Quad t_num = ap.dot(ab);
      if (t_num.sign() >= 0 && t_num <= ab.norm_sq()) return Where::Boundary;
    }
    bool a_below = a.y <= p.y, b_below = b.y <= p.y;
    if (a_below != b_below) {
      int side = cross.sign();
      if ((b.y > a.y && side > 0) || (b.y < a.y && side < 0)) inside = !inside;
    }
  }
  return inside ? Where::Inside : Where::Outside;
}

struct TranslationSurface {
  std::vector<Vec2Q> poly;      // EPP outline, ccw
  std::vector<SurfaceEdge> edges;
  std::vector<Vec2Q> marked;    // billiard-vertex images (boundary and interior)
  long s = 1;                   // quadratic field radicand

  using Where = polyscar::Where;
  Where locate(const Vec2Q& p) const { return polygon_locate(poly, p); }
};

namespace detail {

inline void glue_pair(TranslationSurface& s, size_t i, size_t j) {
  s.edges[i].partner = static_cast<int>(j);
  s.edges[j].partner = static_cast<int>(i);
  // Translation sends edge i onto edge j (and reverses orientation along
  // the boundary): midpoint-to-midpoint.
  Quad half(Ratio(1, 2));
  Vec2Q mi = half * (s.edges[i].a + s.edges[i].b);
  Vec2Q mj = half * (s.edges[j].a + s.edges[j].b);
  s.edges[i].glue = mj - mi;
  s.edges[j].glue = mi - mj;
}

inline void add_edges_from_poly(TranslationSurface& s) {
  size_t n = s.poly.size();
  for (size_t i = 0; i < n; ++i) {
    SurfaceEdge e;
    e.a = s.poly[i];
    e.b = s.poly[(i + 1) % n];
    s.edges.push_back(e);
  }
}

} // namespace detail

/**
 * Builds the EPP translation surface for a billiard spec, with the true
 * (unapproximated) geometry. Marked points are all billiard-vertex images.
 */
inline TranslationSurface build_surface(const BilliardSpec& spec) {
  TranslationSurface s;
  s.s = spec.quad_s();
  const Quad zero(0);
  switch (spec.family) {
    case Family::Triangle: {
      // Regular octagon: vertices (+-1, +-(sqrt2+1)), (+-(sqrt2+1), +-1).
      Quad r2p1 = Quad::sqrt_of(2) + Quad(1);
      Quad one(1);
      s.poly = {{r2p1, -one}, {r2p1, one},  {one, r2p1},  {-one, r2p1},
                {-r2p1, one}, {-r2p1, -one}, {-one, -r2p1}, {one, -r2p1}};
      detail::add_edges_from_poly(s);
      for (size_t i = 0; i < 4; ++i) detail::glue_pair(s, i, i + 4);
      // Marked points: octagon vertices (H images), edge midpoints (F images), O.
      s.marked = s.poly;
      for (size_t i = 0; i < 8; ++i) {
        Quad half(Ratio(1, 2));
        s.marked.push_back(half * (s.poly[i] + s.poly[(i + 1) % 8]));
      }
      s.marked.push_back({zero, zero});
      break;
    }
    case Family::Parallelogram: {
      Quad Lq{spec.L};
      Quad h = Quad(Ratio(0), Ratio(1, 2), 3);         // sqrt3/2
      Quad one(1), half(Ratio(1, 2));
      Vec2Q A{Lq, zero};
      Vec2Q B{Lq + half, h};
      Vec2Q C{half, h};
      Vec2Q sB{(one - Lq) * half, (Lq + one) * h};
      Vec2Q sA{-half * Lq, Lq * h};
      Vec2Q rB{-half * (Lq + Quad(2)), Lq * h};
      Vec2Q rC{-one, zero};
      auto mirror = [](const Vec2Q& v) { return Vec2Q{v.x, -v.y}; };
      s.poly = {A, B, C, sB, sA, rB, rC,
                mirror(rB), mirror(sA), mirror(sB), mirror(C), mirror(B)};
      detail::add_edges_from_poly(s);
      // Edge order: E1=A->B, E2=B->C, E3=C->sB, E4=sB->sA, E5=sA->rB, E6=rB->rC,
      // E7=rC->rB', E8=rB'->sA', E9=sA'->sB', E10=sB'->C', E11=C'->B', E12=B'->A.
      detail::glue_pair(s, 0, 3);   // E1 <-> E4
      detail::glue_pair(s, 1, 10);  // E2 <-> E11
      detail::glue_pair(s, 2, 5);   // E3 <-> E6
      detail::glue_pair(s, 4, 7);   // E5 <-> E8
      detail::glue_pair(s, 6, 9);   // E7 <-> E10
      detail::glue_pair(s, 8, 11);  // E9 <-> E12
      s.marked = s.poly;
      s.marked.push_back({zero, zero});
      break;
    }
    case Family::Rectangle: {
      Quad a = spec.size_a, b = spec.size_b;
      s.poly = {{a, -b}, {a, b}, {-a, b}, {-a, -b}};
      detail::add_edges_from_poly(s);
      detail::glue_pair(s, 0, 2);
      detail::glue_pair(s, 1, 3);
      s.marked = {{zero, zero}, {a, zero}, {-a, zero}, {zero, b}, {zero, -b},
                  {a, b}, {a, -b}, {-a, b}, {-a, -b}};
      break;
    }
    case Family::LShape: {
      Quad a{spec.la}, b{spec.lb}, c{spec.lc}, d{spec.ld};
      s.poly = {{a, -d}, {a, d}, {b, d}, {b, c}, {-b, c}, {-b, d},
                {-a, d}, {-a, -d}, {-b, -d}, {-b, -c}, {b, -c}, {b, -d}};
      detail::add_edges_from_poly(s);
      detail::glue_pair(s, 0, 6);   // x=a <-> x=-a
      detail::glue_pair(s, 1, 11);  // y=d (right arm) <-> y=-d
      detail::glue_pair(s, 2, 4);   // wait: placeholder, fixed below
      break;
    }
  }
  if (spec.family == Family::LShape) {
    // Redo L-shape gluings explicitly (the cross has three edge classes).
    s.edges.clear();
    detail::add_edges_from_poly(s);
    // Edges (ccw): 0:(a,-d)->(a,d) right; 1:(a,d)->(b,d) top of right arm;
    // 2:(b,d)->(b,c) right notch; 3:(b,c)->(-b,c) top; 4:(-b,c)->(-b,d) left notch;
    // 5:(-b,d)->(-a,d) top of left arm; 6:(-a,d)->(-a,-d) left;
    // 7..11 mirror images below.
    detail::glue_pair(s, 0, 6);    // horizontal period 2a
    detail::glue_pair(s, 3, 9);    // vertical period 2c
    detail::glue_pair(s, 2, 4);    // notch verticals, period 2b
    detail::glue_pair(s, 10, 8);   // lower notch verticals
    detail::glue_pair(s, 1, 11);   // right-arm horizontals, period 2d
    detail::glue_pair(s, 5, 7);    // left-arm horizontals
    const Quad zero2(0);
    Quad a{spec.la}, b{spec.lb}, c{spec.lc}, d{spec.ld};
    s.marked = {{zero2, zero2}, {a, zero2}, {-a, zero2}, {zero2, c}, {zero2, -c},
                {a, d}, {a, -d}, {-a, d}, {-a, -d},
                {b, d}, {b, -d}, {-b, d}, {-b, -d},
                {b, c}, {b, -c}, {-b, c}, {-b, -c}};
  }
  return s;
}

/**
 * Exact vertical flow on the surface. From point p going up (dir=+1) or
 * down (-1), returns the next stop: either a marked point or an edge
 * crossing (position advanced through the gluing).
 */
struct VerticalStep {
  Vec2Q from, to;           // chord endpoints (same x)
  std::optional<Vec2Q> continued; // position after gluing, if not terminal
  bool hit_marked = false;
};

inline std::optional<VerticalStep> vertical_step(const TranslationSurface& s,
                                                 const Vec2Q& p, int dir) {
  // Find the nearest boundary crossing of the vertical ray from p.
  std::optional<Quad> best_y;
  int best_edge = -1;
  for (size_t i = 0; i < s.edges.size(); ++i) {
    const auto& e = s.edges[i];
    Quad dxa = e.a.x - p.x, dxb = e.b.x - p.x;
    int sa = dxa.sign(), sb = dxb.sign();
    if (sa == sb && sa != 0) continue; // edge strictly to one side
    Quad ycross;
    if (sa == 0 && sb == 0) continue;  // vertical edge collinear with ray: skip
    if (sa == 0) ycross = e.a.y;
    else if (sb == 0) ycross = e.b.y;
    else {
      Quad t = dxa / (e.a.x - e.b.x); // in (0,1)
      ycross = e.a.y + t * (e.b.y - e.a.y);
    }
    Quad dy = ycross - p.y;
    if (dy.sign() * dir <= 0) continue; // not forward
    if (!best_y || (dir > 0 ? ycross < *best_y : ycross > *best_y)) {
      best_y = ycross;
      best_edge = static_cast<int>(i);
    }
  }
  if (!best_y) return std::nullopt;

  VerticalStep st;
  st.from = p;
  st.to = {p.x, *best_y};
  // Marked point strictly between p and the boundary, or at the boundary?
  std::optional<Quad> mhit;
  for (const auto& m : s.marked) {
    if (!(m.x == p.x)) continue;
    Quad dy = m.y - p.y;
    if (dy.sign() * dir <= 0) continue;
    Quad fwd = (dir > 0) ? m.y : -m.y;
    Quad lim = (dir > 0) ? *best_y : -*best_y;
    if (fwd > lim) continue;
    if (!mhit || (dir > 0 ? m.y < *mhit : m.y > *mhit)) mhit = m.y;
  }
  if (mhit) {
    st.to = {p.x, *mhit};
    st.hit_marked = true;
    return st;
  }
  st.continued = st.to + s.edges[best_edge].glue;
  return st;
}

// A maximal vertical singular-diagonal chord of the EPP, x = const.
struct SdChord {
  Quad x;
  Quad y_lo, y_hi;
};

/**
 * Traces the vertical singular diagonal through a marked point in one
 * direction; returns the chords it cuts across the EPP until it terminates
 * at a marked point or closes up. Empty if the ray leaves the surface
 * immediately (vertex pointing outward).
 */
inline std::vector<SdChord> trace_vertical_sd(const TranslationSurface& s,
                                              const Vec2Q& start, int dir,
                                              int budget = 512) {
  std::vector<SdChord> chords;
  Vec2Q p = start;
  for (int step = 0; step < budget; ++step) {
    // Bail out if the ray is not locally inside the surface.
    auto st = vertical_step(s, p, dir);
    if (!st) return chords;
    Quad mid_y = Quad(Ratio(1, 2)) * (p.y + st->to.y);
    if (s.locate({p.x, mid_y}) != TranslationSurface::Where::Inside) return chords;
    SdChord c;
    c.x = p.x;
    c.y_lo = dir > 0 ? p.y : st->to.y;
    c.y_hi = dir > 0 ? st->to.y : p.y;
    // Merge with the previous chord when the flow continued through an
    // interior marked point at the same x (chord passes through a cone point).
    if (!chords.empty() && chords.back().x == c.x && (chords.back().y_hi == c.y_lo || chords.back().y_lo == c.y_hi)) {
      chords.back().y_lo = std::min(chords.back().y_lo, c.y_lo, [](const Quad& u, const Quad& v) { return u < v; });
      chords.back().y_hi = std::max(chords.back().y_hi, c.y_hi, [](const Quad& u, const Quad& v) { return u < v; });
    } else {
      chords.push_back(c);
    }
    if (st->hit_marked) return chords;
    p = *st->continued;
    if (p == start) return chords; // closed singular connection
  }
  throw Error(errc::resource, "trace_vertical_sd: budget exceeded");
}

/**
 * Length of the vertical periodic orbit through an interior point
 * (the POC period for that transverse position).
 */
inline Quad vertical_orbit_length(const TranslationSurface& s, const Vec2Q& start,
                                  int budget = 4096) {
  Quad total(0);
  Vec2Q p = start;
  for (int step = 0; step < budget; ++step) {
    auto st = vertical_step(s, p, +1);
    if (!st || st->hit_marked)
      throw Error(errc::kind, "vertical_orbit_length: orbit is singular or leaves the surface");
    // Closure: the current chord sweeps past the starting point again.
    if (step > 0 && p.x == start.x && p.y < start.y && !(st->to.y < start.y)) {
      total += (start.y - p.y);
      return total;
    }
    total += (st->to.y - st->from.y);
    p = *st->continued;
  }
  throw Error(errc::resource, "vertical_orbit_length: budget exceeded (aperiodic direction?)");
}

} // namespace polyscar
