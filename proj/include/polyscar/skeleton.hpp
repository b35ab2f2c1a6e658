#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "polyscar/surface.hpp"

namespace polyscar {

struct DirectionClass {
  Vec2Q direction;
  bool periodic = false;
  std::optional<Vec2Q> period; // shortest realizing period (unfolded displacement)
};

struct SingularDiagonal {
  Vec2Q anchor;                   // marked point the SD passes through
  Vec2Q direction;
  std::optional<Vec2Q> terminal;  // rectangle: terminal billiard vertex
  long bounce_horizontal = 0;     // rectangle: hits on horizontal sides
  long bounce_vertical = 0;
  std::vector<SdChord> chords;    // EPP chords (vertical-frame coordinates)
};

struct FoldedCell {
  int image_index;  // EppImage index
  Mat2Q frame;      // billiard point -> POC strip coordinates (the EPP map)
};

struct PocDescriptor {
  std::string type;               // "D6", "D9", "d3", "d5", "d8", "Dqr:A", ...
  Vec2Q period_vector;
  double width = 0;
  Quad width_exact{Ratio(0)};
  SingularDiagonal bounding[2];
  std::vector<FoldedCell> folded_cells;
  // transverse strip in the POC frame (x' range for vertical POCs)
  Quad strip_lo{Ratio(0)}, strip_hi{Ratio(0)};
};

namespace detail {

// Reflects direction v across the wall with direction w: v' = 2 (v.w/w.w) w - v.
inline Vec2Q reflect_dir(const Vec2Q& v, const Vec2Q& w) {
  Quad f = (v.dot(w) / w.norm_sq()) * Quad(2);
  return f * w - v;
}

struct BilliardHit {
  Vec2Q point;
  int edge;
  Quad t;          // parameter along the ray, > 0
  bool vertex;     // landed on a polygon vertex
};

inline std::optional<BilliardHit> next_wall(const std::vector<Vec2Q>& poly, const Vec2Q& pos,
                                            const Vec2Q& dir) {
  size_t n = poly.size();
  std::optional<BilliardHit> best;
  for (size_t i = 0; i < n; ++i) {
    const Vec2Q& a = poly[i];
    const Vec2Q& b = poly[(i + 1) % n];
    Vec2Q w = b - a;
    Quad denom = dir.cross(w);
    if (denom.sign() == 0) continue;
    Vec2Q ap = a - pos;
    Quad t = ap.cross(w) / denom;
    Quad u = ap.cross(dir) / denom;
    if (t.sign() <= 0) continue;
    if (u.sign() < 0 || u > Quad(1)) continue;
    if (!best || t < best->t) {
      Vec2Q hit = pos + t * dir;
      best = BilliardHit{hit, static_cast<int>(i), t, hit == a || hit == b};
    }
  }
  return best;
}

} // namespace detail

/**
 * Classifies a direction as periodic or aperiodic by exact ray tracing from
 * several generic interior points; for a periodic direction the shortest
 * first-return displacement found is the realizing period.
 */
inline DirectionClass classify_direction(const BilliardSpec& spec, const Vec2Q& direction,
                                         int budget = 600) {
  if (direction.x.is_zero() && direction.y.is_zero())
    throw Error(errc::domain, "classify_direction: zero direction");
  auto poly = spec.polygon();

  // Generic rational interior starting points spread over the polygon.
  std::vector<Vec2Q> starts;
  {
    Quad cx(0), cy(0);
    Quad inv(Ratio(1, static_cast<long>(poly.size())));
    for (const auto& v : poly) { cx += v.x; cy += v.y; }
    cx = inv * cx; cy = inv * cy;
    starts.push_back({cx + Quad(Ratio(1, 1009)), cy + Quad(Ratio(1, 1013))});
    for (const auto& v : poly) {
      // a point most of the way from the centroid toward each vertex
      Quad t(Ratio(7, 10)), o(Ratio(3, 10));
      starts.push_back({o * cx + t * v.x + Quad(Ratio(1, 997)),
                        o * cy + t * v.y + Quad(Ratio(1, 991))});
    }
  }

  std::optional<Vec2Q> best_period;
  for (const auto& start : starts) {
    if (polygon_locate(poly, start) != Where::Inside) continue; // reentrant-corner jitter
    Vec2Q pos = start, dir = direction;
    Vec2Q unfolded{Quad(0), Quad(0)};
    bool singular = false, closed = false;
    for (int k = 0; k < budget; ++k) {
      auto hit = detail::next_wall(poly, pos, dir);
      if (!hit || hit->vertex) { singular = true; break; }
      Quad seg_t = hit->t;
      unfolded = unfolded + seg_t * direction;
      const Vec2Q& a = poly[hit->edge];
      const Vec2Q& b = poly[(hit->edge + 1) % poly.size()];
      pos = hit->point;
      dir = detail::reflect_dir(dir, b - a);
      if (dir == direction) {
        // The orbit closes iff the start point lies ahead on this ray before
        // the next wall (the L-shape line can re-enter past a wall).
        Vec2Q d = start - pos;
        Quad cr = d.cross(direction);
        if (cr.sign() == 0 && (d.dot(direction)).sign() >= 0) {
          Quad t = direction.x.is_zero() ? d.y / direction.y : d.x / direction.x;
          auto ahead = detail::next_wall(poly, pos, direction);
          if (ahead && t <= ahead->t) {
            unfolded = unfolded + t * direction;
            closed = true;
            break;
          }
        }
      }
    }
    if (closed) {
      if (!best_period || unfolded.norm_sq() < best_period->norm_sq())
        best_period = unfolded;
      continue;
    }
    if (!singular) {
      // One clean orbit exhausted the budget without closing: aperiodic.
      DirectionClass dc;
      dc.direction = direction;
      return dc;
    }
  }
  DirectionClass dc;
  dc.direction = direction;
  if (best_period) {
    dc.periodic = true;
    dc.period = *best_period;
  }
  return dc;
}

namespace detail {

// All vertical SD chords of the surface, deduplicated.
inline std::vector<SdChord> vertical_sd_chords(const TranslationSurface& s) {
  std::vector<SdChord> chords;
  auto add = [&](const SdChord& c) {
    if (c.y_lo == c.y_hi) return;
    for (const auto& e : chords)
      if (e.x == c.x && e.y_lo == c.y_lo && e.y_hi == c.y_hi) return;
    chords.push_back(c);
  };
  for (const auto& m : s.marked) {
    for (int dir : {+1, -1}) {
      auto got = trace_vertical_sd(s, m, dir);
      for (const auto& c : got) add(c);
    }
  }
  return chords;
}

} // namespace detail

/**
 * Enumerates the POCs of a periodic skeleton. The triangle, parallelogram
 * and L-shape vertical skeletons are decomposed generically on the exact
 * translation surface (strip faces between vertical singular diagonals,
 * counted strip by strip on the pattern); the rectangle uses the closed-form
 * Fig.-4 description: two channels of width (a/r) sin(alpha_qr).
 */
inline std::vector<PocDescriptor> enumerate_pocs(const BilliardSpec& spec,
                                                 const PeriodLattice& lattice,
                                                 const DirectionClass& dir) {
  if (!dir.periodic) throw Error(errc::kind, "enumerate_pocs: aperiodic direction");
  (void)lattice;

  std::vector<PocDescriptor> pocs;

  if (spec.family == Family::Rectangle) {
    Quad qx = dir.period->x / (Quad(2) * spec.size_a);
    Quad qy = dir.period->y / (Quad(2) * spec.size_b);
    if (!qx.is_rational() || !qy.is_rational() || !qx.rat().is_integer() || !qy.rat().is_integer())
      throw Error(errc::internal, "enumerate_pocs: rectangle period is not a lattice vector");
    BigInt q = boost::multiprecision::abs(qx.rat().num());
    BigInt r = boost::multiprecision::abs(qy.rat().num());
    double a = spec.size_a.to_double(), b = spec.size_b.to_double();
    double qd = q.convert_to<double>(), rd = r.convert_to<double>();
    double w = (r == 0) ? b : (q == 0 ? a : a * b / std::hypot(qd * a, rd * b));
    for (int copy = 0; copy < 2; ++copy) {
      PocDescriptor poc;
      poc.type = std::string("Dqr:") + (copy == 0 ? "A" : "B");
      poc.period_vector = *dir.period;
      poc.width = w;
      poc.strip_lo = Quad(Ratio(copy));     // in units of w along the transverse axis
      poc.strip_hi = Quad(Ratio(copy + 1));
      poc.bounding[0].anchor = {Quad(0), Quad(0)};
      poc.bounding[0].direction = *dir.period;
      poc.bounding[1].anchor = {spec.size_a, Quad(0)};
      poc.bounding[1].direction = *dir.period;
      for (const auto& im : build_epp(spec, BoundaryCond::Dirichlet))
        poc.folded_cells.push_back({im.index, im.map});
      pocs.push_back(poc);
    }
    return pocs;
  }

  bool vertical = dir.direction.x.is_zero();
  if (!vertical)
    throw Error(errc::kind,
                "enumerate_pocs: only the vertical (D6/d8/bouncing) skeleton is decomposed "
                "generically for this family");
  TranslationSurface surf = build_surface(spec);
  auto chords = detail::vertical_sd_chords(surf);

  auto qmin = [](const Quad& u, const Quad& v) { return u < v ? u : v; };
  auto qmax = [](const Quad& u, const Quad& v) { return u < v ? v : u; };

  // Slab events: chord and polygon-vertex x-coordinates.
  std::vector<Quad> xs;
  auto add_x = [&](const Quad& x) {
    for (const auto& e : xs)
      if (e == x) return;
    xs.push_back(x);
  };
  for (const auto& c : chords) add_x(c.x);
  for (const auto& v : surf.poly) add_x(v.x);
  std::sort(xs.begin(), xs.end(), [](const Quad& a, const Quad& b) { return a < b; });

  // Vertical sections of the EPP at each slab midline.
  struct Node { int slab; Quad lo, hi; };
  std::vector<Node> nodes;
  std::vector<std::vector<int>> per_slab(xs.size() > 0 ? xs.size() - 1 : 0);
  auto section = [&](const Quad& x0) {
    std::vector<Quad> ys;
    size_t n = surf.poly.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2Q& a = surf.poly[i];
      const Vec2Q& b = surf.poly[(i + 1) % n];
      int sa = (a.x - x0).sign(), sb = (b.x - x0).sign();
      if (sa == sb) continue;
      Quad t = (a.x - x0) / (a.x - b.x);
      ys.push_back(a.y + t * (b.y - a.y));
    }
    std::sort(ys.begin(), ys.end(), [](const Quad& u, const Quad& v) { return u < v; });
    return ys;
  };
  for (size_t sidx = 0; sidx + 1 < xs.size(); ++sidx) {
    Quad xm = Quad(Ratio(1, 2)) * (xs[sidx] + xs[sidx + 1]);
    auto ys = section(xm);
    for (size_t k = 0; k + 1 < ys.size(); k += 2) {
      per_slab[sidx].push_back(static_cast<int>(nodes.size()));
      nodes.push_back({static_cast<int>(sidx), ys[k], ys[k + 1]});
    }
  }

  std::vector<int> parent(nodes.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](int i, int j) { parent[find(i)] = find(j); };

  for (size_t sidx = 0; sidx + 2 < xs.size(); ++sidx) {
    const Quad& xb = xs[sidx + 1];
    for (int li : per_slab[sidx]) {
      for (int ri : per_slab[sidx + 1]) {
        const Node& L = nodes[li];
        const Node& R = nodes[ri];
        Quad lo = qmax(L.lo, R.lo);
        Quad hi = qmin(L.hi, R.hi);
        if (!(lo < hi)) continue;
        // Remove the chord cover at xb; any remaining gap connects the faces.
        std::vector<std::pair<Quad, Quad>> gaps{{lo, hi}};
        for (const auto& c : chords) {
          if (!(c.x == xb)) continue;
          std::vector<std::pair<Quad, Quad>> next;
          for (auto& g : gaps) {
            Quad clo = qmax(g.first, c.y_lo), chi = qmin(g.second, c.y_hi);
            if (!(clo < chi)) { next.push_back(g); continue; }
            if (g.first < clo) next.emplace_back(g.first, clo);
            if (chi < g.second) next.emplace_back(chi, g.second);
          }
          gaps = std::move(next);
        }
        bool connected = false;
        for (auto& g : gaps)
          if (g.first < g.second) { connected = true; break; }
        if (connected) unite(li, ri);
      }
    }
  }

  std::map<int, std::vector<int>> faces;
  for (size_t i = 0; i < nodes.size(); ++i)
    faces[find(static_cast<int>(i))].push_back(static_cast<int>(i));

  auto images = build_epp(spec, BoundaryCond::Dirichlet);
  for (auto& [root, members] : faces) {
    PocDescriptor poc;
    int slab_min = nodes[members.front()].slab, slab_max = slab_min;
    for (int id : members) {
      slab_min = std::min(slab_min, nodes[id].slab);
      slab_max = std::max(slab_max, nodes[id].slab);
    }
    poc.strip_lo = xs[slab_min];
    poc.strip_hi = xs[slab_max + 1];
    poc.width_exact = poc.strip_hi - poc.strip_lo;
    poc.width = poc.width_exact.to_double();
    const Node& rep = nodes[members.front()];
    Quad xr = Quad(Ratio(1, 2)) * (xs[rep.slab] + xs[rep.slab + 1]);
    Quad yr = Quad(Ratio(1, 2)) * (rep.lo + rep.hi);
    Quad len = vertical_orbit_length(surf, {xr, yr});
    poc.period_vector = {Quad(0), len};
    poc.bounding[0].anchor = {poc.strip_lo, Quad(0)};
    poc.bounding[0].direction = {Quad(0), Quad(1)};
    poc.bounding[1].anchor = {poc.strip_hi, Quad(0)};
    poc.bounding[1].direction = {Quad(0), Quad(1)};
    for (const auto& c : chords) {
      if (c.x == poc.strip_lo) poc.bounding[0].chords.push_back(c);
      if (c.x == poc.strip_hi) poc.bounding[1].chords.push_back(c);
    }
    for (const auto& im : images) poc.folded_cells.push_back({im.index, im.map});
    pocs.push_back(poc);
  }

  for (auto& poc : pocs) {
    double len = poc.period_vector.y.to_double();
    if (spec.family == Family::Triangle) {
      poc.type = std::abs(len - 2 * (std::sqrt(2.0) + 1)) < 1e-9 ? "D6" : "D9";
    } else if (spec.family == Family::Parallelogram) {
      double r3 = std::sqrt(3.0), Ld = spec.L.to_double();
      if (std::abs(len - r3) < 1e-9) poc.type = "d8";
      else if (std::abs(len - r3 * (Ld + 1)) < 1e-9) poc.type = "d5";
      else if (std::abs(len - r3 * (Ld + 2)) < 1e-9) poc.type = "d3";
      else poc.type = "d?";
    } else {
      poc.type = "bounce";
    }
  }
  std::sort(pocs.begin(), pocs.end(), [](const PocDescriptor& a, const PocDescriptor& b) {
    if (a.strip_lo < b.strip_lo) return true;
    if (b.strip_lo < a.strip_lo) return false;
    return a.period_vector.y.to_double() < b.period_vector.y.to_double();
  });
  return pocs;
}

/**
 * Exact trace of the rectangle singular diagonal for coprime (q, r): bounce
 * counts per side family and the terminal vertex. Parity classes on (r, q):
 * (e,o) -> (a,0), (o,o) -> (a,b), (o,e) -> (0,b).
 */
inline SingularDiagonal rectangle_sd(const BilliardSpec& spec, long q, long r) {
  if (spec.family != Family::Rectangle) throw Error(errc::domain, "rectangle_sd: wrong family");
  if (q < 0 || r < 0 || q + r == 0)
    throw Error(errc::domain, "rectangle_sd: need q,r >= 0, not both 0");
  SingularDiagonal sd;
  sd.anchor = {Quad(0), Quad(0)};
  sd.direction = {Quad(q) * spec.size_a, Quad(r) * spec.size_b};

  const Quad ax = spec.size_a, by = spec.size_b;
  Vec2Q cur{Quad(0), Quad(0)};
  Vec2Q d = sd.direction;
  long hits_h = 0, hits_v = 0;
  for (int guard = 0; guard < 200000; ++guard) {
    std::optional<Quad> best;
    int wall = -1; // 0:x=0, 1:x=a, 2:y=0, 3:y=b
    auto consider = [&](const Quad& t, int w) {
      if (t.sign() <= 0) return;
      if (!best || t < *best) { best = t; wall = w; }
    };
    if (!d.x.is_zero()) {
      consider((Quad(0) - cur.x) / d.x, 0);
      consider((ax - cur.x) / d.x, 1);
    }
    if (!d.y.is_zero()) {
      consider((Quad(0) - cur.y) / d.y, 2);
      consider((by - cur.y) / d.y, 3);
    }
    if (!best) throw Error(errc::internal, "rectangle_sd: lost ray");
    Vec2Q hit{cur.x + *best * d.x, cur.y + *best * d.y};
    bool corner = (hit.x.is_zero() || hit.x == ax) && (hit.y.is_zero() || hit.y == by);
    if (corner) {
      sd.terminal = hit;
      sd.bounce_horizontal = hits_h;
      sd.bounce_vertical = hits_v;
      return sd;
    }
    if (wall <= 1) { ++hits_v; d.x = -d.x; }
    else           { ++hits_h; d.y = -d.y; }
    cur = hit;
  }
  throw Error(errc::resource, "rectangle_sd: budget exceeded");
}

/**
 * Folds an EPP singular diagonal into the billiard: applies the inverse of
 * every EPP placement to the SD chords and clips to the billiard polygon.
 */
inline std::vector<std::array<double, 4>> fold_diagonal(const BilliardSpec& spec,
                                                        const SingularDiagonal& sd) {
  auto poly = spec.polygon();
  auto images = build_epp(spec, BoundaryCond::Dirichlet);
  std::vector<std::array<double, 4>> out;

  std::vector<std::array<double, 2>> pv;
  for (const auto& v : poly) pv.push_back({v.dx(), v.dy()});
  auto inside_poly = [&](double x, double y) {
    bool in = false;
    size_t n = pv.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
      if ((pv[i][1] > y) != (pv[j][1] > y) &&
          x < (pv[j][0] - pv[i][0]) * (y - pv[i][1]) / (pv[j][1] - pv[i][1]) + pv[i][0])
        in = !in;
    }
    return in;
  };

  for (const auto& c : sd.chords) {
    double x = c.x.to_double();
    double ylo = c.y_lo.to_double(), yhi = c.y_hi.to_double();
    for (const auto& im : images) {
      Mat2Q inv{im.map.m00, im.map.m10, im.map.m01, im.map.m11}; // orthogonal: transpose
      double m00 = inv.m00.to_double(), m01 = inv.m01.to_double();
      double m10 = inv.m10.to_double(), m11 = inv.m11.to_double();
      auto mapp = [&](double px, double py) {
        return std::array<double, 2>{m00 * px + m01 * py, m10 * px + m11 * py};
      };
      auto p0 = mapp(x, ylo), p1 = mapp(x, yhi);
      const int N = 512;
      int run_start = -1;
      auto flush = [&](int s, int e) {
        if (s < 0 || e <= s) return;
        double t0 = double(s) / N, t1 = double(e) / N;
        out.push_back({p0[0] + (p1[0] - p0[0]) * t0, p0[1] + (p1[1] - p0[1]) * t0,
                       p0[0] + (p1[0] - p0[0]) * t1, p0[1] + (p1[1] - p0[1]) * t1});
      };
      for (int k = 0; k <= N; ++k) {
        double t = double(k) / N;
        double px = p0[0] + (p1[0] - p0[0]) * t, py = p0[1] + (p1[1] - p0[1]) * t;
        if (inside_poly(px, py)) {
          if (run_start < 0) run_start = k;
        } else {
          flush(run_start, k - 1);
          run_start = -1;
        }
      }
      flush(run_start, N);
    }
  }
  return out;
}

/**
 * Canonical signature of the folded singular-diagonal pattern of the
 * parallelogram's vertical skeleton, restricted to x <= window: the set of
 * supporting lines as (slope class, rounded intercept). Exposes the
 * experimental observation that the pattern repeats when L grows by 3;
 * there is no closed formula to assert beyond the comparison itself.
 */
inline std::set<std::pair<int, long>> folded_sd_signature(const BilliardSpec& spec,
                                                          double window) {
  if (spec.family != Family::Parallelogram)
    throw Error(errc::domain, "folded_sd_signature: parallelogram only");
  auto dir = classify_direction(spec, {Quad(0), Quad(1)});
  auto pocs = enumerate_pocs(spec, period_lattice(spec), dir);
  std::set<std::pair<int, long>> lines;
  const double r3 = std::sqrt(3.0);
  for (const auto& poc : pocs) {
    for (const auto& b : {poc.bounding[0], poc.bounding[1]}) {
      for (const auto& s : fold_diagonal(spec, b)) {
        double dx = s[2] - s[0], dy = s[3] - s[1];
        double len = std::hypot(dx, dy);
        if (len < 1e-6) continue;
        if ((s[0] + s[2]) / 2 > window) continue;
        int slope_class;
        double intercept;
        if (std::abs(dx) < 1e-9 * len) { slope_class = 0; intercept = s[0]; }
        else if (dy / dx > 0.1) { slope_class = 1; intercept = s[1] - r3 * s[0]; }
        else if (dy / dx < -0.1) { slope_class = -1; intercept = s[1] + r3 * s[0]; }
        else { slope_class = 2; intercept = s[1]; }
        lines.insert({slope_class, std::lround(intercept * 1e6)});
      }
    }
  }
  return lines;
}

} // namespace polyscar
