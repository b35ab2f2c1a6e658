#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "polyscar/field.hpp"

using namespace polyscar;

namespace {
WaveMode triangle_mode(WaveKind kind, long m, long n, Ratio uq = Ratio(3363, 2378)) {
  WaveMode md;
  md.spec = BilliardSpec::bs_triangle();
  md.kind = kind;
  md.m = m;
  md.n = n;
  md.approx = std::move(uq);
  return md;
}
} // namespace

TEST_CASE("triangle SWF constructed zeros") {
  auto md = triangle_mode(WaveKind::SwfU, 5, 2);
  // vanishes on the sides through the pi/8 vertex: y = 0 and y = (sqrt2-1)x
  for (int i = 1; i < 20; ++i) {
    Ratio t(i, 20);
    Quad x = Quad(t) * (Quad::sqrt_of(2) + Quad(1));
    CHECK(std::abs(wf::triangle_swf_exact(3363, 5, 2, {x, Quad(0)})) < 1e-14);
    Vec2Q p{x, (Quad::sqrt_of(2) - Quad(1)) * x};
    CHECK(std::abs(wf::triangle_swf_exact(3363, 5, 2, p)) < 1e-13);
  }
  // the eval surface also vanishes at the origin-like line x = 0
  CHECK(eval_swf(md, 0.0, 0.0) == 0.0);
  // m = n: identically zero by antisymmetry
  auto mdnn = triangle_mode(WaveKind::SwfU, 4, 4);
  for (double x : {0.3, 1.1, 2.0})
    CHECK(eval_swf(mdnn, x, 0.2 * x) == Catch::Approx(0.0).margin(1e-12));
  // outside the billiard -> domain error
  CHECK_THROWS_AS(eval_swf(md, 0.5, 0.9), Error);
}

TEST_CASE("triangle SWF is invariant under the EPP rotations") {
  // the SWF is a D8-equivariant sum: rotating the argument by pi/4 or pi/2
  // leaves the formula invariant (up to exactly +1).
  long s = 19, m = 4, n = 1; // small scale keeps plain doubles accurate
  auto rot = [&](double c, double sn, double x, double y) {
    return std::pair{c * x - sn * y, sn * x + c * y};
  };
  const double c45 = std::sqrt(0.5);
  for (double x : {0.4, 1.2, 1.9}) {
    for (double y : {0.05, 0.21}) {
      double base = wf::triangle_swf(s, m, n, x, y);
      auto [x90, y90] = rot(0, 1, x, y);
      auto [x45, y45] = rot(c45, c45, x, y);
      CHECK(wf::triangle_swf(s, m, n, x90, y90) == Catch::Approx(base).margin(1e-10));
      CHECK(wf::triangle_swf(s, m, n, x45, y45) == Catch::Approx(base).margin(1e-10));
    }
  }
}

TEST_CASE("triangle boundary residuals obey the epsilon bound") {
  for (long m : {121L, 191L, 266L}) {
    auto md = triangle_mode(WaveKind::SwfU, m, 1);
    auto fh = boundary_residual(md, "FH", 2000);
    CHECK(fh.pass);
    CHECK(fh.max_abs < 0.5);
    CHECK(boundary_residual(md, "OF", 500).max_abs < 1e-12);
    CHECK(boundary_residual(md, "OH", 500).max_abs < 1e-12);
  }
  // Neumann-style residuals are out of scope
  auto bad = triangle_mode(WaveKind::Exact, 1, 1);
  CHECK_THROWS_AS(boundary_residual(bad, "FH"), Error);
}

TEST_CASE("parallelogram branches: zeros, oddness, degeneracy") {
  auto spec = BilliardSpec::parallelogram(Ratio(4));
  const double r3 = std::sqrt(3.0);
  for (long m : {2L, 5L}) {
    for (long n : {1L, 3L}) {
      double worst_line = 0, worst_odd = 0, worst_y0 = 0;
      for (int i = 0; i < 100; ++i) {
        double t = (i + 0.5) / 100.0;
        // on the line y = -sqrt3 (x-1), inside the billiard for x in (1-..,1)
        double x = 1.0 - 0.49 * t, y = -r3 * (x - 1.0);
        worst_line = std::max(worst_line, std::abs(wf::para_branch1(spec, m, n, x, y)));
        worst_line = std::max(worst_line, std::abs(wf::para_branch2(spec, m, n, x, y)));
        double xx = 0.5 + 3.3 * t, yy = 0.05 + 0.7 * t * (1 - t);
        worst_odd = std::max(worst_odd, std::abs(wf::para_branch1(spec, m, n, xx, yy) +
                                                 wf::para_branch1(spec, m, n, xx, -yy)));
        worst_odd = std::max(worst_odd, std::abs(wf::para_branch2(spec, m, n, xx, yy) +
                                                 wf::para_branch2(spec, m, n, xx, -yy)));
        worst_y0 = std::max(worst_y0, std::abs(wf::para_branch1(spec, m, n, xx, 0.0)));
      }
      CHECK(worst_line < 1e-9);
      CHECK(worst_odd < 1e-12);
      CHECK(worst_y0 < 1e-12);
      // both branches exist and differ: at least double degeneracy
      double a = wf::para_branch1(spec, m, n, 1.3, 0.31);
      double b = wf::para_branch2(spec, m, n, 1.3, 0.31);
      CHECK(std::abs(a - b) > 1e-8);
    }
  }
  // complex solution splits into the two real branches
  auto z = wf::para_complex(spec, 2, 1, 1.1, 0.4);
  CHECK(z.real() == Catch::Approx(wf::para_branch2(spec, 2, 1, 1.1, 0.4)).margin(1e-12));
  CHECK(z.imag() == Catch::Approx(-wf::para_branch1(spec, 2, 1, 1.1, 0.4)).margin(1e-12));
}

TEST_CASE("Dirichlet zeros on every constructed-zero side, all families") {
  const double r3 = std::sqrt(3.0);
  // rectangle: all four sides
  auto rect = BilliardSpec::rectangle(Quad(1), Quad(2));
  for (int i = 0; i <= 20; ++i) {
    double t = i / 20.0;
    for (auto [x, y] : {std::pair{t, 0.0}, {t, 2.0}, {0.0, 2 * t}, {1.0, 2 * t}})
      CHECK(std::abs(wf::rect_exact(rect, 3, 2, x, y)) < 1e-12);
  }
  // L-shape: all six walls, including the reentrant ones
  auto lsh = BilliardSpec::lshape(Ratio(2), Ratio(1), Ratio(3), Ratio(1));
  for (int i = 0; i <= 20; ++i) {
    double t = i / 20.0;
    double pts[6][2] = {{2 * t, 0.0}, {0.0, 3 * t}, {2.0, t}, {1.0, 1 + 2 * t},
                        {1 + t, 1.0}, {t, 3.0}};
    for (auto& p : pts)
      for (long m : {1L, 2L})
        CHECK(std::abs(wf::lshape_exact(lsh, m, 3 - m, p[0], p[1])) < 1e-12);
  }
  // parallelogram with integer L: all four sides are exact zeros
  auto par = BilliardSpec::parallelogram(Ratio(4));
  for (int i = 1; i < 20; ++i) {
    double t = i / 20.0;
    double sides[4][2] = {{4 * t, 0.0},                       // y = 0
                          {0.5 * t, r3 / 2 * t},              // y = sqrt3 x
                          {4 + 0.5 * t, r3 / 2 * t},          // y = sqrt3 (x-4)
                          {0.5 + 4 * t, r3 / 2}};             // top side
    for (auto& p : sides) {
      CHECK(std::abs(wf::para_branch1(par, 3, 1, p[0], p[1])) < 1e-12);
      CHECK(std::abs(wf::para_branch2(par, 3, 1, p[0], p[1])) < 1e-12);
    }
  }
}

TEST_CASE("rectangle: exact solution vs EPP assembly") {
  auto spec = BilliardSpec::rectangle(Quad(1), Quad(1));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int i = 0; i < 10; ++i) {
    double x = u(rng), y = u(rng);
    CHECK(wf::rect_exact(spec, 3, 2, x, y) ==
          Catch::Approx(wf::rect_epp_assembly(spec, 3, 2, x, y)).margin(1e-12));
  }
}

TEST_CASE("superscar states: trivial zeros and bouncing-ball standing wave") {
  auto rect = BilliardSpec::rectangle(Quad(1), Quad(1));
  WaveMode md;
  md.spec = rect;
  md.kind = WaveKind::SuperscarD;
  md.q = 1;
  md.r = 1;
  md.m = 2;
  md.n = 0;
  for (double x : {0.2, 0.5, 0.8})
    CHECK(eval_superscar(md, x, 0.3) == Catch::Approx(0.0).margin(1e-14)); // sine factor vanishes

  // bouncing-ball folded state = exact standing wave (axis roles swapped)
  WaveMode fold;
  fold.spec = rect;
  fold.kind = WaveKind::BsFolded;
  fold.q = 0;
  fold.r = 1;
  fold.m = 2;
  fold.n = 3;
  for (double x : {0.13, 0.57, 0.83})
    for (double y : {0.21, 0.64})
      CHECK(eval_superscar(fold, x, y) ==
            Catch::Approx(wf::rect_exact(rect, 3, 2, x, y)).margin(1e-12));
}

TEST_CASE("folded triangle superscars match the printed forms in the shaded cell") {
  const double r2 = std::sqrt(2.0);
  WaveMode bs;
  bs.spec = BilliardSpec::bs_triangle();
  bs.kind = WaveKind::BsFolded;
  bs.m = 3;
  bs.n = 2;
  bs.poc = 6;
  double x = 1.35, y = 0.44;
  REQUIRE((x > 1 && x + y > r2 && x - y < r2 && y < (r2 - 1) * x));
  double printed6 = -std::sin((r2 - 1) * PI * bs.n * x) * std::sin(PI * bs.m * y) +
                    std::sin(PI * bs.n * (x + y) / (2 + r2)) * std::sin(PI * bs.m * r2 / 2 * (x - y));
  CHECK(2 * eval_superscar(bs, x, y) == Catch::Approx(printed6).margin(1e-12));

  bs.poc = 9;
  double x9 = 1.30, y9 = 0.175;
  double printed9 = std::sin(PI * r2 * bs.m * (x9 - 1)) * std::sin(0.5 * PI * bs.n * (2 - r2) * y9) -
                    std::sin(0.5 * PI * bs.n * (r2 - 1) * (x9 - y9)) *
                        std::sin(PI * bs.m * (x9 + y9 - r2));
  CHECK(2 * eval_superscar(bs, x9, y9) == Catch::Approx(printed9).margin(1e-12));
}

TEST_CASE("parallelogram folded bouncing channel matches the printed form") {
  auto par = BilliardSpec::parallelogram(Ratio(4));
  WaveMode md;
  md.spec = par;
  md.kind = WaveKind::BsFolded;
  md.poc = 8;
  md.m = 2; // transverse
  md.n = 3; // longitudinal
  // interior of the bouncing region, where only the identity and the mirror
  // image sit inside the channel strip
  for (double x : {1.1, 2.0, 3.4}) {
    for (double y : {0.2, 0.55}) {
      double printed = wf::para_superscar(par, 8, md.n, md.m, x, y); // (m', n') = (n, m)
      CHECK(eval_superscar(md, x, y) == Catch::Approx(printed).margin(1e-12));
    }
  }
}

TEST_CASE("Neumann assembly has vanishing normal derivative on the mirror sides") {
  auto tri = BilliardSpec::bs_triangle();
  auto ims = build_epp(tri, BoundaryCond::Neumann);
  double px = PI * 3, py = PI * 2;
  auto eval = [&](double x, double y) {
    double s = 0;
    for (const auto& im : ims) {
      double ix = im.map.m00.to_double() * x + im.map.m01.to_double() * y;
      double iy = im.map.m10.to_double() * x + im.map.m11.to_double() * y;
      s += im.eta * std::cos(px * ix + py * iy);
    }
    return s;
  };
  const double h = 1e-6, r2 = std::sqrt(2.0);
  // OF: outward normal (0,-1); OH: normal proportional to (sqrt2-1, -1)
  for (double t : {0.3, 0.7, 1.9}) {
    double d_of = (eval(t, h) - eval(t, -h)) / (2 * h);
    CHECK(std::abs(d_of) < 1e-6);
    double nx = (r2 - 1) / std::sqrt(1 + (r2 - 1) * (r2 - 1));
    double ny = -1 / std::sqrt(1 + (r2 - 1) * (r2 - 1));
    double x = t, y = (r2 - 1) * t;
    double d_oh = (eval(x + h * nx, y + h * ny) - eval(x - h * nx, y - h * ny)) / (2 * h);
    CHECK(std::abs(d_oh) < 1e-5);
  }
}

TEST_CASE("superscar discontinuity vs SWF continuity across the folded diagonal") {
  WaveMode bs;
  bs.spec = BilliardSpec::bs_triangle();
  bs.kind = WaveKind::BsFolded;
  bs.m = 3;
  bs.n = 2;
  bs.poc = 6;
  double y0 = 0.2;
  double left = one_sided_limit(bs, 1.0, y0, -1e-9, 0);
  double right = one_sided_limit(bs, 1.0, y0, +1e-9, 0);
  CHECK(std::abs(left - right) > 1e-3);

  auto swf = triangle_mode(WaveKind::SwfU, 3, 2, Ratio(3, 2));
  double sl = one_sided_limit(swf, 1.0, y0, -1e-9, 0);
  double sr = one_sided_limit(swf, 1.0, y0, +1e-9, 0);
  CHECK(std::abs(sl - sr) < 1e-10);

  // the jump invariant holds for the D9 channel too, across x = 1 + sqrt2/2
  bs.poc = 9;
  double xf = 1.0 + std::sqrt(2.0) / 2, yf = 0.35;
  CHECK(std::abs(one_sided_limit(bs, xf, yf, -1e-9, 0) -
                 one_sided_limit(bs, xf, yf, +1e-9, 0)) > 1e-3);
}

TEST_CASE("decomposition identities") {
  auto rect = BilliardSpec::rectangle(Quad(1), Quad(1));
  CHECK(verify_rect_decomposition(rect, 1, 1, 1, 1, 200) < 1e-10);
  CHECK(verify_rect_decomposition(rect, 2, 1, 2, 3, 100) < 1e-10);

  auto lsh = BilliardSpec::lshape(Ratio(2), Ratio(1), Ratio(3), Ratio(1));
  CHECK(verify_lshape_decomposition(lsh, 1, 1, 200) < 1e-10);
  CHECK(verify_lshape_decomposition(lsh, 3, 2, 100) < 1e-10);

  CHECK(verify_triangle_substitutions(Ratio(3, 2), 2, 1) < 1e-10);
  CHECK(verify_triangle_substitutions(Ratio(7, 5), 3, 2) < 1e-10);

  auto par = BilliardSpec::parallelogram(Ratio(4));
  CHECK(verify_parallelogram_substitutions(par, 2, 1) < 1e-10);
  CHECK(verify_parallelogram_substitutions(par, 4, 2) < 1e-10);
  CHECK_THROWS_AS(verify_parallelogram_substitutions(par, 2, 2), Error); // 3 | (m+n) fails
}

TEST_CASE("fields and nodal lines") {
  auto rect = BilliardSpec::rectangle(Quad(1), Quad(1));
  WaveMode md;
  md.spec = rect;
  md.kind = WaveKind::Exact;
  md.m = 2;
  md.n = 1;
  auto f = sample_field(md, 101);
  auto pts = nodal_lines(f, 1e-2);
  REQUIRE(!pts.empty());
  for (auto& [x, y] : pts) CHECK(std::abs(x - 0.5) < 2.0 / 101);

  // zero field: no sign change, empty set
  WaveMode z = triangle_mode(WaveKind::SwfU, 3, 3, Ratio(3, 2));
  auto fz = sample_field(z, 64);
  CHECK(nodal_lines(fz, 1e-12).empty());

  // triangle near-nodal structure: the folded singular diagonals carry an
  // residual below the epsilon bound while the bulk amplitude is O(1). (At u = 3363
  // the nodal valleys are ~1e-6 wide, far below any practical grid, so the
  // lines are sampled directly.)
  const long u = 3363, mm = 121;
  const Quad r2q = Quad::sqrt_of(2);
  auto line_max = [&](auto makepoint) {
    double mx = 0;
    for (int i = 1; i < 1500; ++i)
      mx = std::max(mx, std::abs(wf::triangle_swf_exact(u, mm, 1, makepoint(Ratio(i, 1500)))));
    return mx;
  };
  double bound = 2 * PI * (mm + 1) / double(u) / (1 - 1e-7);
  CHECK(line_max([&](Ratio t) { return Vec2Q{Quad(1), Quad(t) * (r2q - Quad(1))}; }) < bound);
  CHECK(line_max([&](Ratio t) {
          Quad x = Quad(1) + Quad(t) * (r2q - Quad(1));
          return Vec2Q{x, r2q - x};
        }) < bound);
  CHECK(line_max([&](Ratio t) {
          Quad x = r2q + Quad(t);
          return Vec2Q{x, x - r2q};
        }) < bound);
  CHECK(line_max([&](Ratio t) {
          Quad x = Quad(1) + Quad(Ratio(1, 2)) * r2q + Quad(t) * (Quad(Ratio(1, 2)) * r2q);
          return Vec2Q{x, -x + r2q + Quad(1)};
        }) < bound);
  double bulk = 0;
  std::mt19937 rng(5);
  for (int i = 0; i < 2000; ++i) {
    double x = std::uniform_real_distribution<double>(0.05, 2.35)(rng);
    double y = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * (std::sqrt(2.0) - 1) * x;
    bulk = std::max(bulk, std::abs(wf::triangle_swf(u, mm, 1, x, y)));
  }
  CHECK(bulk > 5 * bound); // the diagonals are genuinely distinguished
}

TEST_CASE("field writers are deterministic") {
  auto rect = BilliardSpec::rectangle(Quad(1), Quad(2));
  WaveMode md;
  md.spec = rect;
  md.kind = WaveKind::Exact;
  md.m = 3;
  md.n = 2;
  auto f = sample_field(md, 64);
  std::ostringstream a, b;
  write_field_csv(f, a);
  write_field_csv(f, b);
  CHECK(a.str() == b.str());
  std::ostringstream p;
  write_field_pgm(f, p);
  CHECK(p.str().substr(0, 2) == "P5");
}
