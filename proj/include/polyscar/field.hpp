#pragma once

#include <cstdio>
#include <fstream>
#include <thread>
#include <vector>

#include "polyscar/wavefunction.hpp"

namespace polyscar {

/**
 * Sampled scalar field of a wave mode over a regular grid clipped to the
 * billiard. Outside points carry NaN and are masked.
 */
struct WaveField {
  int nx = 0, ny = 0;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0; // bounding box
  std::vector<double> values;            // row-major, NaN outside
  std::vector<uint8_t> mask;             // 1 = inside

  double x_of(int i) const { return x0 + (x1 - x0) * (i + 0.5) / nx; }
  double y_of(int j) const { return y0 + (y1 - y0) * (j + 0.5) / ny; }
  double at(int i, int j) const { return values[size_t(j) * nx + i]; }
};

inline int thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("POLYSCAR_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(std::min<long>(v, hw));
  }
  return static_cast<int>(hw);
}

inline WaveField sample_field(const WaveMode& mode, int grid_n = 512) {
  if (grid_n < 2) throw Error(errc::domain, "sample_field: grid too small");
  auto poly = mode.spec.polygon();
  WaveField f;
  f.nx = f.ny = grid_n;
  f.x0 = f.y0 = 1e300;
  f.x1 = f.y1 = -1e300;
  for (const auto& v : poly) {
    f.x0 = std::min(f.x0, v.dx());
    f.x1 = std::max(f.x1, v.dx());
    f.y0 = std::min(f.y0, v.dy());
    f.y1 = std::max(f.y1, v.dy());
  }
  f.values.assign(size_t(grid_n) * grid_n, std::nan(""));
  f.mask.assign(size_t(grid_n) * grid_n, 0);

  bool superscar = mode.kind == WaveKind::SuperscarD || mode.kind == WaveKind::SuperscarN ||
                   mode.kind == WaveKind::BsFolded;
  auto worker = [&](int j_begin, int j_end) {
    for (int j = j_begin; j < j_end; ++j) {
      for (int i = 0; i < grid_n; ++i) {
        double x = f.x_of(i), y = f.y_of(j);
        if (!point_in_billiard(mode.spec, x, y, 0)) continue;
        size_t idx = size_t(j) * grid_n + i;
        f.mask[idx] = 1;
        f.values[idx] = superscar ? eval_superscar(mode, x, y) : eval_swf(mode, x, y, false);
      }
    }
  };
  int nt = thread_budget();
  if (nt <= 1) {
    worker(0, grid_n);
  } else {
    std::vector<std::thread> pool;
    int rows = (grid_n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      int b = t * rows, e = std::min(grid_n, b + rows);
      if (b >= e) break;
      pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return f;
}

// Grid points where |value| < threshold and the sign changes among the
// 4-neighbors; threshold < 0 picks the default 1e-3 * max|field|.
inline std::vector<std::pair<double, double>> nodal_lines(const WaveField& f,
                                                          double threshold = -1) {
  double amax = 0;
  for (double v : f.values)
    if (!std::isnan(v)) amax = std::max(amax, std::abs(v));
  if (threshold < 0) threshold = 1e-3 * amax;
  std::vector<std::pair<double, double>> pts;
  auto val = [&](int i, int j) -> double {
    if (i < 0 || j < 0 || i >= f.nx || j >= f.ny) return std::nan("");
    return f.at(i, j);
  };
  for (int j = 0; j < f.ny; ++j) {
    for (int i = 0; i < f.nx; ++i) {
      double v = val(i, j);
      if (std::isnan(v) || std::abs(v) >= threshold) continue;
      bool pos = false, neg = false;
      for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        double w = val(i + di, j + dj);
        if (std::isnan(w)) continue;
        if (w > threshold) pos = true;
        if (w < -threshold) neg = true;
      }
      if (pos && neg) pts.emplace_back(f.x_of(i), f.y_of(j));
    }
  }
  return pts;
}

// --- deterministic writers (17 significant digits) ---------------------------

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_field_csv(const WaveField& f, std::ostream& os) {
  os << "x,y,value\n";
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) {
      if (!f.mask[size_t(j) * f.nx + i]) continue;
      os << fmt17(f.x_of(i)) << "," << fmt17(f.y_of(j)) << "," << fmt17(f.at(i, j)) << "\n";
    }
}

// 16-bit binary PGM heat map; NaN (masked) cells map to 0.
inline void write_field_pgm(const WaveField& f, std::ostream& os) {
  double lo = 1e300, hi = -1e300;
  for (double v : f.values)
    if (!std::isnan(v)) { lo = std::min(lo, v); hi = std::max(hi, v); }
  if (hi <= lo) { lo = 0; hi = 1; }
  os << "P5\n" << f.nx << " " << f.ny << "\n65535\n";
  for (int j = f.ny - 1; j >= 0; --j) {
    for (int i = 0; i < f.nx; ++i) {
      double v = f.at(i, j);
      unsigned val = 0;
      if (!std::isnan(v)) val = 1 + static_cast<unsigned>(65534.0 * (v - lo) / (hi - lo));
      os.put(static_cast<char>((val >> 8) & 0xff));
      os.put(static_cast<char>(val & 0xff));
    }
  }
}

} // namespace polyscar
