#pragma once

// Closed-form integral geometry behind the clique weights, plus two
// independent measurement routes used to validate it:
//
//  - rasterization_oracle: subpixel cell counting of the fired region of an
//    osculating disk (the set of points whose +-d shifts along the tangent
//    leave the disk);
//  - circle_experiment: the discrete curvature energy of rasterized disks
//    against the analytic value 2*pi/r, averaged over a deterministic
//    lattice of sub-pixel disk placements. A single placement is dominated
//    by lattice quantization (the fired regions hold only a handful of
//    pixels); averaging over a KxK placement lattice evaluates the model's
//    expected response and equals subpixel counting at resolution 1/K.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "curvecut/energy.hpp"
#include "curvecut/grid.hpp"
#include "curvecut/neighborhood.hpp"
#include "curvecut/util.hpp"

namespace curvecut {

// Curvature / half-chord pair with the osculating-circle derived quantities.
struct OsculatingGeometry {
  double kappa = 0.0;
  double chord = 0.0;

  OsculatingGeometry(double kappa_, double chord_) : kappa(kappa_), chord(chord_) {
    if (!(kappa > 0.0) || !(chord > 0.0))
      throw std::invalid_argument("curvature and chord length must be positive");
    if (!(kappa * chord < 1.0))
      throw std::invalid_argument("chord must fit inside the osculating circle (kappa*d < 1)");
  }

  double radius() const { return 1.0 / kappa; }
  double half_angle() const { return std::asin(kappa * chord); }
};

// Partial area of a circle of curvature kappa above a half chord of length d:
// (1/(2 kappa^2)) * arcsin(kappa d) - (d/2) * sqrt(1/kappa^2 - d^2).
inline double cap_area_G(double kappa, double d) {
  OsculatingGeometry g(kappa, d);
  return 0.5 / (kappa * kappa) * std::asin(kappa * d) -
         0.5 * d * std::sqrt(1.0 / (kappa * kappa) - d * d);
}

// Area of the fired region at a tangency point.
inline double fired_area_A(double kappa, double d) {
  OsculatingGeometry g(kappa, d);
  const double k2 = kappa * kappa;
  return -std::asin(kappa * d) / k2 + 2.0 * std::asin(0.5 * kappa * d) / k2 -
         d * std::sqrt(1.0 / k2 - d * d) + d * std::sqrt(1.0 / k2 - 0.25 * d * d);
}

// Leading Taylor term of fired_area_A in the chord length.
inline double taylor_area(double kappa, double d) {
  if (kappa < 0.0 || d < 0.0) throw std::invalid_argument("kappa and d must be non-negative");
  return d * d * d * kappa / 4.0;
}

// Counts subpixel cells inside the disk B of radius r whose centers p lie
// within r of the tangency point n and whose +-d shifts along the tangent
// direction u = (cos theta, sin theta) both leave B. Returns count * s^2.
inline double rasterization_oracle(double r, double d, double theta, double subpixel) {
  if (!(r > 0.0) || !(d > 0.0)) throw std::invalid_argument("radius and d must be positive");
  if (d >= r) throw std::invalid_argument("chord d must be smaller than the radius");
  if (!(subpixel > 0.0)) throw std::invalid_argument("subpixel must be positive");
  const double ux = std::cos(theta), uy = std::sin(theta);
  const double nx = -r * std::sin(theta), ny = r * std::cos(theta);
  const double r2 = r * r;
  const int cells = static_cast<int>(std::ceil(2.0 * r / subpixel));
  auto inside = [&](double x, double y) { return x * x + y * y <= r2; };
  double count = row_sum(cells, [&](int j) {
    const double y = -r + (j + 0.5) * subpixel;
    long long c = 0;
    for (int i = 0; i < cells; ++i) {
      const double x = -r + (i + 0.5) * subpixel;
      if (!inside(x, y)) continue;
      const double dx = x - nx, dy = y - ny;
      if (dx * dx + dy * dy > r2) continue;
      if (inside(x + d * ux, y + d * uy)) continue;
      if (inside(x - d * ux, y - d * uy)) continue;
      ++c;
    }
    return static_cast<double>(c);
  });
  return count * subpixel * subpixel;
}

// Pixel-center rasterization: pixel (x, y) is foreground iff its center lies
// within distance r of (cx, cy).
inline GridLabeling rasterize_disk(int width, int height, double cx, double cy, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("disk radius must be positive");
  GridLabeling lab(width, height);
  const double r2 = r * r;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double dx = x - cx, dy = y - cy;
      if (dx * dx + dy * dy <= r2) lab.set(x, y, 1);
    }
  }
  return lab;
}

// Curvature energy of a rasterized disk of radius r, averaged over a
// placements x placements lattice of sub-pixel center offsets.
inline double measure_disk_energy(double r, const NeighborhoodSystem& ns, int placements = 16) {
  if (!(r > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (placements < 1) throw std::invalid_argument("placements must be at least 1");
  const int d = ns.box_radius();
  const int side = 2 * (static_cast<int>(std::ceil(r)) + d) + 5;
  if (side < 2 * (static_cast<int>(std::ceil(r)) + d) + 3)
    throw std::invalid_argument("grid too small for disk and neighborhood");
  const int c0 = side / 2;
  double total = 0.0;
  for (int i = 0; i < placements; ++i) {
    for (int j = 0; j < placements; ++j) {
      double cx = c0 + (i + 0.5) / placements;
      double cy = c0 + (j + 0.5) / placements;
      total += curvature_energy(rasterize_disk(side, side, cx, cy, r), ns);
    }
  }
  return total / (static_cast<double>(placements) * placements);
}

struct CircleMeasurement {
  double r = 0.0;
  double kappa = 0.0;
  int d = 0;
  double measured = 0.0;
  double target = 0.0;  // 2*pi/r, the squared-curvature integral of the circle
  double rel_error = 0.0;
};

inline std::vector<CircleMeasurement> circle_experiment(const std::vector<double>& radii, int d,
                                                        NeighborhoodMode mode,
                                                        int placements = 16) {
  for (double r : radii)
    if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
  NeighborhoodSystem ns = build_neighborhood(d, mode);
  std::vector<CircleMeasurement> rows;
  rows.reserve(radii.size());
  for (double r : radii) {
    CircleMeasurement m;
    m.r = r;
    m.kappa = 1.0 / r;
    m.d = d;
    m.measured = measure_disk_energy(r, ns, placements);
    m.target = 2.0 * std::numbers::pi / r;
    m.rel_error = (m.measured - m.target) / m.target;
    rows.push_back(m);
  }
  return rows;
}

}  // namespace curvecut
