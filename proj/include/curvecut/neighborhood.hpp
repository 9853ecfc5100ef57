#pragma once

// Straight-triple-clique neighborhood system. For a box of radius d the
// clique families are the integer offsets on the box perimeter, one
// representative per orientation class mod pi. Family i carries the angular
// increment to the next orientation and the penalty weight
//
//   w_i = 4 * delta_theta_i / d_i^3
//
// so that counting fired cliques measures the squared-curvature integral.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace curvecut {

enum class NeighborhoodMode { full_box, axis_only };

inline const char* to_string(NeighborhoodMode m) {
  return m == NeighborhoodMode::full_box ? "full" : "axis";
}

struct CliqueFamily {
  int index = 0;
  int dx = 0, dy = 0;       // offset to the "plus" neighbor; "minus" is the negation
  double length = 0.0;      // Euclidean norm of the offset, in pixels
  double theta = 0.0;       // orientation in [0, pi)
  double delta_theta = 0.0; // forward angular gap to the next family (period pi)
  double weight = 0.0;
};

class NeighborhoodSystem {
 public:
  NeighborhoodSystem(int box_radius, NeighborhoodMode mode, std::vector<CliqueFamily> families)
      : box_radius_(box_radius), mode_(mode), families_(std::move(families)) {}

  int box_radius() const { return box_radius_; }
  NeighborhoodMode mode() const { return mode_; }
  const std::vector<CliqueFamily>& families() const { return families_; }
  size_t family_count() const { return families_.size(); }

 private:
  int box_radius_;
  NeighborhoodMode mode_;
  std::vector<CliqueFamily> families_;
};

// Turns raw offsets into families: orientations reduced mod pi, sorted
// ascending, forward-difference angular gaps with period-pi wraparound.
inline std::vector<CliqueFamily> families_from_offsets(
    const std::vector<std::pair<int, int>>& offsets) {
  if (offsets.empty()) throw std::invalid_argument("offset list is empty");
  std::vector<CliqueFamily> fams;
  fams.reserve(offsets.size());
  for (const auto& [dx, dy] : offsets) {
    if (dx == 0 && dy == 0) throw std::invalid_argument("zero offset is not a clique");
    CliqueFamily f;
    f.dx = dx;
    f.dy = dy;
    f.length = std::hypot(static_cast<double>(dx), static_cast<double>(dy));
    double theta = std::atan2(static_cast<double>(dy), static_cast<double>(dx));
    if (theta < 0.0) theta += std::numbers::pi;
    if (theta >= std::numbers::pi) theta -= std::numbers::pi;
    f.theta = theta;
    fams.push_back(f);
  }
  std::sort(fams.begin(), fams.end(),
            [](const CliqueFamily& a, const CliqueFamily& b) { return a.theta < b.theta; });
  for (size_t i = 0; i + 1 < fams.size(); ++i)
    if (fams[i].theta == fams[i + 1].theta)
      throw std::invalid_argument("two offsets share orientation " +
                                  std::to_string(fams[i].theta) + " mod pi");
  const size_t m = fams.size();
  for (size_t i = 0; i < m; ++i) {
    double next = (i + 1 < m) ? fams[i + 1].theta : fams[0].theta + std::numbers::pi;
    fams[i].delta_theta = next - fams[i].theta;
    fams[i].weight = 4.0 * fams[i].delta_theta / (fams[i].length * fams[i].length * fams[i].length);
    fams[i].index = static_cast<int>(i);
  }
  return fams;
}

// Builds the neighborhood for a (2d+1) x (2d+1) box. full_box yields the 4d
// perimeter orientations; axis_only is the horizontal+vertical pair.
inline NeighborhoodSystem build_neighborhood(int d, NeighborhoodMode mode) {
  if (d < 1) throw std::invalid_argument("clique radius must be at least 1");
  if (mode == NeighborhoodMode::axis_only) {
    if (d != 1) throw std::invalid_argument("axis_only neighborhood requires radius 1");
    return NeighborhoodSystem(d, mode, families_from_offsets({{1, 0}, {0, 1}}));
  }
  // one representative per orientation class: dx > 0, or dx == 0 and dy > 0
  std::vector<std::pair<int, int>> offsets;
  for (int dx = -d; dx <= d; ++dx) {
    for (int dy = -d; dy <= d; ++dy) {
      if (std::max(std::abs(dx), std::abs(dy)) != d) continue;
      if (dx > 0 || (dx == 0 && dy > 0)) offsets.emplace_back(dx, dy);
    }
  }
  return NeighborhoodSystem(d, mode, families_from_offsets(offsets));
}

// Calls fn(family_index, p_minus, p_center, p_plus) with flat pixel ids for
// every clique whose three pixels lie inside the width x height grid.
// Cliques crossing the border are dropped.
template <class Fn>
void for_each_clique(const NeighborhoodSystem& ns, int width, int height, Fn&& fn) {
  if (width < 1 || height < 1) throw std::invalid_argument("invalid grid dimensions");
  for (const CliqueFamily& f : ns.families()) {
    const int adx = std::abs(f.dx), ady = std::abs(f.dy);
    const int x0 = adx, x1 = width - adx;
    const int y0 = ady, y1 = height - ady;
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        int center = y * width + x;
        int shift = f.dy * width + f.dx;
        fn(f.index, center - shift, center, center + shift);
      }
    }
  }
}

// Number of in-bounds cliques, summed over families.
inline long long clique_count(const NeighborhoodSystem& ns, int width, int height) {
  long long n = 0;
  for (const CliqueFamily& f : ns.families()) {
    long long cx = std::max(0, width - 2 * std::abs(f.dx));
    long long cy = std::max(0, height - 2 * std::abs(f.dy));
    n += cx * cy;
  }
  return n;
}

}  // namespace curvecut
