#pragma once

// Lattice types shared by every other module: grayscale images, binary
// labelings and per-pixel label costs. All types are immutable after
// construction apart from GridLabeling::set, and validate their invariants
// on construction.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace curvecut {

namespace detail {
inline void check_dims(int width, int height) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("grid dimensions must be at least 1x1, got " +
                                std::to_string(width) + "x" + std::to_string(height));
}
inline void check_bounds(int x, int y, int width, int height) {
  if (x < 0 || y < 0 || x >= width || y >= height)
    throw std::out_of_range("pixel (" + std::to_string(x) + "," + std::to_string(y) +
                            ") outside " + std::to_string(width) + "x" + std::to_string(height) +
                            " grid");
}
}  // namespace detail

// Grayscale image with intensities normalized to [0,1].
class ImageGrid {
 public:
  ImageGrid(int width, int height, std::vector<double> intensity)
      : width_(width), height_(height), intensity_(std::move(intensity)) {
    detail::check_dims(width_, height_);
    if (intensity_.size() != static_cast<size_t>(width_) * static_cast<size_t>(height_))
      throw std::invalid_argument("intensity buffer size does not match dimensions");
    for (double v : intensity_)
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("intensity " + std::to_string(v) + " outside [0,1]");
  }

  static ImageGrid constant(int width, int height, double value) {
    return ImageGrid(width, height,
                     std::vector<double>(static_cast<size_t>(width) * height, value));
  }

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return intensity_.size(); }

  double at(int x, int y) const {
    detail::check_bounds(x, y, width_, height_);
    return intensity_[static_cast<size_t>(y) * width_ + x];
  }

  const std::vector<double>& intensities() const { return intensity_; }

 private:
  int width_, height_;
  std::vector<double> intensity_;
};

// Binary labeling x_p in {0,1} over a pixel lattice. Out-of-bounds access
// throws; there is deliberately no clamped or defaulted read.
class GridLabeling {
 public:
  GridLabeling(int width, int height)
      : width_(width), height_(height),
        labels_(static_cast<size_t>(width) * static_cast<size_t>(height), 0) {
    detail::check_dims(width_, height_);
  }

  GridLabeling(int width, int height, std::vector<std::uint8_t> labels)
      : width_(width), height_(height), labels_(std::move(labels)) {
    detail::check_dims(width_, height_);
    if (labels_.size() != static_cast<size_t>(width_) * static_cast<size_t>(height_))
      throw std::invalid_argument("label buffer size does not match dimensions");
    for (auto v : labels_)
      if (v > 1) throw std::invalid_argument("labels must be 0 or 1");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return labels_.size(); }

  int at(int x, int y) const {
    detail::check_bounds(x, y, width_, height_);
    return labels_[static_cast<size_t>(y) * width_ + x];
  }

  void set(int x, int y, int value) {
    detail::check_bounds(x, y, width_, height_);
    if (value != 0 && value != 1) throw std::invalid_argument("labels must be 0 or 1");
    labels_[static_cast<size_t>(y) * width_ + x] = static_cast<std::uint8_t>(value);
  }

  const std::vector<std::uint8_t>& labels() const { return labels_; }

  int foreground_count() const {
    int n = 0;
    for (auto v : labels_) n += v;
    return n;
  }

  bool operator==(const GridLabeling& other) const {
    return width_ == other.width_ && height_ == other.height_ && labels_ == other.labels_;
  }

 private:
  int width_, height_;
  std::vector<std::uint8_t> labels_;
};

// Per-pixel costs for assigning label 0 or 1.
class UnaryField {
 public:
  UnaryField(int width, int height, std::vector<double> cost0, std::vector<double> cost1)
      : width_(width), height_(height), cost0_(std::move(cost0)), cost1_(std::move(cost1)) {
    detail::check_dims(width_, height_);
    size_t n = static_cast<size_t>(width_) * static_cast<size_t>(height_);
    if (cost0_.size() != n || cost1_.size() != n)
      throw std::invalid_argument("cost buffer size does not match dimensions");
    for (size_t i = 0; i < n; ++i)
      if (!std::isfinite(cost0_[i]) || !std::isfinite(cost1_[i]))
        throw std::invalid_argument("unary costs must be finite");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return cost0_.size(); }

  double cost0(int x, int y) const {
    detail::check_bounds(x, y, width_, height_);
    return cost0_[static_cast<size_t>(y) * width_ + x];
  }
  double cost1(int x, int y) const {
    detail::check_bounds(x, y, width_, height_);
    return cost1_[static_cast<size_t>(y) * width_ + x];
  }

  const std::vector<double>& costs0() const { return cost0_; }
  const std::vector<double>& costs1() const { return cost1_; }

  // Cost of a full labeling under this field.
  double evaluate(const GridLabeling& labeling) const {
    if (labeling.width() != width_ || labeling.height() != height_)
      throw std::invalid_argument("labeling dimensions do not match unary field");
    double total = 0.0;
    const auto& l = labeling.labels();
    for (size_t i = 0; i < l.size(); ++i) total += l[i] ? cost1_[i] : cost0_[i];
    return total;
  }

  // Per-pixel argmin labeling; ties go to label 0.
  GridLabeling argmin() const {
    std::vector<std::uint8_t> labels(cost0_.size(), 0);
    for (size_t i = 0; i < labels.size(); ++i)
      if (cost1_[i] < cost0_[i]) labels[i] = 1;
    return GridLabeling(width_, height_, std::move(labels));
  }

 private:
  int width_, height_;
  std::vector<double> cost0_, cost1_;
};

// Negative-log Gaussian appearance costs. The label-independent normalization
// constant is dropped; it cannot change any minimizer.
inline UnaryField gaussian_data_term(const ImageGrid& img, double mean_fg, double mean_bg,
                                     double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("variance must be positive");
  size_t n = img.size();
  std::vector<double> cost0(n), cost1(n);
  const auto& in = img.intensities();
  const double inv = 1.0 / (2.0 * variance);
  for (size_t i = 0; i < n; ++i) {
    double d1 = in[i] - mean_fg;
    double d0 = in[i] - mean_bg;
    cost1[i] = d1 * d1 * inv;
    cost0[i] = d0 * d0 * inv;
  }
  return UnaryField(img.width(), img.height(), std::move(cost0), std::move(cost1));
}

// Makes masked pixels carry no data preference: cost0 = cost1 = 1.
inline UnaryField apply_inpainting_mask(const UnaryField& field, const GridLabeling& mask) {
  if (mask.width() != field.width() || mask.height() != field.height())
    throw std::invalid_argument("mask dimensions do not match unary field");
  std::vector<double> cost0 = field.costs0();
  std::vector<double> cost1 = field.costs1();
  const auto& m = mask.labels();
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i]) {
      cost0[i] = 1.0;
      cost1[i] = 1.0;
    }
  }
  return UnaryField(field.width(), field.height(), std::move(cost0), std::move(cost1));
}

// Nearest-neighbor upscaling: each source pixel becomes a factor x factor block.
inline ImageGrid upscale(const ImageGrid& img, int factor) {
  if (factor < 1) throw std::invalid_argument("scale factor must be at least 1");
  if (factor == 1) return img;
  int w = img.width() * factor, h = img.height() * factor;
  std::vector<double> out(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out[static_cast<size_t>(y) * w + x] = img.at(x / factor, y / factor);
  return ImageGrid(w, h, std::move(out));
}

inline GridLabeling upscale(const GridLabeling& labeling, int factor) {
  if (factor < 1) throw std::invalid_argument("scale factor must be at least 1");
  if (factor == 1) return labeling;
  int w = labeling.width() * factor, h = labeling.height() * factor;
  std::vector<std::uint8_t> out(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out[static_cast<size_t>(y) * w + x] =
          static_cast<std::uint8_t>(labeling.at(x / factor, y / factor));
  return GridLabeling(w, h, std::move(out));
}

}  // namespace curvecut
