#pragma once

// Grayscale image I/O: 8-bit PGM (P2 ascii, P5 binary) and PNG. Color PNGs
// are converted to grayscale on load. Intensity v with maximum value m maps
// to v/m; labelings are written with 0 -> black, 1 -> white.

#include <png.h>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "curvecut/grid.hpp"
#include "curvecut/util.hpp"

namespace curvecut {

namespace detail {

// Skips PGM whitespace and '#' comments, then reads one non-negative integer.
inline int read_pnm_int(std::istream& in, const std::string& path) {
  while (true) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = -1;
  if (!(in >> value) || value < 0) throw IoError("malformed PGM header in " + path);
  return value;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  std::string tail = s.substr(s.size() - suffix.size());
  for (auto& ch : tail) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return tail == suffix;
}

}  // namespace detail

inline ImageGrid read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || (m1 != '2' && m1 != '5')) throw IoError(path + " is not a P2/P5 PGM file");
  const bool binary = m1 == '5';
  int width = detail::read_pnm_int(in, path);
  int height = detail::read_pnm_int(in, path);
  int maxval = detail::read_pnm_int(in, path);
  if (width < 1 || height < 1) throw IoError("invalid PGM dimensions in " + path);
  if (maxval < 1 || maxval > 255) throw IoError(path + ": only 8-bit PGM is supported");
  size_t n = static_cast<size_t>(width) * height;
  std::vector<double> intensity(n);
  if (binary) {
    in.get();  // single whitespace after maxval
    std::vector<std::uint8_t> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in.gcount()) != n) throw IoError("truncated PGM raster in " + path);
    for (size_t i = 0; i < n; ++i) intensity[i] = static_cast<double>(raw[i]) / maxval;
  } else {
    for (size_t i = 0; i < n; ++i) {
      int v = detail::read_pnm_int(in, path);
      if (v > maxval) throw IoError("PGM sample above maxval in " + path);
      intensity[i] = static_cast<double>(v) / maxval;
    }
  }
  return ImageGrid(width, height, std::move(intensity));
}

inline void write_pgm(const std::string& path, int width, int height,
                      const std::vector<std::uint8_t>& gray) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "P5\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
  if (!out) throw IoError("failed writing " + path);
}

inline ImageGrid read_png(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw IoError("cannot read PNG " + path + ": " + image.message);
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, raw.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot decode PNG " + path + ": " + msg);
  }
  int width = static_cast<int>(image.width);
  int height = static_cast<int>(image.height);
  std::vector<double> intensity(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) intensity[i] = static_cast<double>(raw[i]) / 255.0;
  return ImageGrid(width, height, std::move(intensity));
}

inline void write_png(const std::string& path, int width, int height,
                      const std::vector<std::uint8_t>& gray) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, gray.data(), 0, nullptr))
    throw IoError("cannot write PNG " + path + ": " + image.message);
}

// Dispatches on extension: .png goes through libpng, everything else PGM.
inline ImageGrid load_image(const std::string& path) {
  if (detail::ends_with(path, ".png")) return read_png(path);
  return read_pgm(path);
}

inline void save_grayscale(const std::string& path, int width, int height,
                           const std::vector<std::uint8_t>& gray) {
  if (gray.size() != static_cast<size_t>(width) * height)
    throw std::invalid_argument("grayscale buffer size does not match dimensions");
  if (detail::ends_with(path, ".png"))
    write_png(path, width, height, gray);
  else
    write_pgm(path, width, height, gray);
}

inline void save_labeling(const std::string& path, const GridLabeling& labeling) {
  std::vector<std::uint8_t> gray(labeling.size());
  const auto& l = labeling.labels();
  for (size_t i = 0; i < l.size(); ++i) gray[i] = l[i] ? 255 : 0;
  save_grayscale(path, labeling.width(), labeling.height(), gray);
}

// Any intensity above 0.5 counts as foreground / masked.
inline GridLabeling threshold_labeling(const ImageGrid& img) {
  std::vector<std::uint8_t> labels(img.size());
  const auto& in = img.intensities();
  for (size_t i = 0; i < in.size(); ++i) labels[i] = in[i] > 0.5 ? 1 : 0;
  return GridLabeling(img.width(), img.height(), std::move(labels));
}

inline GridLabeling load_labeling(const std::string& path) {
  return threshold_labeling(load_image(path));
}

}  // namespace curvecut
