#pragma once

// Flat, order-stable run configuration. Every field has a default; the
// key=value serialization round-trips losslessly (doubles use shortest
// round-trip formatting).

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "curvecut/neighborhood.hpp"
#include "curvecut/optimizer.hpp"
#include "curvecut/util.hpp"

namespace curvecut {

struct RunConfig {
  std::string task = "segment";
  std::string input;
  std::string output;
  std::string report;
  std::string trace;
  std::string mask;

  double lambda = 0.5;
  int clique_radius = 3;  // 7x7 box
  NeighborhoodMode neighborhood = NeighborhoodMode::full_box;
  int scale = 1;

  double mean_fg = 0.0;
  double mean_bg = 0.6;
  double variance = 0.4;

  std::string optimizer = "lsa-tr";
  TrustRegionParams tr;
  unsigned long long seed = 0;

  // geometry subcommands
  std::vector<double> radii = {8, 12, 16, 24, 32};
  std::vector<double> kappas = {0.05, 0.1, 0.2};
  std::vector<double> chords = {2, 3, 4};
  int placements = 16;
  double subpixel = 0.05;
  double theta = 0.0;

  std::string serialize() const;
  static RunConfig parse(const std::string& text);
};

namespace detail {

inline std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

inline std::vector<double> split_doubles(const std::string& s, const std::string& key) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid number '" + item + "' in " + key);
    }
  }
  return out;
}

inline double parse_double(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid number '" + s + "' for " + key);
  }
}

inline long long parse_int(const std::string& s, const std::string& key) {
  long long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("invalid integer '" + s + "' for " + key);
  return v;
}

}  // namespace detail

inline std::string RunConfig::serialize() const {
  std::ostringstream out;
  out << "task=" << task << '\n'
      << "input=" << input << '\n'
      << "output=" << output << '\n'
      << "report=" << report << '\n'
      << "trace=" << trace << '\n'
      << "mask=" << mask << '\n'
      << "lambda=" << format_double(lambda) << '\n'
      << "clique_radius=" << clique_radius << '\n'
      << "neighborhood=" << to_string(neighborhood) << '\n'
      << "scale=" << scale << '\n'
      << "mean_fg=" << format_double(mean_fg) << '\n'
      << "mean_bg=" << format_double(mean_bg) << '\n'
      << "variance=" << format_double(variance) << '\n'
      << "optimizer=" << optimizer << '\n'
      << "tr_init=" << format_double(tr.tr_init) << '\n'
      << "tr_growth=" << format_double(tr.tr_growth) << '\n'
      << "tr_max=" << format_double(tr.tr_max) << '\n'
      << "tr_min=" << format_double(tr.tr_min) << '\n'
      << "tr_tau=" << format_double(tr.tau) << '\n'
      << "max_iterations=" << tr.max_iterations << '\n'
      << "seed=" << seed << '\n'
      << "radii=" << detail::join_doubles(radii) << '\n'
      << "kappas=" << detail::join_doubles(kappas) << '\n'
      << "chords=" << detail::join_doubles(chords) << '\n'
      << "placements=" << placements << '\n'
      << "subpixel=" << format_double(subpixel) << '\n'
      << "theta=" << format_double(theta) << '\n';
  return out.str();
}

inline RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line without '=': " + line);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "task") cfg.task = value;
    else if (key == "input") cfg.input = value;
    else if (key == "output") cfg.output = value;
    else if (key == "report") cfg.report = value;
    else if (key == "trace") cfg.trace = value;
    else if (key == "mask") cfg.mask = value;
    else if (key == "lambda") cfg.lambda = detail::parse_double(value, key);
    else if (key == "clique_radius") cfg.clique_radius = static_cast<int>(detail::parse_int(value, key));
    else if (key == "neighborhood") {
      if (value == "full") cfg.neighborhood = NeighborhoodMode::full_box;
      else if (value == "axis") cfg.neighborhood = NeighborhoodMode::axis_only;
      else throw std::invalid_argument("neighborhood must be 'full' or 'axis', got " + value);
    }
    else if (key == "scale") cfg.scale = static_cast<int>(detail::parse_int(value, key));
    else if (key == "mean_fg") cfg.mean_fg = detail::parse_double(value, key);
    else if (key == "mean_bg") cfg.mean_bg = detail::parse_double(value, key);
    else if (key == "variance") cfg.variance = detail::parse_double(value, key);
    else if (key == "optimizer") cfg.optimizer = value;
    else if (key == "tr_init") cfg.tr.tr_init = detail::parse_double(value, key);
    else if (key == "tr_growth") cfg.tr.tr_growth = detail::parse_double(value, key);
    else if (key == "tr_max") cfg.tr.tr_max = detail::parse_double(value, key);
    else if (key == "tr_min") cfg.tr.tr_min = detail::parse_double(value, key);
    else if (key == "tr_tau") cfg.tr.tau = detail::parse_double(value, key);
    else if (key == "max_iterations") cfg.tr.max_iterations = static_cast<int>(detail::parse_int(value, key));
    else if (key == "seed") cfg.seed = static_cast<unsigned long long>(detail::parse_int(value, key));
    else if (key == "radii") cfg.radii = detail::split_doubles(value, key);
    else if (key == "kappas") cfg.kappas = detail::split_doubles(value, key);
    else if (key == "chords") cfg.chords = detail::split_doubles(value, key);
    else if (key == "placements") cfg.placements = static_cast<int>(detail::parse_int(value, key));
    else if (key == "subpixel") cfg.subpixel = detail::parse_double(value, key);
    else if (key == "theta") cfg.theta = detail::parse_double(value, key);
    else throw std::invalid_argument("unknown config key: " + key);
  }
  return cfg;
}

}  // namespace curvecut
