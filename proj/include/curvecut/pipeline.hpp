#pragma once

// Segmentation / inpainting pipeline: load -> optional upscale -> Gaussian
// data term -> (mask) -> assemble -> optimize. Shared by the CLI and the
// acceptance suite so both exercise the same code path.

#include <chrono>
#include <optional>
#include <string>
#include <utility>

#include "curvecut/config.hpp"
#include "curvecut/csv.hpp"
#include "curvecut/energy.hpp"
#include "curvecut/grid.hpp"
#include "curvecut/neighborhood.hpp"
#include "curvecut/optimizer.hpp"
#include "curvecut/util.hpp"

namespace curvecut {

struct SegmentationResult {
  GridLabeling labeling;
  double final_energy = 0.0;
  double data_part = 0.0;
  double curvature_part = 0.0;  // unweighted curvature energy of the result
  int iterations = 0;
  double seconds = 0.0;
  OptimizerReport report;
};

inline OptimizerReport run_optimizer(const RunConfig& cfg, const QpbEnergy& qpb,
                                     const std::vector<std::uint8_t>& init) {
  if (cfg.optimizer == "lsa-tr") return lsa_tr(qpb, init, cfg.tr);
  if (cfg.optimizer == "icm") return icm(qpb, init);
  if (cfg.optimizer == "brute") return brute_force(qpb);
  throw std::invalid_argument("unknown optimizer '" + cfg.optimizer +
                              "' (expected lsa-tr, icm or brute)");
}

// mask, when present, marks pixels whose data term is neutralized (inpainting).
inline SegmentationResult segment_image(const RunConfig& cfg, const ImageGrid& input,
                                        const GridLabeling* mask = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  ImageGrid img = upscale(input, cfg.scale);
  UnaryField field = gaussian_data_term(img, cfg.mean_fg, cfg.mean_bg, cfg.variance);
  std::optional<GridLabeling> scaled_mask;
  if (mask != nullptr) {
    scaled_mask = upscale(*mask, cfg.scale);
    field = apply_inpainting_mask(field, *scaled_mask);
  }
  NeighborhoodSystem ns = build_neighborhood(cfg.clique_radius, cfg.neighborhood);
  QpbEnergy qpb = assemble_energy(field, cfg.lambda, ns);
  GridLabeling init = field.argmin();
  OptimizerReport report = run_optimizer(cfg, qpb, init.labels());

  SegmentationResult result{GridLabeling(img.width(), img.height(), report.labels)};
  result.data_part = field.evaluate(result.labeling);
  result.curvature_part = curvature_energy(result.labeling, ns);
  result.final_energy = report.energy;
  result.iterations = report.iterations;
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.report = std::move(report);
  return result;
}

inline SegmentationResult inpaint_image(const RunConfig& cfg, const ImageGrid& input,
                                        const GridLabeling& mask) {
  if (mask.width() != input.width() || mask.height() != input.height())
    throw std::invalid_argument("mask dimensions do not match the input image");
  return segment_image(cfg, input, &mask);
}

// CSV report for a segmentation run. Timing is the last column so the
// deterministic part of the row is a stable prefix.
inline CsvTable segmentation_report(const SegmentationResult& result) {
  CsvTable table({"final_energy", "data_part", "curvature_part", "foreground_pixels",
                  "iterations", "seconds"});
  table.row()
      .cell(result.final_energy)
      .cell(result.data_part)
      .cell(result.curvature_part)
      .cell(result.labeling.foreground_count())
      .cell(result.iterations)
      .cell(result.seconds);
  return table;
}

inline CsvTable trace_csv(const OptimizerReport& report) {
  CsvTable table({"iteration", "lambda_tr", "energy", "hamming_step"});
  for (const TraceEntry& e : report.trace)
    table.row().cell(e.iteration).cell(e.lambda_tr).cell(e.energy).cell(e.hamming_step);
  return table;
}

}  // namespace curvecut
