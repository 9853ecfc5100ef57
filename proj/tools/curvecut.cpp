// curvecut: binary segmentation and inpainting with squared-curvature
// regularization, plus the measurement commands behind the model
// (neighborhood dumps, circle accuracy, closed-form vs rasterized areas).
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "curvecut/curvecut.hpp"

namespace {

using namespace curvecut;

void add_neighborhood_flags(CLI::App* cmd, RunConfig& cfg, std::string& mode) {
  cmd->add_option("--clique-radius", cfg.clique_radius, "triple clique length d (box radius)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--neighborhood", mode, "clique orientations: full box perimeter or axis pair")
      ->check(CLI::IsMember({"full", "axis"}));
}

std::string g_save_config_path;

void add_segmentation_flags(CLI::App* cmd, RunConfig& cfg, std::string& mode) {
  cmd->add_option("input", cfg.input, "input image (PGM or PNG)")->required();
  cmd->add_option("-o,--output", cfg.output, "labeling image to write")->required();
  cmd->add_option("--report", cfg.report, "CSV run report path");
  cmd->add_option("--trace", cfg.trace, "CSV optimizer trace path");
  cmd->add_option("--lambda", cfg.lambda, "curvature regularization weight")
      ->check(CLI::NonNegativeNumber);
  add_neighborhood_flags(cmd, cfg, mode);
  cmd->add_option("--scale", cfg.scale,
                  "integer upscale factor; lambda applies to the scaled grid as given")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mean-fg", cfg.mean_fg, "foreground intensity mean");
  cmd->add_option("--mean-bg", cfg.mean_bg, "background intensity mean");
  cmd->add_option("--variance", cfg.variance, "appearance Gaussian variance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--optimizer", cfg.optimizer, "lsa-tr, icm or brute")
      ->check(CLI::IsMember({"lsa-tr", "icm", "brute"}));
  cmd->add_option("--tr-init", cfg.tr.tr_init, "initial trust-region multiplier");
  cmd->add_option("--tr-growth", cfg.tr.tr_growth, "trust-region multiplier growth factor");
  cmd->add_option("--tr-max", cfg.tr.tr_max, "stop once rejected beyond this multiplier");
  cmd->add_option("--tr-min", cfg.tr.tr_min, "converged once the anchor returns at this multiplier");
  cmd->add_option("--tr-tau", cfg.tr.tau, "acceptance ratio threshold");
  cmd->add_option("--max-iterations", cfg.tr.max_iterations, "trust-region iteration cap");
  cmd->add_option("--seed", cfg.seed, "seed recorded with the run");
  cmd->add_option("--save-config", g_save_config_path, "write the effective config here");
}

void apply_mode(RunConfig& cfg, const std::string& mode) {
  cfg.neighborhood = mode == "axis" ? NeighborhoodMode::axis_only : NeighborhoodMode::full_box;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

void finish_run(const RunConfig& cfg, const SegmentationResult& result) {
  save_labeling(cfg.output, result.labeling);
  if (!cfg.report.empty()) segmentation_report(result).save(cfg.report);
  if (!cfg.trace.empty()) trace_csv(result.report).save(cfg.trace);
  if (!g_save_config_path.empty()) write_text(g_save_config_path, cfg.serialize());
  std::cout << "final_energy=" << format_double(result.final_energy)
            << " data_part=" << format_double(result.data_part)
            << " curvature_part=" << format_double(result.curvature_part)
            << " foreground=" << result.labeling.foreground_count()
            << " iterations=" << result.iterations
            << " seconds=" << format_double(result.seconds) << "\n";
}

void emit_csv(const CsvTable& table, const std::string& output) {
  if (output.empty())
    std::cout << table.to_string();
  else
    table.save(output);
}

CsvTable family_breakdown(const NeighborhoodSystem& ns, const GridLabeling& lab) {
  std::vector<long long> fired(ns.family_count(), 0);
  const auto& labels = lab.labels();
  for_each_clique(ns, lab.width(), lab.height(), [&](int family, int pa, int pb, int pc) {
    int a = labels[static_cast<size_t>(pa)];
    int b = labels[static_cast<size_t>(pb)];
    int c = labels[static_cast<size_t>(pc)];
    if (a == c && b != a) ++fired[static_cast<size_t>(family)];
  });
  CsvTable table({"family", "dx", "dy", "length", "theta", "delta_theta", "weight",
                  "fired_cliques", "energy"});
  for (const CliqueFamily& f : ns.families()) {
    table.row()
        .cell(f.index)
        .cell(f.dx)
        .cell(f.dy)
        .cell(f.length)
        .cell(f.theta)
        .cell(f.delta_theta)
        .cell(f.weight)
        .cell(fired[static_cast<size_t>(f.index)])
        .cell(f.weight * static_cast<double>(fired[static_cast<size_t>(f.index)]));
  }
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squared-curvature segmentation and inpainting"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode = "full";

  CLI::App* segment = app.add_subcommand("segment", "segment an image");
  add_segmentation_flags(segment, cfg, mode);

  CLI::App* inpaint = app.add_subcommand("inpaint", "segment with a neutralized masked region");
  add_segmentation_flags(inpaint, cfg, mode);
  inpaint->add_option("--mask", cfg.mask, "mask image; intensity > 0.5 marks masked pixels")
      ->required();

  CLI::App* energy_cmd = app.add_subcommand("energy", "curvature energy of a labeling image");
  energy_cmd->add_option("input", cfg.input, "labeling image")->required();
  energy_cmd->add_option("-o,--output", cfg.output, "per-family CSV path (stdout if omitted)");
  add_neighborhood_flags(energy_cmd, cfg, mode);

  CLI::App* response = app.add_subcommand("response-map", "per-pixel curvature contributions");
  response->add_option("input", cfg.input, "labeling image")->required();
  response->add_option("-o,--output", cfg.output, "normalized grayscale image to write")
      ->required();
  response->add_option("--csv", cfg.report, "raw response CSV path");
  add_neighborhood_flags(response, cfg, mode);

  CLI::App* circle = app.add_subcommand("circle-accuracy",
                                        "measured vs analytic energy of rasterized disks");
  circle->add_option("--radii", cfg.radii, "disk radii")->delimiter(',');
  circle->add_option("--placements", cfg.placements,
                     "sub-pixel placement lattice size per axis")
      ->check(CLI::PositiveNumber);
  circle->add_option("-o,--output", cfg.output, "CSV path (stdout if omitted)");
  add_neighborhood_flags(circle, cfg, mode);

  CLI::App* theorem = app.add_subcommand("theorem1",
                                         "closed-form, Taylor and rasterized fired areas");
  theorem->add_option("--kappa", cfg.kappas, "curvatures")->delimiter(',');
  theorem->add_option("--chord", cfg.chords, "half-chord lengths d")->delimiter(',');
  theorem->add_option("--subpixel", cfg.subpixel, "oracle cell size")->check(CLI::PositiveNumber);
  theorem->add_option("--theta", cfg.theta, "tangent direction for the oracle");
  theorem->add_option("-o,--output", cfg.output, "CSV path (stdout if omitted)");

  CLI::App* dump = app.add_subcommand("dump-neighborhood", "clique families as CSV");
  dump->add_option("-o,--output", cfg.output, "CSV path (stdout if omitted)");
  add_neighborhood_flags(dump, cfg, mode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  apply_mode(cfg, mode);

  try {
    if (segment->parsed()) {
      cfg.task = "segment";
      SegmentationResult result = segment_image(cfg, load_image(cfg.input));
      finish_run(cfg, result);
    } else if (inpaint->parsed()) {
      cfg.task = "inpaint";
      ImageGrid img = load_image(cfg.input);
      GridLabeling mask = load_labeling(cfg.mask);
      SegmentationResult result = inpaint_image(cfg, img, mask);
      finish_run(cfg, result);
    } else if (energy_cmd->parsed()) {
      cfg.task = "energy";
      GridLabeling lab = load_labeling(cfg.input);
      NeighborhoodSystem ns = build_neighborhood(cfg.clique_radius, cfg.neighborhood);
      std::cout << "curvature_energy=" << format_double(curvature_energy(lab, ns)) << "\n";
      emit_csv(family_breakdown(ns, lab), cfg.output);
    } else if (response->parsed()) {
      cfg.task = "response-map";
      GridLabeling lab = load_labeling(cfg.input);
      NeighborhoodSystem ns = build_neighborhood(cfg.clique_radius, cfg.neighborhood);
      ResponseMap map = response_map(lab, ns);
      double peak = 0.0;
      for (double v : map.response) peak = std::max(peak, v);
      std::vector<std::uint8_t> gray(map.response.size(), 0);
      if (peak > 0.0)
        for (size_t i = 0; i < gray.size(); ++i)
          gray[i] = static_cast<std::uint8_t>(std::lround(255.0 * map.response[i] / peak));
      save_grayscale(cfg.output, map.width, map.height, gray);
      if (!cfg.report.empty()) {
        CsvTable table({"x", "y", "response"});
        for (int y = 0; y < map.height; ++y)
          for (int x = 0; x < map.width; ++x)
            table.row().cell(x).cell(y).cell(map.response[static_cast<size_t>(y) * map.width + x]);
        table.save(cfg.report);
      }
      std::cout << "total=" << format_double(map.total()) << " peak=" << format_double(peak)
                << "\n";
    } else if (circle->parsed()) {
      cfg.task = "circle-accuracy";
      auto rows = circle_experiment(cfg.radii, cfg.clique_radius, cfg.neighborhood,
                                    cfg.placements);
      CsvTable table({"r", "kappa", "d", "measured", "target", "rel_error"});
      for (const auto& m : rows)
        table.row().cell(m.r).cell(m.kappa).cell(m.d).cell(m.measured).cell(m.target).cell(
            m.rel_error);
      emit_csv(table, cfg.output);
    } else if (theorem->parsed()) {
      cfg.task = "theorem1";
      CsvTable table({"kappa", "d", "A_closed", "A_taylor", "A_raster"});
      for (double kappa : cfg.kappas) {
        for (double d : cfg.chords) {
          if (!(kappa > 0.0) || !(d > 0.0) || kappa * d >= 1.0) continue;
          double closed = fired_area_A(kappa, d);
          double taylor = taylor_area(kappa, d);
          double raster = rasterization_oracle(1.0 / kappa, d, cfg.theta, cfg.subpixel);
          table.row().cell(kappa).cell(d).cell(closed).cell(taylor).cell(raster);
        }
      }
      emit_csv(table, cfg.output);
    } else if (dump->parsed()) {
      cfg.task = "dump-neighborhood";
      NeighborhoodSystem ns = build_neighborhood(cfg.clique_radius, cfg.neighborhood);
      CsvTable table({"i", "dx", "dy", "d_i", "theta_i", "delta_theta_i", "w_i"});
      for (const CliqueFamily& f : ns.families())
        table.row().cell(f.index).cell(f.dx).cell(f.dy).cell(f.length).cell(f.theta).cell(
            f.delta_theta).cell(f.weight);
      emit_csv(table, cfg.output);
    }
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
