#pragma once

// Minimization of the full (non-submodular) energy.
//
// lsa_tr: trust-region loop over submodular subproblems. Supermodular pair
// terms are replaced by their first-order expansion around the current
// labeling (exact at the expansion point), a Hamming penalty lambda_tr keeps
// steps local, and the multiplier is driven by the actual-vs-predicted
// reduction ratio. The trust region shrinks (lambda_tr grows) on rejections
// and weak steps, and expands on strong steps and whenever the penalized
// solve returns the current labeling unchanged. A final unpenalized solve of
// the local model, accepted only if it improves the exact energy, makes the
// purely submodular case terminate at the max-flow global optimum.
//
// icm and brute_force are reference baselines.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "curvecut/energy.hpp"
#include "curvecut/maxflow.hpp"

namespace curvecut {

struct TrustRegionParams {
  double tr_init = 1.0;    // initial Hamming-penalty multiplier
  double tr_growth = 10.0; // multiplier on rejection / weak acceptance
  double tr_max = 1e6;     // stop when a step is rejected beyond this
  double tr_min = 1e-6;    // converged when the anchor is returned at or below this
  double tau = 0.25;       // acceptance ratio threshold
  int max_iterations = 1000;

  void validate() const {
    if (!(tr_init > 0.0)) throw std::invalid_argument("tr_init must be positive");
    if (!(tr_growth > 1.0)) throw std::invalid_argument("tr_growth must exceed 1");
    if (!(tr_max >= tr_init)) throw std::invalid_argument("tr_max must be at least tr_init");
    if (!(tr_min > 0.0 && tr_min <= tr_init))
      throw std::invalid_argument("tr_min must lie in (0, tr_init]");
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in (0,1)");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
  }
};

struct TraceEntry {
  int iteration = 0;
  double lambda_tr = 0.0;
  double energy = 0.0;   // exact energy after this iteration
  int hamming_step = 0;  // pixels changed by this iteration (0 if rejected)
};

struct OptimizerReport {
  std::vector<std::uint8_t> labels;
  double energy = 0.0;
  int iterations = 0;
  double seconds = 0.0;
  std::vector<TraceEntry> trace;
};

// Copies unary and submodular parts verbatim; replaces each supermodular
// term b*x_p*x_q (b > 0) by b*(x0_q*x_p + x0_p*x_q - x0_p*x0_q). The result
// has no positive pair coefficient and agrees with qpb exactly at x0.
inline QpbEnergy linearize_supermodular(const QpbEnergy& qpb,
                                        const std::vector<std::uint8_t>& x0) {
  if (x0.size() != static_cast<size_t>(qpb.num_vars()))
    throw std::invalid_argument("expansion point size does not match energy");
  QpbEnergy out(qpb.num_vars());
  out.add_constant(qpb.constant());
  const auto& lin = qpb.linear();
  for (int p = 0; p < qpb.num_vars(); ++p)
    if (lin[static_cast<size_t>(p)] != 0.0) out.add_linear(p, lin[static_cast<size_t>(p)]);
  for (const PairTerm& t : qpb.pairwise()) {
    if (t.coeff <= 0.0) {
      out.add_pairwise(t.p, t.q, t.coeff);
    } else {
      double xp = x0[static_cast<size_t>(t.p)], xq = x0[static_cast<size_t>(t.q)];
      if (xq != 0.0) out.add_linear(t.p, t.coeff * xq);
      if (xp != 0.0) out.add_linear(t.q, t.coeff * xp);
      out.add_constant(-t.coeff * xp * xq);
    }
  }
  return out;
}

namespace detail {

inline int hamming(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  int h = 0;
  for (size_t i = 0; i < a.size(); ++i) h += a[i] != b[i];
  return h;
}

// model + lambda_tr * Hamming(x, x0), encoded as unary terms.
inline QpbEnergy with_hamming_penalty(const QpbEnergy& model, const std::vector<std::uint8_t>& x0,
                                      double lambda_tr) {
  QpbEnergy out = model;
  for (int p = 0; p < model.num_vars(); ++p) {
    if (x0[static_cast<size_t>(p)]) {
      out.add_constant(lambda_tr);
      out.add_linear(p, -lambda_tr);
    } else {
      out.add_linear(p, lambda_tr);
    }
  }
  return out;
}

}  // namespace detail

inline OptimizerReport lsa_tr(const QpbEnergy& qpb, const std::vector<std::uint8_t>& init,
                              const TrustRegionParams& params = {}) {
  params.validate();
  if (init.size() != static_cast<size_t>(qpb.num_vars()))
    throw std::invalid_argument("initial labeling size does not match energy");
  auto t0 = std::chrono::steady_clock::now();

  OptimizerReport report;
  std::vector<std::uint8_t> current = init;
  double energy = qpb.evaluate(current);
  double lambda_tr = params.tr_init;
  const double expand = std::pow(params.tr_growth, 1.0 / 3.0);

  int iter = 0;
  bool done = false;
  while (!done && iter < params.max_iterations) {
    ++iter;
    QpbEnergy model = linearize_supermodular(qpb, current);
    SubmodularSolution step = minimize_submodular(detail::with_hamming_penalty(model, current, lambda_tr));
    int moved = detail::hamming(step.labels, current);
    if (moved == 0) {
      // no move available inside this trust region; expand it or converge
      if (lambda_tr <= params.tr_min)
        done = true;
      else
        lambda_tr = std::max(lambda_tr / params.tr_growth, params.tr_min);
      report.trace.push_back(TraceEntry{iter, lambda_tr, energy, 0});
      continue;
    }
    double predicted = model.evaluate(current) - model.evaluate(step.labels);
    double actual = energy - qpb.evaluate(step.labels);
    if (predicted <= 0.0) {  // degenerate model step; treat as convergence
      report.trace.push_back(TraceEntry{iter, lambda_tr, energy, 0});
      done = true;
      break;
    }
    double ratio = actual / predicted;
    if (actual > 0.0) {
      current = step.labels;
      energy = qpb.evaluate(current);
      if (ratio >= params.tau)
        lambda_tr = std::max(lambda_tr / expand, params.tr_min);
      else
        lambda_tr *= params.tr_growth;
      report.trace.push_back(TraceEntry{iter, lambda_tr, energy, moved});
    } else {
      lambda_tr *= params.tr_growth;
      report.trace.push_back(TraceEntry{iter, lambda_tr, energy, 0});
      if (lambda_tr > params.tr_max) done = true;
    }
  }

  // final unpenalized solve of the local model; keep it only if it improves
  {
    ++iter;
    SubmodularSolution polish = minimize_submodular(linearize_supermodular(qpb, current));
    double polished = qpb.evaluate(polish.labels);
    int moved = detail::hamming(polish.labels, current);
    if (moved > 0 && polished < energy) {
      current = polish.labels;
      energy = polished;
      report.trace.push_back(TraceEntry{iter, 0.0, energy, moved});
    } else {
      report.trace.push_back(TraceEntry{iter, 0.0, energy, 0});
    }
  }

  report.labels = std::move(current);
  report.energy = energy;
  report.iterations = iter;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// Iterated conditional modes: raster-order single-pixel flips, accepted only
// on strict decrease, until a full sweep changes nothing.
inline OptimizerReport icm(const QpbEnergy& qpb, const std::vector<std::uint8_t>& init) {
  if (init.size() != static_cast<size_t>(qpb.num_vars()))
    throw std::invalid_argument("initial labeling size does not match energy");
  auto t0 = std::chrono::steady_clock::now();

  const int n = qpb.num_vars();
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<size_t>(n));
  for (const PairTerm& t : qpb.pairwise()) {
    adj[static_cast<size_t>(t.p)].emplace_back(t.q, t.coeff);
    adj[static_cast<size_t>(t.q)].emplace_back(t.p, t.coeff);
  }

  OptimizerReport report;
  std::vector<std::uint8_t> x = init;
  double energy = qpb.evaluate(x);
  const auto& lin = qpb.linear();
  int sweeps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    ++sweeps;
    int flips = 0;
    for (int p = 0; p < n; ++p) {
      double delta = lin[static_cast<size_t>(p)];
      for (const auto& [q, b] : adj[static_cast<size_t>(p)])
        if (x[static_cast<size_t>(q)]) delta += b;
      // delta = cost of x_p: 1 vs 0 given the rest; flip if it strictly helps
      double gain = x[static_cast<size_t>(p)] ? -delta : delta;
      if (gain < 0.0) {
        x[static_cast<size_t>(p)] ^= 1;
        energy += gain;
        changed = true;
        ++flips;
      }
    }
    report.trace.push_back(TraceEntry{sweeps, 0.0, energy, flips});
  }
  report.labels = std::move(x);
  report.energy = qpb.evaluate(report.labels);  // exact, clears flip-delta drift
  report.iterations = sweeps;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// Exhaustive oracle. Ties break toward the lowest labeling in binary-counter
// order (bit p of the counter is the label of variable p).
inline OptimizerReport brute_force(const QpbEnergy& qpb) {
  const int n = qpb.num_vars();
  if (n > 24) throw std::invalid_argument("brute force limited to 24 variables");
  auto t0 = std::chrono::steady_clock::now();

  std::vector<std::uint8_t> labels(static_cast<size_t>(n), 0);
  std::vector<std::uint8_t> best = labels;
  double best_energy = qpb.evaluate(labels);
  const std::uint32_t count = 1u << n;
  for (std::uint32_t m = 1; m < count; ++m) {
    for (int p = 0; p < n; ++p) labels[static_cast<size_t>(p)] = (m >> p) & 1u;
    double e = qpb.evaluate(labels);
    if (e < best_energy) {
      best_energy = e;
      best = labels;
    }
  }
  OptimizerReport report;
  report.labels = std::move(best);
  report.energy = best_energy;
  report.iterations = static_cast<int>(count);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.trace.push_back(TraceEntry{1, 0.0, best_energy, 0});
  return report;
}

}  // namespace curvecut
