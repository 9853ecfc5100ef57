#pragma once

// The squared-curvature energy in two interchangeable forms: direct
// triple-clique evaluation and a quadratic pseudo-boolean decomposition.
// A fired clique is a (0,1,0) or (1,0,1) configuration; per clique the
// decomposition is exact, not approximate:
//
//   w * delta(x_a, x_b, x_c) = w*x_b + w*x_a*x_c - w*x_a*x_b - w*x_b*x_c

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "curvecut/grid.hpp"
#include "curvecut/neighborhood.hpp"
#include "curvecut/util.hpp"

namespace curvecut {

// 1 iff the configuration is (0,1,0) or (1,0,1).
inline int delta_indicator(int xa, int xb, int xc) {
  auto binary = [](int v) { return v == 0 || v == 1; };
  if (!binary(xa) || !binary(xb) || !binary(xc))
    throw std::invalid_argument("delta_indicator arguments must be binary");
  return (xa == xc && xb != xa) ? 1 : 0;
}

struct PairTerm {
  int p = 0, q = 0;     // p < q
  double coeff = 0.0;   // added to the energy when x_p = x_q = 1
};

// constant + sum_p linear[p]*x_p + sum_{p<q} coeff_pq*x_p*x_q over binary
// variables. Negative pair coefficients are submodular for minimization,
// positive ones supermodular; classification happens after accumulation.
class QpbEnergy {
 public:
  explicit QpbEnergy(int num_vars) : linear_(static_cast<size_t>(num_vars), 0.0) {
    if (num_vars < 1) throw std::invalid_argument("energy needs at least one variable");
  }

  int num_vars() const { return static_cast<int>(linear_.size()); }

  void add_constant(double c) { constant_ += c; }

  void add_linear(int p, double a) {
    check_var(p);
    linear_[static_cast<size_t>(p)] += a;
  }

  void add_pairwise(int p, int q, double b) {
    check_var(p);
    check_var(q);
    if (p == q) throw std::invalid_argument("pairwise term needs two distinct pixels");
    if (p > q) std::swap(p, q);
    std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) << 32) |
        static_cast<std::uint32_t>(q);
    auto it = pair_index_.find(key);
    if (it == pair_index_.end()) {
      pair_index_.emplace(key, pairs_.size());
      pairs_.push_back(PairTerm{p, q, b});
    } else {
      pairs_[it->second].coeff += b;
    }
  }

  // Appends the exact pairwise decomposition of one weighted triple clique
  // with endpoints a, c and center b.
  void add_clique_term(double w, int a, int b, int c) {
    if (a == b || b == c || a == c)
      throw std::invalid_argument("triple clique pixels must be distinct");
    if (w == 0.0) return;
    add_linear(b, w);
    add_pairwise(a, c, w);
    add_pairwise(a, b, -w);
    add_pairwise(b, c, -w);
  }

  double constant() const { return constant_; }
  const std::vector<double>& linear() const { return linear_; }
  const std::vector<PairTerm>& pairwise() const { return pairs_; }

  bool is_submodular() const {
    for (const auto& t : pairs_)
      if (t.coeff > 0.0) return false;
    return true;
  }

  double evaluate(const std::vector<std::uint8_t>& labels) const {
    if (labels.size() != linear_.size())
      throw std::invalid_argument("labeling size does not match energy");
    double e = constant_;
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i]) e += linear_[i];
    for (const auto& t : pairs_)
      if (labels[static_cast<size_t>(t.p)] && labels[static_cast<size_t>(t.q)]) e += t.coeff;
    return e;
  }

  double evaluate(const GridLabeling& labeling) const { return evaluate(labeling.labels()); }

 private:
  void check_var(int p) const {
    if (p < 0 || static_cast<size_t>(p) >= linear_.size())
      throw std::out_of_range("variable index out of range");
  }

  double constant_ = 0.0;
  std::vector<double> linear_;
  std::vector<PairTerm> pairs_;  // insertion order; deterministic for a fixed build order
  std::unordered_map<std::uint64_t, size_t> pair_index_;
};

// Standalone decomposition of one clique, as its own small energy over
// num_vars variables. Exactly w * delta_indicator at all 8 configurations.
inline QpbEnergy decompose_clique(int num_vars, double w, int a, int b, int c) {
  QpbEnergy qpb(num_vars);
  qpb.add_clique_term(w, a, b, c);
  return qpb;
}

// Direct evaluation of the curvature regularizer: sum of w_i over fired
// cliques. Rows are reduced in deterministic order (see util::row_sum).
inline double curvature_energy(const GridLabeling& labeling, const NeighborhoodSystem& ns) {
  const int w = labeling.width(), h = labeling.height();
  const auto& labels = labeling.labels();
  return row_sum(h, [&](int y) {
    double acc = 0.0;
    for (const CliqueFamily& f : ns.families()) {
      const int ady = std::abs(f.dy);
      if (y < ady || y >= h - ady) continue;
      const int adx = std::abs(f.dx);
      const int shift = f.dy * w + f.dx;
      const int row = y * w;
      for (int x = adx; x < w - adx; ++x) {
        int center = row + x;
        int a = labels[static_cast<size_t>(center - shift)];
        int b = labels[static_cast<size_t>(center)];
        int c = labels[static_cast<size_t>(center + shift)];
        if (a == c && b != a) acc += f.weight;
      }
    }
    return acc;
  });
}

struct ResponseMap {
  int width = 0, height = 0;
  std::vector<double> response;  // per-pixel contribution; sums to the curvature energy

  double total() const {
    double s = 0.0;
    for (double v : response) s += v;
    return s;
  }
};

// Per-pixel contribution to the curvature energy: each fired clique adds its
// family weight at the center pixel.
inline ResponseMap response_map(const GridLabeling& labeling, const NeighborhoodSystem& ns) {
  ResponseMap map;
  map.width = labeling.width();
  map.height = labeling.height();
  map.response.assign(labeling.size(), 0.0);
  const auto& labels = labeling.labels();
  for_each_clique(ns, map.width, map.height, [&](int family, int pa, int pb, int pc) {
    int a = labels[static_cast<size_t>(pa)];
    int b = labels[static_cast<size_t>(pb)];
    int c = labels[static_cast<size_t>(pc)];
    if (a == c && b != a) map.response[static_cast<size_t>(pb)] += ns.families()[family].weight;
  });
  return map;
}

// Full segmentation energy: unary data costs plus lambda-weighted curvature
// cliques. cost0 folds into the constant, cost1 - cost0 into linear terms.
inline QpbEnergy assemble_energy(const UnaryField& field, double lambda,
                                 const NeighborhoodSystem& ns) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
  const int w = field.width(), h = field.height();
  QpbEnergy qpb(w * h);
  const auto& c0 = field.costs0();
  const auto& c1 = field.costs1();
  double constant = 0.0;
  for (size_t i = 0; i < c0.size(); ++i) {
    constant += c0[i];
    qpb.add_linear(static_cast<int>(i), c1[i] - c0[i]);
  }
  qpb.add_constant(constant);
  if (lambda > 0.0) {
    for_each_clique(ns, w, h, [&](int family, int pa, int pb, int pc) {
      qpb.add_clique_term(lambda * ns.families()[family].weight, pa, pb, pc);
    });
  }
  return qpb;
}

}  // namespace curvecut
