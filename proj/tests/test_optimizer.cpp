#include <gtest/gtest.h>

#include <random>

#include "curvecut/energy.hpp"
#include "curvecut/grid.hpp"
#include "curvecut/maxflow.hpp"
#include "curvecut/neighborhood.hpp"
#include "curvecut/optimizer.hpp"

using namespace curvecut;

namespace {

QpbEnergy random_mixed(int n, int pairs, std::mt19937& rng) {
  std::uniform_real_distribution<double> unary(-2.0, 2.0);
  std::uniform_real_distribution<double> pair(-1.5, 1.5);
  std::uniform_int_distribution<int> var(0, n - 1);
  QpbEnergy qpb(n);
  for (int p = 0; p < n; ++p) qpb.add_linear(p, unary(rng));
  for (int k = 0; k < pairs; ++k) {
    int p = var(rng), q = var(rng);
    if (p == q) continue;
    qpb.add_pairwise(p, q, pair(rng));
  }
  return qpb;
}

std::vector<std::uint8_t> random_labels(int n, std::mt19937& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> x(static_cast<size_t>(n));
  for (auto& v : x) v = coin(rng) ? 1 : 0;
  return x;
}

// Segmentation-shaped instance: random unary field plus curvature cliques.
QpbEnergy random_grid_instance(int side, double lambda, std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  size_t n = static_cast<size_t>(side) * side;
  std::vector<double> c0(n), c1(n);
  for (size_t i = 0; i < n; ++i) {
    c0[i] = uni(rng);
    c1[i] = uni(rng);
  }
  UnaryField field(side, side, c0, c1);
  NeighborhoodSystem ns = build_neighborhood(1, NeighborhoodMode::full_box);
  return assemble_energy(field, lambda, ns);
}

}  // namespace

TEST(LinearizeSupermodular, DropsSupermodularTermsAtOrigin) {
  QpbEnergy qpb(3);
  qpb.add_linear(0, 0.5);
  qpb.add_pairwise(0, 1, 2.0);   // supermodular
  qpb.add_pairwise(1, 2, -1.0);  // submodular, copied
  std::vector<std::uint8_t> zeros(3, 0);
  QpbEnergy lin = linearize_supermodular(qpb, zeros);
  EXPECT_TRUE(lin.is_submodular());
  ASSERT_EQ(lin.pairwise().size(), 1u);
  EXPECT_DOUBLE_EQ(lin.pairwise()[0].coeff, -1.0);
  EXPECT_EQ(lin.constant(), 0.0);
  // the expansion of b*x0*x1 at zero is identically 0
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<std::uint8_t> x = {static_cast<std::uint8_t>(mask & 1),
                                   static_cast<std::uint8_t>((mask >> 1) & 1),
                                   static_cast<std::uint8_t>((mask >> 2) & 1)};
    double exact_minus_super = 0.5 * x[0] - 1.0 * x[1] * x[2];
    EXPECT_DOUBLE_EQ(lin.evaluate(x), exact_minus_super);
  }
}

TEST(LinearizeSupermodular, OnesExpansion) {
  QpbEnergy qpb(2);
  qpb.add_pairwise(0, 1, 3.0);
  std::vector<std::uint8_t> ones(2, 1);
  QpbEnergy lin = linearize_supermodular(qpb, ones);
  // b*x_p*x_q -> b*(x_p + x_q - 1)
  EXPECT_DOUBLE_EQ(lin.evaluate({0, 0}), -3.0);
  EXPECT_DOUBLE_EQ(lin.evaluate({1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(lin.evaluate({0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(lin.evaluate({1, 1}), 3.0);
}

TEST(LinearizeSupermodular, AnchorIdentity) {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    QpbEnergy qpb = random_mixed(12, 30, rng);
    std::vector<std::uint8_t> x0 = random_labels(12, rng);
    QpbEnergy lin = linearize_supermodular(qpb, x0);
    EXPECT_TRUE(lin.is_submodular());
    EXPECT_DOUBLE_EQ(lin.evaluate(x0), qpb.evaluate(x0));
  }
}

TEST(LsaTr, SubmodularInputReachesGlobalOptimum) {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    QpbEnergy qpb(10);
    std::uniform_real_distribution<double> unary(-2.0, 2.0);
    std::uniform_real_distribution<double> pair(-2.0, 0.0);
    std::uniform_int_distribution<int> var(0, 9);
    for (int p = 0; p < 10; ++p) qpb.add_linear(p, unary(rng));
    for (int k = 0; k < 25; ++k) {
      int p = var(rng), q = var(rng);
      if (p != q) qpb.add_pairwise(p, q, pair(rng));
    }
    SubmodularSolution global = minimize_submodular(qpb);
    OptimizerReport report = lsa_tr(qpb, std::vector<std::uint8_t>(10, 0));
    EXPECT_EQ(report.energy, global.energy) << "trial " << trial;
  }
}

TEST(LsaTr, DescentAndTraceShape) {
  std::mt19937 rng(83);
  QpbEnergy qpb = random_grid_instance(6, 0.5, rng);
  std::vector<std::uint8_t> init = random_labels(36, rng);
  double init_energy = qpb.evaluate(init);
  OptimizerReport report = lsa_tr(qpb, init);
  EXPECT_LE(report.energy, init_energy);
  EXPECT_EQ(report.trace.size(), static_cast<size_t>(report.iterations));
  double prev = init_energy;
  for (const TraceEntry& e : report.trace) {
    if (e.hamming_step > 0) EXPECT_LT(e.energy, prev) << "accepted step must descend";
    else EXPECT_EQ(e.energy, prev);
    prev = e.energy;
  }
  EXPECT_DOUBLE_EQ(report.energy, qpb.evaluate(report.labels));
}

TEST(LsaTr, ValidatesParameters) {
  QpbEnergy qpb(2);
  std::vector<std::uint8_t> init(2, 0);
  TrustRegionParams bad;
  bad.tr_init = 0.0;
  EXPECT_THROW(lsa_tr(qpb, init, bad), std::invalid_argument);
  bad = TrustRegionParams{};
  bad.tau = 1.5;
  EXPECT_THROW(lsa_tr(qpb, init, bad), std::invalid_argument);
  bad = TrustRegionParams{};
  bad.tr_growth = 0.5;
  EXPECT_THROW(lsa_tr(qpb, init, bad), std::invalid_argument);
}

TEST(Icm, FixedPointWhenAlreadyFlipOptimal) {
  QpbEnergy qpb(3);
  qpb.add_linear(0, -1.0);
  qpb.add_linear(1, 1.0);
  qpb.add_linear(2, -1.0);
  OptimizerReport first = icm(qpb, std::vector<std::uint8_t>{1, 0, 1});
  EXPECT_EQ(first.labels, (std::vector<std::uint8_t>{1, 0, 1}));
  EXPECT_EQ(first.iterations, 1);  // one sweep with no change
}

TEST(Icm, PurelyUnaryReachesArgmin) {
  std::mt19937 rng(91);
  std::uniform_real_distribution<double> unary(-1.0, 1.0);
  QpbEnergy qpb(20);
  std::vector<std::uint8_t> expected(20);
  for (int p = 0; p < 20; ++p) {
    double a = unary(rng);
    qpb.add_linear(p, a);
    expected[static_cast<size_t>(p)] = a < 0.0 ? 1 : 0;
  }
  OptimizerReport report = icm(qpb, random_labels(20, rng));
  EXPECT_EQ(report.labels, expected);
}

TEST(Icm, ResultIsOneFlipOptimal) {
  std::mt19937 rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    QpbEnergy qpb = random_mixed(14, 40, rng);
    OptimizerReport report = icm(qpb, random_labels(14, rng));
    double e = qpb.evaluate(report.labels);
    EXPECT_DOUBLE_EQ(e, report.energy);
    for (int p = 0; p < 14; ++p) {
      std::vector<std::uint8_t> flipped = report.labels;
      flipped[static_cast<size_t>(p)] ^= 1;
      EXPECT_GE(qpb.evaluate(flipped), e) << "flip at " << p << " improves";
    }
  }
}

TEST(Icm, SweepEnergiesDecrease) {
  std::mt19937 rng(103);
  QpbEnergy qpb = random_mixed(20, 60, rng);
  std::vector<std::uint8_t> init = random_labels(20, rng);
  OptimizerReport report = icm(qpb, init);
  double prev = qpb.evaluate(init);
  for (const TraceEntry& e : report.trace) {
    if (e.hamming_step > 0) EXPECT_LT(e.energy, prev);
    prev = e.energy;
  }
}

TEST(BruteForce, OnePixel) {
  QpbEnergy qpb(1);
  qpb.add_constant(0.25);
  qpb.add_linear(0, -1.0);
  OptimizerReport report = brute_force(qpb);
  EXPECT_EQ(report.labels, (std::vector<std::uint8_t>{1}));
  EXPECT_DOUBLE_EQ(report.energy, -0.75);
}

TEST(BruteForce, RejectsLargeInstances) {
  QpbEnergy qpb(25);
  EXPECT_THROW(brute_force(qpb), std::invalid_argument);
}

TEST(BruteForce, TiesBreakTowardLowestCounter) {
  QpbEnergy qpb(3);  // all labelings tie at zero energy
  OptimizerReport report = brute_force(qpb);
  EXPECT_EQ(report.labels, (std::vector<std::uint8_t>{0, 0, 0}));
}

TEST(BruteForce, UniformDataWithCurvatureFavorsConstants) {
  UnaryField field(4, 4, std::vector<double>(16, 0.3), std::vector<double>(16, 0.3));
  NeighborhoodSystem ns = build_neighborhood(1, NeighborhoodMode::full_box);
  QpbEnergy qpb = assemble_energy(field, 0.5, ns);
  OptimizerReport report = brute_force(qpb);
  EXPECT_EQ(report.labels, std::vector<std::uint8_t>(16, 0));  // counter order prefers zeros
  EXPECT_NEAR(report.energy, 16 * 0.3, 1e-12);
  EXPECT_NEAR(qpb.evaluate(std::vector<std::uint8_t>(16, 1)), report.energy, 1e-12);
}

TEST(OracleOrdering, BruteIsALowerBoundForBothHeuristics) {
  std::mt19937 rng(113);
  for (int trial = 0; trial < 8; ++trial) {
    QpbEnergy qpb = random_grid_instance(4, 0.1, rng);
    std::vector<std::uint8_t> init(16, 0);
    OptimizerReport oracle = brute_force(qpb);
    OptimizerReport tr = lsa_tr(qpb, init);
    OptimizerReport greedy = icm(qpb, init);
    EXPECT_LE(oracle.energy, tr.energy);
    EXPECT_LE(oracle.energy, greedy.energy);
  }
}

TEST(LsaTr, BeatsIcmOnHighRegularizationInstances) {
  std::mt19937 rng(131);
  int strictly_better = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int side = 8;
    std::vector<double> intensity(64);
    for (auto& v : intensity) v = uni(rng);
    UnaryField field = gaussian_data_term(ImageGrid(side, side, intensity), 0.0, 1.0, 0.4);
    NeighborhoodSystem ns = build_neighborhood(1, NeighborhoodMode::full_box);
    QpbEnergy qpb = assemble_energy(field, 2.0, ns);
    GridLabeling init = field.argmin();
    OptimizerReport tr = lsa_tr(qpb, init.labels());
    OptimizerReport greedy = icm(qpb, init.labels());
    if (tr.energy < greedy.energy) ++strictly_better;
  }
  EXPECT_GT(strictly_better, trials / 2);
}
