#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curvecut/energy.hpp"
#include "curvecut/geometry.hpp"
#include "curvecut/grid.hpp"
#include "curvecut/neighborhood.hpp"

using namespace curvecut;
using std::numbers::pi;

namespace {

GridLabeling random_labeling(int w, int h, std::mt19937& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> labels(static_cast<size_t>(w) * h);
  for (auto& v : labels) v = coin(rng) ? 1 : 0;
  return GridLabeling(w, h, std::move(labels));
}

GridLabeling complement(const GridLabeling& lab) {
  std::vector<std::uint8_t> flipped = lab.labels();
  for (auto& v : flipped) v ^= 1;
  return GridLabeling(lab.width(), lab.height(), std::move(flipped));
}

}  // namespace

TEST(DeltaIndicator, FiresOnlyOnAlternatingConfigs) {
  EXPECT_EQ(delta_indicator(0, 1, 0), 1);
  EXPECT_EQ(delta_indicator(1, 0, 1), 1);
  EXPECT_EQ(delta_indicator(0, 0, 0), 0);
  EXPECT_EQ(delta_indicator(1, 1, 1), 0);
  EXPECT_EQ(delta_indicator(1, 1, 0), 0);
  EXPECT_EQ(delta_indicator(0, 1, 1), 0);
  EXPECT_EQ(delta_indicator(1, 0, 0), 0);
  EXPECT_EQ(delta_indicator(0, 0, 1), 0);
  EXPECT_THROW(delta_indicator(2, 0, 0), std::invalid_argument);
  EXPECT_THROW(delta_indicator(0, -1, 0), std::invalid_argument);
}

TEST(DecomposeClique, EqualsWeightedDeltaOnAllConfigurations) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    double w = uni(rng);
    QpbEnergy frag = decompose_clique(3, w, 0, 1, 2);
    for (int mask = 0; mask < 8; ++mask) {
      std::vector<std::uint8_t> x = {static_cast<std::uint8_t>(mask & 1),
                                     static_cast<std::uint8_t>((mask >> 1) & 1),
                                     static_cast<std::uint8_t>((mask >> 2) & 1)};
      double expected = w * delta_indicator(x[0], x[1], x[2]);
      EXPECT_EQ(frag.evaluate(x), expected) << "w=" << w << " mask=" << mask;
    }
  }
}

TEST(DecomposeClique, ZeroWeightIsEmpty) {
  QpbEnergy frag = decompose_clique(3, 0.0, 0, 1, 2);
  EXPECT_EQ(frag.pairwise().size(), 0u);
  for (double a : frag.linear()) EXPECT_EQ(a, 0.0);
  EXPECT_EQ(frag.constant(), 0.0);
}

TEST(DecomposeClique, RejectsRepeatedPixels) {
  QpbEnergy qpb(3);
  EXPECT_THROW(qpb.add_clique_term(1.0, 0, 0, 2), std::invalid_argument);
  EXPECT_THROW(qpb.add_clique_term(1.0, 0, 1, 0), std::invalid_argument);
  EXPECT_THROW(qpb.add_clique_term(1.0, 0, 1, 1), std::invalid_argument);
}

TEST(QpbEnergy, AccumulatesPairCoefficients) {
  QpbEnergy qpb(4);
  qpb.add_pairwise(2, 1, 0.75);
  qpb.add_pairwise(1, 2, 0.25);
  ASSERT_EQ(qpb.pairwise().size(), 1u);
  EXPECT_EQ(qpb.pairwise()[0].p, 1);
  EXPECT_EQ(qpb.pairwise()[0].q, 2);
  EXPECT_DOUBLE_EQ(qpb.pairwise()[0].coeff, 1.0);
  EXPECT_THROW(qpb.add_pairwise(1, 1, 1.0), std::invalid_argument);
  EXPECT_FALSE(qpb.is_submodular());
}

TEST(CurvatureEnergy, ZeroOnConstantLabelings) {
  NeighborhoodSystem ns = build_neighborhood(2, NeighborhoodMode::full_box);
  GridLabeling zeros(7, 7);
  EXPECT_EQ(curvature_energy(zeros, ns), 0.0);
  GridLabeling ones(7, 7, std::vector<std::uint8_t>(49, 1));
  EXPECT_EQ(curvature_energy(ones, ns), 0.0);
}

TEST(CurvatureEnergy, IsolatedPixelFiresAllFamilies) {
  NeighborhoodSystem ns = build_neighborhood(1, NeighborhoodMode::full_box);
  GridLabeling lab(5, 5);
  lab.set(2, 2, 1);
  // all four cliques through the pixel fire as (0,1,0):
  // pi + pi + pi/(2 sqrt 2) + pi/(2 sqrt 2) = 2 pi + pi / sqrt 2
  double expected = 2.0 * pi + pi / std::sqrt(2.0);
  EXPECT_NEAR(curvature_energy(lab, ns), expected, 1e-12);
  EXPECT_NEAR(expected, 8.5045999, 1e-6);
}

TEST(CurvatureEnergy, ComplementSymmetry) {
  std::mt19937 rng(23);
  for (int d : {1, 2}) {
    NeighborhoodSystem ns = build_neighborhood(d, NeighborhoodMode::full_box);
    for (int trial = 0; trial < 10; ++trial) {
      GridLabeling lab = random_labeling(10, 9, rng);
      EXPECT_EQ(curvature_energy(lab, ns), curvature_energy(complement(lab), ns));
    }
  }
}

TEST(AssembleEnergy, MatchesDirectEvaluationOnRandomLabelings) {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int d : {1, 2, 3}) {
    NeighborhoodSystem ns = build_neighborhood(d, NeighborhoodMode::full_box);
    const int w = 16, h = 16;
    std::vector<double> intensity(static_cast<size_t>(w) * h);
    for (auto& v : intensity) v = uni(rng);
    UnaryField field = gaussian_data_term(ImageGrid(w, h, intensity), 0.0, 0.6, 0.4);
    const double lambda = 0.7;
    QpbEnergy qpb = assemble_energy(field, lambda, ns);
    for (int trial = 0; trial < 100; ++trial) {
      GridLabeling lab = random_labeling(w, h, rng);
      double direct = field.evaluate(lab) + lambda * curvature_energy(lab, ns);
      double viaQpb = qpb.evaluate(lab);
      EXPECT_NEAR(viaQpb, direct, 1e-9 * std::max(1.0, std::abs(direct)))
          << "d=" << d << " trial=" << trial;
    }
  }
}

TEST(AssembleEnergy, LambdaZeroDecouples) {
  ImageGrid img(3, 3, std::vector<double>{0.0, 0.2, 0.9, 0.4, 0.6, 0.1, 0.8, 0.5, 0.3});
  UnaryField field = gaussian_data_term(img, 0.0, 0.6, 0.4);
  NeighborhoodSystem ns = build_neighborhood(1, NeighborhoodMode::full_box);
  QpbEnergy qpb = assemble_energy(field, 0.0, ns);
  EXPECT_EQ(qpb.pairwise().size(), 0u);
  GridLabeling best = field.argmin();
  // the per-pixel argmin attains the minimum over a few random competitors
  std::mt19937 rng(5);
  double best_e = qpb.evaluate(best);
  EXPECT_DOUBLE_EQ(best_e, field.evaluate(best));
  for (int trial = 0; trial < 20; ++trial)
    EXPECT_GE(qpb.evaluate(random_labeling(3, 3, rng)), best_e);
}

TEST(AssembleEnergy, LinearInLambda) {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int w = 8, h = 8;
  std::vector<double> intensity(static_cast<size_t>(w) * h);
  for (auto& v : intensity) v = uni(rng);
  UnaryField field = gaussian_data_term(ImageGrid(w, h, intensity), 0.0, 0.6, 0.4);
  NeighborhoodSystem ns = build_neighborhood(2, NeighborhoodMode::full_box);
  QpbEnergy one = assemble_energy(field, 0.4, ns);
  QpbEnergy two = assemble_energy(field, 0.8, ns);
  for (int trial = 0; trial < 10; ++trial) {
    GridLabeling lab = random_labeling(w, h, rng);
    double data = field.evaluate(lab);
    double curv1 = one.evaluate(lab) - data;
    double curv2 = two.evaluate(lab) - data;
    EXPECT_NEAR(curv2, 2.0 * curv1, 1e-9 * std::max(1.0, std::abs(curv1)));
  }
}

TEST(AssembleEnergy, RejectsNegativeLambda) {
  UnaryField field(1, 1, {0.0}, {0.0});
  NeighborhoodSystem ns = build_neighborhood(1, NeighborhoodMode::full_box);
  EXPECT_THROW(assemble_energy(field, -0.1, ns), std::invalid_argument);
}

TEST(ResponseMap, ConstantLabelingGivesZeroMap) {
  NeighborhoodSystem ns = build_neighborhood(2, NeighborhoodMode::full_box);
  ResponseMap map = response_map(GridLabeling(9, 9), ns);
  for (double v : map.response) EXPECT_EQ(v, 0.0);
}

TEST(ResponseMap, SinglePixelConcentratesAllEnergy) {
  NeighborhoodSystem ns = build_neighborhood(1, NeighborhoodMode::full_box);
  GridLabeling lab(5, 5);
  lab.set(2, 2, 1);
  ResponseMap map = response_map(lab, ns);
  double expected = 2.0 * pi + pi / std::sqrt(2.0);
  EXPECT_NEAR(map.response[2 * 5 + 2], expected, 1e-12);
  for (int i = 0; i < 25; ++i)
    if (i != 12) EXPECT_EQ(map.response[static_cast<size_t>(i)], 0.0);
}

TEST(ResponseMap, SumsToCurvatureEnergy) {
  std::mt19937 rng(53);
  NeighborhoodSystem ns = build_neighborhood(2, NeighborhoodMode::full_box);
  for (int trial = 0; trial < 5; ++trial) {
    GridLabeling lab = random_labeling(12, 11, rng);
    ResponseMap map = response_map(lab, ns);
    double direct = curvature_energy(lab, ns);
    EXPECT_NEAR(map.total(), direct, 1e-9 * std::max(1.0, direct));
  }
}

TEST(ResponseMap, DiskResponsesMatchEnergyAndAreNonzero) {
  // kappa = 1/4 disk measured with d = 9 cliques (underestimation regime)
  NeighborhoodSystem ns = build_neighborhood(9, NeighborhoodMode::full_box);
  const int side = 2 * (4 + 9) + 5;
  GridLabeling disk = rasterize_disk(side, side, side / 2 + 0.5, side / 2 + 0.5, 4.0);
  ResponseMap map = response_map(disk, ns);
  double direct = curvature_energy(disk, ns);
  EXPECT_GT(direct, 0.0);
  EXPECT_NEAR(map.total(), direct, 1e-9 * direct);
}
