#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pac/rng.hpp"
#include "pac/stats.hpp"

using namespace pac;
using namespace pac::stats;

namespace {

// Alternating series for P(K > x), summed far past convergence.
double kolmogorov_reference(double x) {
  double s = 0.0;
  for (int k = 1; k < 2000; ++k) s += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * x * x);
  return s;
}

}  // namespace

TEST(Kolmogorov, ReferenceQuantiles) {
  EXPECT_NEAR(kolmogorov_q(1.3581), 0.05, 1e-4);
  EXPECT_NEAR(kolmogorov_q(1.6276), 0.01, 1e-4);
  EXPECT_NEAR(kolmogorov_q(1.2239), 0.10, 1e-4);
  EXPECT_EQ(kolmogorov_q(0.0), 1.0);
}

TEST(Kolmogorov, MatchesSeriesAcrossSwitchPoint) {
  for (double x = 0.3; x < 3.0; x += 0.01) ASSERT_NEAR(kolmogorov_q(x), kolmogorov_reference(x), 1e-12) << x;
}

TEST(KsUniform, KnownStatistic) {
  auto r = ks_uniform({0.5});
  EXPECT_DOUBLE_EQ(r.statistic, 0.5);
  auto s = ks_uniform({0.1, 0.2, 0.3, 0.4});
  EXPECT_DOUBLE_EQ(s.statistic, 0.6);
  EXPECT_THROW(ks_uniform({}), std::invalid_argument);
}

TEST(KsUniform, RejectsSkewAcceptsUniform) {
  Engine rng(1);
  std::vector<double> u(5000), skew(5000);
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = unit_double(rng);
    skew[i] = u[i] * u[i];
  }
  EXPECT_GT(ks_uniform(u).p_value, 0.001);
  EXPECT_LT(ks_uniform(skew).p_value, 1e-10);
}

TEST(KsUniform, SizeIsCalibrated) {
  Engine rng(2);
  int rejected = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> u(200);
    for (auto& x : u) x = unit_double(rng);
    if (ks_uniform(u).p_value < 0.05) ++rejected;
  }
  EXPECT_NEAR(rejected / double(reps), 0.05, 0.025);
}

TEST(KsTwoSample, KnownStatisticAndTies) {
  auto r = ks_two_sample({0.1, 0.2}, {0.3, 0.4});
  EXPECT_DOUBLE_EQ(r.statistic, 1.0);
  auto same = ks_two_sample({0.1, 0.1, 0.5}, {0.1, 0.1, 0.5});
  EXPECT_DOUBLE_EQ(same.statistic, 0.0);
  EXPECT_DOUBLE_EQ(same.p_value, 1.0);
  auto half = ks_two_sample({0.1, 0.5}, {0.1, 0.9});
  EXPECT_DOUBLE_EQ(half.statistic, 0.5);
}

TEST(KsTwoSample, SizeIsCalibrated) {
  Engine rng(3);
  int rejected = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> a(300), b(300);
    for (auto& x : a) x = unit_double(rng);
    for (auto& x : b) x = unit_double(rng);
    if (ks_two_sample(a, b).p_value < 0.05) ++rejected;
  }
  EXPECT_NEAR(rejected / double(reps), 0.05, 0.025);
}

TEST(ChiSquared, SurvivalFunction) {
  EXPECT_NEAR(chi_squared_sf(3.841458820694124, 1), 0.05, 1e-12);
  EXPECT_NEAR(chi_squared_sf(6.634896601021214, 1), 0.01, 1e-12);
  for (double x : {0.5, 2.0, 7.5}) EXPECT_NEAR(chi_squared_sf(x, 2), std::exp(-x / 2), 1e-14);
  EXPECT_EQ(chi_squared_sf(0.0, 3), 1.0);
}

TEST(ChiSquared, UniformCounts) {
  std::vector<std::uint64_t> flat{25, 25, 25, 25};
  EXPECT_DOUBLE_EQ(chi_squared_uniform(flat).statistic, 0.0);
  std::vector<std::uint64_t> c{10, 20, 30, 40};
  auto r = chi_squared_uniform(c);
  EXPECT_DOUBLE_EQ(r.statistic, 20.0);
  EXPECT_NEAR(r.p_value, chi_squared_sf(20.0, 3), 1e-15);
}

TEST(ChiSquared, Homogeneity) {
  std::vector<std::uint64_t> a{10, 20}, b{20, 10};
  auto r = chi_squared_homogeneity(a, b);
  // 2x2 table with all expected counts 15: sum of (5^2/15) over 4 cells.
  EXPECT_NEAR(r.statistic, 4.0 * 25.0 / 15.0, 1e-12);
  std::vector<std::uint64_t> c{10, 0, 20}, d{20, 0, 10};
  EXPECT_NEAR(chi_squared_homogeneity(c, d).statistic, r.statistic, 1e-12);
  EXPECT_THROW(chi_squared_homogeneity(a, std::vector<std::uint64_t>{1}), std::invalid_argument);
}

TEST(TotalVariation, Histograms) {
  std::vector<std::uint64_t> a{1, 0}, b{0, 1};
  EXPECT_DOUBLE_EQ(total_variation(a, b), 1.0);
  std::vector<std::uint64_t> c{2, 2}, d{1, 3};
  EXPECT_DOUBLE_EQ(total_variation(c, d), 0.25);
}

TEST(Multiplicity, BonferroniAndQuantile) {
  EXPECT_DOUBLE_EQ(bonferroni(0.001, 20), 0.02);
  EXPECT_DOUBLE_EQ(bonferroni(0.2, 20), 1.0);
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4, 5}, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(quantile({1, 2}, 0.25), 1.25);
}
