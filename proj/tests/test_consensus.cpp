#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "pac/consensus.hpp"
#include "test_support.hpp"

using namespace pac;

namespace {
UFrac dec(const char* s) { return UFrac::from_decimal(s); }
double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }
}  // namespace

TEST(ExactFloodSum, TriangleWalkthroughValues) {
  std::vector<UFrac> eff{UFrac{}, dec("0.5"), UFrac(17524406870024074035ULL)};
  auto r = exact_flood_sum(Network::complete(3), eff);
  for (UFrac s : r.sums) EXPECT_EQ(s, dec("0.45"));
  auto out = assemble_output(r, 3);
  for (double o : out.outputs) EXPECT_NEAR(o, 0.15, 1e-16);
  EXPECT_EQ(r.rounds, 2U);
}

TEST(ExactFloodSum, PathNeedsDiameterRounds) {
  std::vector<UFrac> v{dec("0.1"), dec("0.2"), dec("0.3"), dec("0.4"), dec("0.5")};
  auto r = exact_flood_sum(Network::path(5), v);
  for (UFrac s : r.sums) EXPECT_EQ(s, sum_frac(v));
  EXPECT_EQ(r.rounds, 5U);  // diameter 4 plus the final quiet round
}

TEST(ExactFloodSum, WrapsModOne) {
  std::vector<UFrac> v{dec("0.75"), dec("0.5")};
  auto r = exact_flood_sum(Network::path(2), v);
  EXPECT_EQ(r.sums[0], dec("0.25"));
}

TEST(SyncLinear, TriangleAverage) {
  std::vector<double> v{0.0, 1.5, 2.85};
  auto r = sync_linear_consensus(Network::complete(3), v, 1e-12, 100000);
  ASSERT_TRUE(r.converged);
  for (double x : r.estimates) EXPECT_NEAR(x, 1.45, 1e-11);
}

TEST(SyncLinear, PathAverage) {
  std::vector<double> v{0.0, 0.0, 0.0, 1.0};
  auto r = sync_linear_consensus(Network::path(4), v, 1e-12, 100000);
  ASSERT_TRUE(r.converged);
  for (double x : r.estimates) EXPECT_NEAR(x, 0.25, 1e-11);
}

TEST(SyncLinear, MetropolisStepByHand) {
  // Path 0-1-2, degrees 1,2,1: every weight is 1/3.
  std::vector<double> v{0.0, 0.0, 3.0};
  auto r = sync_linear_consensus(Network::path(3), v, 1e-12, 1);
  EXPECT_FALSE(r.converged);
  EXPECT_DOUBLE_EQ(r.estimates[0], 0.0);
  EXPECT_DOUBLE_EQ(r.estimates[1], 1.0);
  EXPECT_DOUBLE_EQ(r.estimates[2], 2.0);
}

TEST(SyncLinear, SpreadNonIncreasingAndMeanConserved) {
  Engine rng(21);
  for (int k = 0; k < 30; ++k) {
    auto g = pac::testing::random_connected_graph(2 + rng() % 8, 0.3, rng);
    std::vector<double> v(g.size());
    for (auto& x : v) x = unit_double(rng) * static_cast<double>(g.size());
    const double m0 = mean(v);
    double prev = spread(v);
    auto observer = [&](std::span<const double> x) {
      double s = spread(x);
      ASSERT_LE(s, prev + 1e-15);
      prev = s;
      ASSERT_NEAR(mean(x), m0, 1e-12 * std::max(1.0, std::abs(m0)));
    };
    auto r = sync_linear_consensus(g, v, 1e-9, 1000000, observer);
    ASSERT_TRUE(r.converged);
  }
}

TEST(Gossip, TwoAgentsMeetInOneStep) {
  std::vector<double> v{0.2, 0.6};
  auto r = random_gossip(Network::path(2), v, 1e-12, 10, 1);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.rounds, 1U);
  EXPECT_DOUBLE_EQ(r.estimates[0], 0.4);
  EXPECT_DOUBLE_EQ(r.estimates[1], 0.4);
}

TEST(Gossip, SumConservedPerStep) {
  Engine rng(31);
  for (int k = 0; k < 20; ++k) {
    auto g = pac::testing::random_connected_graph(2 + rng() % 7, 0.3, rng);
    std::vector<double> v(g.size());
    for (auto& x : v) x = unit_double(rng) * static_cast<double>(g.size());
    const double s0 = std::accumulate(v.begin(), v.end(), 0.0);
    double prev = spread(v);
    auto observer = [&](std::span<const double> x) {
      double s = std::accumulate(x.begin(), x.end(), 0.0);
      ASSERT_LE(std::abs(s - s0), 1e-12 * std::max(1.0, std::abs(s0)));
      ASSERT_LE(spread(x), prev);
      prev = spread(x);
    };
    auto r = random_gossip(g, v, 1e-8, 10'000'000, rng(), observer);
    ASSERT_TRUE(r.converged);
    for (double x : r.estimates) ASSERT_NEAR(x, s0 / static_cast<double>(g.size()), 1e-8);
  }
}

TEST(Gossip, SeedDeterminesRun) {
  std::vector<double> v{0.0, 1.0, 2.0, 3.0};
  auto a = random_gossip(Network::cycle(4), v, 1e-6, 100000, 7);
  auto b = random_gossip(Network::cycle(4), v, 1e-6, 100000, 7);
  EXPECT_EQ(a.estimates, b.estimates);
  EXPECT_EQ(a.rounds, b.rounds);
}

TEST(Consensus, UnconvergedFlag) {
  std::vector<double> v{0.0, 0.0, 0.0, 0.0, 1.0};
  auto r = sync_linear_consensus(Network::path(5), v, 1e-12, 3);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.rounds, 3U);
  EXPECT_FALSE(assemble_output(r, 5, 1e-12).converged);
}

TEST(Consensus, RejectsBadArguments) {
  std::vector<double> v{0.0, 1.0};
  EXPECT_THROW(sync_linear_consensus(Network(2, {}), v, 1e-8, 10), std::invalid_argument);
  EXPECT_THROW(random_gossip(Network::path(2), v, 0.0, 10, 1), std::invalid_argument);
  EXPECT_THROW(parse_backend("bogus"), std::invalid_argument);
  EXPECT_EQ(parse_backend("gossip"), BackendKind::RandomGossip);
}

TEST(AssembleOutput, FractionalPartDividedByN) {
  ConsensusResult r;
  r.converged = true;
  r.estimates = {2.45, 2.45, 2.45};
  auto out = assemble_output(r, 3, 1e-8);
  for (double o : out.outputs) EXPECT_NEAR(o, 0.15, 1e-15);
  EXPECT_FALSE(out.near_boundary);
}

TEST(AssembleOutput, NearBoundaryFlag) {
  ConsensusResult r;
  r.converged = true;
  r.estimates = {0.9999999999, 1.0000000001};
  auto out = assemble_output(r, 2, 1e-8);
  EXPECT_TRUE(out.near_boundary);
}

TEST(Phase2, SyncMatchesExactOnRandomInputs) {
  Engine rng(41);
  for (int k = 0; k < 30; ++k) {
    auto g = pac::testing::random_connected_graph(2 + rng() % 7, 0.4, rng);
    auto s = pac::testing::random_inputs(g.size(), rng);
    Phase1Options opt;
    opt.seed = rng();
    auto t = run_phase1(g, s, opt);
    auto exact = t;
    auto pe = run_phase2(exact, {BackendKind::ExactFloodSum}, 1);
    EXPECT_TRUE(exact.effective_inputs_public);
    auto ps = run_phase2(t, {BackendKind::SyncLinear, 1e-10}, 1);
    if (ps.assembly.near_boundary) continue;
    double central = sum_frac(s).to_real() / static_cast<double>(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      ASSERT_NEAR(pe.assembly.outputs[i], central, 1e-15);
      ASSERT_NEAR(ps.assembly.outputs[i], central, 1e-10);
    }
    EXPECT_FALSE(t.effective_inputs_public);
    EXPECT_EQ(t.outputs, ps.assembly.outputs);
  }
}
