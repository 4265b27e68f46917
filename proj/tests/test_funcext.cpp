#include <gtest/gtest.h>

#include "pac/funcext.hpp"
#include "test_support.hpp"

using namespace pac;

TEST(Catalog, Maps) {
  auto sq = catalog_h("square-scaled", {}, 4);
  EXPECT_DOUBLE_EQ(sq(0.5), 0.0625);
  auto aff = catalog_h("affine", {{"scale", 0.5}, {"offset", 0.01}}, 2);
  EXPECT_DOUBLE_EQ(aff(0.2), 0.11);
  EXPECT_DOUBLE_EQ(catalog_g("scale", {{"factor", 3.0}})(0.1), 0.30000000000000004);
  EXPECT_DOUBLE_EQ(catalog_g("affine", {{"g_scale", 2.0}, {"g_offset", 1.0}})(0.25), 1.5);
  EXPECT_THROW(catalog_h("cube", {}, 2), std::invalid_argument);
  EXPECT_THROW(catalog_g("cube", {}), std::invalid_argument);
}

TEST(FunctionExtension, SquaresOnTriangle) {
  std::vector<double> s{0.3, 0.4, 0.5};
  FunctionSpec spec{{catalog_h("square-scaled", {}, 3)}, catalog_g("identity", {})};
  for (auto kind : {BackendKind::ExactFloodSum, BackendKind::SyncLinear, BackendKind::RandomGossip}) {
    ConsensusBackend be{kind, 1e-10};
    auto r = run_private_function(Network::complete(3), s, spec, be, Phase1Options{});
    ASSERT_EQ(r.values.size(), 3U);
    for (double v : r.values) EXPECT_NEAR(v, 0.5 / 3.0, 1e-9) << to_string(kind);
  }
}

TEST(FunctionExtension, OuterMapApplied) {
  std::vector<double> s{0.1, 0.2};
  FunctionSpec spec{{catalog_h("identity", {}, 2)}, catalog_g("scale", {{"factor", 0.5}})};
  auto r = run_private_function(Network::path(2), s, spec, {BackendKind::ExactFloodSum}, {});
  for (double v : r.values) EXPECT_NEAR(v, 0.15, 1e-15);
}

TEST(FunctionExtension, PerAgentMaps) {
  std::vector<double> s{0.2, 0.2};
  FunctionSpec spec{{[](double x) { return x; }, [](double x) { return x / 2; }}, [](double y) { return y; }};
  auto r = run_private_function(Network::path(2), s, spec, {BackendKind::ExactFloodSum}, {});
  EXPECT_NEAR(r.values[0], 0.3, 1e-15);
}

TEST(FunctionExtension, RangeErrorNamesAgent) {
  std::vector<double> s{0.1, 0.9, 0.1};
  FunctionSpec spec{{catalog_h("affine", {{"scale", 1.0}}, 3)}, catalog_g("identity", {})};
  try {
    run_private_function(Network::complete(3), s, spec, {BackendKind::ExactFloodSum}, {});
    FAIL();
  } catch (const InputRangeError& e) {
    EXPECT_EQ(e.agent(), 1U);
  }
  FunctionSpec two{{catalog_h("identity", {}, 3), catalog_h("identity", {}, 3)}, catalog_g("identity", {})};
  EXPECT_THROW(evaluate_h(two, s), std::invalid_argument);
}

TEST(FunctionExtension, IdentityMatchesBaseProtocolBitForBit) {
  Engine rng(13);
  for (int k = 0; k < 20; ++k) {
    auto g = pac::testing::random_connected_graph(2 + rng() % 7, 0.3, rng);
    auto s = pac::testing::random_real_inputs(g.size(), rng);
    Phase1Options opt;
    opt.seed = rng();
    opt.scheduler_seed = rng();
    FunctionSpec spec{{catalog_h("identity", {}, g.size())}, catalog_g("identity", {})};
    auto r = run_private_function(g, s, spec, {BackendKind::ExactFloodSum}, opt);
    auto base = run_phase1(g, std::span<const double>(s), opt);
    run_phase2(base, {BackendKind::ExactFloodSum}, opt.seed);
    ASSERT_EQ(r.transcript, base);
  }
}

TEST(FunctionExtension, ScaledOuterMapGivesMeanOfH) {
  std::vector<double> s{0.3, 0.4, 0.5};
  FunctionSpec spec{{catalog_h("square-scaled", {}, 3)}, catalog_g("scale", {{"factor", 1.0 / 3.0}})};
  auto r = run_private_function(Network::complete(3), s, spec, {BackendKind::ExactFloodSum}, {});
  double mean_h = (0.09 + 0.16 + 0.25) / 9.0;
  for (double v : r.values) EXPECT_NEAR(v, mean_h, 1e-15);
}
