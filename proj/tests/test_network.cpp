#include <gtest/gtest.h>

#include "pac/network.hpp"
#include "test_support.hpp"

using namespace pac;
using pac::testing::brute_components;
using pac::testing::brute_connectivity;
using pac::testing::rank_mod_prime;

TEST(Network, RejectsMalformedEdges) {
  EXPECT_THROW(Network(3, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(Network(3, {{1, 1}}), std::invalid_argument);
  EXPECT_THROW(Network(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  try {
    Network(2, {{0, 5}});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("1..2"), std::string::npos);
  }
}

TEST(Network, AdjacencyIsSortedAndSymmetric) {
  Network g(4, {{3, 0}, {2, 0}, {1, 0}, {2, 3}});
  ASSERT_EQ(g.edges().size(), 4U);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.degree(0), 3U);
  EXPECT_TRUE(g.has_edge(3, 2));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_EQ(g.edge_index(3, 2), 3U);
  EXPECT_THROW(g.edge_index(1, 2), std::out_of_range);
  std::vector<AgentId> nb(g.neighbors(0).begin(), g.neighbors(0).end());
  EXPECT_EQ(nb, (std::vector<AgentId>{1, 2, 3}));
}

TEST(Incidence, ColumnsSumToZero) {
  Engine rng(1);
  for (int k = 0; k < 50; ++k) {
    auto g = pac::testing::random_graph(2 + rng() % 10, 0.4, rng);
    IncidenceMatrix m(g);
    ASSERT_EQ(m.rows(), g.size());
    ASSERT_EQ(m.cols(), g.edge_count());
    for (int s : m.column_sums()) ASSERT_EQ(s, 0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& e = g.edges()[c];
      ASSERT_EQ(m.at(e.u, c), 1);
      ASSERT_EQ(m.at(e.v, c), -1);
    }
  }
}

TEST(Incidence, TriangleRankTwo) { EXPECT_EQ(incidence_rank(Network::complete(3)), 2U); }

TEST(Incidence, RankIsNMinusComponents) {
  Engine rng(2024);
  for (int k = 0; k < 300; ++k) {
    std::size_t n = 1 + rng() % 12;
    auto g = pac::testing::random_graph(n, unit_double(rng) * 0.6, rng);
    ASSERT_EQ(incidence_rank(g), n - brute_components(g)) << "trial " << k;
  }
}

TEST(Incidence, BareissAgreesWithModularRank) {
  Engine rng(8);
  for (int k = 0; k < 200; ++k) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(c));
    for (auto& row : m)
      for (auto& x : row) x = static_cast<std::int64_t>(rng() % 7) - 3;
    ASSERT_EQ(integer_rank(m), rank_mod_prime(m));
  }
}

TEST(Components, MatchUnionFind) {
  Engine rng(3);
  for (int k = 0; k < 300; ++k) {
    auto g = pac::testing::random_graph(1 + rng() % 12, 0.25, rng);
    std::vector<bool> removed(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) removed[v] = rng() % 4 == 0;
    auto comps = components_without(g, removed);
    ASSERT_EQ(comps.size(), brute_components(g, removed));
    std::size_t covered = 0;
    for (const auto& c : comps) covered += c.size();
    ASSERT_EQ(covered, static_cast<std::size_t>(std::count(removed.begin(), removed.end(), false)));
  }
}

TEST(VertexCut, Examples) {
  Network path3 = Network::path(3);
  EXPECT_TRUE(is_vertex_cut(path3, {1}));
  EXPECT_FALSE(is_vertex_cut(path3, {0}));
  EXPECT_FALSE(is_vertex_cut(Network::complete(3), {2}));
  EXPECT_THROW(is_vertex_cut(path3, {0, 1, 2}), std::invalid_argument);
}

TEST(Connectivity, Examples) {
  EXPECT_EQ(connectivity(Network::complete(3)), 2U);
  EXPECT_EQ(connectivity(Network::complete(5)), 4U);
  EXPECT_EQ(connectivity(Network::path(4)), 1U);
  EXPECT_EQ(connectivity(Network::cycle(6)), 2U);
  EXPECT_EQ(connectivity(Network(4, {{0, 1}, {2, 3}})), 0U);
  EXPECT_EQ(connectivity(Network(2, {{0, 1}})), 1U);
  EXPECT_THROW(connectivity(Network(1, {})), std::invalid_argument);
  EXPECT_THROW(connectivity(Network::path(21)), std::invalid_argument);
}

TEST(Connectivity, MatchesExhaustiveOracle) {
  Engine rng(17);
  for (int k = 0; k < 200; ++k) {
    auto g = pac::testing::random_connected_graph(2 + rng() % 7, unit_double(rng) * 0.7, rng);
    ASSERT_EQ(connectivity(g), brute_connectivity(g)) << "trial " << k;
  }
}

TEST(Connectivity, KConnectedHasNoSmallCut) {
  Engine rng(5);
  for (int k = 0; k < 100; ++k) {
    auto g = pac::testing::random_connected_graph(3 + rng() % 5, 0.6, rng);
    std::size_t kappa = connectivity(g);
    // Every set smaller than kappa leaves the graph connected.
    for (std::uint32_t mask = 1; mask < (1U << g.size()); ++mask) {
      std::vector<AgentId> c;
      for (AgentId v = 0; v < g.size(); ++v)
        if ((mask >> v) & 1U) c.push_back(v);
      if (c.size() >= kappa || c.size() >= g.size()) continue;
      ASSERT_FALSE(is_vertex_cut(g, c));
    }
  }
}

TEST(HonestSubgraph, PathCutAtMiddle) {
  auto split = honest_subgraph(Network::path(3), {1});
  EXPECT_EQ(split.honest, (std::vector<AgentId>{0, 2}));
  EXPECT_EQ(split.adversaries, (std::vector<AgentId>{1}));
  EXPECT_TRUE(split.honest_edges.empty());
  EXPECT_EQ(split.adversary_edges.size(), 2U);
  auto comps = split.components();
  ASSERT_EQ(comps.size(), 2U);
  EXPECT_EQ(comps[0], (std::vector<AgentId>{0}));
  EXPECT_EQ(comps[1], (std::vector<AgentId>{2}));
}

TEST(HonestSubgraph, TriangleStaysConnected) {
  auto split = honest_subgraph(Network::complete(3), {2});
  EXPECT_EQ(split.components().size(), 1U);
  EXPECT_EQ(split.honest_edges, (std::vector<Edge>{{0, 1}}));
  EXPECT_THROW(honest_subgraph(Network::complete(2), {0, 1}), std::invalid_argument);
}

TEST(HonestSubgraph, EdgesPartition) {
  Engine rng(12);
  for (int k = 0; k < 100; ++k) {
    auto g = pac::testing::random_connected_graph(3 + rng() % 8, 0.3, rng);
    std::vector<AgentId> c{static_cast<AgentId>(rng() % g.size())};
    auto split = honest_subgraph(g, c);
    ASSERT_EQ(split.honest_edges.size() + split.adversary_edges.size(), g.edge_count());
    ASSERT_EQ(split.components().size() >= 2, is_vertex_cut(g, c));
  }
}
