#include <gtest/gtest.h>

#include <array>
#include <set>

#include "oracle.hpp"
#include "tristat/graph.hpp"
#include "tristat/tri_stats.hpp"
#include "tristat/triangles.hpp"

using namespace tristat;

namespace {

Graph complete(NodeId n) {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) arcs.emplace_back(i, j);
    return Graph(n, std::move(arcs));
}

Graph star(NodeId leaves) {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId i = 1; i <= leaves; ++i) arcs.emplace_back(0, i);
    return Graph(leaves + 1, std::move(arcs));
}

std::set<std::array<NodeId, 3>> enumerate_set(const Graph& g) {
    std::set<std::array<NodeId, 3>> out;
    for_each_triangle(g, [&](NodeId u, NodeId v, NodeId w, const DegreeTriple&) {
        std::array<NodeId, 3> t{u, v, w};
        std::sort(t.begin(), t.end());
        EXPECT_TRUE(out.insert(t).second) << "triangle emitted twice";
    });
    return out;
}

}  // namespace

TEST(Triangles, CompleteGraphCounts) {
    EXPECT_EQ(triangle_census<TriangleTally>(complete(3)).total, 1u);
    EXPECT_EQ(triangle_census<TriangleTally>(complete(4)).total, 4u);
    EXPECT_EQ(triangle_census<TriangleTally>(complete(5)).total, 10u);
}

TEST(Triangles, StarHasWedgesButNoTriangles) {
    Graph s = star(5);
    EXPECT_EQ(triangle_census<TriangleTally>(s).total, 0u);
    EXPECT_EQ(count_wedges(s), 10u);  // all centered at the hub
}

TEST(Triangles, PerNodeCountsOnK4) {
    auto census = triangle_census<TriangleTally>(complete(4));
    ASSERT_EQ(census.per_node.size(), 4u);
    for (auto c : census.per_node) EXPECT_EQ(c, 3u);
}

TEST(Triangles, DegreeTripleSorts) {
    auto t = make_degree_triple(5, 2, 3);
    EXPECT_EQ(t.d_min, 2u);
    EXPECT_EQ(t.d_mid, 3u);
    EXPECT_EQ(t.d_max, 5u);
}

TEST(Triangles, WedgeFormula) {
    EXPECT_EQ(wedges_at(0), 0u);
    EXPECT_EQ(wedges_at(1), 0u);
    EXPECT_EQ(wedges_at(2), 1u);
    EXPECT_EQ(wedges_at(7), 21u);
}

TEST(Triangles, MatchesBruteForceOnErGraphs) {
    int id = 0;
    for (double p : {0.1, 0.2, 0.35}) {
        for (int rep = 0; rep < 6; ++rep, ++id) {
            Graph g = oracle::er_graph(48, p, 1000 + id);
            auto brute = oracle::brute_triangles(g);
            auto census = triangle_census<TriangleTally>(g);
            EXPECT_EQ(census.total, brute.triangles.size());
            EXPECT_EQ(census.per_node, brute.per_node);
            EXPECT_EQ(census.tally.sorted(), brute.tally.sorted());

            std::set<std::array<NodeId, 3>> expected(brute.triangles.begin(),
                                                     brute.triangles.end());
            EXPECT_EQ(enumerate_set(g), expected);
        }
    }
}

TEST(Triangles, CensusIdenticalAcrossWorkerCounts) {
    Graph g = oracle::er_graph(400, 0.05, 77);
    auto base = triangle_census<TriangleTally>(g, 1);
    for (unsigned workers : {2u, 3u, 8u}) {
        auto other = triangle_census<TriangleTally>(g, workers);
        EXPECT_EQ(other.total, base.total);
        EXPECT_EQ(other.per_node, base.per_node);
        EXPECT_EQ(other.tally.sorted(), base.tally.sorted());
    }
}

TEST(Triangles, CapAborts) {
    EXPECT_THROW(triangle_census<TriangleTally>(complete(10), 1, std::uint64_t(5)),
                 TriangleLimitExceeded);
    // a cap at the true count passes
    EXPECT_EQ(triangle_census<TriangleTally>(complete(10), 1, std::uint64_t(120)).total, 120u);
}
