#include <gtest/gtest.h>

#include "qesk/error.hpp"
#include "qesk/graph.hpp"
#include "test_graphs.hpp"

namespace qesk {
namespace {

TEST(GraphTest, CanonicalisesEdges) {
  Graph g(3, {{1, 0}, {0, 1}, {2, 1}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(g.degree(1), 2u);
}

TEST(GraphTest, RejectsInvalidInput) {
  EXPECT_THROW(Graph(2, {{0, 2}}), ContractViolation);
  EXPECT_THROW(Graph(2, {{1, 1}}), ContractViolation);
  EXPECT_THROW(Graph(2, {}, std::vector<std::int64_t>{1}), ContractViolation);
}

TEST(AdjacencyTest, SingleEdge) {
  Eigen::Matrix2d expected;
  expected << 0, 1, 1, 0;
  EXPECT_EQ(adjacency(testing::single_edge()), Eigen::MatrixXd(expected));
}

TEST(AdjacencyTest, EdgelessIsZero) {
  EXPECT_EQ(adjacency(testing::edgeless(3)), Eigen::MatrixXd::Zero(3, 3));
}

TEST(AdjacencyTest, Path) {
  Eigen::Matrix3d expected;
  expected << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  EXPECT_EQ(adjacency(testing::path3()), Eigen::MatrixXd(expected));
}

TEST(AdjacencyTest, SymmetricZeroDiagonalOnRandomGraphs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::random_graph(rng, 1 + trial % 20, 0.3);
    const auto a = adjacency(g);
    EXPECT_EQ(a, a.transpose());
    EXPECT_EQ(a.diagonal().cwiseAbs().sum(), 0.0);
    EXPECT_EQ(a.sum(), 2.0 * static_cast<double>(g.edge_count()));
  }
}

TEST(GraphTest, PermutationMovesAttributes) {
  Graph g(3, {{0, 1}}, std::vector<std::int64_t>{5, 6, 7});
  const std::vector<VertexId> perm{2, 0, 1};
  const auto h = g.permuted(perm);
  EXPECT_EQ(h.edges(), (std::vector<Edge>{{0, 2}}));
  EXPECT_EQ(*h.attributes(), (std::vector<std::int64_t>{6, 7, 5}));
}

}  // namespace
}  // namespace qesk
