#include <gtest/gtest.h>

#include <set>

#include "qesk/error.hpp"
#include "qesk/graphio.hpp"
#include "temp_dir.hpp"
#include "test_graphs.hpp"

namespace qesk {
namespace {

using testing::TempDir;

void write_dataset(const TempDir& dir, const std::string& edges, const std::string& indicator,
                   const std::string& labels) {
  dir.write("DS_A.txt", edges);
  dir.write("DS_graph_indicator.txt", indicator);
  dir.write("DS_graph_labels.txt", labels);
}

TEST(ParseTuDataset, SmallestWellFormedInput) {
  TempDir dir;
  write_dataset(dir, "1, 2\n2, 1\n", "1\n1\n", "1\n");
  const auto b = parse_tu_dataset(dir.path(), "DS");
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.graphs[0].vertex_count(), 2u);
  EXPECT_EQ(b.graphs[0].edge_count(), 1u);
  EXPECT_EQ(b.class_labels, std::vector<int>{1});
  EXPECT_FALSE(b.has_vertex_attributes);
  EXPECT_EQ(b.dropped_self_loops, 0u);
}

TEST(ParseTuDataset, DropsSelfLoops) {
  TempDir dir;
  write_dataset(dir, "1, 2\n3, 3\n2, 3\n", "1\n1\n1\n", "0\n");
  const auto b = parse_tu_dataset(dir.path(), "DS");
  EXPECT_EQ(b.dropped_self_loops, 1u);
  EXPECT_EQ(b.graphs[0].edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(ParseTuDataset, LocalZeroBasedIndicesAndAttributes) {
  TempDir dir;
  write_dataset(dir, "1,2\n3,4\n4,5\n", "1\n1\n2\n2\n2\n", "-1\n1\n");
  dir.write("DS_node_labels.txt", "7\n8\n9\n10\n11\n");
  dir.write("DS_edge_labels.txt", "0\n0\n0\n");
  const auto b = parse_tu_dataset(dir.path(), "DS");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_TRUE(b.has_vertex_attributes);
  EXPECT_EQ(b.graphs[1].edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(*b.graphs[1].attributes(), (std::vector<std::int64_t>{9, 10, 11}));
  EXPECT_EQ(b.class_labels, (std::vector<int>{-1, 1}));
}

TEST(ParseTuDataset, WhitespaceAndTrailingBlankLines) {
  TempDir a, b;
  write_dataset(a, "1, 2\n2, 3\n", "1\n1\n1\n", "1\n");
  write_dataset(b, "  1 ,2 \r\n2,   3\n\n\n", "1\n 1\n1 \n\n", "1\n\n");
  const auto x = parse_tu_dataset(a.path(), "DS");
  const auto y = parse_tu_dataset(b.path(), "DS");
  EXPECT_EQ(x.graphs, y.graphs);
  EXPECT_EQ(x.class_labels, y.class_labels);
}

TEST(ParseTuDataset, MissingFileNamesTheFile) {
  TempDir dir;
  dir.write("DS_A.txt", "1, 2\n");
  dir.write("DS_graph_labels.txt", "1\n");
  try {
    parse_tu_dataset(dir.path(), "DS");
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("DS_graph_indicator.txt"), std::string::npos);
  }
}

TEST(ParseTuDataset, VertexOutsideAnyGraphReportsLine) {
  TempDir dir;
  write_dataset(dir, "1, 2\n2, 9\n", "1\n1\n", "1\n");
  try {
    parse_tu_dataset(dir.path(), "DS");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("DS_A.txt:2"), std::string::npos) << e.what();
  }
}

TEST(ParseTuDataset, IndicatorOutOfRangeReportsLine) {
  TempDir dir;
  write_dataset(dir, "1, 2\n", "1\n3\n", "1\n");
  try {
    parse_tu_dataset(dir.path(), "DS");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("DS_graph_indicator.txt:2"), std::string::npos)
        << e.what();
  }
}

TEST(ParseTuDataset, NodeLabelLengthMismatch) {
  TempDir dir;
  write_dataset(dir, "1, 2\n", "1\n1\n", "1\n");
  dir.write("DS_node_labels.txt", "1\n");
  EXPECT_THROW(parse_tu_dataset(dir.path(), "DS"), FormatError);
}

TEST(ParseTuDataset, MalformedNumbers) {
  TempDir dir;
  write_dataset(dir, "1; 2\n", "1\n1\n", "1\n");
  EXPECT_THROW(parse_tu_dataset(dir.path(), "DS"), FormatError);
  write_dataset(dir, "1, 2, 3\n", "1\n1\n", "1\n");
  EXPECT_THROW(parse_tu_dataset(dir.path(), "DS"), FormatError);
  write_dataset(dir, "1, 2\n", "1\n\n1\n", "1\n");
  EXPECT_THROW(parse_tu_dataset(dir.path(), "DS"), FormatError);
}

TEST(ParseTuDataset, EdgeAcrossGraphsIsRejected) {
  TempDir dir;
  write_dataset(dir, "1, 3\n", "1\n1\n2\n", "1\n2\n");
  EXPECT_THROW(parse_tu_dataset(dir.path(), "DS"), FormatError);
}

TEST(ParseTuDataset, RoundTripRandomBundles) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const bool attributed = trial % 2 == 0;
    std::vector<Graph> graphs;
    std::vector<int> labels;
    for (int g = 0; g < 1 + trial % 6; ++g) {
      graphs.push_back(testing::random_graph(rng, 1 + rng() % 12, 0.3, attributed ? 5 : 0));
      labels.push_back(static_cast<int>(rng() % 3) - 1);
    }
    auto bundle = testing::make_bundle(graphs, labels);
    bundle.name = "RT";
    TempDir dir;
    write_tu_dataset(bundle, dir.path());
    const auto back = parse_tu_dataset(dir.path(), "RT");
    EXPECT_EQ(back.graphs, bundle.graphs);
    EXPECT_EQ(back.class_labels, bundle.class_labels);
    EXPECT_EQ(back.has_vertex_attributes, attributed);
    for (const auto& g : back.graphs) {
      const auto a = adjacency(g);
      EXPECT_EQ(a, a.transpose());
    }
  }
}

#ifdef QESK_TEST_DATA_DIR
TEST(ParseTuDataset, MutagStatistics) {
  const std::filesystem::path dir = std::filesystem::path(QESK_TEST_DATA_DIR) / "MUTAG";
  if (!std::filesystem::exists(dir)) GTEST_SKIP() << "MUTAG not present";
  const auto b = parse_tu_dataset(dir, "MUTAG");
  EXPECT_EQ(b.size(), 188u);
  EXPECT_EQ(std::set<int>(b.class_labels.begin(), b.class_labels.end()).size(), 2u);
  EXPECT_TRUE(b.has_vertex_attributes);
  std::size_t vertices = 0;
  std::set<std::int64_t> attrs;
  for (const auto& g : b.graphs) {
    vertices += g.vertex_count();
    attrs.insert(g.attributes()->begin(), g.attributes()->end());
    const auto a = adjacency(g);
    EXPECT_EQ(a, a.transpose());
  }
  EXPECT_NEAR(static_cast<double>(vertices) / 188.0, 17.93, 0.005);
  EXPECT_EQ(attrs.size(), 7u);
}
#endif

}  // namespace
}  // namespace qesk
