#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "qesk/error.hpp"
#include "qesk/wlrefine.hpp"
#include "test_graphs.hpp"

namespace qesk {
namespace {

using testing::make_bundle;

std::vector<Code> sorted(VertexCodes c) {
  std::sort(c.begin(), c.end());
  return c;
}

TEST(InitialLabelsTest, UniformAttributesShareCodeZero) {
  auto a = Graph(2, {{0, 1}}, std::vector<std::int64_t>{4, 4});
  auto b = Graph(3, {{0, 1}}, std::vector<std::int64_t>{4, 4, 4});
  const auto bundle = make_bundle({a, b});
  AttributeCodebook book;
  const auto labels = initial_labels(bundle, LabelPolicy::GivenAttributes, book);
  EXPECT_EQ(labels[0], (VertexCodes{0, 0}));
  EXPECT_EQ(labels[1], (VertexCodes{0, 0, 0}));
  EXPECT_EQ(book.size(1), 1u);
}

TEST(InitialLabelsTest, FirstSeenOrdering) {
  const auto bundle = make_bundle({Graph(3, {}, std::vector<std::int64_t>{5, 9, 5})});
  AttributeCodebook book;
  EXPECT_EQ(initial_labels(bundle, LabelPolicy::GivenAttributes, book)[0], (VertexCodes{0, 1, 0}));
}

TEST(InitialLabelsTest, DegreePolicy) {
  const auto bundle = make_bundle({testing::path3()});
  AttributeCodebook book;
  EXPECT_EQ(initial_labels(bundle, LabelPolicy::Degree, book)[0], (VertexCodes{0, 1, 0}));
  EXPECT_EQ(book.find(1, "1"), Code{0});
  EXPECT_EQ(book.find(1, "2"), Code{1});
}

TEST(InitialLabelsTest, ConstantPolicy) {
  const auto bundle = make_bundle({testing::path3(), testing::triangle()});
  AttributeCodebook book;
  const auto labels = initial_labels(bundle, LabelPolicy::Constant, book);
  EXPECT_EQ(labels[0], (VertexCodes{0, 0, 0}));
  EXPECT_EQ(labels[1], (VertexCodes{0, 0, 0}));
}

TEST(InitialLabelsTest, GivenPolicyNeedsAttributes) {
  const auto bundle = make_bundle({testing::path3()});
  AttributeCodebook book;
  EXPECT_THROW(initial_labels(bundle, LabelPolicy::GivenAttributes, book), ConfigError);
}

TEST(RefineOnceTest, SingleEdge) {
  const auto bundle = make_bundle({testing::single_edge()});
  AttributeCodebook book;
  const std::vector<VertexCodes> start{{0, 0}};
  const auto next = refine_once(bundle, start, book, 2);
  EXPECT_EQ(next[0][0], next[0][1]);
  EXPECT_EQ(book.find(2, "0|0"), next[0][0]);
}

TEST(RefineOnceTest, PathSeparatesCentre) {
  const auto bundle = make_bundle({testing::path3()});
  AttributeCodebook book;
  const std::vector<VertexCodes> start{{0, 0, 0}};
  const auto next = refine_once(bundle, start, book, 2);
  EXPECT_EQ(next[0][0], next[0][2]);
  EXPECT_NE(next[0][0], next[0][1]);
  EXPECT_EQ(book.find(2, "0|0"), next[0][0]);
  EXPECT_EQ(book.find(2, "0|0,0"), next[0][1]);
}

TEST(RefineOnceTest, IsolatedVertexHasEmptyNeighbourList) {
  const auto bundle = make_bundle({Graph(3, {{1, 2}})});
  AttributeCodebook book;
  const std::vector<VertexCodes> start{{3, 3, 3}};
  const auto next = refine_once(bundle, start, book, 2);
  EXPECT_EQ(book.find(2, "3|"), next[0][0]);
  EXPECT_NE(next[0][0], next[0][1]);
}

TEST(RefineOnceTest, NeighbourCodesAreSorted) {
  EXPECT_EQ(wl_signature(4, {9, 2, 5, 2}), "4|2,2,5,9");
}

TEST(RunWlTest, OneIterationIsInitialLabelling) {
  const auto bundle = make_bundle({Graph(3, {{0, 1}}, std::vector<std::int64_t>{2, 1, 2})});
  const auto result = run_wl(bundle, 1, LabelPolicy::GivenAttributes);
  EXPECT_EQ(result.labels.i_max(), 1u);
  EXPECT_EQ(result.labels.codes(0, 1), (VertexCodes{0, 1, 0}));
}

TEST(RunWlTest, TriangleKeepsOneCode) {
  const auto result = run_wl(make_bundle({testing::triangle()}), 6, LabelPolicy::Constant);
  for (std::size_t i = 1; i <= 6; ++i) {
    const auto& c = result.labels.codes(0, i);
    EXPECT_TRUE(std::all_of(c.begin(), c.end(), [&](Code x) { return x == c[0]; }));
    EXPECT_EQ(result.codebook.size(i), 1u);
  }
}

TEST(RunWlTest, RejectsZeroIterations) {
  EXPECT_THROW(run_wl(make_bundle({testing::triangle()}), 0, LabelPolicy::Constant),
               ContractViolation);
}

TEST(RunWlTest, PermutedCopiesShareCodeMultisets) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 15;
    const auto g = testing::random_graph(rng, n, 0.3, 3);
    const auto h = g.permuted(testing::random_permutation(rng, n));
    const auto result = run_wl(make_bundle({g, h}), 5, LabelPolicy::GivenAttributes);
    for (std::size_t i = 1; i <= 5; ++i) {
      EXPECT_EQ(sorted(result.labels.codes(0, i)), sorted(result.labels.codes(1, i)));
    }
  }
}

TEST(RunWlTest, RefinementIsMonotone) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testing::random_graph(rng, 3 + rng() % 20, 0.2, 2);
    const auto result = run_wl(make_bundle({g}), 6, LabelPolicy::GivenAttributes);
    for (std::size_t i = 1; i < 6; ++i) {
      const auto& now = result.labels.codes(0, i);
      const auto& next = result.labels.codes(0, i + 1);
      for (std::size_t u = 0; u < now.size(); ++u)
        for (std::size_t v = 0; v < now.size(); ++v)
          if (now[u] != now[v]) {
            EXPECT_NE(next[u], next[v]);
          }
    }
  }
}

TEST(RunWlTest, GraphOrderOnlyRenamesCodes) {
  std::mt19937_64 rng(29);
  std::vector<Graph> graphs;
  for (int i = 0; i < 8; ++i) graphs.push_back(testing::random_graph(rng, 2 + rng() % 10, 0.3, 3));
  std::vector<Graph> reversed(graphs.rbegin(), graphs.rend());
  const auto fwd = run_wl(make_bundle(graphs), 4, LabelPolicy::GivenAttributes);
  const auto rev = run_wl(make_bundle(reversed), 4, LabelPolicy::GivenAttributes);
  for (std::size_t i = 1; i <= 4; ++i) {
    std::map<Code, Code> rename;
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      const auto& a = fwd.labels.codes(g, i);
      const auto& b = rev.labels.codes(graphs.size() - 1 - g, i);
      for (std::size_t v = 0; v < a.size(); ++v) {
        const auto [it, inserted] = rename.emplace(a[v], b[v]);
        EXPECT_EQ(it->second, b[v]);
      }
    }
    EXPECT_EQ(fwd.codebook.size(i), rev.codebook.size(i));
  }
}

TEST(RunWlTest, WorkerCountDoesNotChangeCodes) {
  std::mt19937_64 rng(31);
  std::vector<Graph> graphs;
  for (int i = 0; i < 40; ++i) graphs.push_back(testing::random_graph(rng, 2 + rng() % 15, 0.25, 4));
  const auto bundle = make_bundle(graphs);
  const auto one = run_wl(bundle, 5, LabelPolicy::GivenAttributes, 1);
  const auto four = run_wl(bundle, 5, LabelPolicy::GivenAttributes, 4);
  EXPECT_EQ(one.labels, four.labels);
}

TEST(RunWlTest, CodebookGrowsWithDataset) {
  std::mt19937_64 rng(37);
  std::vector<Graph> graphs;
  for (int i = 0; i < 10; ++i) graphs.push_back(testing::random_graph(rng, 3 + rng() % 10, 0.3, 3));
  std::vector<Graph> half(graphs.begin(), graphs.begin() + 5);
  const auto small = run_wl(make_bundle(half), 4, LabelPolicy::GivenAttributes);
  const auto big = run_wl(make_bundle(graphs), 4, LabelPolicy::GivenAttributes);
  for (std::size_t i = 1; i <= 4; ++i) {
    EXPECT_LE(small.codebook.size(i), big.codebook.size(i));
    // Codes are dense.
    Code top = -1;
    for (std::size_t g = 0; g < graphs.size(); ++g)
      for (Code c : big.labels.codes(g, i)) top = std::max(top, c);
    EXPECT_EQ(static_cast<std::size_t>(top) + 1, big.codebook.size(i));
  }
}

}  // namespace
}  // namespace qesk
