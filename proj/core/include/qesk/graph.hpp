#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qesk {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Undirected simple graph with optional integer vertex attributes.
///
/// Edges are stored canonically (first < second), sorted and unique, so two
/// graphs with the same edge set compare equal. Self-loops and out-of-range
/// endpoints are rejected by the constructor; the file parser drops
/// self-loops before they get here.
class Graph {
public:
  Graph() = default;
  Graph(std::size_t vertex_count, std::vector<Edge> edges,
        std::optional<std::vector<std::int64_t>> attributes = std::nullopt);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<std::vector<std::int64_t>>& attributes() const { return attributes_; }

  std::span<const VertexId> neighbors(VertexId v) const { return neighbors_[v]; }
  std::size_t degree(VertexId v) const { return neighbors_[v].size(); }

  /// Relabels vertex v as perm[v]. perm must be a permutation of [0, n).
  Graph permuted(std::span<const VertexId> perm) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ &&
           a.attributes_ == b.attributes_;
  }

private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::vector<std::int64_t>> attributes_;
  std::vector<std::vector<VertexId>> neighbors_;  // ascending per vertex
};

/// Symmetric 0/1 adjacency matrix with zero diagonal.
Eigen::MatrixXd adjacency(const Graph& g);

/// A labelled graph collection as loaded from disk.
struct DatasetBundle {
  std::string name;
  std::vector<Graph> graphs;
  std::vector<int> class_labels;
  bool has_vertex_attributes = false;
  std::size_t dropped_self_loops = 0;

  std::size_t size() const { return graphs.size(); }
};

}  // namespace qesk
