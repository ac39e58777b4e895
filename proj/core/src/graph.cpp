#include "qesk/graph.hpp"

#include <algorithm>
#include <string>

#include "qesk/error.hpp"

namespace qesk {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges,
             std::optional<std::vector<std::int64_t>> attributes)
    : vertex_count_(vertex_count), edges_(std::move(edges)), attributes_(std::move(attributes)) {
  if (attributes_ && attributes_->size() != vertex_count_) {
    throw ContractViolation("graph: " + std::to_string(attributes_->size()) +
                            " attributes for " + std::to_string(vertex_count_) + " vertices");
  }
  for (auto& [u, v] : edges_) {
    if (u >= vertex_count_ || v >= vertex_count_) {
      throw ContractViolation("graph: edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") out of range for " + std::to_string(vertex_count_) + " vertices");
    }
    if (u == v) throw ContractViolation("graph: self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  neighbors_.assign(vertex_count_, {});
  for (const auto& [u, v] : edges_) {
    neighbors_[u].push_back(v);
    neighbors_[v].push_back(u);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

Graph Graph::permuted(std::span<const VertexId> perm) const {
  if (perm.size() != vertex_count_) throw ContractViolation("graph: permutation size mismatch");
  std::vector<Edge> mapped;
  mapped.reserve(edges_.size());
  for (const auto& [u, v] : edges_) mapped.emplace_back(perm[u], perm[v]);
  std::optional<std::vector<std::int64_t>> attrs;
  if (attributes_) {
    attrs.emplace(vertex_count_);
    for (std::size_t v = 0; v < vertex_count_; ++v) (*attrs)[perm[v]] = (*attributes_)[v];
  }
  return Graph(vertex_count_, std::move(mapped), std::move(attrs));
}

Eigen::MatrixXd adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

}  // namespace qesk
