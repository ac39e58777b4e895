#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qesk/graph.hpp"

namespace qesk {

using Code = std::int32_t;
using VertexCodes = std::vector<Code>;

inline constexpr std::size_t kDefaultIMax = 10;

enum class LabelPolicy { GivenAttributes, Degree, Constant };

/// GivenAttributes when the bundle has vertex labels, Degree otherwise.
LabelPolicy default_policy(const DatasetBundle& bundle);
std::string_view to_string(LabelPolicy policy);
std::optional<LabelPolicy> parse_label_policy(std::string_view text);

/// Dataset-wide signature -> code tables, one per iteration (1-based).
/// Codes are handed out densely in first-seen order.
class AttributeCodebook {
public:
  Code encode(std::size_t iteration, const std::string& signature);
  std::optional<Code> find(std::size_t iteration, const std::string& signature) const;

  /// Number of distinct codes at `iteration` (M_I); 0 for unseen iterations.
  std::size_t size(std::size_t iteration) const;
  std::size_t iterations() const { return tables_.size(); }

private:
  std::vector<std::unordered_map<std::string, Code>> tables_;
};

/// codes(graph, iteration)[vertex], iteration in [1, i_max].
class LabelAssignment {
public:
  LabelAssignment() = default;
  explicit LabelAssignment(std::size_t graph_count) : per_graph_(graph_count) {}

  std::size_t graph_count() const { return per_graph_.size(); }
  std::size_t i_max() const { return per_graph_.empty() ? 0 : per_graph_.front().size(); }

  const VertexCodes& codes(std::size_t graph, std::size_t iteration) const {
    return per_graph_[graph][iteration - 1];
  }
  /// All iterations of one graph, index 0 holding iteration 1.
  const std::vector<VertexCodes>& graph(std::size_t g) const { return per_graph_[g]; }

  void append_iteration(std::vector<VertexCodes> level);

  friend bool operator==(const LabelAssignment&, const LabelAssignment&) = default;

private:
  std::vector<std::vector<VertexCodes>> per_graph_;
};

/// Iteration-1 codes: raw attribute, degree or the constant 0, hashed
/// through `codebook`. Throws ConfigError for GivenAttributes on a bundle
/// without vertex labels.
std::vector<VertexCodes> initial_labels(const DatasetBundle& bundle, LabelPolicy policy,
                                        AttributeCodebook& codebook);

/// Signature "own|n1,n2,..." with neighbour codes ascending, compressed at
/// `next_iteration`. Signatures are built per graph on `workers` threads;
/// codes are then assigned serially in (graph, vertex) order.
std::vector<VertexCodes> refine_once(const DatasetBundle& bundle,
                                     std::span<const VertexCodes> labels,
                                     AttributeCodebook& codebook, std::size_t next_iteration,
                                     std::size_t workers = 1);

std::string wl_signature(Code own, std::vector<Code> neighbor_codes);

struct WlResult {
  LabelAssignment labels;
  AttributeCodebook codebook;
};

WlResult run_wl(const DatasetBundle& bundle, std::size_t i_max, LabelPolicy policy,
                std::size_t workers = 1);

}  // namespace qesk
