#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qesk/wlrefine.hpp"

namespace qesk {

/// Sparse vector keyed by WL code, entries sorted by code, no zero entries
/// except where a code carries zero mass.
template <class T>
using SparseLevel = std::vector<std::pair<Code, T>>;

/// Per-iteration share of the graph's total vertex entropy carried by each
/// code. Level 0 holds iteration 1.
struct EntropicFeature {
  std::vector<SparseLevel<double>> levels;
  friend bool operator==(const EntropicFeature&, const EntropicFeature&) = default;
};

/// Per-iteration code histogram.
struct CountFeature {
  std::vector<SparseLevel<std::int64_t>> levels;
  friend bool operator==(const CountFeature&, const CountFeature&) = default;
};

/// Below this total entropy a graph falls back to uniform vertex mass.
inline constexpr double kZeroEntropyThreshold = 1e-12;

/// `per_iteration[i][v]` is the code of vertex v at iteration i + 1.
/// Throws ContractViolation when a level and `entropies` differ in length.
EntropicFeature entropic_representation(std::span<const VertexCodes> per_iteration,
                                        std::span<const double> entropies);

CountFeature count_representation(std::span<const VertexCodes> per_iteration);

}  // namespace qesk
