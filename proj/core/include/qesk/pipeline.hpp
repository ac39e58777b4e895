#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qesk/features.hpp"
#include "qesk/graph.hpp"
#include "qesk/kernel.hpp"
#include "qesk/spectral.hpp"
#include "qesk/wlrefine.hpp"

namespace qesk {

struct PipelineOptions {
  std::size_t i_max = kDefaultIMax;
  std::optional<LabelPolicy> policy;  // unset: default_policy(bundle)
  double eig_group_tol = kDefaultEigenGroupTol;
  double gamma = 1.0;
  std::size_t workers = 0;
};

/// Per-graph vertex entropies of the average mixing matrix, one graph per task.
std::vector<EntropyVector> dataset_entropies(const DatasetBundle& bundle, double group_tol,
                                             std::size_t workers);

std::vector<EntropicFeature> entropic_features(const LabelAssignment& labels,
                                               const std::vector<EntropyVector>& entropies,
                                               std::size_t workers);
std::vector<CountFeature> count_features(const LabelAssignment& labels, std::size_t workers);

struct PipelineResult {
  GramMatrix gram;
  LabelPolicy policy = LabelPolicy::Constant;
  std::vector<std::size_t> codebook_sizes;  // M_I for I = 1..i_max
};

/// Dataset -> WL labels -> features -> Gram matrix. Entropies are only
/// computed for the QESK kind.
PipelineResult compute_gram(const DatasetBundle& bundle, KernelKind kind,
                            const PipelineOptions& options);

}  // namespace qesk
