#include "qesk/pipeline.hpp"

#include <string>

#include "qesk/error.hpp"
#include "qesk/parallel.hpp"

namespace qesk {

std::vector<EntropyVector> dataset_entropies(const DatasetBundle& bundle, double group_tol,
                                             std::size_t workers) {
  std::vector<EntropyVector> out(bundle.size());
  parallel_for(bundle.size(), workers, [&](std::size_t g) {
    out[g] = vertex_entropies(average_mixing_matrix(bundle.graphs[g], group_tol));
  });
  return out;
}

std::vector<EntropicFeature> entropic_features(const LabelAssignment& labels,
                                               const std::vector<EntropyVector>& entropies,
                                               std::size_t workers) {
  if (entropies.size() != labels.graph_count()) {
    throw ContractViolation("entropic_features: " + std::to_string(entropies.size()) +
                            " entropy vectors for " + std::to_string(labels.graph_count()) +
                            " graphs");
  }
  std::vector<EntropicFeature> out(labels.graph_count());
  parallel_for(out.size(), workers, [&](std::size_t g) {
    out[g] = entropic_representation(labels.graph(g), entropies[g].values);
  });
  return out;
}

std::vector<CountFeature> count_features(const LabelAssignment& labels, std::size_t workers) {
  std::vector<CountFeature> out(labels.graph_count());
  parallel_for(out.size(), workers,
               [&](std::size_t g) { out[g] = count_representation(labels.graph(g)); });
  return out;
}

PipelineResult compute_gram(const DatasetBundle& bundle, KernelKind kind,
                            const PipelineOptions& options) {
  PipelineResult result;
  result.policy = options.policy.value_or(default_policy(bundle));
  const auto wl = run_wl(bundle, options.i_max, result.policy, options.workers);
  for (std::size_t i = 1; i <= options.i_max; ++i) {
    result.codebook_sizes.push_back(wl.codebook.size(i));
  }
  if (kind == KernelKind::Qesk) {
    const auto entropies = dataset_entropies(bundle, options.eig_group_tol, options.workers);
    const auto features = entropic_features(wl.labels, entropies, options.workers);
    result.gram = qesk_gram(features, options.i_max, options.gamma, options.workers);
  } else {
    const auto features = count_features(wl.labels, options.workers);
    result.gram = wlsk_gram(features, options.i_max, kind == KernelKind::WlskNormalized,
                            options.workers);
  }
  return result;
}

}  // namespace qesk
