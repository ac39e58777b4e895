#include "qesk/wlrefine.hpp"

#include <algorithm>

#include "qesk/error.hpp"
#include "qesk/parallel.hpp"

namespace qesk {

LabelPolicy default_policy(const DatasetBundle& bundle) {
  return bundle.has_vertex_attributes ? LabelPolicy::GivenAttributes : LabelPolicy::Degree;
}

std::string_view to_string(LabelPolicy policy) {
  switch (policy) {
    case LabelPolicy::GivenAttributes: return "given";
    case LabelPolicy::Degree: return "degree";
    case LabelPolicy::Constant: return "constant";
  }
  return "?";
}

std::optional<LabelPolicy> parse_label_policy(std::string_view text) {
  if (text == "given") return LabelPolicy::GivenAttributes;
  if (text == "degree") return LabelPolicy::Degree;
  if (text == "constant") return LabelPolicy::Constant;
  return std::nullopt;
}

Code AttributeCodebook::encode(std::size_t iteration, const std::string& signature) {
  if (iteration == 0) throw ContractViolation("codebook: iterations are 1-based");
  if (tables_.size() < iteration) tables_.resize(iteration);
  auto& table = tables_[iteration - 1];
  const auto [it, inserted] = table.try_emplace(signature, static_cast<Code>(table.size()));
  return it->second;
}

std::optional<Code> AttributeCodebook::find(std::size_t iteration,
                                            const std::string& signature) const {
  if (iteration == 0 || iteration > tables_.size()) return std::nullopt;
  const auto& table = tables_[iteration - 1];
  if (auto it = table.find(signature); it != table.end()) return it->second;
  return std::nullopt;
}

std::size_t AttributeCodebook::size(std::size_t iteration) const {
  if (iteration == 0 || iteration > tables_.size()) return 0;
  return tables_[iteration - 1].size();
}

void LabelAssignment::append_iteration(std::vector<VertexCodes> level) {
  if (level.size() != per_graph_.size()) {
    throw ContractViolation("label assignment: iteration covers the wrong number of graphs");
  }
  for (std::size_t g = 0; g < level.size(); ++g) per_graph_[g].push_back(std::move(level[g]));
}

std::vector<VertexCodes> initial_labels(const DatasetBundle& bundle, LabelPolicy policy,
                                        AttributeCodebook& codebook) {
  if (policy == LabelPolicy::GivenAttributes && !bundle.has_vertex_attributes) {
    throw ConfigError("dataset '" + bundle.name +
                      "' has no vertex labels; use the degree or constant policy");
  }
  std::vector<VertexCodes> out(bundle.size());
  for (std::size_t g = 0; g < bundle.size(); ++g) {
    const Graph& graph = bundle.graphs[g];
    if (policy == LabelPolicy::GivenAttributes && !graph.attributes()) {
      throw ConfigError("graph " + std::to_string(g) + " of '" + bundle.name +
                        "' carries no vertex labels");
    }
    out[g].resize(graph.vertex_count());
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      std::int64_t raw = 0;
      if (policy == LabelPolicy::GivenAttributes) raw = (*graph.attributes())[v];
      else if (policy == LabelPolicy::Degree) raw = static_cast<std::int64_t>(graph.degree(v));
      out[g][v] = codebook.encode(1, std::to_string(raw));
    }
  }
  return out;
}

std::string wl_signature(Code own, std::vector<Code> neighbor_codes) {
  std::sort(neighbor_codes.begin(), neighbor_codes.end());
  std::string sig = std::to_string(own);
  sig += '|';
  for (std::size_t i = 0; i < neighbor_codes.size(); ++i) {
    if (i > 0) sig += ',';
    sig += std::to_string(neighbor_codes[i]);
  }
  return sig;
}

std::vector<VertexCodes> refine_once(const DatasetBundle& bundle,
                                     std::span<const VertexCodes> labels,
                                     AttributeCodebook& codebook, std::size_t next_iteration,
                                     std::size_t workers) {
  if (labels.size() != bundle.size()) {
    throw ContractViolation("refine_once: labels cover " + std::to_string(labels.size()) +
                            " graphs, bundle has " + std::to_string(bundle.size()));
  }
  std::vector<std::vector<std::string>> signatures(bundle.size());
  parallel_for(bundle.size(), workers, [&](std::size_t g) {
    const Graph& graph = bundle.graphs[g];
    const VertexCodes& codes = labels[g];
    if (codes.size() != graph.vertex_count()) {
      throw ContractViolation("refine_once: graph " + std::to_string(g) + " label count mismatch");
    }
    auto& sigs = signatures[g];
    sigs.reserve(graph.vertex_count());
    std::vector<Code> nb;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      nb.clear();
      for (const VertexId u : graph.neighbors(v)) nb.push_back(codes[u]);
      sigs.push_back(wl_signature(codes[v], nb));
    }
  });

  std::vector<VertexCodes> out(bundle.size());
  for (std::size_t g = 0; g < bundle.size(); ++g) {
    out[g].reserve(signatures[g].size());
    for (const auto& sig : signatures[g]) out[g].push_back(codebook.encode(next_iteration, sig));
  }
  return out;
}

WlResult run_wl(const DatasetBundle& bundle, std::size_t i_max, LabelPolicy policy,
                std::size_t workers) {
  if (i_max < 1) throw ContractViolation("run_wl: i_max must be >= 1");
  WlResult result{LabelAssignment(bundle.size()), {}};
  auto current = initial_labels(bundle, policy, result.codebook);
  for (std::size_t it = 2; it <= i_max; ++it) {
    auto next = refine_once(bundle, current, result.codebook, it, workers);
    result.labels.append_iteration(std::move(current));
    current = std::move(next);
  }
  result.labels.append_iteration(std::move(current));
  return result;
}

}  // namespace qesk
