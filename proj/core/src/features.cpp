#include "qesk/features.hpp"

#include <map>
#include <numeric>
#include <string>

#include "qesk/error.hpp"

namespace qesk {
namespace {

template <class T>
SparseLevel<T> to_level(const std::map<Code, T>& m) {
  return SparseLevel<T>(m.begin(), m.end());
}

}  // namespace

EntropicFeature entropic_representation(std::span<const VertexCodes> per_iteration,
                                        std::span<const double> entropies) {
  const double total = std::accumulate(entropies.begin(), entropies.end(), 0.0);
  const bool uniform = total < kZeroEntropyThreshold;
  const double n = static_cast<double>(entropies.size());

  EntropicFeature out;
  out.levels.reserve(per_iteration.size());
  for (std::size_t i = 0; i < per_iteration.size(); ++i) {
    const auto& codes = per_iteration[i];
    if (codes.size() != entropies.size()) {
      throw ContractViolation("entropic_representation: iteration " + std::to_string(i + 1) +
                              " has " + std::to_string(codes.size()) + " labels for " +
                              std::to_string(entropies.size()) + " entropies");
    }
    std::map<Code, double> mass;
    for (std::size_t v = 0; v < codes.size(); ++v) mass[codes[v]] += uniform ? 1.0 : entropies[v];
    const double denom = uniform ? n : total;
    for (auto& [code, w] : mass) w /= denom;
    out.levels.push_back(to_level(mass));
  }
  return out;
}

CountFeature count_representation(std::span<const VertexCodes> per_iteration) {
  CountFeature out;
  out.levels.reserve(per_iteration.size());
  for (const auto& codes : per_iteration) {
    std::map<Code, std::int64_t> hist;
    for (const Code c : codes) ++hist[c];
    out.levels.push_back(to_level(hist));
  }
  return out;
}

}  // namespace qesk
