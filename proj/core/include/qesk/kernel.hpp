#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "qesk/features.hpp"

namespace qesk {

enum class KernelKind { Qesk, Wlsk, WlskNormalized };

std::string_view to_string(KernelKind kind);
std::optional<KernelKind> parse_kernel_kind(std::string_view text);

struct GramMatrix {
  Eigen::MatrixXd values;
  KernelKind kind = KernelKind::Qesk;
  std::size_t i_max = 0;

  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
};

/// Sum over levels of exp(-gamma * ||fp_I - fq_I||), codes missing from a
/// vector counting as zero. gamma = 1 is the plain kernel.
/// Throws ContractViolation unless both features have exactly i_max levels.
double qesk_pair(const EntropicFeature& fp, const EntropicFeature& fq, std::size_t i_max,
                 double gamma = 1.0);

/// Sum over levels of the dot product of the code histograms.
double wlsk_pair(const CountFeature& cp, const CountFeature& cq, std::size_t i_max);

/// Row p is owned by one worker, which writes cells (p, q) and (q, p) for
/// q >= p. The result does not depend on the worker count.
GramMatrix qesk_gram(std::span<const EntropicFeature> features, std::size_t i_max,
                     double gamma = 1.0, std::size_t workers = 1);

/// With normalize, K'(p, q) = K(p, q) / sqrt(K(p, p) K(q, q)); throws
/// NumericError naming the graph if a diagonal entry is zero.
GramMatrix wlsk_gram(std::span<const CountFeature> features, std::size_t i_max, bool normalize,
                     std::size_t workers = 1);

struct PsdResult {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool pass = false;
};

/// pass iff min eigenvalue >= -tol * max(1, max eigenvalue).
PsdResult psd_check(const Eigen::MatrixXd& k, double tol = 1e-6);

/// Header line `# kernel=<kind> imax=<I> n=<N>` then N comma-separated rows,
/// 17 significant digits.
void write_gram(std::ostream& out, const GramMatrix& gram);
void write_gram(const std::filesystem::path& path, const GramMatrix& gram);
GramMatrix read_gram(std::istream& in);
GramMatrix read_gram(const std::filesystem::path& path);

}  // namespace qesk
