#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qesk/graph.hpp"

namespace qesk {

inline constexpr double kDefaultEigenGroupTol = 1e-8;

/// Eigenvalues of a real symmetric matrix clustered into distinct levels,
/// with an orthonormal eigenbasis per level. The projector onto level j is
/// basis(j) * basis(j)^T; projectors are materialised on request only.
class Spectrum {
public:
  Spectrum(std::vector<double> eigenvalues, std::vector<Eigen::MatrixXd> bases);

  std::size_t size() const { return eigenvalues_.size(); }
  std::size_t dimension() const { return dimension_; }

  /// Strictly increasing cluster means.
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& basis(std::size_t j) const { return bases_[j]; }
  std::size_t multiplicity(std::size_t j) const {
    return static_cast<std::size_t>(bases_[j].cols());
  }
  Eigen::MatrixXd projector(std::size_t j) const;

private:
  std::size_t dimension_ = 0;
  std::vector<double> eigenvalues_;
  std::vector<Eigen::MatrixXd> bases_;
};

/// Full symmetric eigendecomposition followed by greedy gap clustering:
/// sorted eigenvalues join the current cluster while the gap to the previous
/// one is at most group_tol * max(1, spectral radius).
///
/// Throws ContractViolation if `a` is not square and symmetric to 1e-12 or
/// group_tol <= 0, NumericError if the eigensolver does not converge.
Spectrum eigendecompose_symmetric(const Eigen::MatrixXd& a, double group_tol = kDefaultEigenGroupTol);

/// Time-averaged mixing matrix of the continuous-time quantum walk.
struct MixingMatrix {
  Eigen::MatrixXd values;
};

/// Sum over eigenspaces of the entrywise square of each projector, clamped
/// to [0, 1]. Symmetric and doubly stochastic up to roundoff.
MixingMatrix average_mixing_matrix(const Spectrum& spectrum);

/// Convenience: adjacency -> eigendecomposition -> mixing matrix.
MixingMatrix average_mixing_matrix(const Graph& g, double group_tol = kDefaultEigenGroupTol);

struct EntropyVector {
  std::vector<double> values;
};

/// Shannon entropy (natural log) of each row of q, with 0 ln 0 = 0.
EntropyVector vertex_entropies(const MixingMatrix& q);

}  // namespace qesk
