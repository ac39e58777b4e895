#include "qesk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qesk/error.hpp"

namespace qesk {

Spectrum::Spectrum(std::vector<double> eigenvalues, std::vector<Eigen::MatrixXd> bases)
    : eigenvalues_(std::move(eigenvalues)), bases_(std::move(bases)) {
  if (eigenvalues_.size() != bases_.size()) {
    throw ContractViolation("spectrum: eigenvalue and basis counts differ");
  }
  if (!bases_.empty()) dimension_ = static_cast<std::size_t>(bases_.front().rows());
}

Eigen::MatrixXd Spectrum::projector(std::size_t j) const {
  return bases_[j] * bases_[j].transpose();
}

Spectrum eigendecompose_symmetric(const Eigen::MatrixXd& a, double group_tol) {
  if (a.rows() != a.cols()) throw ContractViolation("eigendecompose_symmetric: matrix not square");
  if (!(group_tol > 0.0)) throw ContractViolation("eigendecompose_symmetric: group_tol must be > 0");
  const Eigen::Index n = a.rows();
  if (n > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() >= 1e-12) {
    throw ContractViolation("eigendecompose_symmetric: matrix not symmetric");
  }
  if (n == 0) return Spectrum({}, {});

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigensolver did not converge on a " + std::to_string(n) + "x" +
                       std::to_string(n) + " matrix");
  }
  // Eigen returns eigenvalues in increasing order.
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double radius = std::max(std::abs(lambda(0)), std::abs(lambda(n - 1)));
  const double gap = group_tol * std::max(1.0, radius);

  std::vector<double> means;
  std::vector<Eigen::MatrixXd> bases;
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (k < n && lambda(k) - lambda(k - 1) <= gap) continue;
    const Eigen::Index width = k - start;
    means.push_back(lambda.segment(start, width).mean());
    bases.emplace_back(vectors.middleCols(start, width));
    start = k;
  }
  return Spectrum(std::move(means), std::move(bases));
}

MixingMatrix average_mixing_matrix(const Spectrum& spectrum) {
  const auto n = static_cast<Eigen::Index>(spectrum.dimension());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const Eigen::MatrixXd p = spectrum.projector(j);
    q.array() += p.array().square();
  }
  q = q.cwiseMax(0.0).cwiseMin(1.0);
  return MixingMatrix{std::move(q)};
}

MixingMatrix average_mixing_matrix(const Graph& g, double group_tol) {
  return average_mixing_matrix(eigendecompose_symmetric(adjacency(g), group_tol));
}

EntropyVector vertex_entropies(const MixingMatrix& q) {
  const auto& m = q.values;
  EntropyVector h;
  h.values.resize(static_cast<std::size_t>(m.rows()), 0.0);
  for (Eigen::Index v = 0; v < m.rows(); ++v) {
    double sum = 0.0;
    for (Eigen::Index u = 0; u < m.cols(); ++u) {
      const double p = m(v, u);
      if (p > 0.0) sum -= p * std::log(p);
    }
    h.values[static_cast<std::size_t>(v)] = std::max(sum, 0.0);
  }
  return h;
}

}  // namespace qesk
