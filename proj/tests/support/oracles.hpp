#pragma once

// Reference computations that deliberately avoid the library's own code
// paths. Only used from tests.

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qesk/graph.hpp"
#include "qesk/wlrefine.hpp"

namespace qesk::testing {

/// (1/T) sum_k |U(k dt)|^2 dt with U(t) = exp(-iAt), stepping U by a fixed
/// propagator exp(-iA dt) obtained from a Pade matrix exponential.
inline Eigen::MatrixXd time_average_mixing(const Eigen::MatrixXd& a, double horizon, double dt) {
  using Complex = std::complex<double>;
  const auto n = a.rows();
  const Eigen::MatrixXcd generator = Complex(0.0, -dt) * a.cast<Complex>();
  const Eigen::MatrixXcd step = generator.exp();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  const auto steps = static_cast<long>(horizon / dt);
  for (long k = 0; k < steps; ++k) {
    sum += u.cwiseAbs2();
    u = u * step;
  }
  return sum / static_cast<double>(steps);
}

/// Number of equal-label vertex pairs across the two graphs, summed over
/// iterations.
inline double brute_force_wlsk(const std::vector<VertexCodes>& p,
                               const std::vector<VertexCodes>& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (const Code a : p[i])
      for (const Code b : q[i]) total += a == b ? 1.0 : 0.0;
  return total;
}

/// Dense entropic representation over codes [0, m): E(code) = entropy mass
/// of that code's vertices / total entropy.
inline std::vector<double> dense_entropic(const VertexCodes& codes,
                                          const std::vector<double>& entropy, std::size_t m) {
  std::vector<double> out(m, 0.0);
  double total = 0.0;
  for (const double h : entropy) total += h;
  const bool uniform = total < 1e-12;
  for (std::size_t v = 0; v < codes.size(); ++v)
    out[static_cast<std::size_t>(codes[v])] += uniform ? 1.0 : entropy[v];
  const double mass = uniform ? static_cast<double>(codes.size()) : total;
  for (auto& x : out) x /= mass;
  return out;
}

inline double dense_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace qesk::testing
