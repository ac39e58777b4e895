#include "qesk/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "qesk/error.hpp"
#include "qesk/parallel.hpp"

namespace qesk {
namespace {

template <class Feature>
void check_levels(const Feature& a, const Feature& b, std::size_t i_max, const char* who) {
  if (a.levels.size() != i_max || b.levels.size() != i_max) {
    throw ContractViolation(std::string(who) + ": features have " +
                            std::to_string(a.levels.size()) + " and " +
                            std::to_string(b.levels.size()) + " levels, expected " +
                            std::to_string(i_max));
  }
}

double level_distance(const SparseLevel<double>& a, const SparseLevel<double>& b) {
  double sq = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    double d;
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      d = (i++)->second;
    } else if (i == a.end() || j->first < i->first) {
      d = (j++)->second;
    } else {
      d = (i++)->second - (j++)->second;
    }
    sq += d * d;
  }
  return std::sqrt(sq);
}

std::int64_t level_dot(const SparseLevel<std::int64_t>& a, const SparseLevel<std::int64_t>& b) {
  std::int64_t sum = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) ++i;
    else if (j->first < i->first) ++j;
    else sum += (i++)->second * (j++)->second;
  }
  return sum;
}

template <class Pair>
Eigen::MatrixXd assemble(std::size_t n, std::size_t workers, Pair&& pair) {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd k(dim, dim);
  parallel_for(n, workers, [&](std::size_t p) {
    for (std::size_t q = p; q < n; ++q) {
      const double value = pair(p, q);
      k(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = value;
      k(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p)) = value;
    }
  });
  return k;
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Qesk: return "qesk";
    case KernelKind::Wlsk: return "wlsk";
    case KernelKind::WlskNormalized: return "wlsk-normalized";
  }
  return "?";
}

std::optional<KernelKind> parse_kernel_kind(std::string_view text) {
  if (text == "qesk") return KernelKind::Qesk;
  if (text == "wlsk") return KernelKind::Wlsk;
  if (text == "wlsk-normalized") return KernelKind::WlskNormalized;
  return std::nullopt;
}

double qesk_pair(const EntropicFeature& fp, const EntropicFeature& fq, std::size_t i_max,
                 double gamma) {
  check_levels(fp, fq, i_max, "qesk_pair");
  double sum = 0.0;
  for (std::size_t i = 0; i < i_max; ++i) {
    sum += std::exp(-gamma * level_distance(fp.levels[i], fq.levels[i]));
  }
  return sum;
}

double wlsk_pair(const CountFeature& cp, const CountFeature& cq, std::size_t i_max) {
  check_levels(cp, cq, i_max, "wlsk_pair");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < i_max; ++i) sum += level_dot(cp.levels[i], cq.levels[i]);
  return static_cast<double>(sum);
}

GramMatrix qesk_gram(std::span<const EntropicFeature> features, std::size_t i_max, double gamma,
                     std::size_t workers) {
  GramMatrix g;
  g.kind = KernelKind::Qesk;
  g.i_max = i_max;
  g.values = assemble(features.size(), workers, [&](std::size_t p, std::size_t q) {
    return qesk_pair(features[p], features[q], i_max, gamma);
  });
  return g;
}

GramMatrix wlsk_gram(std::span<const CountFeature> features, std::size_t i_max, bool normalize,
                     std::size_t workers) {
  GramMatrix g;
  g.kind = normalize ? KernelKind::WlskNormalized : KernelKind::Wlsk;
  g.i_max = i_max;
  if (!normalize) {
    g.values = assemble(features.size(), workers, [&](std::size_t p, std::size_t q) {
      return wlsk_pair(features[p], features[q], i_max);
    });
    return g;
  }
  std::vector<double> self(features.size());
  for (std::size_t p = 0; p < features.size(); ++p) {
    self[p] = wlsk_pair(features[p], features[p], i_max);
    if (self[p] == 0.0) {
      throw NumericError("cannot normalize: graph " + std::to_string(p) +
                         " has a zero self-similarity");
    }
  }
  g.values = assemble(features.size(), workers, [&](std::size_t p, std::size_t q) {
    if (p == q) return 1.0;
    return wlsk_pair(features[p], features[q], i_max) / std::sqrt(self[p] * self[q]);
  });
  return g;
}

PsdResult psd_check(const Eigen::MatrixXd& k, double tol) {
  if (k.rows() != k.cols()) throw ContractViolation("psd_check: matrix not square");
  if (k.rows() == 0) return {0.0, 0.0, true};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("psd_check: eigensolver did not converge on a " +
                       std::to_string(k.rows()) + "x" + std::to_string(k.rows()) + " matrix");
  }
  PsdResult r;
  r.min_eigenvalue = solver.eigenvalues()(0);
  r.max_eigenvalue = solver.eigenvalues()(k.rows() - 1);
  r.pass = r.min_eigenvalue >= -tol * std::max(1.0, r.max_eigenvalue);
  return r;
}

void write_gram(std::ostream& out, const GramMatrix& gram) {
  const auto n = gram.values.rows();
  out << "# kernel=" << to_string(gram.kind) << " imax=" << gram.i_max << " n=" << n << '\n';
  char buf[32];
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", gram.values(r, c));
      if (c > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_gram(const std::filesystem::path& path, const GramMatrix& gram) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path.string());
  write_gram(out, gram);
}

GramMatrix read_gram(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("gram: empty input");
  std::istringstream hs(header);
  std::string hash, kind_field, imax_field, n_field;
  hs >> hash >> kind_field >> imax_field >> n_field;
  auto value_of = [&](const std::string& field, const std::string& key) {
    if (field.rfind(key + "=", 0) != 0) throw FormatError("gram:1: expected '" + key + "=' field");
    return field.substr(key.size() + 1);
  };
  if (hash != "#") throw FormatError("gram:1: header must start with '#'");
  GramMatrix g;
  const auto kind = parse_kernel_kind(value_of(kind_field, "kernel"));
  if (!kind) throw FormatError("gram:1: unknown kernel kind");
  g.kind = *kind;
  std::size_t n = 0;
  try {
    g.i_max = std::stoul(value_of(imax_field, "imax"));
    n = std::stoul(value_of(n_field, "n"));
  } catch (const std::logic_error&) {
    throw FormatError("gram:1: malformed imax or n");
  }
  const auto dim = static_cast<Eigen::Index>(n);
  g.values.resize(dim, dim);
  std::string line;
  for (Eigen::Index r = 0; r < dim; ++r) {
    if (!std::getline(in, line)) {
      throw FormatError("gram:" + std::to_string(r + 2) + ": missing row");
    }
    std::istringstream ls(line);
    std::string cell;
    Eigen::Index c = 0;
    while (std::getline(ls, cell, ',')) {
      if (c >= dim) throw FormatError("gram:" + std::to_string(r + 2) + ": too many columns");
      try {
        g.values(r, c++) = std::stod(cell);
      } catch (const std::logic_error&) {
        throw FormatError("gram:" + std::to_string(r + 2) + ": bad number '" + cell + "'");
      }
    }
    if (c != dim) throw FormatError("gram:" + std::to_string(r + 2) + ": too few columns");
  }
  return g;
}

GramMatrix read_gram(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  return read_gram(in);
}

}  // namespace qesk
