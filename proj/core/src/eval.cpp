#include "qesk/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "qesk/error.hpp"
#include "qesk/parallel.hpp"

namespace qesk {
namespace {

using Index = Eigen::Index;
using IndexList = std::vector<Index>;

constexpr double kTau = 1e-12;

IndexList to_index(std::span<const std::size_t> ids) {
  return IndexList(ids.begin(), ids.end());
}

double dual_objective(const std::vector<double>& alpha, const std::vector<double>& grad) {
  double sum_alpha = 0.0;
  double alpha_grad = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    sum_alpha += alpha[i];
    alpha_grad += alpha[i] * grad[i];
  }
  return 0.5 * sum_alpha - 0.5 * alpha_grad;
}

}  // namespace

SvmModel smo_train(const Eigen::MatrixXd& gram, std::span<const int> labels, double c,
                   const SmoOptions& options) {
  const std::size_t n = labels.size();
  if (gram.rows() != gram.cols() || static_cast<std::size_t>(gram.rows()) != n) {
    throw ContractViolation("smo_train: kernel is " + std::to_string(gram.rows()) + "x" +
                            std::to_string(gram.cols()) + " for " + std::to_string(n) +
                            " labels");
  }
  if (!(c > 0.0)) throw ContractViolation("smo_train: C must be positive");
  bool has_pos = false;
  bool has_neg = false;
  for (const int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw ContractViolation("smo_train: labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) throw ContractViolation("smo_train: both classes must be present");

  std::vector<double> y(labels.begin(), labels.end());
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a^T Q a - e^T a
  auto q = [&](std::size_t i, std::size_t j) {
    return y[i] * y[j] * gram(static_cast<Index>(i), static_cast<Index>(j));
  };
  auto in_up = [&](std::size_t t) { return y[t] > 0 ? alpha[t] < c : alpha[t] > 0.0; };
  auto in_low = [&](std::size_t t) { return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < c; };

  SvmModel model;
  model.c = c;
  model.training_size = n;
  model.converged = false;

  while (true) {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    std::size_t i = n;
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    model.final_violation = (i == n || j == n) ? 0.0 : gmax - gmin;
    if (i == n || j == n || gmax - gmin < options.tol) {
      model.converged = true;
      break;
    }
    if (model.updates >= options.max_updates) break;

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * di + q(t, j) * dj;
    ++model.updates;
    if (options.on_update) options.on_update(model.updates, dual_objective(alpha, grad));
  }

  // Bias from free vectors, or the midpoint of the feasible interval.
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] < 0) upper = std::min(upper, yg);
      else lower = std::max(lower, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0) upper = std::min(upper, yg);
      else lower = std::max(lower, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                    : 0.5 * (upper + lower);
  model.bias = -rho;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support_indices.push_back(t);
      model.dual_coefficients.push_back(alpha[t] * y[t]);
    }
  }
  model.alphas = std::move(alpha);
  return model;
}

double decision_value(const SvmModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  if (static_cast<std::size_t>(row.size()) != model.training_size) {
    throw ContractViolation("decision_value: kernel row has " + std::to_string(row.size()) +
                            " entries, model was trained on " +
                            std::to_string(model.training_size));
  }
  double sum = model.bias;
  for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
    sum += model.dual_coefficients[s] * row(static_cast<Index>(model.support_indices[s]));
  }
  return sum;
}

std::vector<int> predict(const SvmModel& model, const Eigen::MatrixXd& gram_cross) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(gram_cross.rows()));
  for (Index r = 0; r < gram_cross.rows(); ++r) {
    out.push_back(decision_value(model, gram_cross.row(r)) >= 0.0 ? 1 : -1);
  }
  return out;
}

bool MulticlassModel::converged() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const Pair& p) { return p.model.converged; });
}

MulticlassModel train_one_vs_one(const Eigen::MatrixXd& gram, std::span<const int> classes,
                                 double c, const SmoOptions& options) {
  if (gram.rows() != gram.cols() || static_cast<std::size_t>(gram.rows()) != classes.size()) {
    throw ContractViolation("train_one_vs_one: kernel and label sizes differ");
  }
  MulticlassModel model;
  model.class_count = classes.empty() ? 0 : *std::max_element(classes.begin(), classes.end()) + 1;
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(model.class_count));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] < 0) throw ContractViolation("train_one_vs_one: negative class id");
    members[static_cast<std::size_t>(classes[i])].push_back(i);
  }
  const auto present = std::count_if(members.begin(), members.end(),
                                     [](const auto& m) { return !m.empty(); });
  if (present < 2) throw ContractViolation("train_one_vs_one: fewer than two classes present");

  for (int a = 0; a < model.class_count; ++a) {
    for (int b = a + 1; b < model.class_count; ++b) {
      const auto& ma = members[static_cast<std::size_t>(a)];
      const auto& mb = members[static_cast<std::size_t>(b)];
      if (ma.empty() || mb.empty()) continue;
      MulticlassModel::Pair pair;
      pair.negative = a;
      pair.positive = b;
      pair.members.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(pair.members));
      std::vector<int> y;
      y.reserve(pair.members.size());
      for (const auto m : pair.members) y.push_back(classes[m] == b ? 1 : -1);
      const IndexList idx = to_index(pair.members);
      pair.model = smo_train(gram(idx, idx), y, c, options);
      model.pairs.push_back(std::move(pair));
    }
  }
  return model;
}

std::vector<int> predict(const MulticlassModel& model, const Eigen::MatrixXd& gram_cross) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(gram_cross.rows()));
  std::vector<int> votes(static_cast<std::size_t>(model.class_count));
  for (Index r = 0; r < gram_cross.rows(); ++r) {
    std::fill(votes.begin(), votes.end(), 0);
    for (const auto& pair : model.pairs) {
      Eigen::RowVectorXd row(static_cast<Index>(pair.members.size()));
      for (std::size_t k = 0; k < pair.members.size(); ++k) {
        row(static_cast<Index>(k)) = gram_cross(r, static_cast<Index>(pair.members[k]));
      }
      const bool positive = decision_value(pair.model, row) >= 0.0;
      ++votes[static_cast<std::size_t>(positive ? pair.positive : pair.negative)];
    }
    // max_element returns the first maximum, i.e. the smallest class id.
    out.push_back(static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin()));
  }
  return out;
}

std::vector<int> dense_classes(std::span<const int> labels, std::vector<int>* distinct) {
  const std::set<int> values(labels.begin(), labels.end());
  const std::vector<int> sorted(values.begin(), values.end());
  std::vector<int> out;
  out.reserve(labels.size());
  for (const int l : labels) {
    out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), l) -
                                   sorted.begin()));
  }
  if (distinct) *distinct = sorted;
  return out;
}

std::vector<int> stratified_folds(std::span<const int> classes, int folds, std::mt19937_64& rng) {
  if (folds < 1) throw ContractViolation("stratified_folds: folds must be >= 1");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < classes.size(); ++i) by_class[classes[i]].push_back(i);
  std::vector<int> fold_of(classes.size(), 0);
  std::size_t offset = 0;
  for (auto& [cls, ids] : by_class) {
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      fold_of[ids[k]] = static_cast<int>((offset + k) % static_cast<std::size_t>(folds));
    }
    offset += ids.size();
  }
  return fold_of;
}

std::vector<double> default_c_grid() { return {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3}; }

namespace {

struct FoldOutcome {
  double accuracy = 0.0;
  double c = 0.0;
  std::size_t unconverged = 0;
};

std::mt19937_64 derived_rng(std::uint64_t seed, std::initializer_list<std::uint32_t> extra) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed),
                                   static_cast<std::uint32_t>(seed >> 32)};
  words.insert(words.end(), extra.begin(), extra.end());
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

double accuracy(const std::vector<int>& predicted, std::span<const int> truth) {
  std::size_t hit = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) hit += predicted[i] == truth[i];
  return predicted.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(predicted.size());
}

template <class T>
std::vector<T> pick(std::span<const T> values, std::span<const std::size_t> ids) {
  std::vector<T> out;
  out.reserve(ids.size());
  for (const auto i : ids) out.push_back(values[i]);
  return out;
}

std::size_t distinct_count(std::span<const int> classes) {
  return std::set<int>(classes.begin(), classes.end()).size();
}

// Picks C by stratified CV restricted to `train` (indices into the full gram).
double select_c(const Eigen::MatrixXd& gram, std::span<const int> classes,
                std::span<const std::size_t> train, const CvOptions& options,
                std::mt19937_64 rng, std::size_t& unconverged) {
  const auto train_classes = pick(classes, train);
  const int inner = std::min<int>(options.inner_folds, static_cast<int>(train.size()));
  if (inner < 2) throw ConfigError("cross_validate: training fold too small for inner CV");
  const auto inner_fold_of = stratified_folds(train_classes, inner, rng);

  struct InnerSplit {
    IndexList fit, held;
    std::vector<int> fit_classes, held_classes;
  };
  std::vector<InnerSplit> splits;
  for (int f = 0; f < inner; ++f) {
    InnerSplit s;
    for (std::size_t k = 0; k < train.size(); ++k) {
      const auto global = static_cast<Index>(train[k]);
      if (inner_fold_of[k] == f) {
        s.held.push_back(global);
        s.held_classes.push_back(train_classes[k]);
      } else {
        s.fit.push_back(global);
        s.fit_classes.push_back(train_classes[k]);
      }
    }
    if (s.held.empty() || distinct_count(s.fit_classes) < 2) continue;
    splits.push_back(std::move(s));
  }
  if (splits.empty()) {
    throw ConfigError("cross_validate: every inner fold has a single-class training set");
  }

  std::vector<double> grid = options.c_grid;
  std::sort(grid.begin(), grid.end());
  SmoOptions smo;
  smo.tol = options.smo_tol;
  double best_c = grid.front();
  double best_score = -1.0;
  for (const double c : grid) {
    std::size_t hit = 0;
    std::size_t total = 0;
    for (const auto& s : splits) {
      const auto model = train_one_vs_one(gram(s.fit, s.fit), s.fit_classes, c, smo);
      if (!model.converged()) ++unconverged;
      const auto predicted = predict(model, gram(s.held, s.fit));
      for (std::size_t k = 0; k < predicted.size(); ++k) hit += predicted[k] == s.held_classes[k];
      total += predicted.size();
    }
    const double score = static_cast<double>(hit) / static_cast<double>(total);
    if (score > best_score) {
      best_score = score;
      best_c = c;
    }
  }
  return best_c;
}

}  // namespace

CvReport cross_validate(const Eigen::MatrixXd& gram, std::span<const int> class_labels,
                        const CvOptions& options) {
  const std::size_t n = class_labels.size();
  if (gram.rows() != gram.cols() || static_cast<std::size_t>(gram.rows()) != n) {
    throw ConfigError("cross_validate: gram is " + std::to_string(gram.rows()) + "x" +
                      std::to_string(gram.cols()) + " but there are " + std::to_string(n) +
                      " labels");
  }
  if (options.folds < 2) throw ConfigError("cross_validate: folds must be >= 2");
  if (options.repetitions < 1) throw ConfigError("cross_validate: repetitions must be >= 1");
  if (n < static_cast<std::size_t>(options.folds)) {
    throw ConfigError("cross_validate: " + std::to_string(n) + " graphs for " +
                      std::to_string(options.folds) + " folds");
  }
  if (options.c_grid.empty()) throw ConfigError("cross_validate: empty C grid");
  const auto classes = dense_classes(class_labels);
  if (distinct_count(classes) < 2) throw ConfigError("cross_validate: need two or more classes");

  CvReport report;
  report.folds = options.folds;
  report.repetitions = options.repetitions;
  report.seed = options.seed;
  SmoOptions smo;
  smo.tol = options.smo_tol;

  for (int rep = 0; rep < options.repetitions; ++rep) {
    auto rng = derived_rng(options.seed, {static_cast<std::uint32_t>(rep)});
    const auto fold_of = stratified_folds(classes, options.folds, rng);
    std::vector<FoldOutcome> outcomes(static_cast<std::size_t>(options.folds));

    parallel_for(outcomes.size(), options.workers, [&](std::size_t f) {
      std::vector<std::size_t> train, test;
      for (std::size_t i = 0; i < n; ++i) {
        (fold_of[i] == static_cast<int>(f) ? test : train).push_back(i);
      }
      auto& out = outcomes[f];
      const auto inner_rng = derived_rng(
          options.seed, {static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(f), 1u});
      out.c = select_c(gram, classes, train, options, inner_rng, out.unconverged);

      const IndexList tr = to_index(train);
      const IndexList te = to_index(test);
      const auto train_classes = pick<int>(classes, train);
      const auto model = train_one_vs_one(gram(tr, tr), train_classes, out.c, smo);
      if (!model.converged()) ++out.unconverged;
      out.accuracy = accuracy(predict(model, gram(te, tr)), pick<int>(classes, test));
    });

    std::vector<double> accs, cs;
    for (const auto& o : outcomes) {
      accs.push_back(o.accuracy);
      cs.push_back(o.c);
      report.unconverged_models += o.unconverged;
    }
    report.repetition_means.push_back(std::accumulate(accs.begin(), accs.end(), 0.0) /
                                      static_cast<double>(accs.size()));
    report.fold_accuracies.push_back(std::move(accs));
    report.chosen_c.push_back(std::move(cs));
  }

  const auto& means = report.repetition_means;
  const double r = static_cast<double>(means.size());
  report.mean = std::accumulate(means.begin(), means.end(), 0.0) / r;
  if (means.size() > 1) {
    double ss = 0.0;
    for (const double m : means) ss += (m - report.mean) * (m - report.mean);
    report.std_error = std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
  }
  return report;
}

std::string report_to_text(const CvReport& report) {
  nlohmann::ordered_json doc;
  doc["dataset"] = report.dataset;
  doc["kernel_kind"] = report.kernel_kind;
  doc["i_max"] = report.i_max;
  doc["folds"] = report.folds;
  doc["repetitions"] = report.repetitions;
  doc["seed"] = report.seed;
  doc["reshuffled_per_repetition"] = report.reshuffled_per_repetition;
  doc["per_fold_accuracies"] = report.fold_accuracies;
  doc["repetition_means"] = report.repetition_means;
  doc["mean"] = report.mean;
  doc["std_error"] = report.std_error;

  std::map<double, int> histogram;
  for (const auto& rep : report.chosen_c) {
    for (const double c : rep) ++histogram[c];
  }
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  char key[32];
  for (const auto& [c, count] : histogram) {
    std::snprintf(key, sizeof key, "%g", c);
    hist[key] = count;
  }
  doc["chosen_c"] = hist;
  doc["unconverged_models"] = report.unconverged_models;
  return doc.dump(2) + "\n";
}

void write_report(const std::filesystem::path& path, const CvReport& report) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path.string());
  out << report_to_text(report);
}

}  // namespace qesk
