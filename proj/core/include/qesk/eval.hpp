#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qesk {

struct SmoOptions {
  double tol = 1e-3;
  std::uint64_t max_updates = 10'000'000;
  /// Called after every pair update with the update count and the dual
  /// objective sum(alpha) - 1/2 alpha^T Q alpha. Costs O(n) per call.
  std::function<void(std::uint64_t, double)> on_update;
};

/// Binary soft-margin SVM over a precomputed kernel. Decision value for a
/// kernel row k is sum_i dual_coefficients[i] * k[support_indices[i]] + bias.
struct SvmModel {
  std::vector<std::size_t> support_indices;
  std::vector<double> dual_coefficients;  // alpha_i * y_i
  std::vector<double> alphas;             // every training point
  double bias = 0.0;
  double c = 0.0;
  std::size_t training_size = 0;
  std::uint64_t updates = 0;
  double final_violation = 0.0;
  bool converged = true;  // false when max_updates was hit
};

/// Sequential minimal optimisation with maximal-violating-pair selection.
/// `labels` must be +1/-1 with both present; throws ContractViolation
/// otherwise, or for c <= 0 or a size mismatch.
SvmModel smo_train(const Eigen::MatrixXd& gram, std::span<const int> labels, double c,
                   const SmoOptions& options = {});

double decision_value(const SvmModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& row);

/// One row per test point, one column per training point. Returns +1/-1;
/// a zero decision value maps to +1.
std::vector<int> predict(const SvmModel& model, const Eigen::MatrixXd& gram_cross);

/// One-vs-one ensemble over dense class ids 0..k-1. For the pair (a, b),
/// a < b, class a is the -1 side and b the +1 side.
struct MulticlassModel {
  struct Pair {
    int negative = 0;
    int positive = 0;
    std::vector<std::size_t> members;  // training indices used by this pair
    SvmModel model;
  };
  int class_count = 0;
  std::vector<Pair> pairs;

  bool converged() const;
};

MulticlassModel train_one_vs_one(const Eigen::MatrixXd& gram, std::span<const int> classes,
                                 double c, const SmoOptions& options = {});

/// Majority vote; ties go to the smaller class id.
std::vector<int> predict(const MulticlassModel& model, const Eigen::MatrixXd& gram_cross);

/// Maps labels to dense ids 0..k-1 by ascending label value.
std::vector<int> dense_classes(std::span<const int> labels, std::vector<int>* distinct = nullptr);

/// Assigns each sample to one of `folds` folds. Each class is shuffled and
/// dealt round-robin, continuing from where the previous class stopped.
std::vector<int> stratified_folds(std::span<const int> classes, int folds, std::mt19937_64& rng);

std::vector<double> default_c_grid();

struct CvOptions {
  int folds = 10;
  int repetitions = 10;
  int inner_folds = 9;
  std::vector<double> c_grid = default_c_grid();
  std::uint64_t seed = 0;
  double smo_tol = 1e-3;
  std::size_t workers = 1;
};

struct CvReport {
  std::string dataset;
  std::string kernel_kind;
  std::size_t i_max = 0;
  int folds = 0;
  int repetitions = 0;
  std::uint64_t seed = 0;
  bool reshuffled_per_repetition = true;
  std::vector<std::vector<double>> fold_accuracies;  // [repetition][fold]
  std::vector<std::vector<double>> chosen_c;         // [repetition][fold]
  std::vector<double> repetition_means;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t unconverged_models = 0;
};

/// Repeated stratified k-fold evaluation. Per outer fold, C is picked by an
/// inner stratified CV on the training part (ties to the smaller C), then a
/// model is refit on the whole training part and scored on the held-out fold.
/// Throws ConfigError if N < folds, the grid is empty, fewer than two classes
/// exist, or every inner fold of some outer fold is single-class.
CvReport cross_validate(const Eigen::MatrixXd& gram, std::span<const int> class_labels,
                        const CvOptions& options);

std::string report_to_text(const CvReport& report);
void write_report(const std::filesystem::path& path, const CvReport& report);

}  // namespace qesk
