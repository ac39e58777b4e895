#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qesk/error.hpp"
#include "qesk/eval.hpp"
#include "qesk/kernel.hpp"
#include "qesk/wlrefine.hpp"

namespace qesk::app {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kDataRootEnv = "QESK_DATA_ROOT";

enum ExitCode : int {
  kOk = 0,
  kConfigFailure = 1,
  kIoFailure = 2,
  kPsdFailure = 3,
  kNumericFailure = 4,
};

struct RunConfig {
  std::filesystem::path dataset_dir;  // directory holding <name>_A.txt etc.
  std::string dataset_name;
  KernelKind kernel_kind = KernelKind::Qesk;
  std::size_t i_max = kDefaultIMax;
  std::optional<LabelPolicy> label_policy;
  double eig_group_tol = 1e-8;
  double gamma = 1.0;
  std::vector<double> c_grid = default_c_grid();
  int folds = 10;
  int repetitions = 10;
  std::uint64_t seed = 1;
  std::filesystem::path output_path;
  std::optional<std::filesystem::path> gram_file;
  std::size_t worker_count = 0;
  double psd_tol = 1e-6;

  /// Throws ConfigError for i_max < 1, folds < 2 or eig_group_tol <= 0.
  void validate() const;
};

/// $QESK_DATA_ROOT/<name> when set, else ./data/<name>.
std::filesystem::path default_dataset_dir(const std::string& name);

/// A failed pipeline stage. exit_code follows ExitCode.
struct StageFailure {
  std::string stage;
  std::string message;
  int exit_code;
};

struct CommandResult {
  int exit_code = kOk;
  std::filesystem::path output;
  std::filesystem::path manifest;
};

/// parse -> spectral -> WL -> features -> gram -> psd check. Writes the Gram
/// matrix and `<output>.manifest.json`. Exit code 3 if the PSD check fails.
CommandResult cmd_kernel(const RunConfig& config);

/// Computes (or loads from gram_file) the Gram matrix and cross-validates.
CommandResult cmd_evaluate(const RunConfig& config);

/// Dumps the mixing matrix, entropies, labels and features of one graph.
CommandResult cmd_inspect(const RunConfig& config, std::size_t graph_index, std::ostream& out);

/// Runs `fn`, translating library errors into a StageFailure tagged `stage`.
template <class Fn>
auto run_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageFailure&) {
    throw;
  } catch (const LoadError& e) {
    throw StageFailure{stage, e.what(), kIoFailure};
  } catch (const FormatError& e) {
    throw StageFailure{stage, e.what(), kIoFailure};
  } catch (const NumericError& e) {
    throw StageFailure{stage, e.what(), kNumericFailure};
  } catch (const std::exception& e) {
    throw StageFailure{stage, e.what(), kConfigFailure};
  }
}

std::string format_double(double v);

}  // namespace qesk::app
