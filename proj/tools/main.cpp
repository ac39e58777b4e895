#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "app.hpp"

namespace {

using namespace qesk;
using namespace qesk::app;

struct Flags {
  std::string data_dir;
  std::string dataset;
  std::string kind = "qesk";
  bool normalize = false;
  std::string label_policy = "auto";
  std::string gram_file;
  std::string output;
  std::size_t graph_index = 0;
};

void add_common(CLI::App* cmd, Flags& f, RunConfig& cfg) {
  cmd->add_option("--dataset", f.dataset, "Dataset name, e.g. MUTAG")->required();
  cmd->add_option("--data-dir", f.data_dir,
                  "Directory holding the dataset files (default: $QESK_DATA_ROOT/<dataset>)");
  cmd->add_option("--kind", f.kind, "Kernel: qesk, wlsk or wlsk-normalized")
      ->check(CLI::IsMember({"qesk", "wlsk", "wlsk-normalized"}));
  cmd->add_flag("--normalize", f.normalize, "Cosine-normalise the WLSK Gram matrix");
  cmd->add_option("--imax", cfg.i_max, "WL iterations")->check(CLI::PositiveNumber);
  cmd->add_option("--label-policy", f.label_policy, "auto, given, degree or constant")
      ->check(CLI::IsMember({"auto", "given", "degree", "constant"}));
  cmd->add_option("--eig-tol", cfg.eig_group_tol, "Relative eigenvalue clustering tolerance");
  cmd->add_option("--gamma", cfg.gamma, "Distance scale inside exp(-gamma d)");
  cmd->add_option("--workers", cfg.worker_count, "Worker threads (0 = all cores)");
  cmd->add_option("--psd-tol", cfg.psd_tol, "Relative tolerance of the PSD check");
  cmd->add_option("-o,--output", f.output, "Output file");
}

RunConfig finish(const Flags& f, RunConfig cfg) {
  cfg.dataset_name = f.dataset;
  cfg.dataset_dir = f.data_dir.empty() ? default_dataset_dir(f.dataset) : std::filesystem::path(f.data_dir);
  cfg.kernel_kind = *parse_kernel_kind(f.kind);
  if (f.normalize) {
    if (cfg.kernel_kind == KernelKind::Qesk) throw CLI::ValidationError("--normalize applies to wlsk only");
    cfg.kernel_kind = KernelKind::WlskNormalized;
  }
  if (f.label_policy != "auto") cfg.label_policy = parse_label_policy(f.label_policy);
  if (!f.gram_file.empty()) cfg.gram_file = f.gram_file;
  cfg.output_path = f.output;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_pattern("[%l] %v");
  CLI::App cli{"Quantum entropic subtree and Weisfeiler-Lehman graph kernels"};
  cli.require_subcommand(1);
  cli.fallthrough();
  cli.set_version_flag("--version", kToolVersion);

  Flags flags;
  RunConfig config;
  bool quiet = false;
  cli.add_flag("-q,--quiet", quiet, "Only log warnings and errors");

  auto* kernel = cli.add_subcommand("kernel", "Compute and write a Gram matrix");
  add_common(kernel, flags, config);

  auto* evaluate = cli.add_subcommand("evaluate", "Cross-validate a C-SVM on a Gram matrix");
  add_common(evaluate, flags, config);
  evaluate->add_option("--gram-file", flags.gram_file, "Use a previously written Gram matrix");
  evaluate->add_option("--folds", config.folds, "Cross-validation folds");
  evaluate->add_option("--repetitions", config.repetitions, "Repetitions with fresh shuffles");
  evaluate->add_option("--c-grid", config.c_grid, "Candidate C values")->delimiter(',');
  evaluate->add_option("--seed", config.seed, "Shuffle seed");

  auto* inspect = cli.add_subcommand("inspect", "Dump intermediate quantities for one graph");
  add_common(inspect, flags, config);
  inspect->add_option("--graph-index", flags.graph_index, "0-based graph index")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e);
  }
  if (quiet) spdlog::set_level(spdlog::level::warn);

  try {
    const RunConfig cfg = finish(flags, config);
    CommandResult result;
    if (kernel->parsed()) {
      result = cmd_kernel(cfg);
    } else if (evaluate->parsed()) {
      result = cmd_evaluate(cfg);
    } else if (cfg.output_path.empty()) {
      result = cmd_inspect(cfg, flags.graph_index, std::cout);
    } else {
      std::ofstream out(cfg.output_path);
      if (!out) {
        spdlog::error("write: cannot open {}", cfg.output_path.string());
        return kIoFailure;
      }
      result = cmd_inspect(cfg, flags.graph_index, out);
    }
    if (!result.output.empty()) spdlog::info("wrote {}", result.output.string());
    return result.exit_code;
  } catch (const CLI::ParseError& e) {
    return cli.exit(e);
  } catch (const StageFailure& f) {
    spdlog::error("{}: {}", f.stage, f.message);
    return f.exit_code;
  }
}
