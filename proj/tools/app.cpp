#include "app.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "qesk/features.hpp"
#include "qesk/graphio.hpp"
#include "qesk/parallel.hpp"
#include "qesk/pipeline.hpp"
#include "qesk/spectral.hpp"

namespace qesk::app {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct GramRun {
  GramMatrix gram;
  LabelPolicy policy = LabelPolicy::Constant;
  std::vector<std::size_t> codebook_sizes;
};

DatasetBundle load(const RunConfig& config) {
  return run_stage("parse", [&] {
    auto bundle = parse_tu_dataset(config.dataset_dir, config.dataset_name);
    spdlog::info("{}: {} graphs, vertex labels: {}", bundle.name, bundle.size(),
                 bundle.has_vertex_attributes ? "yes" : "no");
    return bundle;
  });
}

GramRun build_gram(const DatasetBundle& bundle, const RunConfig& config) {
  GramRun run;
  run.policy = config.label_policy.value_or(default_policy(bundle));
  const auto workers = config.worker_count;
  const auto wl = run_stage("wl", [&] { return run_wl(bundle, config.i_max, run.policy, workers); });
  for (std::size_t i = 1; i <= config.i_max; ++i) run.codebook_sizes.push_back(wl.codebook.size(i));

  if (config.kernel_kind == KernelKind::Qesk) {
    const auto entropies = run_stage(
        "spectral", [&] { return dataset_entropies(bundle, config.eig_group_tol, workers); });
    const auto features =
        run_stage("features", [&] { return entropic_features(wl.labels, entropies, workers); });
    run.gram = run_stage(
        "gram", [&] { return qesk_gram(features, config.i_max, config.gamma, workers); });
  } else {
    const auto features = run_stage("features", [&] { return count_features(wl.labels, workers); });
    const bool normalize = config.kernel_kind == KernelKind::WlskNormalized;
    run.gram = run_stage(
        "gram", [&] { return wlsk_gram(features, config.i_max, normalize, workers); });
  }
  return run;
}

Json config_json(const RunConfig& config, const char* command) {
  Json j;
  j["tool"] = "qesk";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["dataset_dir"] = config.dataset_dir.string();
  j["dataset_name"] = config.dataset_name;
  j["kernel_kind"] = std::string(to_string(config.kernel_kind));
  j["i_max"] = config.i_max;
  j["label_policy"] =
      config.label_policy ? std::string(to_string(*config.label_policy)) : std::string("auto");
  j["eig_group_tol"] = config.eig_group_tol;
  j["gamma"] = config.gamma;
  j["c_grid"] = config.c_grid;
  j["folds"] = config.folds;
  j["repetitions"] = config.repetitions;
  j["seed"] = config.seed;
  j["worker_count"] = config.worker_count;
  j["psd_tol"] = config.psd_tol;
  j["gram_file"] = config.gram_file ? config.gram_file->string() : std::string();
  j["output_path"] = config.output_path.string();
  return j;
}

Json psd_json(const PsdResult& psd, double tol) {
  return Json{{"min_eigenvalue", psd.min_eigenvalue},
              {"max_eigenvalue", psd.max_eigenvalue},
              {"tolerance", tol},
              {"pass", psd.pass}};
}

fs::path write_manifest(const fs::path& output, const Json& manifest) {
  fs::path path = output;
  path += ".manifest.json";
  run_stage("write", [&] {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write " + path.string());
    out << manifest.dump(2) << '\n';
  });
  return path;
}

fs::path output_or(const RunConfig& config, const char* suffix) {
  if (!config.output_path.empty()) return config.output_path;
  return config.dataset_name + "_" + std::string(to_string(config.kernel_kind)) + suffix;
}

PsdResult check_psd(const GramMatrix& gram, double tol) {
  auto psd = run_stage("psd", [&] { return psd_check(gram.values, tol); });
  if (!psd.pass) {
    spdlog::error("Gram matrix is not positive semidefinite: min eigenvalue {} (max {})",
                  psd.min_eigenvalue, psd.max_eigenvalue);
  }
  return psd;
}

}  // namespace

void RunConfig::validate() const {
  if (i_max < 1) throw ConfigError("imax must be >= 1");
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (!(eig_group_tol > 0.0)) throw ConfigError("eig-tol must be > 0");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (c_grid.empty()) throw ConfigError("c-grid must not be empty");
  for (const double c : c_grid) {
    if (!(c > 0.0)) throw ConfigError("c-grid values must be > 0");
  }
  if (dataset_name.empty()) throw ConfigError("dataset name is required");
}

fs::path default_dataset_dir(const std::string& name) {
  if (const char* root = std::getenv(kDataRootEnv); root && *root) return fs::path(root) / name;
  return fs::path("data") / name;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CommandResult cmd_kernel(const RunConfig& config) {
  run_stage("config", [&] { config.validate(); });
  const auto bundle = load(config);
  const auto run = build_gram(bundle, config);
  const auto psd = check_psd(run.gram, config.psd_tol);

  CommandResult result;
  result.output = output_or(config, ".gram.csv");
  run_stage("write", [&] { write_gram(result.output, run.gram); });

  auto manifest = config_json(config, "kernel");
  manifest["graphs"] = bundle.size();
  manifest["resolved_label_policy"] = std::string(to_string(run.policy));
  manifest["codebook_sizes"] = run.codebook_sizes;
  manifest["psd"] = psd_json(psd, config.psd_tol);
  manifest["gram_output"] = result.output.string();
  result.manifest = write_manifest(result.output, manifest);
  result.exit_code = psd.pass ? kOk : kPsdFailure;
  return result;
}

CommandResult cmd_evaluate(const RunConfig& config) {
  run_stage("config", [&] { config.validate(); });
  const auto bundle = load(config);

  GramRun run;
  if (config.gram_file) {
    run.gram = run_stage("load-gram", [&] {
      auto g = read_gram(*config.gram_file);
      if (g.size() != bundle.size()) {
        throw ConfigError("gram file has " + std::to_string(g.size()) + " rows, dataset has " +
                          std::to_string(bundle.size()) + " graphs");
      }
      return g;
    });
  } else {
    run = build_gram(bundle, config);
  }
  const auto psd = check_psd(run.gram, config.psd_tol);

  CvOptions cv;
  cv.folds = config.folds;
  cv.repetitions = config.repetitions;
  cv.c_grid = config.c_grid;
  cv.seed = config.seed;
  cv.workers = config.worker_count;
  auto report =
      run_stage("evaluate", [&] { return cross_validate(run.gram.values, bundle.class_labels, cv); });
  report.dataset = bundle.name;
  report.kernel_kind = std::string(to_string(run.gram.kind));
  report.i_max = run.gram.i_max;
  spdlog::info("{} {}: mean accuracy {:.4f} +- {:.4f}", report.dataset, report.kernel_kind,
               report.mean, report.std_error);

  CommandResult result;
  result.output = output_or(config, ".cv.json");
  run_stage("write", [&] { write_report(result.output, report); });

  auto manifest = config_json(config, "evaluate");
  manifest["graphs"] = bundle.size();
  if (!config.gram_file) {
    manifest["resolved_label_policy"] = std::string(to_string(run.policy));
    manifest["codebook_sizes"] = run.codebook_sizes;
  }
  manifest["psd"] = psd_json(psd, config.psd_tol);
  manifest["report_output"] = result.output.string();
  result.manifest = write_manifest(result.output, manifest);
  result.exit_code = psd.pass ? kOk : kPsdFailure;
  return result;
}

CommandResult cmd_inspect(const RunConfig& config, std::size_t graph_index, std::ostream& out) {
  run_stage("config", [&] { config.validate(); });
  const auto bundle = load(config);
  if (graph_index >= bundle.size()) {
    throw StageFailure{"inspect",
                       "graph index " + std::to_string(graph_index) + " out of range [0, " +
                           std::to_string(bundle.size()) + ")",
                       kConfigFailure};
  }
  const Graph& graph = bundle.graphs[graph_index];
  const auto policy = config.label_policy.value_or(default_policy(bundle));
  const auto wl =
      run_stage("wl", [&] { return run_wl(bundle, config.i_max, policy, config.worker_count); });
  const auto amm = run_stage("spectral",
                             [&] { return average_mixing_matrix(graph, config.eig_group_tol); });
  const auto entropies = vertex_entropies(amm);
  const auto& levels = wl.labels.graph(graph_index);
  const auto entropic = run_stage(
      "features", [&] { return entropic_representation(levels, entropies.values); });
  const auto counts = count_representation(levels);

  out << "# graph=" << graph_index << " dataset=" << bundle.name
      << " vertices=" << graph.vertex_count() << " edges=" << graph.edge_count()
      << " imax=" << config.i_max << " label_policy=" << to_string(policy) << '\n';
  out << "[average_mixing_matrix]\n";
  for (Eigen::Index r = 0; r < amm.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < amm.values.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(amm.values(r, c));
    }
    out << '\n';
  }
  out << "[vertex_entropies]\n";
  for (std::size_t v = 0; v < entropies.values.size(); ++v) {
    out << v << ", " << format_double(entropies.values[v]) << '\n';
  }
  out << "[labels]\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out << i + 1;
    for (const Code c : levels[i]) out << ", " << c;
    out << '\n';
  }
  out << "[entropic_features]\n";
  for (std::size_t i = 0; i < entropic.levels.size(); ++i) {
    for (const auto& [code, w] : entropic.levels[i]) {
      out << graph_index << ", " << i + 1 << ", " << code << ", " << format_double(w) << '\n';
    }
  }
  out << "[count_features]\n";
  for (std::size_t i = 0; i < counts.levels.size(); ++i) {
    for (const auto& [code, n] : counts.levels[i]) {
      out << graph_index << ", " << i + 1 << ", " << code << ", " << n << '\n';
    }
  }
  return {};
}

}  // namespace qesk::app
