#include "qesk/graphio.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <string_view>
#include <vector>

#include <spdlog/spdlog.h>

#include "qesk/error.hpp"

namespace qesk {
namespace {

namespace fs = std::filesystem;

struct Record {
  std::size_t line;
  std::vector<std::int64_t> fields;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_line(const fs::path& file, std::size_t line, const std::string& what) {
  throw FormatError(file.filename().string() + ":" + std::to_string(line) + ": " + what);
}

// Reads a file of comma-separated integers, one record per line. Trailing
// blank lines are ignored; a blank line followed by data is an error.
std::vector<Record> read_records(const fs::path& file, std::size_t arity) {
  std::ifstream in(file);
  if (!in) throw LoadError("cannot open " + file.string());

  std::vector<Record> records;
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> blank_at;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) {
      if (!blank_at) blank_at = line_no;
      continue;
    }
    if (blank_at) bad_line(file, *blank_at, "blank line inside data");

    Record rec{line_no, {}};
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      const auto field = trim(rest.substr(0, comma));
      std::int64_t value = 0;
      const auto* end = field.data() + field.size();
      const auto [ptr, ec] = std::from_chars(field.data(), end, value);
      if (field.empty() || ec != std::errc() || ptr != end) {
        bad_line(file, line_no, "expected integer, got '" + std::string(field) + "'");
      }
      rec.fields.push_back(value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (rec.fields.size() != arity) {
      bad_line(file, line_no,
               "expected " + std::to_string(arity) + " field(s), got " +
                   std::to_string(rec.fields.size()));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

fs::path member(const fs::path& dir, const std::string& name, const char* suffix) {
  return dir / (name + suffix);
}

}  // namespace

DatasetBundle parse_tu_dataset(const fs::path& directory, const std::string& name) {
  const auto edges_file = member(directory, name, "_A.txt");
  const auto indicator_file = member(directory, name, "_graph_indicator.txt");
  const auto labels_file = member(directory, name, "_graph_labels.txt");
  const auto node_labels_file = member(directory, name, "_node_labels.txt");
  for (const auto& f : {edges_file, indicator_file, labels_file}) {
    if (!fs::exists(f)) throw LoadError("missing dataset file " + f.string());
  }

  const auto graph_labels = read_records(labels_file, 1);
  const auto indicator = read_records(indicator_file, 1);
  const std::size_t graph_count = graph_labels.size();
  const std::size_t total_vertices = indicator.size();

  // Global vertex -> (graph, local index).
  std::vector<std::size_t> owner(total_vertices);
  std::vector<VertexId> local(total_vertices);
  std::vector<std::size_t> sizes(graph_count, 0);
  for (std::size_t v = 0; v < total_vertices; ++v) {
    const auto gid = indicator[v].fields[0];
    if (gid < 1 || static_cast<std::size_t>(gid) > graph_count) {
      bad_line(indicator_file, indicator[v].line,
               "graph id " + std::to_string(gid) + " outside [1, " +
                   std::to_string(graph_count) + "]");
    }
    owner[v] = static_cast<std::size_t>(gid - 1);
    local[v] = static_cast<VertexId>(sizes[owner[v]]++);
  }

  std::optional<std::vector<Record>> node_labels;
  if (fs::exists(node_labels_file)) {
    node_labels = read_records(node_labels_file, 1);
    if (node_labels->size() != total_vertices) {
      const auto line = node_labels->size() < total_vertices
                            ? (node_labels->empty() ? 1 : node_labels->back().line + 1)
                            : (*node_labels)[total_vertices].line;
      bad_line(node_labels_file, line,
               std::to_string(node_labels->size()) + " node labels for " +
                   std::to_string(total_vertices) + " vertices");
    }
  }

  std::vector<std::vector<Edge>> edges(graph_count);
  std::size_t dropped = 0;
  for (const auto& rec : read_records(edges_file, 2)) {
    const auto a = rec.fields[0];
    const auto b = rec.fields[1];
    for (const auto x : {a, b}) {
      if (x < 1 || static_cast<std::size_t>(x) > total_vertices) {
        bad_line(edges_file, rec.line,
                 "vertex " + std::to_string(x) + " is not assigned to any graph");
      }
    }
    const auto u = static_cast<std::size_t>(a - 1);
    const auto v = static_cast<std::size_t>(b - 1);
    if (owner[u] != owner[v]) {
      bad_line(edges_file, rec.line, "edge joins vertices of different graphs");
    }
    if (u == v) {
      ++dropped;
      continue;
    }
    edges[owner[u]].emplace_back(local[u], local[v]);
  }
  if (dropped > 0) spdlog::warn("{}: dropped {} self-loop edge(s)", name, dropped);

  std::vector<std::vector<std::int64_t>> attrs;
  if (node_labels) {
    attrs.resize(graph_count);
    for (std::size_t g = 0; g < graph_count; ++g) attrs[g].resize(sizes[g]);
    for (std::size_t v = 0; v < total_vertices; ++v) {
      attrs[owner[v]][local[v]] = (*node_labels)[v].fields[0];
    }
  }

  DatasetBundle bundle;
  bundle.name = name;
  bundle.has_vertex_attributes = node_labels.has_value();
  bundle.dropped_self_loops = dropped;
  bundle.graphs.reserve(graph_count);
  bundle.class_labels.reserve(graph_count);
  for (std::size_t g = 0; g < graph_count; ++g) {
    std::optional<std::vector<std::int64_t>> a;
    if (node_labels) a = std::move(attrs[g]);
    bundle.graphs.emplace_back(sizes[g], std::move(edges[g]), std::move(a));
    bundle.class_labels.push_back(static_cast<int>(graph_labels[g].fields[0]));
  }
  return bundle;
}

void write_tu_dataset(const DatasetBundle& bundle, const fs::path& directory) {
  fs::create_directories(directory);
  auto open = [&](const char* suffix) {
    std::ofstream out(member(directory, bundle.name, suffix));
    if (!out) throw LoadError("cannot write " + member(directory, bundle.name, suffix).string());
    return out;
  };
  if (bundle.class_labels.size() != bundle.graphs.size()) {
    throw ContractViolation("write_tu_dataset: class label count differs from graph count");
  }

  auto edges = open("_A.txt");
  auto indicator = open("_graph_indicator.txt");
  auto labels = open("_graph_labels.txt");
  const bool with_attrs =
      bundle.has_vertex_attributes &&
      std::all_of(bundle.graphs.begin(), bundle.graphs.end(),
                  [](const Graph& g) { return g.attributes().has_value(); });
  std::ofstream node_labels;
  if (with_attrs) node_labels = open("_node_labels.txt");

  std::size_t offset = 1;
  for (std::size_t g = 0; g < bundle.graphs.size(); ++g) {
    const auto& graph = bundle.graphs[g];
    labels << bundle.class_labels[g] << '\n';
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
      indicator << g + 1 << '\n';
      if (with_attrs) node_labels << (*graph.attributes())[v] << '\n';
    }
    for (const auto& [u, v] : graph.edges()) {
      edges << offset + u << ", " << offset + v << '\n';
      edges << offset + v << ", " << offset + u << '\n';
    }
    offset += graph.vertex_count();
  }
}

}  // namespace qesk
