#pragma once

#include <filesystem>
#include <string>

#include "qesk/graph.hpp"

namespace qesk {

/// Loads `<name>_A.txt`, `<name>_graph_indicator.txt`,
/// `<name>_graph_labels.txt` and, when present, `<name>_node_labels.txt`
/// from `directory`. Vertex ids in the files are 1-based and global; the
/// returned graphs use 0-based local ids. Duplicate and reversed edges
/// collapse, self-loops are dropped and counted. Edge label files are
/// ignored.
///
/// Throws LoadError for a missing mandatory file and FormatError (with file
/// name and line number) for malformed content.
DatasetBundle parse_tu_dataset(const std::filesystem::path& directory, const std::string& name);

/// Writes `bundle` in the same four-file layout. Node labels are written only
/// if every graph carries attributes.
void write_tu_dataset(const DatasetBundle& bundle, const std::filesystem::path& directory);

}  // namespace qesk
