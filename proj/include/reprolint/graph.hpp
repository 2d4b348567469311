#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reprolint/project.hpp"
#include "reprolint/scanner.hpp"

namespace reprolint {

enum class NodeKind { Script, File };

struct GraphNode {
  NodeKind kind;
  std::string path;

  bool operator==(const GraphNode&) const = default;
  auto operator<=>(const GraphNode&) const = default;
};

/// Bipartite data-flow graph: script -> file for writes, file -> script for
/// reads. A script sourced by another script appears twice, once per kind.
struct BuildGraph {
  std::vector<GraphNode> nodes;  // sorted, unique
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted, unique

  std::optional<std::size_t> index_of(NodeKind kind, std::string_view path) const;
  std::vector<std::string> scripts() const;
  bool operator==(const BuildGraph&) const = default;
};

/// Every scanned script becomes a node, whether or not it does any I/O.
/// Only references that resolve inside the project become edges; unknown
/// io counts as a read.
BuildGraph build_graph(const std::vector<ScriptFacts>& facts, const ProjectDir& project);

/// Nodes of one cycle in edge order, empty if the graph is acyclic.
std::vector<GraphNode> find_cycle(const BuildGraph& graph);

/// Script-to-script dependencies (a writes a file that b reads, a != b).
std::vector<std::pair<std::string, std::string>> script_dependencies(const BuildGraph& graph);

/// The topological order of scripts if it is the only one, else nullopt.
/// Also nullopt when the script dependencies contain a cycle.
std::optional<std::vector<std::string>> unique_script_order(const BuildGraph& graph);

/// Leading decimal digits of the file name ("01_clean.R" -> 1).
std::optional<long long> numeric_prefix(std::string_view script);

}  // namespace reprolint
