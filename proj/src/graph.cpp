#include "reprolint/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace reprolint {

std::optional<std::size_t> BuildGraph::index_of(NodeKind kind, std::string_view path) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), GraphNode{kind, std::string(path)});
  if (it == nodes.end() || it->kind != kind || it->path != path) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<std::string> BuildGraph::scripts() const {
  std::vector<std::string> out;
  for (const auto& n : nodes) {
    if (n.kind == NodeKind::Script) out.push_back(n.path);
  }
  return out;
}

BuildGraph build_graph(const std::vector<ScriptFacts>& facts, const ProjectDir& /*project*/) {
  std::set<GraphNode> nodes;
  std::vector<std::pair<GraphNode, GraphNode>> edges;
  for (const auto& f : facts) {
    GraphNode script{NodeKind::Script, f.script};
    nodes.insert(script);
    for (const auto& ref : f.path_refs) {
      auto target = resolve_ref(f.script, ref);
      if (!target || *target == ".") continue;
      GraphNode file{NodeKind::File, *target};
      nodes.insert(file);
      if (ref.io == IoKind::Write) {
        edges.emplace_back(script, file);
      } else {
        edges.emplace_back(file, script);
      }
    }
  }

  BuildGraph graph;
  graph.nodes.assign(nodes.begin(), nodes.end());
  for (const auto& [from, to] : edges) {
    graph.edges.emplace_back(*graph.index_of(from.kind, from.path), *graph.index_of(to.kind, to.path));
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
  return graph;
}

std::vector<GraphNode> find_cycle(const BuildGraph& graph) {
  const std::size_t n = graph.nodes.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : graph.edges) adj[a].push_back(b);

  enum class Color { White, Grey, Black };
  std::vector<Color> color(n, Color::White);
  std::vector<std::size_t> parent(n, n);

  // Iterative DFS; a grey successor closes a cycle.
  for (std::size_t start = 0; start < n; ++start) {
    if (color[start] != Color::White) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    color[start] = Color::Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next == adj[node].size()) {
        color[node] = Color::Black;
        stack.pop_back();
        continue;
      }
      const std::size_t succ = adj[node][next++];
      if (color[succ] == Color::Grey) {
        std::vector<GraphNode> cycle;
        for (std::size_t v = node; v != succ; v = parent[v]) cycle.push_back(graph.nodes[v]);
        cycle.push_back(graph.nodes[succ]);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (color[succ] == Color::White) {
        color[succ] = Color::Grey;
        parent[succ] = node;
        stack.emplace_back(succ, 0);
      }
    }
  }
  return {};
}

std::vector<std::pair<std::string, std::string>> script_dependencies(const BuildGraph& graph) {
  std::map<std::size_t, std::vector<std::size_t>> writers;  // file -> scripts writing it
  std::map<std::size_t, std::vector<std::size_t>> readers;  // file -> scripts reading it
  for (auto [a, b] : graph.edges) {
    if (graph.nodes[a].kind == NodeKind::Script) {
      writers[b].push_back(a);
    } else {
      readers[a].push_back(b);
    }
  }
  std::set<std::pair<std::string, std::string>> deps;
  for (const auto& [file, ws] : writers) {
    auto it = readers.find(file);
    if (it == readers.end()) continue;
    for (auto w : ws) {
      for (auto r : it->second) {
        if (w != r) deps.emplace(graph.nodes[w].path, graph.nodes[r].path);
      }
    }
  }
  return {deps.begin(), deps.end()};
}

std::optional<std::vector<std::string>> unique_script_order(const BuildGraph& graph) {
  const auto scripts = graph.scripts();  // sorted
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < scripts.size(); ++i) index[scripts[i]] = i;

  std::vector<std::vector<std::size_t>> adj(scripts.size());
  std::vector<std::size_t> indegree(scripts.size(), 0);
  for (const auto& [from, to] : script_dependencies(graph)) {
    adj[index[from]].push_back(index[to]);
    ++indegree[index[to]];
  }

  // Kahn's algorithm; uniqueness means exactly one ready script each step.
  std::vector<std::string> order;
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    if (ready.size() != 1) return std::nullopt;
    const std::size_t s = ready.back();
    ready.pop_back();
    order.push_back(scripts[s]);
    for (auto t : adj[s]) {
      if (--indegree[t] == 0) ready.push_back(t);
    }
  }
  if (order.size() != scripts.size()) return std::nullopt;
  return order;
}

std::optional<long long> numeric_prefix(std::string_view script) {
  std::string_view name = base_name(script);
  std::size_t n = 0;
  while (n < name.size() && n < 18 && std::isdigit(static_cast<unsigned char>(name[n]))) ++n;
  if (n == 0) return std::nullopt;
  return std::stoll(std::string(name.substr(0, n)));
}

}  // namespace reprolint
