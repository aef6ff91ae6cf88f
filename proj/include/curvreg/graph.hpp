#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace curvreg {

/// Undirected, unweighted graph over contiguous internal ids 0..n-1.
/// Directed input edges are symmetrized at ingestion; self-loops and
/// duplicates are dropped.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;   // canonical i < j, sorted
  std::vector<std::vector<int>> adj;        // sorted neighbor lists
  std::vector<std::string> id_of;           // internal id -> original label
  std::unordered_map<std::string, int> id_map;  // original label -> internal id

  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  bool has_edge(int i, int j) const {
    if (i < 0 || j < 0 || i >= n || j >= n) return false;
    const auto& a = adj[i].size() <= adj[j].size() ? adj[i] : adj[j];
    int t = adj[i].size() <= adj[j].size() ? j : i;
    return std::binary_search(a.begin(), a.end(), t);
  }

  long long num_edges() const { return static_cast<long long>(edges.size()); }

  /// Builds a graph from raw edges; dedups, drops self-loops, validates range.
  /// `labels` may be empty, in which case ids name themselves.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& raw,
                          std::vector<std::string> labels = {}) {
    if (n <= 0) throw std::invalid_argument("Graph: node count must be positive");
    std::set<std::pair<int, int>> dedup;
    for (auto [a, b] : raw) {
      if (a < 0 || b < 0 || a >= n || b >= n)
        throw std::invalid_argument("Graph: edge endpoint out of range");
      if (a == b) continue;
      dedup.emplace(std::min(a, b), std::max(a, b));
    }
    Graph g;
    g.n = n;
    g.edges.assign(dedup.begin(), dedup.end());
    g.adj.assign(n, {});
    for (auto [a, b] : g.edges) {
      g.adj[a].push_back(b);
      g.adj[b].push_back(a);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    if (labels.empty()) {
      g.id_of.reserve(n);
      for (int i = 0; i < n; ++i) g.id_of.push_back(std::to_string(i));
    } else {
      if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("Graph: label count does not match node count");
      g.id_of = std::move(labels);
    }
    for (int i = 0; i < g.n; ++i) g.id_map.emplace(g.id_of[i], i);
    return g;
  }
};

/// Node id -> class label; coverage may be partial (-1 means unlabeled).
struct LabelMap {
  std::vector<int> label_of;  // size n, -1 for unlabeled
  int num_classes = 0;

  std::vector<int> labeled_ids() const {
    std::vector<int> ids;
    for (int i = 0; i < static_cast<int>(label_of.size()); ++i)
      if (label_of[i] >= 0) ids.push_back(i);
    return ids;
  }
};

namespace detail {

inline bool is_comment_or_blank(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

inline bool split_two_tokens(const std::string& line, std::string& a, std::string& b) {
  std::istringstream ss(line);
  std::string extra;
  if (!(ss >> a >> b)) return false;
  if (ss >> extra) return false;
  return true;
}

}  // namespace detail

/// Parses an edge list: one edge per line, two whitespace-separated node
/// tokens; '#'-prefixed lines are comments. Ids are assigned in order of first
/// appearance.
inline Graph load_edge_list(std::istream& is) {
  std::unordered_map<std::string, int> id_map;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  auto intern = [&](const std::string& tok) {
    auto it = id_map.find(tok);
    if (it != id_map.end()) return it->second;
    int id = static_cast<int>(labels.size());
    id_map.emplace(tok, id);
    labels.push_back(tok);
    return id;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    std::string a, b;
    if (!detail::split_two_tokens(line, a, b))
      throw std::runtime_error("edge list: parse error at line " + std::to_string(lineno) +
                               ": expected two node tokens");
    // interned one at a time: first-appearance order must follow the file
    const int ia = intern(a);
    const int ib = intern(b);
    edges.emplace_back(ia, ib);
  }
  // Self-loop-only files end up with nodes but no edges; both are rejected.
  bool any = false;
  for (auto [a, b] : edges)
    if (a != b) { any = true; break; }
  if (!any) throw std::runtime_error("edge list: no usable edges");
  // labels must be measured before it is moved into the call
  const int n = static_cast<int>(labels.size());
  return Graph::from_edges(n, edges, std::move(labels));
}

/// Parses "node_token label_token" lines against an existing graph. Class
/// labels are densified to 0..C-1 in order of first appearance.
inline LabelMap load_labels(std::istream& is, const Graph& g) {
  LabelMap lm;
  lm.label_of.assign(g.n, -1);
  std::unordered_map<std::string, int> classes;
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    std::string node, cls;
    if (!detail::split_two_tokens(line, node, cls))
      throw std::runtime_error("label file: parse error at line " + std::to_string(lineno) +
                               ": expected \"node_token label_token\"");
    auto it = g.id_map.find(node);
    if (it == g.id_map.end())
      throw std::runtime_error("label file: unknown node token \"" + node + "\" at line " +
                               std::to_string(lineno));
    auto ct = classes.find(cls);
    int c;
    if (ct == classes.end()) {
      c = static_cast<int>(classes.size());
      classes.emplace(cls, c);
    } else {
      c = ct->second;
    }
    lm.label_of[it->second] = c;
    any = true;
  }
  if (!any) throw std::runtime_error("label file: no labels found");
  lm.num_classes = static_cast<int>(classes.size());
  return lm;
}

/// Induced subgraph on the largest connected component, ids remapped in
/// ascending old-id order. Ties go to the component containing the smallest
/// internal id. `old_to_new`, when given, receives the id mapping (-1 for
/// dropped nodes).
inline Graph largest_connected_component(const Graph& g, std::vector<int>* old_to_new = nullptr) {
  std::vector<int> comp(g.n, -1);
  int ncomp = 0;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.adj[u])
        if (comp[v] < 0) {
          comp[v] = ncomp;
          q.push(v);
        }
    }
    ++ncomp;
  }
  std::vector<int> size(ncomp, 0);
  for (int v = 0; v < g.n; ++v) ++size[comp[v]];
  // Components are numbered by their smallest member, so the first maximal one
  // is also the one containing the smallest id.
  int best = 0;
  for (int c = 1; c < ncomp; ++c)
    if (size[c] > size[best]) best = c;

  std::vector<int> map(g.n, -1);
  std::vector<std::string> labels;
  int next = 0;
  for (int v = 0; v < g.n; ++v)
    if (comp[v] == best) {
      map[v] = next++;
      labels.push_back(g.id_of[v]);
    }
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : g.edges)
    if (map[a] >= 0 && map[b] >= 0) edges.emplace_back(map[a], map[b]);
  if (old_to_new) *old_to_new = map;
  return Graph::from_edges(next, edges, std::move(labels));
}

/// Carries a LabelMap through an id remapping (e.g. after LCC reduction).
inline LabelMap remap_labels(const LabelMap& lm, const std::vector<int>& old_to_new, int new_n) {
  LabelMap out;
  out.label_of.assign(new_n, -1);
  out.num_classes = lm.num_classes;
  for (int v = 0; v < static_cast<int>(lm.label_of.size()); ++v)
    if (old_to_new[v] >= 0) out.label_of[old_to_new[v]] = lm.label_of[v];
  return out;
}

/// Stable content hash of a graph (FNV-1a over n and the sorted edges).
inline std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(g.n));
  for (auto [a, b] : g.edges) {
    mix(static_cast<std::uint64_t>(a));
    mix(static_cast<std::uint64_t>(b));
  }
  return h;
}

inline void save_id_map(std::ostream& os, const Graph& g) {
  for (const auto& label : g.id_of) os << label << '\n';
}

}  // namespace curvreg
