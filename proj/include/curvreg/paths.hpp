#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace curvreg {

enum class PathKind { shortest, walk };
enum class PathSource { all_pairs, sampled_pairs, random_walk };

/// A simple (acyclic) vertex sequence traced through the graph. Shortest paths
/// are simple by construction; walks are truncated at first revisit.
struct PolygonalPath {
  std::vector<int> nodes;
  PathKind kind = PathKind::shortest;

  int length() const { return static_cast<int>(nodes.size()) - 1; }  // edge count
  int interior_count() const {
    return std::max(0, static_cast<int>(nodes.size()) - 2);
  }
};

/// A batch of paths plus bookkeeping about how it was produced.
struct PathSet {
  std::vector<PolygonalPath> paths;
  PathSource source = PathSource::all_pairs;
  int skipped = 0;  // pairs unreachable / walks too short to keep

  /// FNV-1a over the node sequences; used to assert path-cache identity
  /// between training phases.
  std::uint64_t content_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(paths.size()));
    for (const auto& p : paths) {
      mix(static_cast<std::uint64_t>(p.nodes.size()));
      for (int v : p.nodes) mix(static_cast<std::uint64_t>(v));
    }
    return h;
  }

  long long total_interior() const {
    long long t = 0;
    for (const auto& p : paths) t += p.interior_count();
    return t;
  }
};

/// BFS tree rooted at src. Neighbor expansion in ascending id order makes the
/// parent pointers trace the lexicographically smallest shortest path to every
/// reachable node.
struct BfsTree {
  std::vector<int> parent;  // -1 at root / unreachable
  std::vector<int> dist;    // -1 unreachable
};

inline BfsTree bfs_tree(const Graph& g, int src) {
  if (src < 0 || src >= g.n) throw std::invalid_argument("bfs_tree: source out of range");
  BfsTree t;
  t.parent.assign(g.n, -1);
  t.dist.assign(g.n, -1);
  t.dist[src] = 0;
  std::queue<int> q;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.adj[u])  // adj is sorted, so discovery honors id order
      if (t.dist[v] < 0) {
        t.dist[v] = t.dist[u] + 1;
        t.parent[v] = u;
        q.push(v);
      }
  }
  return t;
}

/// Extracts src->dst from a BFS tree; nullopt when dst is unreachable.
inline std::optional<PolygonalPath> path_from_tree(const BfsTree& t, int src, int dst) {
  if (t.dist[dst] < 0) return std::nullopt;
  PolygonalPath p;
  p.kind = PathKind::shortest;
  p.nodes.resize(t.dist[dst] + 1);
  int v = dst;
  for (int i = t.dist[dst]; i >= 0; --i) {
    p.nodes[i] = v;
    v = t.parent[v];
  }
  if (p.nodes.front() != src) throw std::logic_error("path_from_tree: root mismatch");
  return p;
}

/// Lexicographically smallest shortest path between two distinct nodes.
inline std::optional<PolygonalPath> shortest_path(const Graph& g, int src, int dst) {
  if (src < 0 || src >= g.n || dst < 0 || dst >= g.n)
    throw std::invalid_argument("shortest_path: endpoint out of range");
  if (src == dst) throw std::invalid_argument("shortest_path: endpoints must differ");
  return path_from_tree(bfs_tree(g, src), src, dst);
}

/// Truncates a walk just before its first repeated vertex, keeping the prefix
/// in which every vertex is distinct.
inline std::optional<PolygonalPath> make_acyclic(const PolygonalPath& p) {
  std::set<int> seen;
  PolygonalPath out;
  out.kind = p.kind;
  for (int v : p.nodes) {
    if (!seen.insert(v).second) break;
    out.nodes.push_back(v);
  }
  if (out.nodes.size() < 2) return std::nullopt;
  return out;
}

/// Shortest paths for an explicit list of ordered (src, dst) pairs.
/// Unreachable pairs are skipped and counted. BFS trees are reused across
/// consecutive pairs sharing a source.
inline PathSet pair_paths(const Graph& g, const std::vector<std::pair<int, int>>& pairs,
                          PathSource source) {
  PathSet ps;
  ps.source = source;
  int cached_src = -1;
  BfsTree tree;
  for (auto [s, d] : pairs) {
    if (s < 0 || s >= g.n || d < 0 || d >= g.n)
      throw std::invalid_argument("pair_paths: endpoint out of range");
    if (s == d) throw std::invalid_argument("pair_paths: pair endpoints must differ");
    if (s != cached_src) {
      tree = bfs_tree(g, s);
      cached_src = s;
    }
    auto p = path_from_tree(tree, s, d);
    if (p)
      ps.paths.push_back(std::move(*p));
    else
      ++ps.skipped;
  }
  return ps;
}

/// All ordered pairs over a node subset (or the whole graph when `nodes` is
/// empty), in ascending (src, dst) order.
inline std::vector<std::pair<int, int>> all_ordered_pairs(const Graph& g,
                                                          const std::vector<int>& nodes = {}) {
  std::vector<int> ids = nodes;
  if (ids.empty()) {
    ids.resize(g.n);
    for (int i = 0; i < g.n; ++i) ids[i] = i;
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(ids.size() * (ids.size() - 1));
  for (int a : ids)
    for (int b : ids)
      if (a != b) pairs.emplace_back(a, b);
  return pairs;
}

/// All unordered pairs (src < dst) over a node subset (or the whole graph),
/// ascending. One path per pair is what the curvature penalty consumes.
inline std::vector<std::pair<int, int>> all_unordered_pairs(const Graph& g,
                                                            const std::vector<int>& nodes = {}) {
  std::vector<int> ids = nodes;
  if (ids.empty()) {
    ids.resize(g.n);
    for (int i = 0; i < g.n; ++i) ids[i] = i;
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(ids.size() * (ids.size() - 1) / 2);
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b)
      pairs.emplace_back(std::min(ids[a], ids[b]), std::max(ids[a], ids[b]));
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

/// Samples `size` distinct nodes without replacement (partial Fisher-Yates),
/// returned sorted ascending.
inline std::vector<int> sample_node_set(const Graph& g, int size, std::uint64_t seed) {
  if (size < 2) throw std::invalid_argument("sample_node_set: need at least 2 nodes");
  if (size > g.n) throw std::invalid_argument("sample_node_set: sample exceeds node count");
  std::vector<int> pool(g.n);
  for (int i = 0; i < g.n; ++i) pool[i] = i;
  Rng rng(seed);
  for (int i = 0; i < size; ++i) {
    int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n - i)));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + size);
  std::sort(out.begin(), out.end());
  return out;
}

/// Random-walk generation strategy. `biased` switches on node2vec-style
/// second-order transition weights with return parameter p and in-out
/// parameter q; otherwise steps are uniform over neighbors.
struct WalkStrategy {
  bool biased = false;
  double p = 1.0;
  double q = 1.0;
};

namespace detail {

/// One walk from `start`, length cap `walk_length` vertices. Each walk draws
/// from its own generator so corpus content is independent of generation
/// order.
inline PolygonalPath one_walk(const Graph& g, int start, int walk_length,
                              const WalkStrategy& st, Rng& rng) {
  PolygonalPath w;
  w.kind = PathKind::walk;
  w.nodes.push_back(start);
  if (g.degree(start) == 0) return w;
  int cur = start, prev = -1;
  while (static_cast<int>(w.nodes.size()) < walk_length) {
    const auto& nbrs = g.adj[cur];
    int nxt;
    if (!st.biased || prev < 0) {
      nxt = nbrs[rng.next_index(static_cast<int>(nbrs.size()))];
    } else {
      // node2vec weights relative to prev: 1/p back, 1 at distance 1, 1/q else.
      std::vector<double> w8(nbrs.size());
      double total = 0;
      for (size_t k = 0; k < nbrs.size(); ++k) {
        int x = nbrs[k];
        double wt;
        if (x == prev)
          wt = 1.0 / st.p;
        else if (g.has_edge(x, prev))
          wt = 1.0;
        else
          wt = 1.0 / st.q;
        w8[k] = wt;
        total += wt;
      }
      double r = rng.next_double() * total;
      size_t k = 0;
      for (; k + 1 < nbrs.size(); ++k) {
        r -= w8[k];
        if (r <= 0) break;
      }
      nxt = nbrs[k];
    }
    w.nodes.push_back(nxt);
    prev = cur;
    cur = nxt;
  }
  return w;
}

}  // namespace detail

/// `walks_per_node` walks from every node, each up to `walk_length` vertices,
/// truncated to their acyclic prefix. Walks that end up shorter than one edge
/// (isolated starts, immediate revisits) are dropped and counted in `skipped`.
inline PathSet random_walks(const Graph& g, int walks_per_node, int walk_length,
                            const WalkStrategy& st, std::uint64_t seed) {
  if (walks_per_node < 1) throw std::invalid_argument("random_walks: walks_per_node must be >= 1");
  if (walk_length < 2) throw std::invalid_argument("random_walks: walk_length must be >= 2");
  if (st.biased && (st.p <= 0 || st.q <= 0))
    throw std::invalid_argument("random_walks: p and q must be positive");
  PathSet ps;
  ps.source = PathSource::random_walk;
  for (int v = 0; v < g.n; ++v) {
    for (int w = 0; w < walks_per_node; ++w) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(w)));
      auto walk = detail::one_walk(g, v, walk_length, st, rng);
      auto acyclic = make_acyclic(walk);
      if (acyclic)
        ps.paths.push_back(std::move(*acyclic));
      else
        ++ps.skipped;
    }
  }
  return ps;
}

}  // namespace curvreg
