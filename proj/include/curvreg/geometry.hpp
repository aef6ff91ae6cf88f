#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "matrix.hpp"
#include "paths.hpp"

namespace curvreg {

/// Segments shorter than this are treated as zero-length: angles at them are
/// undefined and pairwise ratios against them would blow up.
inline constexpr double kDegenerateEps = 1e-12;

/// Exhaustive pairwise distortion is quadratic in nodes; beyond this cap the
/// caller must supply an explicit pair sample.
inline constexpr int kFullDistortionNodeCap = 3000;

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("euclidean_distance: dimension mismatch");
  double s = 0;
  for (size_t k = 0; k < a.size(); ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Length of the polygonal curve traced by a path through embedded vertices.
inline double geodesic_distance(const Matrix& x, const PolygonalPath& p) {
  if (p.nodes.size() < 2)
    throw std::invalid_argument("geodesic_distance: path needs at least 2 vertices");
  double s = 0;
  for (size_t k = 0; k + 1 < p.nodes.size(); ++k)
    s += euclidean_distance(x.row(p.nodes[k]), x.row(p.nodes[k + 1]));
  return s;
}

/// Cosine of the turning angle at `cur`: the angle between the incoming
/// segment prev->cur and the outgoing segment cur->next. 1 means straight,
/// -1 means a full reversal. nullopt when either segment is degenerate.
inline std::optional<double> turning_cosine(std::span<const double> prev,
                                            std::span<const double> cur,
                                            std::span<const double> next) {
  if (prev.size() != cur.size() || cur.size() != next.size())
    throw std::invalid_argument("turning_cosine: dimension mismatch");
  double uu = 0, vv = 0, uv = 0;
  for (size_t k = 0; k < cur.size(); ++k) {
    double u = cur[k] - prev[k];
    double v = next[k] - cur[k];
    uu += u * u;
    vv += v * v;
    uv += u * v;
  }
  double nu = std::sqrt(uu), nv = std::sqrt(vv);
  if (nu <= kDegenerateEps || nv <= kDegenerateEps) return std::nullopt;
  return std::clamp(uv / (nu * nv), -1.0, 1.0);
}

/// Turning cosine at interior position q of a path (1 <= q <= len-2), read
/// from embedding rows. nullopt when a flanking segment is degenerate.
inline std::optional<double> turning_cosine(const Matrix& x, const PolygonalPath& p, int q) {
  if (q < 1 || q + 1 >= static_cast<int>(p.nodes.size()))
    throw std::invalid_argument("turning_cosine: position is not interior");
  return turning_cosine(x.row(p.nodes[q - 1]), x.row(p.nodes[q]), x.row(p.nodes[q + 1]));
}

/// One measured turning angle: which path, where along it, at which node.
struct CurvatureSample {
  int path_index = 0;
  int position = 0;  // index into the path's node list (interior: 1..len-1)
  int node = 0;
  double cosine = 1.0;
};

/// All turning-angle measurements for a path set under one embedding.
struct CurvatureField {
  std::vector<CurvatureSample> samples;
  std::vector<std::vector<int>> samples_of_node;  // node -> indices into samples
  long long degenerate_skips = 0;

  double mean_cosine() const {
    if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0;
    for (const auto& c : samples) s += c.cosine;
    return s / static_cast<double>(samples.size());
  }
  double min_cosine() const {
    if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    double m = samples[0].cosine;
    for (const auto& c : samples) m = std::min(m, c.cosine);
    return m;
  }
  double max_cosine() const {
    if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    double m = samples[0].cosine;
    for (const auto& c : samples) m = std::max(m, c.cosine);
    return m;
  }
};

inline CurvatureField curvature_field(const Matrix& x, const PathSet& ps, int n_nodes) {
  if (ps.paths.empty()) throw std::invalid_argument("curvature_field: empty path set");
  CurvatureField f;
  f.samples_of_node.assign(n_nodes, {});
  for (int pi = 0; pi < static_cast<int>(ps.paths.size()); ++pi) {
    const auto& p = ps.paths[pi];
    for (int k = 1; k + 1 < static_cast<int>(p.nodes.size()); ++k) {
      auto c = turning_cosine(x.row(p.nodes[k - 1]), x.row(p.nodes[k]), x.row(p.nodes[k + 1]));
      if (!c) {
        ++f.degenerate_skips;
        continue;
      }
      int node = p.nodes[k];
      f.samples_of_node[node].push_back(static_cast<int>(f.samples.size()));
      f.samples.push_back({pi, k, node, *c});
    }
  }
  return f;
}

/// Average multiplicative stretch of the embedding: mean over ordered node
/// pairs (i, j), i != j, of (polygonal length of the graph shortest path from
/// i to j, measured in the embedding) / (straight-line distance between the
/// embedded endpoints). 1 is perfect; larger means detours.
struct DistortionResult {
  double rho = std::numeric_limits<double>::quiet_NaN();
  long long pairs_used = 0;
  long long skipped_unreachable = 0;
  long long skipped_coincident = 0;
};

namespace detail {

/// BFS from src accumulating, for every reachable node, the embedded length
/// of its lexicographically smallest shortest path. dist -1 = unreachable.
inline void bfs_embedded_lengths(const Graph& g, const Matrix& x, int src,
                                 std::vector<int>& dist, std::vector<double>& dm) {
  dist.assign(g.n, -1);
  dm.assign(g.n, 0.0);
  dist[src] = 0;
  std::queue<int> q;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        dm[v] = dm[u] + euclidean_distance(x.row(u), x.row(v));
        q.push(v);
      }
  }
}

}  // namespace detail

/// Uniform ordered-pair sample for distortion on graphs too large for the
/// exhaustive mode. Draws `count` pairs (repeats possible), sorted so BFS
/// trees are shared between pairs with the same source. Default count: 100*n.
inline std::vector<std::pair<int, int>> sample_distortion_pairs(const Graph& g,
                                                                std::uint64_t seed,
                                                                long long count = -1) {
  if (g.n < 2) throw std::invalid_argument("sample_distortion_pairs: need at least 2 nodes");
  if (count < 0) count = 100LL * g.n;
  Rng rng(seed);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(count));
  for (long long k = 0; k < count; ++k) {
    int s = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n)));
    int d = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n - 1)));
    if (d >= s) ++d;
    pairs.emplace_back(s, d);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

/// Distortion over all ordered pairs (pairs == nullptr) or an explicit pair
/// list. Unreachable pairs and pairs of coincident embedded points are skipped
/// and counted. The exhaustive mode refuses graphs larger than
/// kFullDistortionNodeCap; sample pairs instead.
inline DistortionResult distortion(const Matrix& x, const Graph& g,
                                   const std::vector<std::pair<int, int>>* pairs = nullptr) {
  if (x.rows != g.n) throw std::invalid_argument("distortion: embedding/graph size mismatch");
  DistortionResult r;
  double sum = 0;
  std::vector<int> dist;
  std::vector<double> dm;
  auto consume = [&](int src, int dst) {
    if (dist[dst] < 0) {
      ++r.skipped_unreachable;
      return;
    }
    double de = euclidean_distance(x.row(src), x.row(dst));
    if (de <= kDegenerateEps) {
      ++r.skipped_coincident;
      return;
    }
    sum += dm[dst] / de;
    ++r.pairs_used;
  };
  if (pairs == nullptr) {
    if (g.n > kFullDistortionNodeCap)
      throw std::runtime_error(
          "distortion: graph exceeds the exhaustive-pair cap (" +
          std::to_string(kFullDistortionNodeCap) + " nodes); pass a sampled pair list");
    for (int src = 0; src < g.n; ++src) {
      detail::bfs_embedded_lengths(g, x, src, dist, dm);
      for (int dst = 0; dst < g.n; ++dst)
        if (dst != src) consume(src, dst);
    }
  } else {
    int cached_src = -1;
    for (auto [s, d] : *pairs) {
      if (s < 0 || s >= g.n || d < 0 || d >= g.n)
        throw std::invalid_argument("distortion: pair endpoint out of range");
      if (s == d) throw std::invalid_argument("distortion: pair endpoints must differ");
      if (s != cached_src) {
        detail::bfs_embedded_lengths(g, x, s, dist, dm);
        cached_src = s;
      }
      consume(s, d);
    }
  }
  if (r.pairs_used == 0) throw std::runtime_error("distortion: no usable pairs");
  r.rho = sum / static_cast<double>(r.pairs_used);
  return r;
}

/// Flatness certificate for one polygonal curve: if the unsigned turning
/// angles sum to less than pi/2 on every contiguous stretch, the curve cannot
/// fold back on itself and its endpoint distance stays comparable to its
/// length. Unsigned angles upper-bound any signed/projected sum, so
/// `satisfied` is a conservative certificate. A degenerate (zero-length)
/// segment leaves the angle there undefined, so the path cannot be certified.
struct PathConditionReport {
  bool satisfied = false;
  double max_abs_sum = 0.0;  // worst contiguous turning-angle sum
  bool degenerate = false;   // a segment was too short to measure
};

namespace detail {

inline PathConditionReport path_condition(const Matrix& x, const PolygonalPath& p) {
  constexpr double kHalfPi = 1.57079632679489661923;
  PathConditionReport rep;
  double best = 0, run = 0;  // max-subarray over per-vertex unsigned angles
  for (int k = 1; k + 1 < static_cast<int>(p.nodes.size()); ++k) {
    auto c = turning_cosine(x.row(p.nodes[k - 1]), x.row(p.nodes[k]), x.row(p.nodes[k + 1]));
    if (!c) {
      rep.degenerate = true;
      rep.satisfied = false;
      return rep;
    }
    double theta = std::acos(std::clamp(*c, -1.0, 1.0));
    run = std::max(theta, run + theta);
    best = std::max(best, run);
  }
  rep.max_abs_sum = best;
  rep.satisfied = best < kHalfPi;
  return rep;
}

}  // namespace detail

inline PathConditionReport theorem_condition_check(const Matrix& x, const PolygonalPath& p) {
  if (p.nodes.size() < 3)
    throw std::invalid_argument("theorem_condition_check: path needs at least 3 vertices");
  return detail::path_condition(x, p);
}

/// Aggregate of theorem_condition_check over a path set. Two-vertex paths
/// carry no turning angle and count as satisfied.
struct TheoremReport {
  long long paths_total = 0;
  long long paths_satisfied = 0;
  long long paths_degenerate = 0;
  double max_angle_sum = 0.0;  // worst contiguous turning-angle sum seen

  double pass_fraction() const {
    if (paths_total == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(paths_satisfied) / static_cast<double>(paths_total);
  }
};

inline TheoremReport theorem_check(const Matrix& x, const PathSet& ps) {
  TheoremReport rep;
  for (const auto& p : ps.paths) {
    ++rep.paths_total;
    auto pc = detail::path_condition(x, p);
    if (pc.degenerate) {
      ++rep.paths_degenerate;
      continue;  // counted, never satisfied
    }
    rep.max_angle_sum = std::max(rep.max_angle_sum, pc.max_abs_sum);
    if (pc.satisfied) ++rep.paths_satisfied;
  }
  return rep;
}

}  // namespace curvreg
