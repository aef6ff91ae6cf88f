#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace curvreg {

/// Deterministic graph families used by tests, diagnostics, and the
/// case-study command.

inline Graph path_graph(int n) {
  if (n < 2) throw std::invalid_argument("path_graph: need at least 2 nodes");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need at least 3 nodes");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

/// Center is node 0; leaves are 1..leaves.
inline Graph star_graph(int leaves) {
  if (leaves < 1) throw std::invalid_argument("star_graph: need at least 1 leaf");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, edges);
}

inline Graph complete_graph(int n) {
  if (n < 2) throw std::invalid_argument("complete_graph: need at least 2 nodes");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

/// Two k-cliques joined by a single bridge edge (k-1, k).
inline Graph barbell_graph(int k) {
  if (k < 2) throw std::invalid_argument("barbell_graph: cliques need at least 2 nodes");
  std::vector<std::pair<int, int>> edges;
  for (int base : {0, k})
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) edges.emplace_back(base + i, base + j);
  edges.emplace_back(k - 1, k);
  return Graph::from_edges(2 * k, edges);
}

struct LabeledGraph {
  Graph graph;
  LabelMap labels;
};

namespace detail {

/// Ring backbone inside [lo, hi) keeps a block connected regardless of the
/// random draw.
inline void add_ring(std::vector<std::pair<int, int>>& edges, int lo, int hi) {
  if (hi - lo < 2) return;
  for (int i = lo; i + 1 < hi; ++i) edges.emplace_back(i, i + 1);
  if (hi - lo > 2) edges.emplace_back(lo, hi - 1);
}

}  // namespace detail

/// Two equally sized communities: each is a ring plus Bernoulli(intra_p)
/// chords, connected to the other by two fixed bridge edges. Labels are the
/// block ids.
inline LabeledGraph two_block_graph(int block_size, double intra_p, std::uint64_t seed) {
  if (block_size < 3) throw std::invalid_argument("two_block_graph: blocks need >= 3 nodes");
  if (intra_p < 0 || intra_p > 1)
    throw std::invalid_argument("two_block_graph: probability out of range");
  const int n = 2 * block_size;
  std::vector<std::pair<int, int>> edges;
  Rng rng(seed);
  for (int b = 0; b < 2; ++b) {
    int lo = b * block_size, hi = lo + block_size;
    detail::add_ring(edges, lo, hi);
    for (int i = lo; i < hi; ++i)
      for (int j = i + 2; j < hi; ++j)  // ring edges already present
        if (rng.next_double() < intra_p) edges.emplace_back(i, j);
  }
  edges.emplace_back(0, block_size);
  edges.emplace_back(block_size / 2, block_size + block_size / 2);
  LabeledGraph lg;
  lg.graph = Graph::from_edges(n, edges);
  lg.labels.label_of.assign(n, 0);
  for (int i = block_size; i < n; ++i) lg.labels.label_of[i] = 1;
  lg.labels.num_classes = 2;
  return lg;
}

/// Planted-partition graph: blocks of the given sizes, each with a ring
/// backbone plus Bernoulli(p_in) chords; cross-block pairs drawn with
/// Bernoulli(p_out); consecutive blocks additionally joined by one fixed
/// bridge so the whole graph is connected. Labels are block ids.
inline LabeledGraph planted_partition(const std::vector<int>& sizes, double p_in, double p_out,
                                      std::uint64_t seed) {
  if (sizes.size() < 2) throw std::invalid_argument("planted_partition: need >= 2 blocks");
  int n = 0;
  std::vector<int> block_of;
  std::vector<int> block_lo;
  for (int b = 0; b < static_cast<int>(sizes.size()); ++b) {
    if (sizes[b] < 3) throw std::invalid_argument("planted_partition: blocks need >= 3 nodes");
    block_lo.push_back(n);
    for (int i = 0; i < sizes[b]; ++i) block_of.push_back(b);
    n += sizes[b];
  }
  std::vector<std::pair<int, int>> edges;
  Rng rng(seed);
  for (int b = 0; b < static_cast<int>(sizes.size()); ++b) {
    int lo = block_lo[b], hi = lo + sizes[b];
    detail::add_ring(edges, lo, hi);
    for (int i = lo; i < hi; ++i)
      for (int j = i + 2; j < hi; ++j)
        if (rng.next_double() < p_in) edges.emplace_back(i, j);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (block_of[i] != block_of[j] && rng.next_double() < p_out) edges.emplace_back(i, j);
  for (int b = 0; b + 1 < static_cast<int>(sizes.size()); ++b)
    edges.emplace_back(block_lo[b], block_lo[b + 1]);
  LabeledGraph lg;
  lg.graph = Graph::from_edges(n, edges);
  lg.labels.label_of = block_of;
  lg.labels.num_classes = static_cast<int>(sizes.size());
  return lg;
}

/// Synthetic stand-in at citation-network scale: 7 blocks matching the class
/// proportions of a 2708-node citation graph, tuned to roughly 5400 edges
/// with strong within-class homophily.
inline LabeledGraph citation_standin(std::uint64_t seed) {
  return planted_partition({351, 217, 418, 818, 426, 298, 180}, 0.0026, 0.00033, seed);
}

}  // namespace curvreg
