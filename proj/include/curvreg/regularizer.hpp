#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "geometry.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "paths.hpp"

namespace curvreg {

/// Which set of polygonal curves the curvature penalty runs over:
///   c - shortest paths between all node pairs (quadratic; small graphs only)
///   s - shortest paths between all pairs within a sampled node subset
///   a - acyclic random-walk paths
enum class RegKind { none, full_pairs, sampled_pairs, walks };

/// All-pairs shortest paths cost O(n^2 * diameter) memory; beyond this many
/// nodes the full kind is refused in favor of the sampled kind.
inline constexpr int kFullPairsNodeCap = 1500;

inline std::string reg_kind_name(RegKind k) {
  switch (k) {
    case RegKind::none: return "none";
    case RegKind::full_pairs: return "c";
    case RegKind::sampled_pairs: return "s";
    case RegKind::walks: return "a";
  }
  throw std::logic_error("reg_kind_name: unknown kind");
}

inline RegKind parse_reg_kind(const std::string& s) {
  if (s == "none") return RegKind::none;
  if (s == "c" || s == "full") return RegKind::full_pairs;
  if (s == "s" || s == "sampled") return RegKind::sampled_pairs;
  if (s == "a" || s == "walk") return RegKind::walks;
  throw std::invalid_argument("unknown regularizer kind \"" + s + "\" (expected none, c, s, or a)");
}

struct RegConfig {
  RegKind kind = RegKind::none;
  int sample_size = 64;      // node subset size for the sampled kind
  int walks_per_node = 10;   // walk generation when no shared walks are given
  int walk_length = 40;
  WalkStrategy strategy;
  std::uint64_t seed = 0;
};

/// Frozen path cache the penalty is evaluated over. Built once before
/// training (resampling is an explicit caller choice, not implicit).
struct RegState {
  RegKind kind = RegKind::none;
  PathSet paths;

  bool active() const { return kind != RegKind::none && !paths.paths.empty(); }
};

/// Builds the path cache for a regularizer kind. For the walk kind a caller
/// that already generated walks (the skip-gram embedder) can pass them as
/// `shared_walks` so both consumers see the identical path set.
inline RegState build_state(const Graph& g, const RegConfig& cfg,
                            const PathSet* shared_walks = nullptr) {
  RegState st;
  st.kind = cfg.kind;
  switch (cfg.kind) {
    case RegKind::none:
      break;
    case RegKind::full_pairs: {
      if (g.n > kFullPairsNodeCap)
        throw std::runtime_error(
            "regularizer: all-pairs paths capped at " + std::to_string(kFullPairsNodeCap) +
            " nodes (got " + std::to_string(g.n) + "); use the sampled kind (--reg s)");
      st.paths = pair_paths(g, all_unordered_pairs(g), PathSource::all_pairs);
      break;
    }
    case RegKind::sampled_pairs: {
      if (cfg.sample_size < 2)
        throw std::invalid_argument("regularizer: sample_size must be >= 2");
      int size = std::min(cfg.sample_size, g.n);
      auto nodes = sample_node_set(g, size, cfg.seed);
      st.paths = pair_paths(g, all_unordered_pairs(g, nodes), PathSource::sampled_pairs);
      break;
    }
    case RegKind::walks: {
      if (shared_walks)
        st.paths = *shared_walks;
      else
        st.paths = random_walks(g, cfg.walks_per_node, cfg.walk_length, cfg.strategy, cfg.seed);
      break;
    }
  }
  return st;
}

struct OmegaResult {
  double loss = 0.0;
  long long samples_used = 0;
  long long degenerate_skips = 0;
};

/// Curvature penalty: sum over interior vertices q of cached paths of
/// 1 - cos(theta_q), zero exactly when every cached path is embedded straight.
/// When `grad` is non-null it is zeroed and filled with the exact gradient.
///
/// Per vertex, with a = x_q - x_{q-1}, b = x_{q+1} - x_q, c = cos(theta_q):
///   d c / d a = (b_hat - c a_hat) / |a|,  d c / d b = (a_hat - c b_hat) / |b|
/// and the loss is 1 - c, so rows q-1, q, q+1 receive +dc/da, -dc/da + dc/db,
/// -dc/db respectively; the three contributions sum to zero (angles are
/// translation invariant). Degenerate segments contribute nothing.
inline OmegaResult omega_loss_grad(const Matrix& x, const RegState& st, Matrix* grad = nullptr) {
  if (st.kind != RegKind::none && st.paths.paths.empty())
    throw std::invalid_argument("regularizer: state has no cached paths");
  if (grad) {
    if (grad->rows != x.rows || grad->cols != x.cols)
      throw std::invalid_argument("regularizer: gradient shape mismatch");
    grad->set_zero();
  }
  OmegaResult r;
  const int d = x.cols;
  long long interior_total = 0;
  std::vector<double> ga(d), gb(d);
  for (const auto& p : st.paths.paths) {
    for (int k = 1; k + 1 < static_cast<int>(p.nodes.size()); ++k) {
      ++interior_total;
      const int ia = p.nodes[k - 1], ib = p.nodes[k], ic = p.nodes[k + 1];
      auto ra = x.row(ia), rb = x.row(ib), rc = x.row(ic);
      double uu = 0, vv = 0, uv = 0;
      for (int t = 0; t < d; ++t) {
        double u = rb[t] - ra[t];
        double v = rc[t] - rb[t];
        uu += u * u;
        vv += v * v;
        uv += u * v;
      }
      double nu = std::sqrt(uu), nv = std::sqrt(vv);
      if (nu <= kDegenerateEps || nv <= kDegenerateEps) {
        ++r.degenerate_skips;
        continue;
      }
      double c = uv / (nu * nv);
      double cc = std::clamp(c, -1.0, 1.0);
      r.loss += 1.0 - cc;
      ++r.samples_used;
      if (grad) {
        auto gra = grad->row(ia), grb = grad->row(ib), grc = grad->row(ic);
        for (int t = 0; t < d; ++t) {
          double u = rb[t] - ra[t];
          double v = rc[t] - rb[t];
          double ah = u / nu, bh = v / nv;
          double dca = (bh - c * ah) / nu;  // d cos / d a
          double dcb = (ah - c * bh) / nv;  // d cos / d b
          gra[t] += dca;
          grb[t] += -dca + dcb;
          grc[t] += -dcb;
        }
      }
    }
  }
  if (interior_total > 0 && r.samples_used == 0)
    throw std::runtime_error(
        "regularizer: every turning angle degenerate (embedded points coincide)");
  return r;
}

inline double omega_loss(const Matrix& x, const RegState& st) {
  return omega_loss_grad(x, st, nullptr).loss;
}

inline Matrix omega_gradient(const Matrix& x, const RegState& st) {
  Matrix g(x.rows, x.cols);
  omega_loss_grad(x, st, &g);
  return g;
}

}  // namespace curvreg
