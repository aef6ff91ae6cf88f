#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "matrix.hpp"
#include "paths.hpp"
#include "rng.hpp"

namespace curvreg {

enum class EmbedKind { mf, le, sgns };

inline std::string embed_kind_name(EmbedKind k) {
  switch (k) {
    case EmbedKind::mf: return "mf";
    case EmbedKind::le: return "le";
    case EmbedKind::sgns: return "sgns";
  }
  throw std::logic_error("embed_kind_name: unknown kind");
}

inline EmbedKind parse_embed_kind(const std::string& s) {
  if (s == "mf") return EmbedKind::mf;
  if (s == "le") return EmbedKind::le;
  if (s == "sgns") return EmbedKind::sgns;
  throw std::invalid_argument("unknown embedding method \"" + s + "\" (expected mf, le, or sgns)");
}

// ---------------------------------------------------------------------------
// Matrix factorization: squared error against adjacency entries over a fixed
// term sample (every edge, target 1, plus k_neg random non-edges per edge,
// target 0). The sample is drawn once so the objective is a fixed function
// during descent.
// ---------------------------------------------------------------------------

struct MfTerm {
  int i = 0, j = 0;
  double target = 0.0;
};

inline std::vector<MfTerm> mf_sample_terms(const Graph& g, int k_neg, std::uint64_t seed) {
  if (k_neg < 0) throw std::invalid_argument("mf_sample_terms: k_neg must be >= 0");
  std::vector<MfTerm> terms;
  terms.reserve(g.edges.size() * static_cast<size_t>(1 + k_neg));
  for (auto [i, j] : g.edges) terms.push_back({i, j, 1.0});
  long long possible = static_cast<long long>(g.n) * (g.n - 1) / 2;
  bool has_non_edges = possible > static_cast<long long>(g.edges.size());
  if (!has_non_edges || k_neg == 0) return terms;
  Rng rng(seed);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    for (int k = 0; k < k_neg; ++k) {
      for (int attempt = 0; attempt < 10000; ++attempt) {
        int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n)));
        int b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n - 1)));
        if (b >= a) ++b;
        if (!g.has_edge(a, b)) {
          terms.push_back({std::min(a, b), std::max(a, b), 0.0});
          break;
        }
      }
    }
  }
  return terms;
}

/// loss = sum over terms of (target - <x_i, x_j>)^2; gradient (if requested)
/// is zeroed then filled exactly for the sampled terms.
inline double mf_loss_grad(const Matrix& x, const std::vector<MfTerm>& terms,
                           Matrix* grad = nullptr) {
  if (grad) {
    if (grad->rows != x.rows || grad->cols != x.cols)
      throw std::invalid_argument("mf_loss_grad: gradient shape mismatch");
    grad->set_zero();
  }
  double loss = 0;
  const int d = x.cols;
  for (const auto& t : terms) {
    auto xi = x.row(t.i), xj = x.row(t.j);
    double dotv = 0;
    for (int k = 0; k < d; ++k) dotv += xi[k] * xj[k];
    double e = t.target - dotv;
    loss += e * e;
    if (grad) {
      auto gi = grad->row(t.i), gj = grad->row(t.j);
      for (int k = 0; k < d; ++k) {
        gi[k] += -2.0 * e * xj[k];
        gj[k] += -2.0 * e * xi[k];
      }
    }
  }
  return loss;
}

// ---------------------------------------------------------------------------
// Laplacian-smoothness embedding: neighbors pulled together, with centering
// and unit-second-moment penalties blocking the all-rows-equal collapse.
// ---------------------------------------------------------------------------

struct LePenalty {
  double beta = 1.0;   // weight on ||mean row||^2
  double gamma = 1.0;  // weight on per-dimension (second moment - 1)^2
};

/// loss = sum_{(i,j) in E} ||x_i - x_j||^2
///      + beta * ||mu||^2,                mu_k   = (1/n) sum_i x_ik
///      + gamma * sum_k (m2_k - 1)^2,     m2_k   = (1/n) sum_i x_ik^2
/// gradient rows: 2 sum_{j ~ i} (x_i - x_j) + (2 beta / n) mu
///              + (4 gamma / n) (m2_k - 1) x_ik
inline double le_loss_grad(const Matrix& x, const Graph& g, const LePenalty& pen,
                           Matrix* grad = nullptr) {
  if (x.rows != g.n) throw std::invalid_argument("le_loss_grad: embedding/graph size mismatch");
  if (grad) {
    if (grad->rows != x.rows || grad->cols != x.cols)
      throw std::invalid_argument("le_loss_grad: gradient shape mismatch");
    grad->set_zero();
  }
  const int n = x.rows, d = x.cols;
  double loss = 0;
  for (auto [i, j] : g.edges) {
    auto xi = x.row(i), xj = x.row(j);
    double s = 0;
    for (int k = 0; k < d; ++k) {
      double diff = xi[k] - xj[k];
      s += diff * diff;
    }
    loss += s;
    if (grad) {
      auto gi = grad->row(i), gj = grad->row(j);
      for (int k = 0; k < d; ++k) {
        double diff = xi[k] - xj[k];
        gi[k] += 2.0 * diff;
        gj[k] -= 2.0 * diff;
      }
    }
  }
  std::vector<double> mu(d, 0.0), m2(d, 0.0);
  for (int i = 0; i < n; ++i) {
    auto xi = x.row(i);
    for (int k = 0; k < d; ++k) {
      mu[k] += xi[k];
      m2[k] += xi[k] * xi[k];
    }
  }
  for (int k = 0; k < d; ++k) {
    mu[k] /= n;
    m2[k] /= n;
    loss += pen.beta * mu[k] * mu[k];
    double dm = m2[k] - 1.0;
    loss += pen.gamma * dm * dm;
  }
  if (grad) {
    for (int i = 0; i < n; ++i) {
      auto xi = x.row(i);
      auto gi = grad->row(i);
      for (int k = 0; k < d; ++k) {
        gi[k] += (2.0 * pen.beta / n) * mu[k];
        gi[k] += (4.0 * pen.gamma / n) * (m2[k] - 1.0) * xi[k];
      }
    }
  }
  return loss;
}

// ---------------------------------------------------------------------------
// Skip-gram with negative sampling over windowed random-walk co-occurrences.
// Center rows live in the Embedding proper; context rows in a separate
// matrix, so geometry always operates on a single point set.
// ---------------------------------------------------------------------------

struct SgnsPair {
  int center = 0, context = 0;
};

struct SgnsCorpus {
  int n = 0;
  std::vector<SgnsPair> pairs;
  std::vector<double> unigram_cdf;  // cumulative node probabilities, last = 1

  /// Draws one negative from the unigram^0.75 distribution, rejecting the
  /// pair's own nodes. Returns -1 when no admissible node can be found (the
  /// support has fewer than 3 nodes).
  int sample_negative(Rng& rng, int center, int context) const {
    for (int attempt = 0; attempt < 64; ++attempt) {
      double r = rng.next_double();
      auto it = std::lower_bound(unigram_cdf.begin(), unigram_cdf.end(), r);
      int v = static_cast<int>(std::min<std::size_t>(it - unigram_cdf.begin(),
                                                     unigram_cdf.size() - 1));
      if (v != center && v != context) return v;
    }
    return -1;
  }
};

/// Windowed (center, context) pairs from every walk plus the occurrence-count
/// unigram table raised to 0.75 (normalized).
inline SgnsCorpus build_sgns_corpus(const PathSet& walks, int n, int window) {
  if (walks.paths.empty()) throw std::invalid_argument("build_sgns_corpus: no walks");
  if (window < 1) throw std::invalid_argument("build_sgns_corpus: window must be >= 1");
  SgnsCorpus corpus;
  corpus.n = n;
  std::vector<double> counts(n, 0.0);
  for (const auto& w : walks.paths) {
    const int L = static_cast<int>(w.nodes.size());
    for (int i = 0; i < L; ++i) {
      counts[w.nodes[i]] += 1.0;
      int lo = std::max(0, i - window), hi = std::min(L - 1, i + window);
      for (int j = lo; j <= hi; ++j)
        if (j != i) corpus.pairs.push_back({w.nodes[i], w.nodes[j]});
    }
  }
  double total = 0;
  corpus.unigram_cdf.resize(n);
  for (int v = 0; v < n; ++v) {
    double wgt = counts[v] > 0 ? std::pow(counts[v], 0.75) : 0.0;
    total += wgt;
    corpus.unigram_cdf[v] = total;
  }
  if (total <= 0) throw std::logic_error("build_sgns_corpus: empty unigram table");
  for (double& c : corpus.unigram_cdf) c /= total;
  corpus.unigram_cdf.back() = 1.0;
  return corpus;
}

namespace detail {

inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

inline double log_sigmoid(double z) {
  if (z >= 0) return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}

}  // namespace detail

namespace detail {

/// Accumulates the batch gradient into gx/gy without zeroing them; shared by
/// the finite-difference-checkable entry point and the training step so both
/// run identical arithmetic.
inline double sgns_accumulate(const Matrix& x, const Matrix& y, const SgnsCorpus& corpus,
                              std::span<const int> pair_ids,
                              const std::vector<std::vector<int>>& negatives, Matrix* gx,
                              Matrix* gy) {
  if (pair_ids.empty()) throw std::invalid_argument("sgns batch: empty batch");
  if (negatives.size() != pair_ids.size())
    throw std::invalid_argument("sgns batch: negatives/batch size mismatch");
  const int d = x.cols;
  const double inv_b = 1.0 / static_cast<double>(pair_ids.size());
  double loss = 0;
  for (size_t b = 0; b < pair_ids.size(); ++b) {
    const auto& pr = corpus.pairs[pair_ids[b]];
    auto xc = x.row(pr.center);
    auto yo = y.row(pr.context);
    double z = 0;
    for (int k = 0; k < d; ++k) z += xc[k] * yo[k];
    loss += -detail::log_sigmoid(z) * inv_b;
    double coef = (detail::sigmoid(z) - 1.0) * inv_b;
    if (gx || gy) {
      for (int k = 0; k < d; ++k) {
        if (gx) gx->row(pr.center)[k] += coef * yo[k];
        if (gy) gy->row(pr.context)[k] += coef * xc[k];
      }
    }
    for (int gvi : negatives[b]) {
      if (gvi < 0) continue;
      auto yg = y.row(gvi);
      double zn = 0;
      for (int k = 0; k < d; ++k) zn += xc[k] * yg[k];
      loss += -detail::log_sigmoid(-zn) * inv_b;
      double cneg = detail::sigmoid(zn) * inv_b;
      if (gx || gy) {
        for (int k = 0; k < d; ++k) {
          if (gx) gx->row(pr.center)[k] += cneg * yg[k];
          if (gy) gy->row(gvi)[k] += cneg * xc[k];
        }
      }
    }
  }
  return loss;
}

}  // namespace detail

/// Mean pair loss over a batch at explicitly given negatives:
///   -log sigma(<x_c, y_o>) - sum_neg log sigma(-<x_c, y_neg>)
/// Negative slots of -1 are skipped. Gradients (zeroed first) are exact for
/// the fixed negative draw, which makes the function finite-difference
/// checkable.
inline double sgns_batch_loss_grad(const Matrix& x, const Matrix& y, const SgnsCorpus& corpus,
                                   std::span<const int> pair_ids,
                                   const std::vector<std::vector<int>>& negatives,
                                   Matrix* gx = nullptr, Matrix* gy = nullptr) {
  if (gx) gx->set_zero();
  if (gy) gy->set_zero();
  return detail::sgns_accumulate(x, y, corpus, pair_ids, negatives, gx, gy);
}

/// One SGD step on a batch: draws k_neg negatives per pair from the unigram
/// table (excluding the pair's nodes), accumulates the batch gradient, and
/// applies it once to both matrices. Returns the batch's mean pair loss
/// (measured before the update). Scratch matrices are reused across calls;
/// only the rows a batch touches are zeroed, accumulated, and applied.
inline double sgns_step(Matrix& x, Matrix& y, const SgnsCorpus& corpus,
                        std::span<const int> pair_ids, int k_neg, double lr, Rng& rng,
                        Matrix& gx_scratch, Matrix& gy_scratch) {
  if (k_neg < 1) throw std::invalid_argument("sgns_step: k_neg must be >= 1");
  if (lr <= 0) throw std::invalid_argument("sgns_step: lr must be positive");
  std::vector<std::vector<int>> negatives(pair_ids.size());
  std::vector<int> touched_x, touched_y;
  touched_x.reserve(pair_ids.size());
  touched_y.reserve(pair_ids.size() * (1 + k_neg));
  for (size_t b = 0; b < pair_ids.size(); ++b) {
    const auto& pr = corpus.pairs[pair_ids[b]];
    touched_x.push_back(pr.center);
    touched_y.push_back(pr.context);
    negatives[b].resize(k_neg);
    for (int k = 0; k < k_neg; ++k) {
      int neg = corpus.sample_negative(rng, pr.center, pr.context);
      negatives[b][k] = neg;
      if (neg >= 0) touched_y.push_back(neg);
    }
  }
  auto dedup = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(touched_x);
  dedup(touched_y);
  const int d = x.cols;
  for (int v : touched_x) std::fill_n(gx_scratch.row(v).data(), d, 0.0);
  for (int v : touched_y) std::fill_n(gy_scratch.row(v).data(), d, 0.0);
  double loss =
      detail::sgns_accumulate(x, y, corpus, pair_ids, negatives, &gx_scratch, &gy_scratch);
  for (int v : touched_x) axpy(-lr, gx_scratch.row(v), x.row(v));
  for (int v : touched_y) axpy(-lr, gy_scratch.row(v), y.row(v));
  return loss;
}

}  // namespace curvreg
