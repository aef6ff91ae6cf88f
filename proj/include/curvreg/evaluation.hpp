#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "trainer.hpp"

namespace curvreg {

// ---------------------------------------------------------------------------
// Node classification: uniform 60/40 split of labeled nodes, one-vs-rest
// logistic regression on embedding rows, accuracy averaged over repeats.
// ---------------------------------------------------------------------------

struct NcSplit {
  std::vector<int> train_ids, test_ids;  // sorted node ids
  std::uint64_t seed = 0;
};

/// Uniform (stratification-free) split of the labeled nodes, 60% train /
/// 40% test within one node. Classes with fewer than 2 labeled nodes are kept
/// but warned about, since they cannot appear on both sides of every split.
inline NcSplit make_nc_split(const LabelMap& lm, std::uint64_t seed) {
  auto labeled = lm.labeled_ids();
  const int m = static_cast<int>(labeled.size());
  if (m < 2) throw std::invalid_argument("nc split: need at least 2 labeled nodes");
  std::vector<int> class_count(lm.num_classes, 0);
  for (int v : labeled) ++class_count[lm.label_of[v]];
  for (int c = 0; c < lm.num_classes; ++c)
    if (class_count[c] < 2)
      std::cerr << "warning: class " << c << " has fewer than 2 labeled nodes\n";
  Rng rng(seed);
  rng.shuffle(labeled);
  int n_train = static_cast<int>(std::llround(0.6 * m));
  n_train = std::clamp(n_train, 1, m - 1);
  NcSplit split;
  split.seed = seed;
  split.train_ids.assign(labeled.begin(), labeled.begin() + n_train);
  split.test_ids.assign(labeled.begin() + n_train, labeled.end());
  std::sort(split.train_ids.begin(), split.train_ids.end());
  std::sort(split.test_ids.begin(), split.test_ids.end());
  return split;
}

struct LogRegModel {
  std::vector<double> w;
  double b = 0.0;

  double score(std::span<const double> x) const {
    if (x.size() != w.size()) throw std::invalid_argument("logreg: feature dimension mismatch");
    double z = b;
    for (std::size_t k = 0; k < w.size(); ++k) z += w[k] * x[k];
    return z;
  }
};

namespace detail {

/// Mean binary cross-entropy + (l2/2)*||w||^2 (bias unpenalized). Gradient,
/// when requested, goes into gw (size d) and gb.
inline double logreg_loss_grad(const Matrix& feats, const std::vector<double>& y,
                               const std::vector<double>& w, double b, double l2,
                               std::vector<double>* gw, double* gb) {
  const int m = feats.rows, d = feats.cols;
  if (static_cast<int>(y.size()) != m)
    throw std::invalid_argument("logreg: label/feature count mismatch");
  if (gw) std::fill(gw->begin(), gw->end(), 0.0);
  if (gb) *gb = 0.0;
  double loss = 0;
  for (int i = 0; i < m; ++i) {
    auto xi = feats.row(i);
    double z = b;
    for (int k = 0; k < d; ++k) z += w[k] * xi[k];
    // log(1 + e^z) - y z, computed stably
    loss += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - y[i] * z;
    if (gw || gb) {
      double p = sigmoid(z);
      double coef = (p - y[i]) / m;
      if (gw)
        for (int k = 0; k < d; ++k) (*gw)[k] += coef * xi[k];
      if (gb) *gb += coef;
    }
  }
  loss /= m;
  for (int k = 0; k < d; ++k) {
    loss += 0.5 * l2 * w[k] * w[k];
    if (gw) (*gw)[k] += l2 * w[k];
  }
  return loss;
}

}  // namespace detail

/// Full-batch gradient descent with backtracking on the regularized logistic
/// loss; stops at 500 epochs or gradient norm below 1e-6.
inline LogRegModel train_logreg_binary(const Matrix& feats, const std::vector<double>& y,
                                       double l2 = 1e-4, int max_epochs = 500,
                                       double grad_tol = 1e-6) {
  const int d = feats.cols;
  LogRegModel model;
  model.w.assign(d, 0.0);
  std::vector<double> gw(d), trial_w(d);
  double gb = 0, trial_b = 0;
  double cur = detail::logreg_loss_grad(feats, y, model.w, model.b, l2, &gw, &gb);
  double step = 1.0;
  for (int epoch = 0; epoch < max_epochs; ++epoch) {
    double gnorm = gb * gb;
    for (double v : gw) gnorm += v * v;
    if (std::sqrt(gnorm) < grad_tol) break;
    double slack = 1e-12 * std::max(1.0, std::abs(cur));
    double lt = std::numeric_limits<double>::infinity();
    int halvings = 0;
    for (;; ++halvings) {
      for (int k = 0; k < d; ++k) trial_w[k] = model.w[k] - step * gw[k];
      trial_b = model.b - step * gb;
      lt = detail::logreg_loss_grad(feats, y, trial_w, trial_b, l2, nullptr, nullptr);
      if (lt <= cur + slack || halvings >= 48) break;
      step *= 0.5;
    }
    if (lt > cur + slack) break;  // stationary
    model.w = trial_w;
    model.b = trial_b;
    cur = detail::logreg_loss_grad(feats, y, model.w, model.b, l2, &gw, &gb);
    step = std::min(step * 1.3, 10.0);
  }
  return model;
}

struct OvrClassifier {
  std::vector<LogRegModel> models;  // index = class id

  /// Argmax of binary scores; ties go to the lowest class id.
  int predict(std::span<const double> x) const {
    int best = 0;
    double best_score = models[0].score(x);
    for (int c = 1; c < static_cast<int>(models.size()); ++c) {
      double s = models[c].score(x);
      if (s > best_score) {
        best = c;
        best_score = s;
      }
    }
    return best;
  }
};

/// One binary logistic model per class over the split's training rows.
inline OvrClassifier train_logreg_ovr(const Matrix& emb, const LabelMap& lm,
                                      const NcSplit& split, double l2 = 1e-4) {
  const int m = static_cast<int>(split.train_ids.size());
  Matrix feats(m, emb.cols);
  std::set<int> distinct;
  for (int i = 0; i < m; ++i) {
    auto src = emb.row(split.train_ids[i]);
    std::copy(src.begin(), src.end(), feats.row(i).begin());
    distinct.insert(lm.label_of[split.train_ids[i]]);
  }
  if (distinct.size() < 2)
    std::cerr << "warning: training split contains a single class; classifier is constant\n";
  OvrClassifier ovr;
  ovr.models.reserve(lm.num_classes);
  std::vector<double> y(m);
  for (int c = 0; c < lm.num_classes; ++c) {
    for (int i = 0; i < m; ++i) y[i] = (lm.label_of[split.train_ids[i]] == c) ? 1.0 : 0.0;
    ovr.models.push_back(train_logreg_binary(feats, y, l2));
  }
  return ovr;
}

struct NcReport {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation across repeats
  std::vector<double> per_run;
};

inline double classification_accuracy(const OvrClassifier& ovr, const Matrix& emb,
                                      const LabelMap& lm, const std::vector<int>& ids) {
  if (ids.empty()) throw std::invalid_argument("accuracy: empty id list");
  int correct = 0;
  for (int v : ids)
    if (ovr.predict(emb.row(v)) == lm.label_of[v]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(ids.size());
}

inline NcReport nc_accuracy(const Matrix& emb, const LabelMap& lm, int repeats,
                            std::uint64_t seed) {
  if (repeats < 1) throw std::invalid_argument("nc_accuracy: repeats must be >= 1");
  if (lm.labeled_ids().empty()) throw std::invalid_argument("nc_accuracy: no labels");
  NcReport rep;
  for (int r = 0; r < repeats; ++r) {
    auto split = make_nc_split(lm, mix_seed(seed, static_cast<std::uint64_t>(r)));
    auto ovr = train_logreg_ovr(emb, lm, split);
    rep.per_run.push_back(classification_accuracy(ovr, emb, lm, split.test_ids));
  }
  rep.mean = std::accumulate(rep.per_run.begin(), rep.per_run.end(), 0.0) / repeats;
  if (repeats > 1) {
    double ss = 0;
    for (double v : rep.per_run) ss += (v - rep.mean) * (v - rep.mean);
    rep.sd = std::sqrt(ss / (repeats - 1));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Link prediction: remove a fraction of edges, re-train on the residual
// graph, rank held-out edges against sampled non-edges by a logistic model
// over Hadamard link features, and report average precision.
// ---------------------------------------------------------------------------

struct LpSplit {
  Graph train_graph;  // all n nodes, surviving edges only
  std::vector<std::pair<int, int>> test_pos;  // removed edges
  std::vector<std::pair<int, int>> test_neg;  // equal-count true non-edges
  std::uint64_t seed = 0;
};

namespace detail {

/// `count` distinct non-edges of `g` (i < j), excluding `banned`, drawn
/// uniformly. Falls back to full enumeration when the request covers most of
/// the pool.
inline std::vector<std::pair<int, int>> sample_non_edges(
    const Graph& g, long long count, Rng& rng,
    const std::set<std::pair<int, int>>& banned = {}) {
  long long pool = static_cast<long long>(g.n) * (g.n - 1) / 2 -
                   static_cast<long long>(g.edges.size()) -
                   static_cast<long long>(banned.size());
  if (pool < count)
    throw std::runtime_error("link prediction: graph too dense, not enough non-edges to sample");
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count > pool / 2) {  // dense request: enumerate and take a random subset
    std::vector<std::pair<int, int>> all;
    all.reserve(static_cast<std::size_t>(pool));
    for (int i = 0; i < g.n; ++i)
      for (int j = i + 1; j < g.n; ++j)
        if (!g.has_edge(i, j) && !banned.count({i, j})) all.emplace_back(i, j);
    rng.shuffle(all);
    out.assign(all.begin(), all.begin() + static_cast<std::size_t>(count));
  } else {
    std::set<std::pair<int, int>> seen;
    while (static_cast<long long>(out.size()) < count) {
      int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n)));
      int b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n - 1)));
      if (b >= a) ++b;
      std::pair<int, int> e{std::min(a, b), std::max(a, b)};
      if (g.has_edge(e.first, e.second) || banned.count(e) || !seen.insert(e).second) continue;
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Removes floor(removal_frac * |E|) edges uniformly (no connectivity repair)
/// and samples an equal count of true non-edges as test negatives.
inline LpSplit make_lp_split(const Graph& g, double removal_frac, std::uint64_t seed) {
  if (!(removal_frac > 0.0 && removal_frac < 1.0))
    throw std::invalid_argument("lp split: removal fraction must be in (0, 1)");
  const long long m = static_cast<long long>(g.edges.size());
  const long long k = static_cast<long long>(removal_frac * static_cast<double>(m));
  if (k < 1) throw std::invalid_argument("lp split: too few edges to remove any");
  Rng rng(seed);
  std::vector<int> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  LpSplit split;
  split.seed = seed;
  std::vector<std::pair<int, int>> kept;
  for (long long idx = 0; idx < m; ++idx) {
    if (idx < k)
      split.test_pos.push_back(g.edges[order[idx]]);
    else
      kept.push_back(g.edges[order[idx]]);
  }
  std::sort(split.test_pos.begin(), split.test_pos.end());
  split.train_graph = Graph::from_edges(g.n, kept, g.id_of);
  split.test_neg = detail::sample_non_edges(g, k, rng);
  return split;
}

/// Row per pair: elementwise product of the endpoint embeddings.
inline Matrix hadamard_features(const Matrix& emb, const std::vector<std::pair<int, int>>& pairs) {
  Matrix feats(static_cast<int>(pairs.size()), emb.cols);
  for (int r = 0; r < feats.rows; ++r) {
    auto [i, j] = pairs[r];
    if (i < 0 || i >= emb.rows || j < 0 || j >= emb.rows)
      throw std::invalid_argument("hadamard_features: node id out of range");
    auto xi = emb.row(i), xj = emb.row(j);
    auto out = feats.row(r);
    for (int k = 0; k < emb.cols; ++k) out[k] = xi[k] * xj[k];
  }
  return feats;
}

/// Single-query average precision over a ranked candidate list:
///   AP = sum_k precision@k * rel_k / (#positives)
/// ranked by descending score; equal scores keep their input order.
inline double mean_average_precision(const std::vector<double>& scores,
                                     const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("average precision: score/label count mismatch");
  long long positives = std::count_if(labels.begin(), labels.end(), [](int v) { return v != 0; });
  if (positives == 0) throw std::invalid_argument("average precision: no positive examples");
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&scores](int a, int b) { return scores[a] > scores[b]; });
  double ap = 0;
  long long hits = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (labels[order[rank]] != 0) {
      ++hits;
      ap += static_cast<double>(hits) / static_cast<double>(rank + 1);
    }
  }
  return ap / static_cast<double>(positives);
}

/// Scores a trained embedding on an LP split: a logistic model is fit on the
/// training graph's edges (positives) against an equal count of sampled
/// non-edges disjoint from the test negatives, then ranks the test
/// candidates. Returns the test-set average precision.
inline double lp_score_embedding(const Matrix& emb, const Graph& original, const LpSplit& split,
                                 std::uint64_t neg_seed, double l2 = 1e-4) {
  const auto& train_pos = split.train_graph.edges;
  if (train_pos.empty()) throw std::runtime_error("link prediction: training graph has no edges");
  std::set<std::pair<int, int>> banned(split.test_neg.begin(), split.test_neg.end());
  Rng rng(neg_seed);
  auto train_neg = detail::sample_non_edges(original, static_cast<long long>(train_pos.size()),
                                            rng, banned);
  std::vector<std::pair<int, int>> train_pairs = train_pos;
  train_pairs.insert(train_pairs.end(), train_neg.begin(), train_neg.end());
  Matrix feats = hadamard_features(emb, train_pairs);
  std::vector<double> y(train_pairs.size(), 0.0);
  std::fill(y.begin(), y.begin() + train_pos.size(), 1.0);
  LogRegModel model = train_logreg_binary(feats, y, l2);

  std::vector<std::pair<int, int>> test_pairs = split.test_pos;
  test_pairs.insert(test_pairs.end(), split.test_neg.begin(), split.test_neg.end());
  Matrix test_feats = hadamard_features(emb, test_pairs);
  std::vector<double> scores(test_pairs.size());
  std::vector<int> labels(test_pairs.size(), 0);
  for (std::size_t i = 0; i < test_pairs.size(); ++i)
    scores[i] = model.score(test_feats.row(static_cast<int>(i)));
  std::fill(labels.begin(), labels.begin() + split.test_pos.size(), 1);
  return mean_average_precision(scores, labels);
}

struct LpReport {
  double mean = 0.0;
  double sd = 0.0;
  std::vector<double> per_run;
  double removal_frac = 0.0;
};

/// Full link-prediction protocol: per repeat, split the graph, re-train the
/// embedding on the residual graph, and score. Repeats default to 1; the
/// split, the training run, and the negative sampler draw independent seeds
/// per repeat.
inline LpReport lp_evaluate(const Graph& g, const TrainConfig& cfg, double removal_frac,
                            int repeats, std::uint64_t seed) {
  if (repeats < 1) throw std::invalid_argument("lp_evaluate: repeats must be >= 1");
  LpReport rep;
  rep.removal_frac = removal_frac;
  for (int r = 0; r < repeats; ++r) {
    auto split = make_lp_split(g, removal_frac, mix_seed(seed, static_cast<std::uint64_t>(r), 1));
    TrainConfig run_cfg = cfg;
    run_cfg.seed = mix_seed(seed, static_cast<std::uint64_t>(r), 2);
    TrainResult trained = two_phase_train(split.train_graph, run_cfg);
    rep.per_run.push_back(lp_score_embedding(trained.embedding, g, split,
                                             mix_seed(seed, static_cast<std::uint64_t>(r), 3)));
  }
  rep.mean = std::accumulate(rep.per_run.begin(), rep.per_run.end(), 0.0) / repeats;
  if (repeats > 1) {
    double ss = 0;
    for (double v : rep.per_run) ss += (v - rep.mean) * (v - rep.mean);
    rep.sd = std::sqrt(ss / (repeats - 1));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Report records: structured text plus a CSV summary laid out method x task.
// ---------------------------------------------------------------------------

struct EvalReport {
  std::string dataset, method, regularizer, task, metric;
  double mean = 0.0, sd = 0.0;
  int repeats = 1;
  std::uint64_t seed = 0;
  std::vector<double> per_run;
};

inline void write_reports_csv(std::ostream& os, const std::vector<EvalReport>& reports) {
  os << "dataset,method,regularizer,task,metric,mean,sd,repeats,seed\n";
  for (const auto& r : reports)
    os << r.dataset << ',' << r.method << ',' << r.regularizer << ',' << r.task << ','
       << r.metric << ',' << format_double(r.mean) << ',' << format_double(r.sd) << ','
       << r.repeats << ',' << r.seed << '\n';
}

inline void write_reports_text(std::ostream& os, const std::vector<EvalReport>& reports) {
  for (const auto& r : reports) {
    os << "task=" << r.task << " dataset=" << r.dataset << " method=" << r.method
       << " reg=" << r.regularizer << " metric=" << r.metric << " mean=" << format_double(r.mean)
       << " sd=" << format_double(r.sd) << " repeats=" << r.repeats << " seed=" << r.seed;
    os << " per_run=[";
    for (std::size_t i = 0; i < r.per_run.size(); ++i) {
      if (i) os << ' ';
      os << format_double(r.per_run[i]);
    }
    os << "]\n";
  }
}

}  // namespace curvreg
