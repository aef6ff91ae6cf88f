#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "embedders.hpp"
#include "geometry.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "paths.hpp"
#include "regularizer.hpp"
#include "rng.hpp"

namespace curvreg {

inline constexpr double kConvergenceEps = 1e-12;

/// Relative-change stopping rule:
///   |cur - prev| / max(|prev|, eps) < tol
inline bool convergence_check(double prev, double cur, double tol) {
  return std::abs(cur - prev) / std::max(std::abs(prev), kConvergenceEps) < tol;
}

/// Window form: compares the last two entries.
inline bool convergence_check(std::span<const double> window, double tol) {
  if (window.size() < 2)
    throw std::invalid_argument("convergence_check: window needs at least 2 entries");
  return convergence_check(window[window.size() - 2], window[window.size() - 1], tol);
}

struct TrainConfig {
  EmbedKind embedder = EmbedKind::sgns;
  RegKind reg = RegKind::none;
  int d = 64;               // embedding dimension
  int t = 3;                // phase-1 alternation rounds
  double lambda = 0.1;      // regularization trade-off weight
  double tol = 1e-4;        // relative loss-change convergence tolerance
  int max_epochs_sub = 200;    // cap per phase-1 sub-loop
  int max_epochs_joint = 500;  // cap for the joint phase
  double lr_embed = 0.05;   // base step, full-batch mf/le descent
  double lr_sgns = 0.025;   // base step, sgns SGD (linear decay per sub-loop)
  double lr_omega = 0.1;    // base step, full-batch curvature descent
  int mf_k_neg = 5;         // non-edge terms per edge (mf)
  int walks_per_node = 10;  // sgns / walk-regularizer corpus
  int walk_length = 40;
  int window = 5;
  int sgns_k_neg = 5;
  int batch = 128;
  double p = 1.0, q = 1.0;  // biased-walk return / in-out parameters
  int reg_sample_size = 64;    // node subset for the sampled-pairs kind
  bool resample_paths = false; // re-draw the sampled-pairs subset each phase
  int rho_every = 0;           // record distortion every k epochs (0 = off)
  std::uint64_t seed = 0;

  void validate() const {
    if (d < 2) throw std::invalid_argument("config: dimension must be >= 2");
    if (t < 0) throw std::invalid_argument("config: t must be >= 0");
    if (lambda < 0) throw std::invalid_argument("config: lambda must be >= 0");
    if (!(tol > 0)) throw std::invalid_argument("config: tolerance must be > 0");
    if (max_epochs_sub < 1 || max_epochs_joint < 1)
      throw std::invalid_argument("config: epoch caps must be >= 1");
    if (lr_embed <= 0 || lr_sgns <= 0 || lr_omega <= 0)
      throw std::invalid_argument("config: learning rates must be > 0");
    if (mf_k_neg < 0) throw std::invalid_argument("config: mf negative count must be >= 0");
    if (walks_per_node < 1 || walk_length < 2)
      throw std::invalid_argument("config: walk parameters out of range");
    if (window < 1) throw std::invalid_argument("config: window must be >= 1");
    if (sgns_k_neg < 1) throw std::invalid_argument("config: sgns negative count must be >= 1");
    if (batch < 1) throw std::invalid_argument("config: batch must be >= 1");
    if (p <= 0 || q <= 0) throw std::invalid_argument("config: p and q must be > 0");
    if (reg_sample_size < 2) throw std::invalid_argument("config: sample size must be >= 2");
    if (rho_every < 0) throw std::invalid_argument("config: rho interval must be >= 0");
  }

  WalkStrategy walk_strategy() const {
    WalkStrategy st;
    st.biased = (p != 1.0 || q != 1.0);
    st.p = p;
    st.q = q;
    return st;
  }
};

/// One training epoch as recorded in the trace. NaN marks "not measured this
/// epoch" and the field is omitted from the serialized record.
struct TraceRecord {
  long long epoch = 0;  // global counter, strictly increasing through training
  std::string phase;    // phase1_embed_<r> | phase1_omega_<r> | phase2_joint
  double loss_embed = std::numeric_limits<double>::quiet_NaN();
  double loss_omega = std::numeric_limits<double>::quiet_NaN();
  double loss_total = std::numeric_limits<double>::quiet_NaN();
  double lr = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();

  std::string to_json_line() const {
    std::string s = "{\"epoch\":" + std::to_string(epoch) + ",\"phase\":\"" + phase + "\"";
    auto put = [&s](const char* key, double v) {
      if (std::isfinite(v)) s += std::string(",\"") + key + "\":" + format_double(v);
    };
    put("loss_embed", loss_embed);
    put("loss_omega", loss_omega);
    put("loss_total", loss_total);
    put("lr", lr);
    put("rho", rho);
    s += "}";
    return s;
  }
};

struct TrainTrace {
  std::vector<TraceRecord> records;
  // Fraction of cached regularizer paths meeting the flatness certificate,
  // measured at initialization, after phase 1, and after the joint phase.
  // NaN when no regularizer paths exist.
  double theorem_pass_init = std::numeric_limits<double>::quiet_NaN();
  double theorem_pass_phase1 = std::numeric_limits<double>::quiet_NaN();
  double theorem_pass_final = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t path_hash = 0;   // content hash of the regularizer path cache
  std::uint64_t walk_hash = 0;   // content hash of the sgns walk corpus
  bool shared_walks = false;     // regularizer reused the sgns walks

  void write_jsonl(std::ostream& os) const {
    for (const auto& r : records) os << r.to_json_line() << '\n';
  }
};

struct TrainResult {
  Matrix embedding;  // n x d center representations (what geometry measures)
  Matrix context;    // n x d sgns context rows; empty for mf/le
  TrainTrace trace;
};

namespace detail {

struct DescentOutcome {
  double final_loss = std::numeric_limits<double>::quiet_NaN();
  int epochs = 0;
  bool converged = false;
};

/// Full-batch gradient descent with backtracking line search: the step is
/// halved until the loss stops increasing (so accepted epochs are
/// non-increasing up to 1e-12 relative slack), then regrown mildly for the
/// next epoch. f(x, grad) returns the loss and, when grad != nullptr, fills
/// the gradient; both uses must run identical loss arithmetic.
template <typename F, typename OnEpoch>
DescentOutcome backtracking_minimize(Matrix& x, F&& f, double lr0, int max_epochs, double tol,
                                     OnEpoch&& on_epoch) {
  DescentOutcome out;
  Matrix grad(x.rows, x.cols), trial(x.rows, x.cols);
  double cur = f(x, &grad);
  double step = lr0;
  for (int epoch = 1; epoch <= max_epochs; ++epoch) {
    double slack = 1e-12 * std::max(1.0, std::abs(cur));
    double lt = std::numeric_limits<double>::infinity();
    int halvings = 0;
    for (;; ++halvings) {
      trial = x;
      add_scaled(trial, -step, grad);
      lt = f(trial, nullptr);
      if (lt <= cur + slack || halvings >= 48) break;
      step *= 0.5;
    }
    if (lt > cur + slack) {  // no descent direction at any tried step: stationary
      out.converged = true;
      break;
    }
    x = trial;
    double prev = cur;
    cur = f(x, &grad);  // same point as `lt`; also refreshes the gradient
    if (!std::isfinite(cur) || !x.all_finite())
      throw std::runtime_error(
          "training diverged: non-finite loss or embedding values; lower the learning rate");
    out.epochs = epoch;
    on_epoch(cur, step);
    if (convergence_check(prev, cur, tol)) {
      out.converged = true;
      break;
    }
    step = std::min(step * 1.3, lr0 * 10.0);
  }
  out.final_loss = cur;
  return out;
}

/// One pass over the sgns corpus in shuffled order; returns the mean pair
/// loss (measured per batch before its update).
inline double sgns_epoch(Matrix& x, Matrix& y, const SgnsCorpus& corpus, int k_neg, int batch,
                         double lr, Rng& rng, Matrix& gxs, Matrix& gys, std::vector<int>& order) {
  rng.shuffle(order);
  double total = 0;
  long long count = 0;
  for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(batch)) {
    std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(batch));
    std::span<const int> ids(order.data() + start, end - start);
    double bl = sgns_step(x, y, corpus, ids, k_neg, lr, rng, gxs, gys);
    total += bl * static_cast<double>(ids.size());
    count += static_cast<long long>(ids.size());
  }
  return total / static_cast<double>(count);
}

/// Linear decay from lr0 toward a floor of 1% across a sub-loop's epoch cap.
inline double decayed_lr(double lr0, int epoch, int max_epochs) {
  double frac = 1.0 - static_cast<double>(epoch - 1) / static_cast<double>(max_epochs);
  return lr0 * std::max(0.01, frac);
}

}  // namespace detail

/// Two-phase curvature-regularized training:
///   init X uniformly in [-0.5/d, 0.5/d];
///   phase 1, repeated t times: (a) minimize the embedding loss to
///     convergence, then (b) minimize the curvature penalty to convergence;
///   phase 2: minimize embedding loss + lambda * penalty jointly.
/// Sub-loops stop on relative loss change < tol or their epoch cap. All
/// randomness derives from cfg.seed, so runs are bit-reproducible.
inline TrainResult two_phase_train(const Graph& g, const TrainConfig& cfg) {
  cfg.validate();
  if (g.n < 1) throw std::invalid_argument("two_phase_train: empty graph");

  TrainResult res;
  res.embedding = random_matrix(g.n, cfg.d, -0.5 / cfg.d, 0.5 / cfg.d, mix_seed(cfg.seed, 1));
  Matrix& x = res.embedding;
  TrainTrace& trace = res.trace;

  // Embedder-specific fixed state.
  std::vector<MfTerm> mf_terms;
  LePenalty le_pen;
  PathSet walks;
  SgnsCorpus corpus;
  Matrix gx_scratch, gy_scratch;
  std::vector<int> order;
  Rng sgns_rng(mix_seed(cfg.seed, 4));
  if (cfg.embedder == EmbedKind::mf) {
    mf_terms = mf_sample_terms(g, cfg.mf_k_neg, mix_seed(cfg.seed, 3));
  } else if (cfg.embedder == EmbedKind::sgns) {
    walks = random_walks(g, cfg.walks_per_node, cfg.walk_length, cfg.walk_strategy(),
                         mix_seed(cfg.seed, 2));
    corpus = build_sgns_corpus(walks, g.n, cfg.window);
    res.context = Matrix(g.n, cfg.d);  // zero-initialized context rows
    gx_scratch = Matrix(g.n, cfg.d);
    gy_scratch = Matrix(g.n, cfg.d);
    order.resize(corpus.pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    trace.walk_hash = walks.content_hash();
  }

  // Regularizer path cache.
  RegConfig rc;
  rc.kind = cfg.reg;
  rc.sample_size = cfg.reg_sample_size;
  rc.walks_per_node = cfg.walks_per_node;
  rc.walk_length = cfg.walk_length;
  rc.strategy = cfg.walk_strategy();
  rc.seed = mix_seed(cfg.seed, 5);
  const PathSet* shared =
      (cfg.reg == RegKind::walks && cfg.embedder == EmbedKind::sgns) ? &walks : nullptr;
  RegState reg = build_state(g, rc, shared);
  trace.shared_walks = shared != nullptr;
  const bool resample = cfg.resample_paths && cfg.reg == RegKind::sampled_pairs;
  auto resample_reg = [&](std::uint64_t round_tag) {
    RegConfig rc2 = rc;
    rc2.seed = mix_seed(cfg.seed, 6, round_tag);
    reg = build_state(g, rc2, nullptr);
  };

  if (reg.active()) trace.theorem_pass_init = theorem_check(x, reg.paths).pass_fraction();
  // lambda weights the penalty; zero disables it entirely, so a lambda=0 run
  // is a true unregularized baseline (the path cache is still built and
  // measured for diagnostics).
  const bool reg_on = reg.active() && cfg.lambda > 0;

  // Optional distortion sampling for the trace.
  std::vector<std::pair<int, int>> rho_pairs;
  const std::vector<std::pair<int, int>>* rho_pairs_ptr = nullptr;
  if (cfg.rho_every > 0 && g.n > kFullDistortionNodeCap) {
    rho_pairs = sample_distortion_pairs(g, mix_seed(cfg.seed, 7));
    rho_pairs_ptr = &rho_pairs;
  }

  long long global_epoch = 0;
  auto record = [&](const std::string& phase, double le, double lo, double lt_, double lr) {
    TraceRecord r;
    r.epoch = ++global_epoch;
    r.phase = phase;
    r.loss_embed = le;
    r.loss_omega = lo;
    r.loss_total = lt_;
    r.lr = lr;
    if (cfg.rho_every > 0 && g.n >= 2 && global_epoch % cfg.rho_every == 0)
      r.rho = distortion(x, g, rho_pairs_ptr).rho;
    trace.records.push_back(std::move(r));
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto embed_loss_grad = [&](const Matrix& xx, Matrix* gg) -> double {
    if (cfg.embedder == EmbedKind::mf) return mf_loss_grad(xx, mf_terms, gg);
    return le_loss_grad(xx, g, le_pen, gg);
  };
  auto omega_f = [&](const Matrix& xx, Matrix* gg) -> double {
    return omega_loss_grad(xx, reg, gg).loss;
  };

  // Runs one embedding-loss sub-loop (phase-1a or, with reg inactive, the
  // whole joint phase) under the given tag and epoch cap.
  auto run_embed_loop = [&](const std::string& tag, int cap) {
    if (cfg.embedder == EmbedKind::sgns) {
      double prev = nan;
      for (int e = 1; e <= cap; ++e) {
        double lr = detail::decayed_lr(cfg.lr_sgns, e, cap);
        double loss = detail::sgns_epoch(x, res.context, corpus, cfg.sgns_k_neg, cfg.batch, lr,
                                         sgns_rng, gx_scratch, gy_scratch, order);
        if (!std::isfinite(loss) || !x.all_finite())
          throw std::runtime_error(
              "training diverged: non-finite loss or embedding values; lower the learning rate");
        record(tag, loss, nan, nan, lr);
        if (e > 1 && convergence_check(prev, loss, cfg.tol)) break;
        prev = loss;
      }
    } else {
      detail::backtracking_minimize(x, embed_loss_grad, cfg.lr_embed, cap, cfg.tol,
                                    [&](double loss, double step) {
                                      record(tag, loss, nan, nan, step);
                                    });
    }
  };

  // PHASE 1: t rounds of alternation.
  for (int round = 1; round <= cfg.t; ++round) {
    run_embed_loop("phase1_embed_" + std::to_string(round), cfg.max_epochs_sub);
    if (reg_on) {
      if (resample && round > 1) resample_reg(static_cast<std::uint64_t>(round));
      std::string tag = "phase1_omega_" + std::to_string(round);
      detail::backtracking_minimize(x, omega_f, cfg.lr_omega, cfg.max_epochs_sub, cfg.tol,
                                    [&](double loss, double step) {
                                      record(tag, nan, loss, nan, step);
                                    });
    }
  }
  if (reg.active()) trace.theorem_pass_phase1 = theorem_check(x, reg.paths).pass_fraction();

  // PHASE 2: joint minimization of embedding loss + lambda * penalty.
  if (resample && cfg.t > 0) resample_reg(static_cast<std::uint64_t>(cfg.t) + 1);
  if (!reg_on) {
    run_embed_loop("phase2_joint", cfg.max_epochs_joint);
  } else if (cfg.embedder == EmbedKind::sgns) {
    // Stochastic corpus pass plus one full-batch penalty step per epoch; the
    // penalty step backtracks on increase and regrows mildly, scaled by
    // lambda so the trade-off weight is meaningful.
    Matrix omega_grad(g.n, cfg.d), trial(g.n, cfg.d);
    double omega_step = cfg.lambda * cfg.lr_omega;
    const double omega_step0 = omega_step;
    double prev_total = nan;
    for (int e = 1; e <= cfg.max_epochs_joint; ++e) {
      double lr = detail::decayed_lr(cfg.lr_sgns, e, cfg.max_epochs_joint);
      double embed_loss = detail::sgns_epoch(x, res.context, corpus, cfg.sgns_k_neg, cfg.batch,
                                             lr, sgns_rng, gx_scratch, gy_scratch, order);
      double om = omega_loss_grad(x, reg, &omega_grad).loss;
      if (cfg.lambda > 0 && omega_step > 0) {
        for (int halvings = 0; halvings <= 48; ++halvings) {
          trial = x;
          add_scaled(trial, -omega_step, omega_grad);
          double om_trial = omega_loss(trial, reg);
          if (om_trial <= om + 1e-12 * std::max(1.0, std::abs(om))) {
            x = trial;
            om = om_trial;
            omega_step = std::min(omega_step * 1.3, omega_step0 * 10.0);
            break;
          }
          omega_step *= 0.5;
        }
      }
      if (!x.all_finite())
        throw std::runtime_error(
            "training diverged: non-finite loss or embedding values; lower the learning rate");
      double total = embed_loss + cfg.lambda * om;
      record("phase2_joint", embed_loss, om, total, lr);
      if (e > 1 && convergence_check(prev_total, total, cfg.tol)) break;
      prev_total = total;
    }
  } else {
    double last_embed = nan, last_omega = nan;
    Matrix omega_scratch(g.n, cfg.d);
    auto joint_f = [&](const Matrix& xx, Matrix* gg) -> double {
      double le = embed_loss_grad(xx, gg);
      double om = omega_loss_grad(xx, reg, gg ? &omega_scratch : nullptr).loss;
      if (gg) add_scaled(*gg, cfg.lambda, omega_scratch);
      last_embed = le;
      last_omega = om;
      return le + cfg.lambda * om;
    };
    detail::backtracking_minimize(x, joint_f, cfg.lr_embed, cfg.max_epochs_joint, cfg.tol,
                                  [&](double loss, double step) {
                                    record("phase2_joint", last_embed, last_omega, loss, step);
                                  });
  }

  if (reg.active()) {
    trace.theorem_pass_final = theorem_check(x, reg.paths).pass_fraction();
    trace.path_hash = reg.paths.content_hash();
  }
  return res;
}

}  // namespace curvreg
