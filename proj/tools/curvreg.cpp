// curvreg — command-line front end for the curvature-regularized embedding
// library. Subcommands:
//
//   train       learn an embedding and write embedding/trace/meta files
//   eval-nc     node-classification accuracy over repeated 60/40 splits
//   eval-lp     link-prediction MAP with per-repeat edge removal + retraining
//   distortion  distortion and curvature diagnostics for a saved embedding
//   case-study  paired baseline-vs-regularized runs on small synthetic graphs
//
// Every run is deterministic: re-running a command with identical arguments
// reproduces every output file byte for byte.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <curvreg/curvreg.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace curvreg;

namespace {

// ---------------------------------------------------------------------------
// shared option bundles

struct DataOpts {
  std::string edges;
  std::string labels;
  bool no_lcc = false;
};

struct LoadedData {
  Graph graph;
  LabelMap labels;      // empty label_of when no label file was given
  bool has_labels = false;
  int n_raw = 0;
  bool lcc_applied = false;
};

struct TrainFlags {
  std::string method = "sgns";
  std::string reg = "none";
  double lr = -1.0;  // <0: keep per-method defaults
  int neg = -1;      // <0: keep per-method defaults
};

void add_train_options(CLI::App* cmd, TrainConfig& cfg, TrainFlags& fl) {
  cmd->add_option("--method", fl.method, "embedder: mf | le | sgns")
      ->capture_default_str();
  cmd->add_option("--reg", fl.reg,
                  "curvature penalty path source: none | c (all pairs) | s (sampled pairs) | "
                  "a (walks)")
      ->capture_default_str();
  cmd->add_option("--dim", cfg.d, "embedding dimension")->capture_default_str();
  cmd->add_option("--lambda", cfg.lambda, "curvature penalty weight")->capture_default_str();
  cmd->add_option("--t", cfg.t, "alternating warm-up rounds before the joint phase")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "root random seed")->capture_default_str();
  cmd->add_option("--walks", cfg.walks_per_node, "random walks started per node")
      ->capture_default_str();
  cmd->add_option("--walk-length", cfg.walk_length, "nodes per random walk")
      ->capture_default_str();
  cmd->add_option("--window", cfg.window, "skip-gram context window")->capture_default_str();
  cmd->add_option("--neg", fl.neg,
                  "negative samples per positive (sgns: default 5) / non-edge terms per edge "
                  "(mf: default 5)");
  cmd->add_option("--p", cfg.p, "biased-walk return parameter")->capture_default_str();
  cmd->add_option("--q", cfg.q, "biased-walk in-out parameter")->capture_default_str();
  cmd->add_option("--batch", cfg.batch, "sgns pairs per update")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "relative loss-change convergence tolerance")
      ->capture_default_str();
  cmd->add_option("--max-epochs", cfg.max_epochs_sub, "epoch cap per warm-up sub-loop")
      ->capture_default_str();
  cmd->add_option("--max-epochs-joint", cfg.max_epochs_joint, "epoch cap for the joint phase")
      ->capture_default_str();
  cmd->add_option("--lr", fl.lr, "base learning rate for the embedding objective "
                                 "(default 0.05 for mf/le, 0.025 for sgns)");
  cmd->add_option("--lr-omega", cfg.lr_omega, "base learning rate for the curvature penalty")
      ->capture_default_str();
  cmd->add_option("--sample-size", cfg.reg_sample_size,
                  "node subset size for the sampled-pairs penalty")
      ->capture_default_str();
  cmd->add_flag("--resample-paths", cfg.resample_paths,
                "re-draw the sampled-pairs subset at each phase boundary");
  cmd->add_option("--rho-every", cfg.rho_every,
                  "record distortion in the trace every k epochs (0 = off)")
      ->capture_default_str();
}

void add_data_options(CLI::App* cmd, DataOpts& data, bool labels_required) {
  cmd->add_option("--edges", data.edges, "edge list file (two whitespace-separated ids per line)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* lab = cmd->add_option("--labels", data.labels, "node label file (\"id label\" per line)")
                  ->check(CLI::ExistingFile);
  if (labels_required) lab->required();
  cmd->add_flag("--no-lcc", data.no_lcc,
                "keep the full graph instead of restricting to its largest connected component");
}

void finalize_config(TrainConfig& cfg, const TrainFlags& fl) {
  cfg.embedder = parse_embed_kind(fl.method);
  cfg.reg = parse_reg_kind(fl.reg);
  if (fl.lr > 0) {
    cfg.lr_embed = fl.lr;
    cfg.lr_sgns = fl.lr;
  }
  // --neg drives whichever negative-sampling knob the chosen method reads.
  if (fl.neg >= 0) {
    if (cfg.embedder == EmbedKind::mf)
      cfg.mf_k_neg = fl.neg;
    else
      cfg.sgns_k_neg = fl.neg;
  }
  cfg.validate();
}

// ---------------------------------------------------------------------------
// I/O helpers

LoadedData load_data(const DataOpts& opts) {
  LoadedData out;
  std::ifstream in(opts.edges);
  if (!in) throw std::runtime_error("cannot open edge list: " + opts.edges);
  Graph raw = load_edge_list(in);
  out.n_raw = raw.n;

  LabelMap raw_labels;
  if (!opts.labels.empty()) {
    std::ifstream lin(opts.labels);
    if (!lin) throw std::runtime_error("cannot open label file: " + opts.labels);
    raw_labels = load_labels(lin, raw);
    out.has_labels = true;
  }

  if (opts.no_lcc) {
    out.graph = std::move(raw);
    out.labels = std::move(raw_labels);
  } else {
    std::vector<int> old_to_new;
    out.graph = largest_connected_component(raw, &old_to_new);
    out.lcc_applied = out.graph.n != raw.n;
    if (out.has_labels) out.labels = remap_labels(raw_labels, old_to_new, out.graph.n);
  }
  return out;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json config_to_json(const TrainConfig& cfg) {
  json j;
  j["method"] = embed_kind_name(cfg.embedder);
  j["reg"] = reg_kind_name(cfg.reg);
  j["dim"] = cfg.d;
  j["t"] = cfg.t;
  j["lambda"] = cfg.lambda;
  j["tol"] = cfg.tol;
  j["max_epochs"] = cfg.max_epochs_sub;
  j["max_epochs_joint"] = cfg.max_epochs_joint;
  j["lr_embed"] = cfg.lr_embed;
  j["lr_sgns"] = cfg.lr_sgns;
  j["lr_omega"] = cfg.lr_omega;
  j["mf_neg"] = cfg.mf_k_neg;
  j["walks"] = cfg.walks_per_node;
  j["walk_length"] = cfg.walk_length;
  j["window"] = cfg.window;
  j["sgns_neg"] = cfg.sgns_k_neg;
  j["batch"] = cfg.batch;
  j["p"] = cfg.p;
  j["q"] = cfg.q;
  j["sample_size"] = cfg.reg_sample_size;
  j["resample_paths"] = cfg.resample_paths;
  j["rho_every"] = cfg.rho_every;
  j["seed"] = cfg.seed;
  return j;
}

json data_to_json(const DataOpts& opts, const LoadedData& data) {
  json j;
  j["edges"] = opts.edges;
  if (!opts.labels.empty()) j["labels"] = opts.labels;
  j["n_raw"] = data.n_raw;
  j["n"] = data.graph.n;
  j["m"] = data.graph.num_edges();
  j["lcc"] = !opts.no_lcc;
  j["graph_hash"] = hash_hex(graph_hash(data.graph));
  return j;
}

json trace_to_json(const TrainTrace& trace) {
  json j;
  j["epochs"] = trace.records.size();
  j["path_hash"] = hash_hex(trace.path_hash);
  j["walk_hash"] = hash_hex(trace.walk_hash);
  j["shared_walks"] = trace.shared_walks;
  j["theorem_pass_init"] = trace.theorem_pass_init;
  j["theorem_pass_phase1"] = trace.theorem_pass_phase1;
  j["theorem_pass_final"] = trace.theorem_pass_final;
  return j;
}

void write_meta(const fs::path& dir, const json& meta) {
  auto os = open_out(dir / "meta.json");
  os << meta.dump(2) << '\n';
}

std::string dataset_name(const std::string& edges_path) {
  return fs::path(edges_path).stem().string();
}

// ---------------------------------------------------------------------------
// train

void write_train_outputs(const fs::path& out, const Graph& g, const TrainResult& res) {
  {
    auto os = open_out(out / "embedding.txt");
    save_matrix_text(os, res.embedding);
  }
  {
    auto os = open_out(out / "embedding.ids");
    save_id_map(os, g);
  }
  if (!res.context.empty()) {
    auto os = open_out(out / "context.txt");
    save_matrix_text(os, res.context);
  }
  {
    auto os = open_out(out / "trace.jsonl");
    res.trace.write_jsonl(os);
  }
}

int cmd_train(const DataOpts& data_opts, const TrainConfig& cfg, const std::string& out_dir) {
  LoadedData data = load_data(data_opts);
  fs::create_directories(out_dir);
  TrainResult res = two_phase_train(data.graph, cfg);
  write_train_outputs(out_dir, data.graph, res);

  json meta;
  meta["command"] = "train";
  meta["config"] = config_to_json(cfg);
  meta["data"] = data_to_json(data_opts, data);
  meta["trace"] = trace_to_json(res.trace);
  write_meta(out_dir, meta);

  std::cout << "trained " << embed_kind_name(cfg.embedder) << " embedding: n=" << data.graph.n
            << " d=" << cfg.d << " epochs=" << res.trace.records.size() << '\n'
            << "wrote " << (fs::path(out_dir) / "embedding.txt").string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// eval-nc

int cmd_eval_nc(const DataOpts& data_opts, const TrainConfig& cfg, const std::string& out_dir,
                const std::string& embedding_path, int repeats) {
  LoadedData data = load_data(data_opts);
  if (!data.has_labels) throw std::runtime_error("eval-nc: --labels is required");
  fs::create_directories(out_dir);

  Matrix emb;
  if (!embedding_path.empty()) {
    std::ifstream is(embedding_path);
    if (!is) throw std::runtime_error("cannot open embedding: " + embedding_path);
    emb = load_matrix_text(is);
    if (emb.rows != data.graph.n)
      throw std::runtime_error("embedding rows (" + std::to_string(emb.rows) +
                               ") do not match graph size (" + std::to_string(data.graph.n) +
                               "); was it trained with the same --edges/--no-lcc?");
  } else {
    TrainResult res = two_phase_train(data.graph, cfg);
    write_train_outputs(out_dir, data.graph, res);
    emb = std::move(res.embedding);
  }

  NcReport rep = nc_accuracy(emb, data.labels, repeats, cfg.seed);

  EvalReport row;
  row.dataset = dataset_name(data_opts.edges);
  row.method = embedding_path.empty() ? embed_kind_name(cfg.embedder) : "precomputed";
  row.regularizer = reg_kind_name(cfg.reg);
  row.task = "node_classification";
  row.metric = "accuracy";
  row.mean = rep.mean;
  row.sd = rep.sd;
  row.repeats = repeats;
  row.seed = cfg.seed;
  row.per_run = rep.per_run;

  {
    auto os = open_out(fs::path(out_dir) / "summary.csv");
    write_reports_csv(os, {row});
  }
  {
    auto os = open_out(fs::path(out_dir) / "report.txt");
    write_reports_text(os, {row});
  }

  json meta;
  meta["command"] = "eval-nc";
  meta["config"] = config_to_json(cfg);
  meta["data"] = data_to_json(data_opts, data);
  meta["eval"] = {{"task", "node_classification"},
                  {"repeats", repeats},
                  {"mean", rep.mean},
                  {"sd", rep.sd},
                  {"embedding", embedding_path.empty() ? json(nullptr) : json(embedding_path)}};
  write_meta(out_dir, meta);

  std::cout << "node classification accuracy: mean=" << format_double(rep.mean)
            << " sd=" << format_double(rep.sd) << " over " << repeats << " splits\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval-lp

int cmd_eval_lp(const DataOpts& data_opts, const TrainConfig& cfg, const std::string& out_dir,
                double removal_frac, int repeats) {
  LoadedData data = load_data(data_opts);
  fs::create_directories(out_dir);

  LpReport rep = lp_evaluate(data.graph, cfg, removal_frac, repeats, cfg.seed);

  EvalReport row;
  row.dataset = dataset_name(data_opts.edges);
  row.method = embed_kind_name(cfg.embedder);
  row.regularizer = reg_kind_name(cfg.reg);
  row.task = "link_prediction";
  row.metric = "map";
  row.mean = rep.mean;
  row.sd = rep.sd;
  row.repeats = repeats;
  row.seed = cfg.seed;
  row.per_run = rep.per_run;

  {
    auto os = open_out(fs::path(out_dir) / "summary.csv");
    write_reports_csv(os, {row});
  }
  {
    auto os = open_out(fs::path(out_dir) / "report.txt");
    write_reports_text(os, {row});
  }

  json meta;
  meta["command"] = "eval-lp";
  meta["config"] = config_to_json(cfg);
  meta["data"] = data_to_json(data_opts, data);
  meta["eval"] = {{"task", "link_prediction"},
                  {"removal_frac", removal_frac},
                  {"repeats", repeats},
                  {"mean", rep.mean},
                  {"sd", rep.sd}};
  write_meta(out_dir, meta);

  std::cout << "link prediction MAP: mean=" << format_double(rep.mean)
            << " sd=" << format_double(rep.sd) << " over " << repeats << " splits\n";
  return 0;
}

// ---------------------------------------------------------------------------
// distortion

int cmd_distortion(const DataOpts& data_opts, const std::string& embedding_path,
                   const std::string& out_dir, std::uint64_t seed, long long pair_count,
                   int sample_size) {
  LoadedData data = load_data(data_opts);
  const Graph& g = data.graph;
  fs::create_directories(out_dir);

  std::ifstream is(embedding_path);
  if (!is) throw std::runtime_error("cannot open embedding: " + embedding_path);
  Matrix emb = load_matrix_text(is);
  if (emb.rows != g.n)
    throw std::runtime_error("embedding rows (" + std::to_string(emb.rows) +
                             ") do not match graph size (" + std::to_string(g.n) + ")");

  // Distortion: exact over all ordered pairs when feasible, sampled otherwise.
  std::vector<std::pair<int, int>> pairs;
  bool sampled = g.n > kFullDistortionNodeCap;
  if (sampled) pairs = sample_distortion_pairs(g, mix_seed(seed, 7), pair_count);
  DistortionResult dist = distortion(emb, g, sampled ? &pairs : nullptr);

  // Curvature diagnostics over one shortest path per node pair; fall back to a
  // sampled node subset on large graphs.
  PathSet paths;
  if (g.n <= kFullPairsNodeCap) {
    paths = pair_paths(g, all_unordered_pairs(g), PathSource::all_pairs);
  } else {
    auto nodes = sample_node_set(g, std::min(sample_size, g.n), mix_seed(seed, 5));
    paths = pair_paths(g, all_unordered_pairs(g, nodes), PathSource::sampled_pairs);
  }
  CurvatureField field = curvature_field(emb, paths, g.n);
  TheoremReport theorem = theorem_check(emb, paths);

  {
    auto os = open_out(fs::path(out_dir) / "report.txt");
    os << "distortion " << format_double(dist.rho) << '\n'
       << "pairs_used " << dist.pairs_used << '\n'
       << "pairs_mode " << (sampled ? "sampled" : "all") << '\n'
       << "skipped_unreachable " << dist.skipped_unreachable << '\n'
       << "skipped_coincident " << dist.skipped_coincident << '\n'
       << "curvature_paths " << paths.paths.size() << '\n'
       << "curvature_samples " << field.samples.size() << '\n'
       << "curvature_degenerate " << field.degenerate_skips << '\n'
       << "cosine_mean " << format_double(field.mean_cosine()) << '\n'
       << "cosine_min " << format_double(field.min_cosine()) << '\n'
       << "cosine_max " << format_double(field.max_cosine()) << '\n'
       << "theorem_pass_fraction " << format_double(theorem.pass_fraction()) << '\n'
       << "theorem_max_angle_sum " << format_double(theorem.max_angle_sum) << '\n';
  }

  json meta;
  meta["command"] = "distortion";
  meta["data"] = data_to_json(data_opts, data);
  meta["embedding"] = embedding_path;
  meta["seed"] = seed;
  meta["distortion"] = {{"rho", dist.rho},
                        {"pairs_used", dist.pairs_used},
                        {"pairs_mode", sampled ? "sampled" : "all"},
                        {"skipped_unreachable", dist.skipped_unreachable},
                        {"skipped_coincident", dist.skipped_coincident}};
  meta["curvature"] = {{"paths", paths.paths.size()},
                       {"samples", field.samples.size()},
                       {"degenerate", field.degenerate_skips},
                       {"mean_cosine", field.mean_cosine()},
                       {"theorem_pass_fraction", theorem.pass_fraction()}};
  write_meta(out_dir, meta);

  std::cout << "distortion rho=" << format_double(dist.rho) << " (" << dist.pairs_used << ' '
            << (sampled ? "sampled" : "exact") << " pairs)\n"
            << "mean turning cosine " << format_double(field.mean_cosine())
            << ", flatness certificate pass fraction " << format_double(theorem.pass_fraction())
            << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// case-study

struct CaseGraph {
  std::string name;
  Graph graph;
};

void scatter_rows(std::ostream& os, const std::string& graph_name, const std::string& variant,
                  const Graph& g, const Matrix& emb) {
  for (int s = 0; s < g.n; ++s) {
    BfsTree tree = bfs_tree(g, s);
    for (int t = s + 1; t < g.n; ++t) {
      if (tree.dist[t] < 0) continue;
      double geo = 0.0;
      for (int v = t; v != s; v = tree.parent[v])
        geo += euclidean_distance(emb.row(v), emb.row(tree.parent[v]));
      os << graph_name << ',' << variant << ',' << s << ',' << t << ',' << tree.dist[t] << ','
         << format_double(geo) << ',' << format_double(euclidean_distance(emb.row(s), emb.row(t)))
         << '\n';
    }
  }
}

int cmd_case_study(const TrainConfig& cfg_in, const std::string& out_dir) {
  fs::create_directories(out_dir);

  std::vector<CaseGraph> graphs;
  graphs.push_back({"path", path_graph(30)});
  graphs.push_back({"cycle", cycle_graph(30)});
  graphs.push_back({"two_cluster", two_block_graph(15, 0.25, cfg_in.seed).graph});

  auto csv = open_out(fs::path(out_dir) / "case_study.csv");
  csv << "graph,variant,src,dst,graph_dist,geodesic_dist,euclidean_dist\n";
  auto report = open_out(fs::path(out_dir) / "report.txt");
  json meta_runs = json::array();

  for (const auto& cg : graphs) {
    TrainConfig reg_cfg = cfg_in;
    if (reg_cfg.reg == RegKind::none) reg_cfg.reg = RegKind::sampled_pairs;
    TrainConfig base_cfg = reg_cfg;
    base_cfg.reg = RegKind::none;

    TrainResult base = two_phase_train(cg.graph, base_cfg);
    TrainResult regd = two_phase_train(cg.graph, reg_cfg);

    double rho_base = distortion(base.embedding, cg.graph).rho;
    double rho_reg = distortion(regd.embedding, cg.graph).rho;

    scatter_rows(csv, cg.name, "baseline", cg.graph, base.embedding);
    scatter_rows(csv, cg.name, "regularized", cg.graph, regd.embedding);

    report << cg.name << " n=" << cg.graph.n << " m=" << cg.graph.num_edges()
           << " rho_baseline=" << format_double(rho_base)
           << " rho_regularized=" << format_double(rho_reg) << '\n';
    std::cout << cg.name << ": rho " << format_double(rho_base) << " -> "
              << format_double(rho_reg) << '\n';

    json run;
    run["graph"] = cg.name;
    run["n"] = cg.graph.n;
    run["m"] = cg.graph.num_edges();
    run["rho_baseline"] = rho_base;
    run["rho_regularized"] = rho_reg;
    run["theorem_pass_final"] = regd.trace.theorem_pass_final;
    meta_runs.push_back(run);
  }

  json meta;
  meta["command"] = "case-study";
  meta["config"] = config_to_json(cfg_in);
  meta["runs"] = meta_runs;
  write_meta(out_dir, meta);
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"curvature-regularized graph embeddings: training, evaluation, diagnostics"};
  app.require_subcommand(1);

  // train
  DataOpts tr_data;
  TrainConfig tr_cfg;
  TrainFlags tr_flags;
  std::string tr_out;
  auto* train = app.add_subcommand("train", "learn an embedding and write it to --out");
  add_data_options(train, tr_data, /*labels_required=*/false);
  add_train_options(train, tr_cfg, tr_flags);
  train->add_option("--out", tr_out, "output directory")->required();
  train->callback([&] {
    finalize_config(tr_cfg, tr_flags);
    cmd_train(tr_data, tr_cfg, tr_out);
  });

  // eval-nc
  DataOpts nc_data;
  TrainConfig nc_cfg;
  TrainFlags nc_flags;
  std::string nc_out, nc_embedding;
  int nc_repeats = 10;
  auto* evnc = app.add_subcommand(
      "eval-nc", "node-classification accuracy over repeated 60/40 splits");
  add_data_options(evnc, nc_data, /*labels_required=*/true);
  add_train_options(evnc, nc_cfg, nc_flags);
  evnc->add_option("--out", nc_out, "output directory")->required();
  evnc->add_option("--embedding", nc_embedding,
                   "score this saved embedding instead of training one")
      ->check(CLI::ExistingFile);
  evnc->add_option("--repeats", nc_repeats, "number of random splits")->capture_default_str();
  evnc->callback([&] {
    finalize_config(nc_cfg, nc_flags);
    cmd_eval_nc(nc_data, nc_cfg, nc_out, nc_embedding, nc_repeats);
  });

  // eval-lp
  DataOpts lp_data;
  TrainConfig lp_cfg;
  TrainFlags lp_flags;
  std::string lp_out;
  double lp_frac = 0.4;
  int lp_repeats = 1;
  auto* evlp = app.add_subcommand(
      "eval-lp", "link-prediction MAP with edge removal and per-split retraining");
  add_data_options(evlp, lp_data, /*labels_required=*/false);
  add_train_options(evlp, lp_cfg, lp_flags);
  evlp->add_option("--out", lp_out, "output directory")->required();
  evlp->add_option("--removal-frac", lp_frac, "fraction of edges hidden for testing")
      ->capture_default_str();
  evlp->add_option("--repeats", lp_repeats, "independent splits")->capture_default_str();
  evlp->callback([&] {
    finalize_config(lp_cfg, lp_flags);
    cmd_eval_lp(lp_data, lp_cfg, lp_out, lp_frac, lp_repeats);
  });

  // distortion
  DataOpts di_data;
  std::string di_out, di_embedding;
  std::uint64_t di_seed = 0;
  long long di_pairs = -1;
  int di_sample = 64;
  auto* dist = app.add_subcommand(
      "distortion", "distortion and curvature diagnostics for a saved embedding");
  add_data_options(dist, di_data, /*labels_required=*/false);
  dist->add_option("--embedding", di_embedding, "embedding file from `curvreg train`")
      ->required()
      ->check(CLI::ExistingFile);
  dist->add_option("--out", di_out, "output directory")->required();
  dist->add_option("--seed", di_seed, "seed for pair/path sampling on large graphs")
      ->capture_default_str();
  dist->add_option("--pairs", di_pairs,
                   "sampled pair count on large graphs (-1 = 100 per node)")
      ->capture_default_str();
  dist->add_option("--sample-size", di_sample,
                   "node subset size for curvature diagnostics on large graphs")
      ->capture_default_str();
  dist->callback([&] { cmd_distortion(di_data, di_embedding, di_out, di_seed, di_pairs, di_sample); });

  // case-study
  TrainConfig cs_cfg;
  cs_cfg.embedder = EmbedKind::le;
  cs_cfg.reg = RegKind::sampled_pairs;
  cs_cfg.d = 2;
  cs_cfg.lambda = 1.0;
  TrainFlags cs_flags;
  cs_flags.method = "le";
  cs_flags.reg = "s";
  std::string cs_out;
  auto* cs = app.add_subcommand(
      "case-study", "paired baseline-vs-regularized runs on small synthetic graphs");
  add_train_options(cs, cs_cfg, cs_flags);
  cs->add_option("--out", cs_out, "output directory")->required();
  cs->callback([&] {
    finalize_config(cs_cfg, cs_flags);
    cmd_case_study(cs_cfg, cs_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
