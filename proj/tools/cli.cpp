#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hatemonger/aggregate.hpp"
#include "hatemonger/dataset.hpp"
#include "hatemonger/diffusion.hpp"
#include "hatemonger/error.hpp"
#include "hatemonger/evaluate.hpp"
#include "hatemonger/graph_stats.hpp"
#include "hatemonger/ingest.hpp"
#include "hatemonger/logreg.hpp"
#include "hatemonger/synth.hpp"

namespace hm::cli {

namespace {

struct InputFlags {
  std::string edges;
  std::string scores;
  std::string labels;
  std::string report;
  bool wcc = true;
  bool allow_zero_posts = false;
  bool drop_score_only = false;

  Json to_json() const {
    auto j = Json::object();
    j.set("edges", edges);
    j.set("scores", scores);
    j.set("labels", labels);
    j.set("restrict_to_wcc", wcc);
    j.set("allow_zero_post_users", allow_zero_posts);
    j.set("keep_score_only_users", !drop_score_only);
    return j;
  }
};

struct Options {
  InputFlags input;
  EvalConfig eval;
  std::string mode = "multimodal";
  std::string out;
  unsigned threads = Threads::hardware().count;
  bool raw_histograms = false;
  std::vector<std::size_t> sweep;
  bool fixed_belief_threshold = false;
  std::string direction = "followees";
  std::string seed_mode = "fraction";
  std::string log;
  PowerLawOptions gamma;
  bool no_correction = false;
  SynthConfig synth;
  std::vector<double> hate_beta{8.0, 2.0};
  std::vector<double> normal_beta{2.0, 8.0};
};

std::ifstream open_input(const std::string& path, const char* what) {
  if (path.empty()) throw InputError(std::string("missing --") + what);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + std::string(what) + " file '" + path + "'");
  return in;
}

template <typename Parse>
auto parse_file(const std::string& path, const char* what, Parse parse) {
  auto in = open_input(path, what);
  try {
    return parse(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// Writes to --out when set, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {
    if (!path.empty()) {
      if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty()) {
        std::filesystem::create_directories(parent);
      }
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return path_.empty() ? fallback_ : file_; }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ofstream file_;
};

/// Sidecar reproduction record for tabular outputs.
void echo_config(const std::string& out_path, const Json& config) {
  if (out_path.empty()) return;
  std::ofstream f(out_path + ".config.json", std::ios::binary);
  if (!f) throw InputError("cannot write '" + out_path + ".config.json'");
  f << config.dump() << '\n';
}

void finalize(Options& o) {
  o.eval.aggregation.softmax_histograms = !o.raw_histograms;
  o.eval.tune_diffusion_threshold = !o.fixed_belief_threshold;
  o.eval.diffusion.direction = parse_direction(o.direction);
  o.eval.diffusion.seed = parse_seed_mode(o.seed_mode);
  o.gamma.continuity_correction = !o.no_correction;
  if (o.hate_beta.size() != 2 || o.normal_beta.size() != 2) {
    throw InputError("Beta parameters take two values: a,b");
  }
  o.synth.hate_scores = {o.hate_beta[0], o.hate_beta[1]};
  o.synth.normal_scores = {o.normal_beta[0], o.normal_beta[1]};
  if (o.threads < 1) throw InputError("--threads must be >= 1");
}

Json aggregation_json(const AggregationConfig& a) {
  auto j = Json::object();
  j.set("tau_t", a.tau_t);
  j.set("tau_fixed", a.tau_fixed);
  j.set("k", a.k_bins);
  j.set("softmax_histograms", a.softmax_histograms);
  return j;
}

Json diffusion_json(const DiffusionConfig& d) {
  auto j = Json::object();
  j.set("direction", std::string(to_string(d.direction)));
  j.set("seed_mode", std::string(to_string(d.seed)));
  j.set("max_iters", d.max_iters);
  j.set("tol", d.tol);
  j.set("threshold", d.threshold);
  return j;
}

BoundDataset load_dataset(const Options& o, bool need_labels, std::ostream& err) {
  const auto edges = parse_file(o.input.edges, "edges", [](std::istream& in) {
    return read_edge_list(in);
  });
  const auto graph = [&] {
    try {
      return SocialGraph::build(edges);
    } catch (const InputError& e) {
      throw InputError(o.input.edges + ": " + e.what());
    }
  }();
  const auto scores = parse_file(o.input.scores, "scores", [](std::istream& in) {
    return parse_scores(in);
  });
  LabelSet labels;
  if (need_labels || !o.input.labels.empty()) {
    labels = parse_file(o.input.labels, "labels", [](std::istream& in) {
      return parse_labels(in);
    });
  }
  BindPolicy policy;
  policy.restrict_to_wcc = o.input.wcc;
  policy.allow_zero_post_users = o.input.allow_zero_posts;
  policy.keep_score_only_users = !o.input.drop_score_only;
  auto bound = bind_dataset(graph, scores, labels, policy);
  const auto summary = bound.discards.to_json().dump(-1);
  if (o.input.report.empty()) {
    err << summary << '\n';
  } else {
    std::ofstream f(o.input.report, std::ios::binary);
    if (!f) throw InputError("cannot write '" + o.input.report + "'");
    f << summary << '\n';
  }
  return bound;
}

void cmd_stats(const Options& o, std::ostream& out) {
  const auto edges = parse_file(o.input.edges, "edges", [](std::istream& in) {
    return read_edge_list(in);
  });
  const auto graph = [&] {
    try {
      return SocialGraph::build(edges);
    } catch (const InputError& e) {
      throw InputError(o.input.edges + ": " + e.what());
    }
  }();
  std::vector<std::string> isolated;
  if (!o.input.scores.empty()) {
    const auto scores = parse_file(o.input.scores, "scores", [](std::istream& in) {
      return parse_scores(in);
    });
    isolated.assign(scores.users().begin(), scores.users().end());
  }
  const auto s = compute_stats(graph, isolated, o.gamma, Threads{o.threads});
  auto j = Json::object();
  auto config = Json::object();
  config.set("edges", o.input.edges);
  config.set("scores", o.input.scores);
  config.set("k_min", o.gamma.k_min);
  config.set("continuity_correction", o.gamma.continuity_correction);
  j.set("config", std::move(config));
  j.set("nodes", s.node_count);
  j.set("edges", s.edge_count);
  j.set("n_components", s.n_components);
  j.set("n_singletons", s.n_singletons);
  j.set("largest_wcc_nodes", s.largest_wcc_nodes);
  j.set("largest_wcc_edges", s.largest_wcc_edges);
  j.set("clustering_coefficient", s.clustering_coefficient);
  j.set("powerlaw_gamma", s.powerlaw_gamma);
  Sink sink(o.out, out);
  sink.stream() << j.dump() << '\n';
}

FeatureMode require_feature_mode(const std::string& name) {
  const auto mode = parse_eval_mode(name);
  const auto fm = feature_mode(mode);
  if (!fm) throw InputError("mode '" + name + "' does not define a feature matrix");
  return *fm;
}

void cmd_features(const Options& o, std::ostream& out, std::ostream& err) {
  const auto mode = require_feature_mode(o.mode);
  const auto bound = load_dataset(o, false, err);
  const auto fm = build_features(bound.dataset, mode, o.eval.aggregation, Threads{o.threads});
  Sink sink(o.out, out);
  write_features_csv(sink.stream(), fm, bound.dataset.graph().ids());
  auto config = Json::object();
  config.set("command", "features");
  config.set("mode", std::string(to_string(mode)));
  config.set("inputs", o.input.to_json());
  config.set("aggregation", aggregation_json(o.eval.aggregation));
  echo_config(o.out, config);
}

void cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  // fixed trains a one-feature model on the hateful-post count.
  const auto mode = require_feature_mode(o.mode);
  const auto bound = load_dataset(o, true, err);
  const auto& data = bound.dataset;
  const auto fm = build_features(data, mode, o.eval.aggregation, Threads{o.threads});
  const auto labeled = data.labeled_nodes();
  std::vector<double> x;
  std::vector<int> y;
  x.reserve(labeled.size() * fm.cols());
  for (NodeId u : labeled) {
    const auto row = fm.row(u);
    x.insert(x.end(), row.begin(), row.end());
    y.push_back(*data.label(u));
  }
  const auto result = train_logreg_traced({x, labeled.size(), fm.cols()}, y, o.eval.train);
  const auto& m = result.model;
  auto j = Json::object();
  auto config = o.eval.to_json(parse_eval_mode(o.mode));
  config.set("inputs", o.input.to_json());
  j.set("config", std::move(config));
  j.set("schema", to_json_array(fm.schema));
  j.set("weights", to_json_array(m.weights));
  j.set("bias", m.bias);
  j.set("mean", to_json_array(m.standardization.mean));
  j.set("scale", to_json_array(m.standardization.scale));
  j.set("decision_threshold", m.decision_threshold);
  j.set("iterations", result.iterations);
  j.set("converged", result.converged);
  j.set("gradient_max_norm", result.gradient_max_norm);
  j.set("training_examples", labeled.size());
  Sink sink(o.out, out);
  sink.stream() << j.dump() << '\n';
}

void cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const auto bound = load_dataset(o, true, err);
  std::vector<std::size_t> thresholds = o.sweep;
  if (thresholds.empty()) thresholds = {1, 3, 10, 50, 100};
  const auto rows = threshold_sweep(bound.dataset, thresholds, o.eval.aggregation.tau_t);
  Sink sink(o.out, out);
  write_sweep_csv(sink.stream(), rows);
  auto config = Json::object();
  config.set("command", "sweep");
  config.set("inputs", o.input.to_json());
  config.set("tau_t", o.eval.aggregation.tau_t);
  config.set("thresholds", to_json_array(thresholds));
  echo_config(o.out, config);
}

void cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const auto mode = parse_eval_mode(o.mode);
  if (!o.sweep.empty()) {
    if (mode != EvalMode::fixed) throw InputError("--sweep applies to --mode fixed only");
    cmd_sweep(o, out, err);
    return;
  }
  const auto bound = load_dataset(o, true, err);
  auto report = cross_validate(bound.dataset, mode, o.eval, Threads{o.threads});
  report.config.set("inputs", o.input.to_json());
  Sink sink(o.out, out);
  sink.stream() << report.to_json().dump() << '\n';
}

void cmd_diffuse(const Options& o, std::ostream& out, std::ostream& err) {
  const auto bound = load_dataset(o, false, err);
  const auto& data = bound.dataset;
  auto beliefs = degroot_init(data, o.eval.aggregation, o.eval.diffusion.seed);
  const auto result =
      degroot_run(data.graph(), std::move(beliefs), o.eval.diffusion, Threads{o.threads});
  {
    Sink sink(o.out, out);
    auto& s = sink.stream();
    s << "user_id,belief\n";
    for (NodeId u = 0; u < data.user_count(); ++u) {
      s << data.graph().ids().name(u) << ',' << format_number(result.beliefs[u]) << '\n';
    }
  }
  if (!o.log.empty()) {
    std::ofstream log(o.log, std::ios::binary);
    if (!log) throw InputError("cannot write '" + o.log + "'");
    for (std::size_t i = 0; i < result.changes.size(); ++i) {
      auto line = Json::object();
      line.set("iteration", i + 1);
      line.set("max_change", result.changes[i]);
      log << line.dump(-1) << '\n';
    }
  }
  auto config = Json::object();
  config.set("command", "diffuse");
  config.set("inputs", o.input.to_json());
  config.set("aggregation", aggregation_json(o.eval.aggregation));
  config.set("diffusion", diffusion_json(o.eval.diffusion));
  config.set("iterations", result.iterations);
  config.set("converged", result.converged);
  echo_config(o.out, config);
}

void cmd_synth(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw InputError("synth requires --out <directory>");
  const auto synth = generate(o.synth);
  write_synth_files(o.out, synth, o.synth);
  out << "wrote " << synth.dataset.user_count() << " users, "
      << synth.dataset.graph().edge_count() << " edges, " << synth.dataset.total_posts()
      << " posts\n";
}

void add_input_flags(CLI::App& cmd, Options& o, bool labels_required) {
  cmd.add_option("--edges", o.input.edges, "Edge file (src_id,dst_id; src follows dst)")
      ->required();
  cmd.add_option("--scores", o.input.scores, "Post scores (user_id,post_id,score)")->required();
  auto* labels = cmd.add_option("--labels", o.input.labels, "User labels (user_id,label)");
  if (labels_required) labels->required();
  cmd.add_flag("--wcc,!--no-wcc", o.input.wcc, "Restrict to the largest weakly connected component (default on)");
  cmd.add_flag("--allow-zero-posts", o.input.allow_zero_posts,
               "Accept labeled users without posts (their post features are zero)");
  cmd.add_flag("--drop-score-only", o.input.drop_score_only,
               "Ignore scored users that do not appear in the edge file");
  cmd.add_option("--report", o.input.report, "Write the discard summary JSON here instead of stderr");
}

void add_aggregation_flags(CLI::App& cmd, Options& o) {
  auto& a = o.eval.aggregation;
  cmd.add_option("--tau-t", a.tau_t, "Post-level hate threshold")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--tau-fixed", a.tau_fixed, "Hateful-post count for the naive classifier")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--bins", a.k_bins, "Histogram bins k")->check(CLI::Range(2, 100000));
  cmd.add_flag("--raw-histograms", o.raw_histograms, "Use raw bin counts instead of softmax");
}

void add_learning_flags(CLI::App& cmd, Options& o) {
  auto& t = o.eval.train;
  cmd.add_option("--l2", t.l2, "L2 penalty on logistic-regression weights")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--max-iters", t.max_iters, "Gradient-descent iteration cap");
  cmd.add_option("--grad-tol", t.grad_tol, "Gradient max-norm stopping tolerance");
  cmd.add_option("--decision-threshold", t.decision_threshold, "Probability threshold tau_U")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_flag("--tune-threshold", t.tune_threshold, "Pick tau_U by training-fold F1");
  cmd.add_option("--folds", o.eval.folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  cmd.add_option("--seed", o.eval.seed, "Fold assignment seed");
}

void add_diffusion_flags(CLI::App& cmd, Options& o) {
  auto& d = o.eval.diffusion;
  cmd.add_option("--direction", o.direction, "Neighbors averaged: followees, followers, undirected")
      ->check(CLI::IsMember({"followees", "followers", "undirected"}));
  cmd.add_option("--seed-mode", o.seed_mode, "Initial belief: fraction or binary")
      ->check(CLI::IsMember({"fraction", "binary"}));
  cmd.add_option("--diffusion-iters", d.max_iters, "Diffusion iteration cap")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--diffusion-tol", d.tol, "Diffusion max-change tolerance")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--belief-threshold", d.threshold, "Belief classification threshold")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Hate-monger classification by aggregating post scores over users and ego networks",
               "hatemonger"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);

  auto* stats = app.add_subcommand("stats", "Graph statistics as JSON");
  stats->add_option("--edges", o.input.edges, "Edge file (src_id,dst_id)")->required();
  stats->add_option("--scores", o.input.scores,
                    "Optional score file; its users count as isolated nodes");
  stats->add_option("--k-min", o.gamma.k_min, "Smallest degree in the power-law fit")
      ->check(CLI::PositiveNumber);
  stats->add_flag("--no-correction", o.no_correction,
                  "Use k_min instead of k_min - 1/2 as the power-law cutoff");
  stats->add_option("--out", o.out, "Output path (default stdout)");

  auto* features = app.add_subcommand("features", "Export the per-user feature matrix as CSV");
  add_input_flags(*features, o, false);
  features->add_option("--mode", o.mode,
                       "fixed, relational, bins, quantiles, bins+quantiles, multimodal");
  add_aggregation_flags(*features, o);
  features->add_option("--out", o.out, "Output path (default stdout)");

  auto* train = app.add_subcommand("train", "Fit logistic regression on all labeled users");
  add_input_flags(*train, o, true);
  train->add_option("--mode", o.mode,
                    "fixed, relational, bins, quantiles, bins+quantiles, multimodal");
  add_aggregation_flags(*train, o);
  add_learning_flags(*train, o);
  train->add_option("--out", o.out, "Output path (default stdout)");

  auto* eval = app.add_subcommand("eval", "Stratified k-fold evaluation report as JSON");
  add_input_flags(*eval, o, true);
  eval->add_option("--mode", o.mode,
                   "fixed, relational, bins, quantiles, bins+quantiles, multimodal, degroot");
  add_aggregation_flags(*eval, o);
  add_learning_flags(*eval, o);
  add_diffusion_flags(*eval, o);
  eval->add_flag("--fixed-belief-threshold", o.fixed_belief_threshold,
                 "Use --belief-threshold instead of picking it by training-fold F1");
  eval->add_option("--sweep", o.sweep, "With --mode fixed: count thresholds to sweep (CSV out)")
      ->delimiter(',');
  eval->add_option("--out", o.out, "Output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Naive classifier threshold sweep as CSV");
  add_input_flags(*sweep, o, true);
  sweep->add_option("--tau-t", o.eval.aggregation.tau_t, "Post-level hate threshold")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--thresholds", o.sweep, "Ascending count thresholds (default 1,3,10,50,100)")
      ->delimiter(',');
  sweep->add_option("--out", o.out, "Output path (default stdout)");

  auto* diffuse = app.add_subcommand("diffuse", "DeGroot belief diffusion; writes user_id,belief");
  add_input_flags(*diffuse, o, false);
  add_aggregation_flags(*diffuse, o);
  add_diffusion_flags(*diffuse, o);
  diffuse->add_option("--log", o.log, "Convergence log (JSON lines: iteration, max_change)");
  diffuse->add_option("--out", o.out, "Output path (default stdout)");

  auto* synth = app.add_subcommand("synth", "Generate a planted-community synthetic dataset");
  auto& sc = o.synth;
  synth->add_option("--n", sc.n_users, "Number of users");
  synth->add_option("--hate-fraction", sc.hate_fraction, "Share of planted hate-mongers");
  synth->add_option("--p-in", sc.p_in, "Directed edge probability within a block");
  synth->add_option("--p-out", sc.p_out, "Directed edge probability across blocks");
  synth->add_option("--posts-min", sc.posts_min, "Minimum posts per user");
  synth->add_option("--posts-max", sc.posts_max, "Maximum posts per user");
  synth->add_option("--hate-beta", o.hate_beta, "Beta(a,b) of hateful posts")->delimiter(',');
  synth->add_option("--normal-beta", o.normal_beta, "Beta(a,b) of normal posts")->delimiter(',');
  synth->add_option("--ambiguity", sc.ambiguity,
                    "Probability a hateful user's post looks normal");
  synth->add_option("--labeled", sc.labeled_users, "Users to label (0 = all)");
  synth->add_option("--seed", sc.seed, "Generator seed");
  synth->add_option("--out", o.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return ok;
    err << "error: " << e.what() << '\n';
    return input_error;
  }

  try {
    finalize(o);
    if (stats->parsed()) cmd_stats(o, out);
    else if (features->parsed()) cmd_features(o, out, err);
    else if (train->parsed()) cmd_train(o, out, err);
    else if (eval->parsed()) cmd_eval(o, out, err);
    else if (sweep->parsed()) cmd_sweep(o, out, err);
    else if (diffuse->parsed()) cmd_diffuse(o, out, err);
    else if (synth->parsed()) cmd_synth(o, out);
    return ok;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return input_error;
  } catch (const DegenerateDataError& e) {
    err << "degenerate data: " << e.what() << '\n';
    return degenerate;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "input error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
}

}  // namespace hm::cli
