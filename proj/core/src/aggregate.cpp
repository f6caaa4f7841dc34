#include "hatemonger/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hatemonger/error.hpp"
#include "hatemonger/report.hpp"

namespace hm {

void AggregationConfig::validate() const {
  if (!(tau_t >= 0.0 && tau_t <= 1.0)) throw InputError("tau_t must lie in [0,1]");
  if (tau_fixed < 1) throw InputError("tau_fixed must be >= 1");
  if (k_bins < 2) throw InputError("k_bins must be >= 2");
}

std::string_view to_string(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::fixed: return "fixed";
    case FeatureMode::relational: return "relational";
    case FeatureMode::bins: return "bins";
    case FeatureMode::quantiles: return "quantiles";
    case FeatureMode::bins_quantiles: return "bins+quantiles";
    case FeatureMode::multimodal: return "multimodal";
  }
  return "unknown";
}

FeatureMode parse_feature_mode(std::string_view name) {
  for (auto m : {FeatureMode::fixed, FeatureMode::relational, FeatureMode::bins,
                 FeatureMode::quantiles, FeatureMode::bins_quantiles, FeatureMode::multimodal}) {
    if (name == to_string(m)) return m;
  }
  throw InputError("unknown feature mode '" + std::string(name) + "'");
}

std::size_t fixed_count(std::span<const double> scores, double tau_t) {
  return static_cast<std::size_t>(
      std::count_if(scores.begin(), scores.end(), [tau_t](double s) { return s >= tau_t; }));
}

int fixed_classify(std::span<const double> scores, double tau_t, std::size_t tau_fixed) {
  return fixed_count(scores, tau_t) >= tau_fixed ? 1 : 0;
}

std::vector<std::uint8_t> naive_labels(const Dataset& data, const AggregationConfig& config,
                                       Threads threads) {
  std::vector<std::uint8_t> out(data.user_count());
  parallel_for(data.user_count(), threads, [&](std::size_t u) {
    out[u] = static_cast<std::uint8_t>(
        fixed_classify(data.posts(static_cast<NodeId>(u)), config.tau_t, config.tau_fixed));
  });
  return out;
}

namespace {

double mean_label(std::span<const NodeId> neighbors, std::span<const std::uint8_t> naive) {
  if (neighbors.empty()) return 0.0;
  std::size_t hits = 0;
  for (NodeId v : neighbors) hits += naive[v];
  return static_cast<double>(hits) / static_cast<double>(neighbors.size());
}

void check_user(const SocialGraph& g, NodeId user) {
  if (user >= g.node_count()) throw InputError("unknown user index " + std::to_string(user));
}

std::size_t bin_of(double position, std::size_t k) {
  // position is in [0, k]; the upper edge belongs to the last bin.
  const auto i = static_cast<std::size_t>(position);
  return std::min(i, k - 1);
}

void check_bins(std::size_t k) {
  if (k < 2) throw InputError("histogram needs k >= 2 bins");
}

void bin_histogram_into(std::span<const double> scores, std::span<double> out) {
  const std::size_t k = out.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (double s : scores) out[bin_of(s * static_cast<double>(k), k)] += 1.0;
}

void quantile_histogram_into(std::span<const double> scores, std::span<double> out) {
  const std::size_t k = out.size();
  std::fill(out.begin(), out.end(), 0.0);
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  const double min = *lo;
  const double range = *hi - min;
  if (range == 0.0) {
    out[0] = static_cast<double>(scores.size());
    return;
  }
  for (double s : scores) out[bin_of((s - min) / range * static_cast<double>(k), k)] += 1.0;
}

}  // namespace

std::array<double, 3> relational_features(const SocialGraph& graph,
                                          std::span<const std::uint8_t> naive, NodeId user) {
  check_user(graph, user);
  return {static_cast<double>(naive[user]), mean_label(graph.followers(user), naive),
          mean_label(graph.followees(user), naive)};
}

std::array<double, 3> relational_features(const Dataset& data, NodeId user,
                                          const AggregationConfig& config) {
  check_user(data.graph(), user);
  const auto& g = data.graph();
  auto cf = [&](NodeId v) {
    return static_cast<double>(fixed_classify(data.posts(v), config.tau_t, config.tau_fixed));
  };
  auto mean_over = [&](std::span<const NodeId> nbrs) {
    if (nbrs.empty()) return 0.0;
    double sum = 0.0;
    for (NodeId v : nbrs) sum += cf(v);
    return sum / static_cast<double>(nbrs.size());
  };
  return {cf(user), mean_over(g.followers(user)), mean_over(g.followees(user))};
}

std::vector<double> bin_histogram(std::span<const double> scores, std::size_t k) {
  check_bins(k);
  std::vector<double> out(k);
  bin_histogram_into(scores, out);
  return out;
}

std::vector<double> quantile_histogram(std::span<const double> scores, std::size_t k) {
  check_bins(k);
  if (scores.empty()) throw DegenerateDataError("quantile histogram of a user with no posts");
  std::vector<double> out(k);
  quantile_histogram_into(scores, out);
  return out;
}

void softmax_inplace(std::span<double> v) {
  if (v.empty()) return;
  const double peak = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double& x : v) {
    x = std::exp(x - peak);
    sum += x;
  }
  for (double& x : v) x /= sum;
}

std::vector<double> softmax(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  softmax_inplace(out);
  return out;
}

std::vector<std::string> feature_schema(FeatureMode mode, std::size_t k_bins) {
  std::vector<std::string> schema;
  auto relational = [&] {
    schema.insert(schema.end(), {"cf_self", "cf_followers", "cf_followees"});
  };
  auto block = [&](const char* prefix) {
    for (std::size_t i = 0; i < k_bins; ++i) schema.push_back(prefix + std::to_string(i));
  };
  switch (mode) {
    case FeatureMode::fixed: schema.push_back("hateful_posts"); break;
    case FeatureMode::relational: relational(); break;
    case FeatureMode::bins: block("bin_"); break;
    case FeatureMode::quantiles: block("qbin_"); break;
    case FeatureMode::bins_quantiles:
      block("bin_");
      block("qbin_");
      break;
    case FeatureMode::multimodal:
      relational();
      block("bin_");
      block("qbin_");
      break;
  }
  return schema;
}

FeatureMatrix build_features(const Dataset& data, FeatureMode mode,
                             const AggregationConfig& config, Threads threads) {
  config.validate();
  FeatureMatrix fm;
  fm.mode = mode;
  fm.schema = feature_schema(mode, config.k_bins);
  const std::size_t n = data.user_count();
  const std::size_t cols = fm.cols();
  const std::size_t k = config.k_bins;
  fm.nodes.resize(n);
  fm.values.assign(n * cols, 0.0);

  const bool use_relational = mode == FeatureMode::relational || mode == FeatureMode::multimodal;
  const bool use_bins = mode == FeatureMode::bins || mode == FeatureMode::bins_quantiles ||
                        mode == FeatureMode::multimodal;
  const bool use_quantiles = mode == FeatureMode::quantiles ||
                             mode == FeatureMode::bins_quantiles ||
                             mode == FeatureMode::multimodal;

  std::vector<std::uint8_t> naive;
  if (use_relational) naive = naive_labels(data, config, threads);

  parallel_for(n, threads, [&](std::size_t r) {
    const auto u = static_cast<NodeId>(r);
    fm.nodes[r] = u;
    auto row = fm.row(r);
    const auto posts = data.posts(u);
    if (mode == FeatureMode::fixed) {
      row[0] = static_cast<double>(fixed_count(posts, config.tau_t));
      return;
    }
    std::size_t col = 0;
    if (use_relational) {
      const auto rel = relational_features(data.graph(), naive, u);
      std::copy(rel.begin(), rel.end(), row.begin());
      col += 3;
    }
    auto histogram_block = [&](auto&& fill) {
      auto block = row.subspan(col, k);
      col += k;
      if (posts.empty()) return;
      fill(posts, block);
      if (config.softmax_histograms) softmax_inplace(block);
    };
    if (use_bins) histogram_block(bin_histogram_into);
    if (use_quantiles) histogram_block(quantile_histogram_into);
  });
  return fm;
}

void write_features_csv(std::ostream& out, const FeatureMatrix& features, const IdMap& ids) {
  out << "user_id";
  for (const auto& name : features.schema) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < features.rows(); ++r) {
    out << ids.name(features.nodes[r]);
    for (double v : features.row(r)) out << ',' << format_number(v);
    out << '\n';
  }
}

}  // namespace hm
