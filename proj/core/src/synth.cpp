#include "hatemonger/synth.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "hatemonger/error.hpp"
#include "hatemonger/random.hpp"

namespace hm {

void SynthConfig::validate() const {
  if (n_users < 2) throw InputError("synth: need at least 2 users");
  if (!(hate_fraction > 0.0 && hate_fraction < 1.0)) {
    throw InputError("synth: hate_fraction must lie in (0,1)");
  }
  const auto n_hate = static_cast<std::size_t>(std::llround(hate_fraction * n_users));
  if (hate_fraction * static_cast<double>(n_users) < 1.0 || n_hate < 1 || n_hate >= n_users) {
    throw InputError("synth: hate_fraction * n_users must leave both blocks non-empty");
  }
  for (double p : {p_in, p_out}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("synth: edge probabilities must lie in [0,1]");
  }
  if (posts_min > posts_max) throw InputError("synth: posts_min exceeds posts_max");
  for (double v : {hate_scores.a, hate_scores.b, normal_scores.a, normal_scores.b}) {
    if (!(v > 0.0)) throw InputError("synth: Beta parameters must be > 0");
  }
  if (!(ambiguity >= 0.0 && ambiguity <= 1.0)) throw InputError("synth: ambiguity must lie in [0,1]");
  if (labeled_users > n_users) throw InputError("synth: labeled_users exceeds n_users");
}

Json SynthConfig::to_json() const {
  auto j = Json::object();
  j.set("n_users", n_users);
  j.set("hate_fraction", hate_fraction);
  j.set("p_in", p_in);
  j.set("p_out", p_out);
  j.set("posts_min", posts_min);
  j.set("posts_max", posts_max);
  j.set("hate_beta", Json::array({hate_scores.a, hate_scores.b}));
  j.set("normal_beta", Json::array({normal_scores.a, normal_scores.b}));
  j.set("ambiguity", ambiguity);
  j.set("labeled_users", labeled_users);
  j.set("seed", seed);
  j.set("rng", "mt19937_64 streams: membership=1 edges=2 posts=3 labels=4");
  return j;
}

namespace {

// Appends edges between the ordered pairs (src in from, dst in to), skipping
// src == dst when the blocks coincide.
void sample_block_pair(const std::vector<NodeId>& from, const std::vector<NodeId>& to, bool same,
                       double p, Rng& rng, std::vector<Edge>& out) {
  if (p <= 0.0 || from.empty() || to.empty()) return;
  const std::uint64_t width = same ? to.size() - 1 : to.size();
  const std::uint64_t total = static_cast<std::uint64_t>(from.size()) * width;
  if (width == 0) return;
  std::uint64_t pos = rng.geometric(p);
  while (pos < total) {
    const auto i = static_cast<std::size_t>(pos / width);
    auto j = static_cast<std::size_t>(pos % width);
    if (same && j >= i) ++j;
    out.push_back({from[i], to[j]});
    const std::uint64_t skip = rng.geometric(p);
    if (skip >= total - pos) break;
    pos += skip + 1;
  }
}

}  // namespace

SynthDataset generate(const SynthConfig& config) {
  config.validate();
  const std::size_t n = config.n_users;
  const auto n_hate = static_cast<std::size_t>(std::llround(config.hate_fraction * n));

  SynthDataset out;
  out.planted.assign(n, 0);
  {
    Rng rng(config.seed, 1);
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    shuffle(std::span<NodeId>(perm), rng);
    for (std::size_t i = 0; i < n_hate; ++i) out.planted[perm[i]] = 1;
  }

  std::vector<NodeId> blocks[2];
  for (NodeId u = 0; u < n; ++u) blocks[out.planted[u]].push_back(u);

  std::vector<Edge> edges;
  {
    Rng rng(config.seed, 2);
    const double expected =
        config.p_in * (static_cast<double>(n_hate) * static_cast<double>(n_hate) +
                       static_cast<double>(n - n_hate) * static_cast<double>(n - n_hate)) +
        config.p_out * 2.0 * static_cast<double>(n_hate) * static_cast<double>(n - n_hate);
    edges.reserve(static_cast<std::size_t>(expected * 1.01) + 16);
    for (int a : {1, 0}) {
      for (int b : {1, 0}) {
        sample_block_pair(blocks[a], blocks[b], a == b, a == b ? config.p_in : config.p_out, rng,
                          edges);
      }
    }
  }

  IdMap ids;
  ids.reserve(n);
  for (std::size_t u = 0; u < n; ++u) ids.intern("u" + std::to_string(u));
  SocialGraph graph = SocialGraph::from_indexed(std::move(ids), std::move(edges));

  std::vector<std::uint64_t> offsets(n + 1, 0);
  std::vector<double> scores;
  {
    Rng rng(config.seed, 3);
    const std::size_t span_posts = config.posts_max - config.posts_min + 1;
    scores.reserve(n * (config.posts_min + config.posts_max) / 2);
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t count = config.posts_min + static_cast<std::size_t>(rng.below(span_posts));
      const bool hateful = out.planted[u] == 1;
      for (std::size_t p = 0; p < count; ++p) {
        const bool coded = hateful && rng.uniform() < config.ambiguity;
        const auto& dist = hateful && !coded ? config.hate_scores : config.normal_scores;
        scores.push_back(rng.beta(dist.a, dist.b));
      }
      offsets[u + 1] = scores.size();
    }
  }

  std::vector<std::int8_t> labels(n, -1);
  if (config.labeled_users == 0 || config.labeled_users == n) {
    labels = out.planted;
  } else {
    Rng rng(config.seed, 4);
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    shuffle(std::span<NodeId>(perm), rng);
    for (std::size_t i = 0; i < config.labeled_users; ++i) labels[perm[i]] = out.planted[perm[i]];
  }

  out.dataset = Dataset(std::move(graph), std::move(offsets), std::move(scores), std::move(labels));
  return out;
}

void write_synth_files(const std::filesystem::path& dir, const SynthDataset& synth,
                       const SynthConfig& config) {
  std::filesystem::create_directories(dir);
  const auto& data = synth.dataset;
  const auto& g = data.graph();
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw InputError("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("edges.csv");
    for (const auto& e : g.edges()) f << g.ids().name(e.src) << ',' << g.ids().name(e.dst) << '\n';
  }
  {
    auto f = open("scores.csv");
    std::size_t post = 0;
    for (NodeId u = 0; u < data.user_count(); ++u) {
      for (double s : data.posts(u)) {
        f << g.ids().name(u) << ",p" << post++ << ',' << format_number(s) << '\n';
      }
    }
  }
  {
    auto f = open("labels.csv");
    for (NodeId u = 0; u < data.user_count(); ++u) {
      if (auto l = data.label(u)) f << g.ids().name(u) << ',' << *l << '\n';
    }
  }
  {
    auto f = open("ground_truth.csv");
    for (NodeId u = 0; u < data.user_count(); ++u) {
      f << g.ids().name(u) << ',' << static_cast<int>(synth.planted[u]) << '\n';
    }
  }
  {
    auto f = open("config.json");
    f << config.to_json().dump() << '\n';
  }
}

}  // namespace hm
