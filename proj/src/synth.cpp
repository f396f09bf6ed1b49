#include "medcascade/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "medcascade/random.hpp"

namespace medcascade::synth {
namespace {

constexpr std::string_view kClaimPhrases[] = {
    "Only women get this kind of anxiety, 80% of cases prove it",
    "Every man with depression is just hiding weakness",
    "Studies show stress causes insomnia in 40% of adults",
    "Exercise reduces symptoms of depression for most patients",
    "Therapy cures trauma faster than medication",
    "All girls with ADHD are misdiagnosed as anxious",
    "Paternal stress alters anxiety phenotypes in offspring",
    "Screen time is linked to anxiety in teens",
};

constexpr std::string_view kNoisePhrases[] = {
    "Lovely weather for a walk today",
    "Reading a new book on the train",
    "Anyone watching the game tonight?",
    "Coffee first, questions later",
};

struct ZipfSampler {
  std::vector<double> cdf;
  ZipfSampler(std::size_t n, double exponent) : cdf(n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
      cdf[i] = total;
    }
    for (auto& c : cdf) c /= total;
  }
  std::size_t sample(rng::Engine& engine) const {
    const double u = rng::uniform01(engine);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
  }
};

ingest::EpochMillis minutes_to_millis(double minutes) {
  return std::max<ingest::EpochMillis>(1, std::llround(minutes * 60000.0));
}

struct RawNode {
  std::string id;
  std::string author;
  ingest::EpochMillis created_at;
  std::uint32_t depth;
  std::vector<std::size_t> children;
};

}  // namespace

void validate(const GenConfig& config) {
  for (std::size_t i = 0; i < config.cohorts.size(); ++i) {
    const auto& c = config.cohorts[i];
    if (!(c.offspring_mean >= 0.0)) throw std::invalid_argument("offspring mean must be >= 0");
    if (!(c.rate_per_minute > 0.0)) throw std::invalid_argument("retweet rate must be > 0");
    if (!(c.bias_lo >= 0.0 && c.bias_lo <= c.bias_hi && c.bias_hi <= 1.0)) {
      throw std::invalid_argument("bias range must lie in [0,1]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& o = config.cohorts[j];
      if (c.bias_lo < o.bias_hi && o.bias_lo < c.bias_hi) {
        throw std::invalid_argument("cohort bias ranges overlap: " + c.label + ", " + o.label);
      }
    }
  }
  if (!(config.claim_lo >= 0.0 && config.claim_lo <= config.claim_hi && config.claim_hi <= 1.0)) {
    throw std::invalid_argument("claim range must lie in [0,1]");
  }
  if (config.root_author_pool == 0 || config.retweeter_pool == 0) {
    throw std::invalid_argument("author pools must be non-empty");
  }
}

GroundTruth generate(const GenConfig& config) {
  validate(config);
  const ZipfSampler root_authors(config.root_author_pool, 1.2);
  GroundTruth truth;

  for (std::size_t ci = 0; ci < config.cohorts.size(); ++ci) {
    const auto& cohort = config.cohorts[ci];
    for (std::size_t i = 0; i < cohort.n_roots; ++i) {
      rng::Engine engine(rng::derive_seed(config.seed, ci + 1, i));
      const std::string root_id = fmt::format("{}-{:05}", cohort.label, i);

      std::vector<RawNode> nodes;
      nodes.push_back({root_id, fmt::format("u{:05}", root_authors.sample(engine)),
                       config.start + minutes_to_millis(rng::uniform(engine, 0.0, config.root_window_minutes)),
                       0,
                       {}});
      const double p_claim = rng::uniform(engine, config.claim_lo, config.claim_hi);
      const double p_bias = rng::uniform(engine, cohort.bias_lo, cohort.bias_hi);
      const std::size_t phrase = rng::uniform_below(engine, std::size(kClaimPhrases));

      for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (nodes[head].depth >= cohort.max_depth) continue;
        const std::uint32_t offspring = rng::poisson(engine, cohort.offspring_mean);
        for (std::uint32_t k = 0; k < offspring; ++k) {
          const auto delay = minutes_to_millis(rng::exponential(engine, cohort.rate_per_minute));
          RawNode child{fmt::format("{}-r{:06}", root_id, nodes.size()),
                        fmt::format("v{:06}", rng::uniform_below(engine, config.retweeter_pool)),
                        nodes[head].created_at + delay, nodes[head].depth + 1, {}};
          nodes[head].children.push_back(nodes.size());
          nodes.push_back(std::move(child));
        }
      }

      // Canonical breadth-first layout, siblings by (created_at, id).
      for (auto& n : nodes) {
        std::sort(n.children.begin(), n.children.end(), [&](std::size_t a, std::size_t b) {
          if (nodes[a].created_at != nodes[b].created_at) return nodes[a].created_at < nodes[b].created_at;
          return nodes[a].id < nodes[b].id;
        });
      }
      cascade::Cascade tree;
      tree.root_id = root_id;
      std::vector<std::size_t> order = {0};
      for (std::size_t head = 0; head < order.size(); ++head) {
        const auto& n = nodes[order[head]];
        tree.nodes.push_back({n.id, n.author, n.created_at, n.depth});
        for (std::size_t c : n.children) {
          order.push_back(c);
          tree.edges.push_back({nodes[c].id, n.id});
        }
      }
      // Edges were appended parent by parent, which is already child BFS order.

      const std::string text(kClaimPhrases[phrase]);
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto& n = nodes[order[pos]];
        ingest::TweetRecord r;
        r.id = n.id;
        r.author_id = n.author;
        r.created_at = n.created_at;
        if (pos == 0) {
          r.text = text;
          r.ref_kind = ingest::RefKind::original;
          r.like_count = rng::uniform_below(engine, 20);
          r.view_count = rng::uniform_below(engine, 500);
        } else {
          r.text = "RT " + text;
          r.ref_kind = ingest::RefKind::retweet;
          r.ref_id = tree.edges[pos - 1].parent_id;
        }
        truth.records.push_back(std::move(r));
      }
      truth.scores.push_back({root_id, p_claim, p_bias});
      truth.cascades.push_back(std::move(tree));
      truth.cascade_cohort.push_back(cohort.label);
    }
  }

  rng::Engine noise(rng::derive_seed(config.seed, 0, 0xA015EULL));
  for (std::size_t i = 0; i < config.noise_non_claims; ++i) {
    ingest::TweetRecord r;
    r.id = fmt::format("noise-{:05}", i);
    r.author_id = fmt::format("u{:05}", root_authors.sample(noise));
    r.created_at = config.start + minutes_to_millis(rng::uniform(noise, 0.0, config.root_window_minutes));
    r.text = std::string(kNoisePhrases[rng::uniform_below(noise, std::size(kNoisePhrases))]);
    truth.records.push_back(std::move(r));
    truth.scores.push_back({fmt::format("noise-{:05}", i), rng::uniform(noise, 0.0, 0.5), std::nullopt});
  }
  if (!truth.cascades.empty()) {
    for (std::size_t i = 0; i < config.noise_replies; ++i) {
      const auto& target = truth.cascades[rng::uniform_below(noise, truth.cascades.size())];
      ingest::TweetRecord r;
      r.id = fmt::format("reply-{:05}", i);
      r.author_id = fmt::format("v{:06}", rng::uniform_below(noise, config.retweeter_pool));
      r.created_at = target.nodes.front().created_at + minutes_to_millis(rng::exponential(noise, 0.05));
      r.text = "I disagree with this";
      r.ref_kind = ingest::RefKind::reply;
      r.ref_id = target.root_id;
      truth.records.push_back(std::move(r));
    }
  }
  return truth;
}

GenConfig reference_profile() {
  GenConfig config;
  constexpr double biased_rate = 0.05;  // mean delay 20 minutes
  config.cohorts = {
      {"biased", 500, 0.90, 50, biased_rate, 0.60, 1.00},
      {"neutral", 4000, 0.30, 50, 0.02, 0.30, 0.60},
      {"unbiased", 500, 0.85, 50, biased_rate / kReferenceRateRatio, 0.00, 0.30},
  };
  config.seed = 20230401;
  config.noise_non_claims = 200;
  config.noise_replies = 100;
  return config;
}

void write_ground_truth(const std::string& dir, const GroundTruth& truth) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path root(dir);
  {
    std::ofstream out(root / "corpus.jsonl", std::ios::binary);
    ingest::write_corpus(out, truth.records);
  }
  {
    std::ofstream out(root / "scores.csv", std::ios::binary);
    scoring::write_scores(out, truth.scores);
  }
  {
    std::ofstream out(root / "ground_truth.jsonl", std::ios::binary);
    cascade::write_cascades_jsonl(out, truth.cascades);
  }
}

}  // namespace medcascade::synth
