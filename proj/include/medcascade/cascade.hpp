#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "medcascade/ingest.hpp"

namespace medcascade::cascade {

using ingest::EpochMillis;

struct Edge {
  std::string child_id;
  std::string parent_id;

  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

struct Node {
  std::string tweet_id;
  std::optional<std::string> author_id;
  EpochMillis created_at = 0;
  std::uint32_t depth = 0;  // hops from the root

  bool operator==(const Node&) const = default;
};

/// A retweet tree. nodes[0] is the root; nodes are in breadth-first order
/// with siblings sorted by (created_at, tweet_id). edges[i] is the edge into
/// nodes[i + 1].
struct Cascade {
  std::string root_id;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::size_t timestamp_violations = 0;  // children older than their parent

  bool operator==(const Cascade&) const = default;
};

/// One edge per retweet (child = retweet id, parent = ref_id), in record
/// order. Other reference kinds are ignored. Throws DataError when a child id
/// repeats.
std::vector<Edge> build_edgelist(const std::vector<ingest::TweetRecord>& records);

struct Forest {
  std::vector<Cascade> cascades;  // one per root, in root order
  std::size_t dangling_edges = 0;  // parent missing from the corpus
  std::size_t timestamp_violations = 0;
};

/// Breadth-first reconstruction of the cascade under each root. Roots must be
/// record ids (std::invalid_argument otherwise). Work is split across
/// `threads` workers by root; the result does not depend on the worker count.
Forest reconstruct(std::span<const std::string> roots, const std::vector<Edge>& edges,
                   const std::vector<ingest::TweetRecord>& records, unsigned threads = 1);

struct CascadeMetrics {
  std::string root_id;
  std::size_t size_users = 0;   // distinct authors; unknown authors count once each
  std::size_t size_tweets = 0;  // node count
  std::size_t depth = 0;
  /// Minutes from the root to each retweet, ascending. The k-th entry
  /// (1-based) is the time to be retweeted k times.
  std::vector<double> retweet_minutes;

  std::optional<double> time_to_k(std::size_t k) const;
};

CascadeMetrics metrics(const Cascade& cascade);

/// Median of a non-empty sample; mean of the two middle values for even n.
double median(std::vector<double> values);

struct VelocityPoint {
  std::size_t k = 0;
  double median_minutes = 0.0;
  std::size_t n_cascades = 0;  // cascades with at least k retweets
};

/// Per-k median of time_to_k over cascades with at least k retweets. Values
/// of k no cascade reaches are omitted. Output follows ascending k.
std::vector<VelocityPoint> velocity_curve(std::span<const CascadeMetrics> cascades,
                                          std::span<const std::size_t> ks);

struct Authorship {
  std::map<std::size_t, std::size_t> histogram;  // cascades authored -> users
  std::size_t authors = 0;
  std::size_t multi_cascade_authors = 0;
  std::size_t missing_author = 0;  // roots skipped for lack of an author

  double multi_cascade_share() const;
};

Authorship cascades_per_user(std::span<const std::optional<std::string>> root_authors);

struct CcdfPoint {
  std::size_t size = 0;
  double ccdf = 0.0;  // fraction of cascades with size >= `size`
};

struct SizeDistribution {
  std::vector<std::size_t> sorted;  // ascending
  std::vector<CcdfPoint> ccdf;      // one point per distinct size
  double mean = 0.0;

  /// Nearest-rank quantile: the value at rank ceil(q * n) (1-based, at least 1).
  std::size_t quantile(double q) const;
};

/// Requires at least one size.
SizeDistribution size_ccdf(std::span<const std::size_t> sizes);

inline constexpr std::size_t kDefaultKs[] = {1, 2, 5, 10, 20, 50, 100, 200, 500};

struct CohortReport {
  std::string label;
  std::vector<CascadeMetrics> cascades;
  std::optional<SizeDistribution> users;   // over size_users
  std::optional<SizeDistribution> tweets;  // over size_tweets
  std::vector<VelocityPoint> velocity;
  Authorship authorship;
  std::size_t timestamp_violations = 0;
};

CohortReport build_cohort_report(std::string label, std::span<const Cascade> cascades,
                                 std::span<const std::size_t> ks);

// File formats.
void write_edgelist_csv(std::ostream& out, const std::vector<Edge>& edges);
std::vector<Edge> read_edgelist_csv(std::istream& in);

/// One JSON document per line: {"root":..., "nodes":[...], "edges":[...]}.
void write_cascades_jsonl(std::ostream& out, std::span<const Cascade> cascades);
std::vector<Cascade> read_cascades_jsonl(std::istream& in);

/// CSV `size_users,ccdf`.
void write_ccdf_csv(std::ostream& out, const SizeDistribution& distribution);
/// CSV `k,median_minutes,n_cascades`.
void write_velocity_csv(std::ostream& out, std::span<const VelocityPoint> curve);
std::vector<VelocityPoint> read_velocity_csv(std::istream& in);
/// CSV `cascades_per_user,n_users`.
void write_authorship_csv(std::ostream& out, const Authorship& authorship);
/// CSV `root_id,size_users,size_tweets,depth,retweets`.
void write_metrics_csv(std::ostream& out, std::span<const CascadeMetrics> metrics);

}  // namespace medcascade::cascade
