#include "medcascade/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "medcascade/parallel.hpp"

namespace medcascade::cascade {

std::vector<Edge> build_edgelist(const std::vector<ingest::TweetRecord>& records) {
  std::vector<Edge> edges;
  std::unordered_set<std::string_view> children;
  for (const auto& r : records) {
    if (r.ref_kind != ingest::RefKind::retweet) continue;
    if (!children.insert(r.id).second) throw DataError("duplicate retweet id '" + r.id + "'");
    edges.push_back({r.id, *r.ref_id});
  }
  return edges;
}

Forest reconstruct(std::span<const std::string> roots, const std::vector<Edge>& edges,
                   const std::vector<ingest::TweetRecord>& records, unsigned threads) {
  std::unordered_map<std::string_view, std::uint32_t> index;
  index.reserve(records.size());
  for (std::uint32_t i = 0; i < records.size(); ++i) index.emplace(records[i].id, i);

  Forest forest;
  std::vector<std::vector<std::uint32_t>> children(records.size());
  for (const auto& e : edges) {
    auto parent = index.find(e.parent_id);
    auto child = index.find(e.child_id);
    if (parent == index.end() || child == index.end()) {
      ++forest.dangling_edges;
      continue;
    }
    children[parent->second].push_back(child->second);
  }
  auto earlier = [&](std::uint32_t a, std::uint32_t b) {
    if (records[a].created_at != records[b].created_at) return records[a].created_at < records[b].created_at;
    return records[a].id < records[b].id;
  };
  parallel_for(children.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) std::sort(children[i].begin(), children[i].end(), earlier);
  });

  std::vector<std::uint32_t> root_index(roots.size());
  for (std::size_t r = 0; r < roots.size(); ++r) {
    auto it = index.find(roots[r]);
    if (it == index.end()) throw std::invalid_argument("root '" + roots[r] + "' is not in the corpus");
    root_index[r] = it->second;
  }

  forest.cascades.resize(roots.size());
  parallel_for(roots.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> queue;
    std::unordered_set<std::uint32_t> visited;
    for (std::size_t r = begin; r < end; ++r) {
      Cascade& c = forest.cascades[r];
      const auto& root = records[root_index[r]];
      c.root_id = root.id;
      queue.assign(1, root_index[r]);
      visited.clear();
      visited.insert(root_index[r]);
      c.nodes.push_back({root.id, root.author_id, root.created_at, 0});
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t parent = queue[head];
        const std::uint32_t parent_depth = c.nodes[head].depth;
        for (std::uint32_t child : children[parent]) {
          if (!visited.insert(child).second) continue;
          const auto& rec = records[child];
          queue.push_back(child);
          c.nodes.push_back({rec.id, rec.author_id, rec.created_at, parent_depth + 1});
          c.edges.push_back({rec.id, records[parent].id});
          if (rec.created_at < records[parent].created_at) ++c.timestamp_violations;
        }
      }
    }
  });
  for (const auto& c : forest.cascades) forest.timestamp_violations += c.timestamp_violations;
  return forest;
}

std::optional<double> CascadeMetrics::time_to_k(std::size_t k) const {
  if (k == 0 || k > retweet_minutes.size()) return std::nullopt;
  return retweet_minutes[k - 1];
}

CascadeMetrics metrics(const Cascade& cascade) {
  CascadeMetrics m;
  m.root_id = cascade.root_id;
  m.size_tweets = cascade.nodes.size();
  std::unordered_set<std::string_view> authors;
  std::size_t anonymous = 0;
  for (const auto& node : cascade.nodes) {
    if (node.author_id) {
      authors.insert(*node.author_id);
    } else {
      ++anonymous;
    }
    m.depth = std::max<std::size_t>(m.depth, node.depth);
  }
  m.size_users = authors.size() + anonymous;
  if (!cascade.nodes.empty()) {
    const EpochMillis origin = cascade.nodes.front().created_at;
    m.retweet_minutes.reserve(cascade.nodes.size() - 1);
    for (std::size_t i = 1; i < cascade.nodes.size(); ++i) {
      m.retweet_minutes.push_back(static_cast<double>(cascade.nodes[i].created_at - origin) / 60000.0);
    }
    std::sort(m.retweet_minutes.begin(), m.retweet_minutes.end());
  }
  return m;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return (lower + upper) / 2.0;
}

std::vector<VelocityPoint> velocity_curve(std::span<const CascadeMetrics> cascades,
                                          std::span<const std::size_t> ks) {
  std::vector<std::size_t> sorted_ks(ks.begin(), ks.end());
  std::sort(sorted_ks.begin(), sorted_ks.end());
  sorted_ks.erase(std::unique(sorted_ks.begin(), sorted_ks.end()), sorted_ks.end());

  std::vector<VelocityPoint> curve;
  std::vector<double> sample;
  for (std::size_t k : sorted_ks) {
    if (k == 0) continue;
    sample.clear();
    for (const auto& c : cascades) {
      if (auto t = c.time_to_k(k)) sample.push_back(*t);
    }
    if (sample.empty()) continue;
    curve.push_back({k, median(sample), sample.size()});
  }
  return curve;
}

double Authorship::multi_cascade_share() const {
  return authors ? static_cast<double>(multi_cascade_authors) / static_cast<double>(authors) : 0.0;
}

Authorship cascades_per_user(std::span<const std::optional<std::string>> root_authors) {
  std::unordered_map<std::string_view, std::size_t> per_author;
  Authorship out;
  for (const auto& author : root_authors) {
    if (!author) {
      ++out.missing_author;
      continue;
    }
    ++per_author[*author];
  }
  out.authors = per_author.size();
  for (const auto& [author, n] : per_author) {
    ++out.histogram[n];
    if (n >= 2) ++out.multi_cascade_authors;
  }
  return out;
}

std::size_t SizeDistribution::quantile(double q) const {
  if (sorted.empty()) throw std::logic_error("quantile of an empty distribution");
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

SizeDistribution size_ccdf(std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw std::invalid_argument("size_ccdf needs at least one cascade");
  SizeDistribution d;
  d.sorted.assign(sizes.begin(), sizes.end());
  std::sort(d.sorted.begin(), d.sorted.end());
  const double n = static_cast<double>(d.sorted.size());
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < d.sorted.size(); ++i) {
    sum += d.sorted[i];
    if (i == 0 || d.sorted[i] != d.sorted[i - 1]) {
      d.ccdf.push_back({d.sorted[i], static_cast<double>(d.sorted.size() - i) / n});
    }
  }
  d.mean = static_cast<double>(sum) / n;
  return d;
}

CohortReport build_cohort_report(std::string label, std::span<const Cascade> cascades,
                                 std::span<const std::size_t> ks) {
  CohortReport report;
  report.label = std::move(label);
  report.cascades.reserve(cascades.size());
  std::vector<std::optional<std::string>> authors;
  std::vector<std::size_t> users;
  std::vector<std::size_t> tweets;
  for (const auto& c : cascades) {
    report.cascades.push_back(metrics(c));
    users.push_back(report.cascades.back().size_users);
    tweets.push_back(report.cascades.back().size_tweets);
    authors.push_back(c.nodes.empty() ? std::nullopt : c.nodes.front().author_id);
    report.timestamp_violations += c.timestamp_violations;
  }
  if (!cascades.empty()) {
    report.users = size_ccdf(users);
    report.tweets = size_ccdf(tweets);
  }
  report.velocity = velocity_curve(report.cascades, ks);
  report.authorship = cascades_per_user(authors);
  return report;
}

}  // namespace medcascade::cascade
