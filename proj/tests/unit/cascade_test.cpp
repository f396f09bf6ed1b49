#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "medcascade/cascade.hpp"
#include "test_support.hpp"

using namespace medcascade;
using namespace medcascade::cascade;
using ingest::RefKind;
namespace mt = medcascade::testing;

namespace {

constexpr EpochMillis kMinute = 60000;

/// Level-by-level reconstruction that rescans the whole edge list per level.
Cascade naive_reconstruct(const std::string& root, const std::vector<Edge>& edges,
                          const std::vector<ingest::TweetRecord>& records) {
  std::map<std::string, const ingest::TweetRecord*> by_id;
  for (const auto& r : records) by_id[r.id] = &r;
  Cascade c;
  c.root_id = root;
  const auto* rr = by_id.at(root);
  c.nodes.push_back({root, rr->author_id, rr->created_at, 0});
  std::vector<std::string> frontier{root};
  for (std::uint32_t depth = 1; !frontier.empty(); ++depth) {
    std::vector<std::string> next;
    for (const auto& parent : frontier) {
      std::vector<const ingest::TweetRecord*> kids;
      for (const auto& e : edges) {
        if (e.parent_id == parent && by_id.count(e.child_id)) kids.push_back(by_id.at(e.child_id));
      }
      std::sort(kids.begin(), kids.end(), [](auto* a, auto* b) {
        return a->created_at != b->created_at ? a->created_at < b->created_at : a->id < b->id;
      });
      for (const auto* k : kids) {
        c.nodes.push_back({k->id, k->author_id, k->created_at, depth});
        c.edges.push_back({k->id, parent});
        if (k->created_at < by_id.at(parent)->created_at) ++c.timestamp_violations;
        next.push_back(k->id);
      }
    }
    frontier = std::move(next);
  }
  return c;
}

}  // namespace

TEST(Edgelist, Cases) {
  EXPECT_TRUE(build_edgelist({mt::original("t0"), mt::reference("r", RefKind::reply, "t0")}).empty());
  EXPECT_EQ(build_edgelist({mt::original("t0"), mt::retweet("rt1", "t0")}), (std::vector<Edge>{{"rt1", "t0"}}));
  const std::vector<ingest::TweetRecord> mixed{
      mt::original("t0"), mt::retweet("a", "t0"), mt::reference("b", RefKind::reply, "t0"),
      mt::reference("c", RefKind::quote, "t0"), mt::retweet("d", "a"), mt::reference("e", RefKind::mention, "d")};
  EXPECT_EQ(build_edgelist(mixed), (std::vector<Edge>{{"a", "t0"}, {"d", "a"}}));
}

TEST(Reconstruct, SingletonRoot) {
  const std::vector<ingest::TweetRecord> records{mt::original("t0", 0, "u")};
  const std::vector<std::string> roots{"t0"};
  const auto f = reconstruct(roots, build_edgelist(records), records);
  ASSERT_EQ(f.cascades.size(), 1u);
  const auto m = metrics(f.cascades[0]);
  EXPECT_EQ(m.size_tweets, 1u);
  EXPECT_EQ(m.size_users, 1u);
  EXPECT_EQ(m.depth, 0u);
  EXPECT_TRUE(m.retweet_minutes.empty());
}

TEST(Reconstruct, Chain) {
  const std::vector<ingest::TweetRecord> records{mt::original("t0", 0), mt::retweet("r1", "t0", 1),
                                                 mt::retweet("r2", "r1", 2)};
  const std::vector<std::string> roots{"t0"};
  const auto f = reconstruct(roots, build_edgelist(records), records);
  const auto& c = f.cascades[0];
  ASSERT_EQ(c.nodes.size(), 3u);
  EXPECT_EQ(c.nodes[2].depth, 2u);
  EXPECT_EQ(metrics(c).depth, 2u);
  EXPECT_EQ(c.edges, (std::vector<Edge>{{"r1", "t0"}, {"r2", "r1"}}));
}

TEST(Reconstruct, DanglingAndViolations) {
  const std::vector<ingest::TweetRecord> records{mt::original("t0", 100), mt::retweet("early", "t0", 50),
                                                 mt::retweet("lost", "missing", 200)};
  const std::vector<std::string> roots{"t0"};
  const auto f = reconstruct(roots, build_edgelist(records), records);
  EXPECT_EQ(f.dangling_edges, 1u);
  EXPECT_EQ(f.timestamp_violations, 1u);
  EXPECT_EQ(f.cascades[0].timestamp_violations, 1u);
  EXPECT_EQ(f.cascades[0].nodes.size(), 2u);
  const std::vector<std::string> unknown{"nope"};
  EXPECT_THROW(reconstruct(unknown, {}, records), std::invalid_argument);
}

TEST(Reconstruct, DuplicateChildRejected) {
  const std::vector<ingest::TweetRecord> records{mt::original("t0"), mt::retweet("r", "t0"), mt::retweet("r", "t0")};
  EXPECT_THROW(build_edgelist(records), DataError);
}

TEST(Reconstruct, MatchesNaiveOracleOnRandomForests) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ingest::TweetRecord> records;
    std::vector<std::string> roots;
    for (int r = 0; r < 8; ++r) {
      roots.push_back("root" + std::to_string(r));
      records.push_back(mt::original(roots.back(), static_cast<EpochMillis>(gen() % 1000)));
    }
    for (int i = 0; i < 200; ++i) {
      const auto& parent = records[gen() % records.size()];
      // Coarse timestamps force sibling ties broken by id; some children predate parents.
      const EpochMillis t = parent.created_at + static_cast<EpochMillis>(gen() % 50) - 5;
      records.push_back(mt::retweet("x" + std::to_string(gen() % 100000) + "_" + std::to_string(i), parent.id,
                                    std::max<EpochMillis>(t, 0)));
    }
    std::shuffle(records.begin(), records.end(), gen);
    const auto edges = build_edgelist(records);
    const auto f = reconstruct(roots, edges, records, 1 + trial % 4);
    ASSERT_EQ(f.cascades.size(), roots.size());
    std::size_t covered = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      EXPECT_EQ(f.cascades[i], naive_reconstruct(roots[i], edges, records));
      const auto m = metrics(f.cascades[i]);
      EXPECT_TRUE(std::is_sorted(m.retweet_minutes.begin(), m.retweet_minutes.end()));
      covered += f.cascades[i].nodes.size();
    }
    EXPECT_EQ(covered, records.size());
  }
}

TEST(Metrics, TimesToK) {
  const std::vector<ingest::TweetRecord> records{mt::original("t0", 0, "a"), mt::retweet("r1", "t0", 5 * kMinute, "b"),
                                                 mt::retweet("r2", "t0", 10 * kMinute, "c"),
                                                 mt::retweet("r3", "r1", 20 * kMinute, "d")};
  const std::vector<std::string> roots{"t0"};
  const auto m = metrics(reconstruct(roots, build_edgelist(records), records).cascades[0]);
  EXPECT_EQ(m.time_to_k(1), 5.0);
  EXPECT_EQ(m.time_to_k(2), 10.0);
  EXPECT_EQ(m.time_to_k(3), 20.0);
  EXPECT_FALSE(m.time_to_k(4));
  EXPECT_FALSE(m.time_to_k(0));
}

TEST(Metrics, SameAuthorCountsOnce) {
  const std::vector<ingest::TweetRecord> records{mt::original("t0", 0, "a"), mt::retweet("r1", "t0", 1, "b"),
                                                 mt::retweet("r2", "t0", 2, "b")};
  const std::vector<std::string> roots{"t0"};
  const auto m = metrics(reconstruct(roots, build_edgelist(records), records).cascades[0]);
  EXPECT_EQ(m.size_tweets, 3u);
  EXPECT_EQ(m.size_users, 2u);
}

TEST(Metrics, UnknownAuthorsAreDistinct) {
  const std::vector<ingest::TweetRecord> records{mt::original("t0", 0), mt::retweet("r1", "t0", 1),
                                                 mt::retweet("r2", "t0", 2)};
  const std::vector<std::string> roots{"t0"};
  EXPECT_EQ(metrics(reconstruct(roots, build_edgelist(records), records).cascades[0]).size_users, 3u);
}

TEST(Median, Definition) {
  EXPECT_EQ(median({3.0}), 3.0);
  EXPECT_EQ(median({10.0, 50.0, 30.0}), 30.0);
  EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_THROW(median({}), std::invalid_argument);
}

TEST(Velocity, OneCascadeEqualsItsOwnTimes) {
  CascadeMetrics m;
  m.retweet_minutes = {1.5, 4.0, 9.0};
  const std::size_t ks[] = {1, 2, 3, 4};
  const auto curve = velocity_curve(std::span(&m, 1), ks);
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_EQ(curve[0].median_minutes, 1.5);
  EXPECT_EQ(curve[1].median_minutes, 4.0);
  EXPECT_EQ(curve[2].median_minutes, 9.0);
}

TEST(Velocity, ThreeCascadeMedian) {
  std::vector<CascadeMetrics> ms(3);
  ms[0].retweet_minutes = {1, 10};
  ms[1].retweet_minutes = {2, 30};
  ms[2].retweet_minutes = {3, 50, 70};
  const std::size_t ks[] = {2};
  const auto curve = velocity_curve(ms, ks);
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_EQ(curve[0].median_minutes, 30.0);
  EXPECT_EQ(curve[0].n_cascades, 3u);
}

// Medians are taken per k over cascades reaching k, so the curve need not be
// monotone when the qualifying set shrinks. Restricted to cascades that reach
// every k, monotonicity holds because each time_to_k is non-decreasing.
TEST(Velocity, MonotoneOverCascadesReachingAllK) {
  std::vector<CascadeMetrics> counter(2);
  counter[0].retweet_minutes = {1, 2};
  counter[1].retweet_minutes = {100};
  const std::size_t ks12[] = {1, 2};
  const auto c = velocity_curve(counter, ks12);
  EXPECT_GT(c[0].median_minutes, c[1].median_minutes);

  std::mt19937_64 gen(2);
  const std::size_t ks[] = {1, 2, 5, 10};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<CascadeMetrics> ms(1 + gen() % 20);
    for (auto& m : ms) {
      for (int i = 0; i < 10 + static_cast<int>(gen() % 5); ++i) m.retweet_minutes.push_back((gen() % 10000) / 7.0);
      std::sort(m.retweet_minutes.begin(), m.retweet_minutes.end());
    }
    const auto curve = velocity_curve(ms, ks);
    ASSERT_EQ(curve.size(), 4u);
    for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_LE(curve[i - 1].median_minutes, curve[i].median_minutes);
  }
}

TEST(Authorship, Shares) {
  const std::vector<std::optional<std::string>> distinct{"a", "b", "c"};
  EXPECT_EQ(cascades_per_user(distinct).multi_cascade_share(), 0.0);
  const std::vector<std::optional<std::string>> repeat{"a", "a", "b", std::nullopt};
  const auto a = cascades_per_user(repeat);
  EXPECT_EQ(a.multi_cascade_share(), 0.5);
  EXPECT_EQ(a.missing_author, 1u);
  EXPECT_EQ(a.histogram, (std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}}));
}

TEST(SizeCcdf, EqualSizes) {
  const std::vector<std::size_t> s(7, 4);
  const auto d = size_ccdf(s);
  ASSERT_EQ(d.ccdf.size(), 1u);
  EXPECT_EQ(d.ccdf[0].size, 4u);
  EXPECT_EQ(d.ccdf[0].ccdf, 1.0);
  EXPECT_EQ(d.quantile(0.99), 4u);
  EXPECT_EQ(d.mean, 4.0);
}

TEST(SizeCcdf, NearestRankQuantile) {
  std::vector<std::size_t> s(100);
  std::iota(s.begin(), s.end(), 1);
  std::shuffle(s.begin(), s.end(), std::mt19937(3));
  const auto d = size_ccdf(s);
  EXPECT_EQ(d.quantile(0.99), 99u);
  EXPECT_EQ(d.quantile(1.0), 100u);
  EXPECT_EQ(d.quantile(0.5), 50u);
  EXPECT_EQ(d.quantile(0.0), 1u);
  EXPECT_EQ(d.mean, 50.5);
}

TEST(SizeCcdf, MatchesDirectCount) {
  std::mt19937 gen(6);
  std::vector<std::size_t> s;
  for (int i = 0; i < 500; ++i) s.push_back(1 + gen() % 40);
  const auto d = size_ccdf(s);
  double previous = 2.0;
  for (const auto& p : d.ccdf) {
    const auto at_least = std::count_if(s.begin(), s.end(), [&](std::size_t v) { return v >= p.size; });
    EXPECT_EQ(p.ccdf, static_cast<double>(at_least) / s.size());
    EXPECT_LT(p.ccdf, previous);
    previous = p.ccdf;
  }
}

TEST(CascadeIo, RoundTrips) {
  std::vector<ingest::TweetRecord> records{mt::original("t,0", 0, "a"), mt::retweet("r1", "t,0", 7, "b"),
                                           mt::retweet("r2", "r1", 3)};
  const std::vector<std::string> roots{"t,0"};
  const auto edges = build_edgelist(records);
  const auto f = reconstruct(roots, edges, records);

  std::ostringstream e;
  write_edgelist_csv(e, edges);
  std::istringstream ein(e.str());
  EXPECT_EQ(read_edgelist_csv(ein), edges);

  std::ostringstream c;
  write_cascades_jsonl(c, f.cascades);
  std::istringstream cin(c.str());
  EXPECT_EQ(read_cascades_jsonl(cin), f.cascades);

  const std::vector<VelocityPoint> v{{1, 2.5, 3}, {10, 145.31, 2}};
  std::ostringstream vout;
  write_velocity_csv(vout, v);
  std::istringstream vin(vout.str());
  const auto back = read_velocity_csv(vin);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].k, 10u);
  EXPECT_EQ(back[1].median_minutes, 145.31);
  EXPECT_EQ(back[1].n_cascades, 2u);
}

TEST(CohortReport, EmptyCohortHasNoDistributions) {
  const auto r = build_cohort_report("biased", {}, kDefaultKs);
  EXPECT_FALSE(r.users);
  EXPECT_TRUE(r.velocity.empty());
}
