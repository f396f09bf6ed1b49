#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "medcascade/cascade.hpp"
#include "medcascade/ingest.hpp"
#include "medcascade/scoring.hpp"

namespace medcascade::synth {

/// Spread and scoring parameters of one generated cohort.
struct CohortParams {
  std::string label;
  std::size_t n_roots = 0;
  double offspring_mean = 0.5;   // Poisson mean per node
  std::uint32_t max_depth = 50;  // generations below the root
  double rate_per_minute = 0.1;  // exponential retweet delay rate
  double bias_lo = 0.0;          // p_bias ~ U[bias_lo, bias_hi)
  double bias_hi = 1.0;
};

struct GenConfig {
  std::vector<CohortParams> cohorts;
  std::uint64_t seed = 1;
  /// Roots get p_claim ~ U[claim_lo, claim_hi); keep claim_lo above the tau
  /// used downstream so every root is a claim.
  double claim_lo = 0.92;
  double claim_hi = 1.0;
  /// Users who can author roots; root authors follow a Zipf(1.2) law over
  /// them, so some users start many cascades.
  std::size_t root_author_pool = 2000;
  std::size_t retweeter_pool = 200000;
  /// Extra records outside any cascade: originals below the claim threshold
  /// and replies to random roots.
  std::size_t noise_non_claims = 0;
  std::size_t noise_replies = 0;
  ingest::EpochMillis start = 1609459200000;  // 2021-01-01T00:00:00Z
  /// Root creation times are spread uniformly over this many minutes.
  double root_window_minutes = 60.0 * 24 * 30;
};

/// Throws std::invalid_argument when a cohort has m < 0, a non-positive rate
/// or bias ranges that overlap another cohort's.
void validate(const GenConfig& config);

struct GroundTruth {
  std::vector<ingest::TweetRecord> records;   // canonical order
  std::vector<cascade::Cascade> cascades;     // exact trees, cohort by cohort
  std::vector<std::string> cascade_cohort;    // label per cascade
  std::vector<scoring::ScoreRecord> scores;   // one row per root and noise original
};

/// Galton-Watson trees with Poisson(m) offspring truncated at max_depth;
/// each child is created an Exp(rate) delay after its parent. Deterministic
/// for a fixed config: every cascade draws from its own generator seeded by
/// (seed, cohort, cascade index).
GroundTruth generate(const GenConfig& config);

/// Reference median minutes to 100 retweets per cohort, and their ratio.
inline constexpr double kReferenceMedianBiasedMinutes = 145.31;
inline constexpr double kReferenceMedianUnbiasedMinutes = 822.43;
inline constexpr double kReferenceRateRatio = kReferenceMedianUnbiasedMinutes / kReferenceMedianBiasedMinutes;

/// Preset with three cohorts: "biased" (500 roots, fast and larger),
/// "neutral" filler (4000 roots) and "unbiased" (500 roots). With a 10%
/// decile split over all 5000 roots the biased and unbiased deciles are
/// exactly the generated cohorts. rate(biased) / rate(unbiased) equals
/// kReferenceRateRatio.
GenConfig reference_profile();

/// Writes corpus.jsonl, scores.csv and ground_truth.jsonl into `dir`.
void write_ground_truth(const std::string& dir, const GroundTruth& truth);

}  // namespace medcascade::synth
