#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "medcascade/scoring.hpp"

namespace medcascade::cohort {

struct CohortSpec {
  double tau = 0.91;
  double fraction = 0.10;  // (0, 0.5]
};

/// Biased and unbiased root ids, each ordered by rank (most extreme first).
struct CohortAssignment {
  std::vector<std::string> biased;
  std::vector<std::string> unbiased;
  std::size_t excluded_missing_bias = 0;
};

/// Rows with p_claim > tau.
std::vector<scoring::ScoredTweet> filter_claims(const std::vector<scoring::ScoredTweet>& rows, double tau);

/// Rows whose record is an original post.
std::vector<scoring::ScoredTweet> select_roots(const std::vector<scoring::ScoredTweet>& claims);

/// Cohort size for N roots: max(1, floor(fraction * N)).
std::size_t cohort_size(std::size_t roots, double fraction);

/// Ranks roots by (p_bias descending, tweet id ascending); the first n form
/// the biased cohort and the last n (reversed) the unbiased cohort. Roots
/// without p_bias are excluded and counted. Throws DataError when fewer than
/// two scored roots remain; std::invalid_argument for a bad fraction.
CohortAssignment decile_split(const std::vector<scoring::ScoredTweet>& roots, double fraction);

/// CSV `tweet_id,cohort`, biased rows first.
void write_cohort_csv(std::ostream& out, const CohortAssignment& assignment);
CohortAssignment read_cohort_csv(std::istream& in);

}  // namespace medcascade::cohort
