#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medcascade/cascade.hpp"

namespace medcascade::report {

/// Headline cascade figures: mean size, multi-cascade author share, top-1%
/// reach and the velocity comparison.
struct SummaryFigures {
  std::size_t all_cascades = 0;
  std::optional<double> mean_size_tweets;  // over all cascades
  std::optional<double> mean_size_users;
  std::optional<double> multi_cascade_share;
  std::size_t biased_cascades = 0;
  std::size_t unbiased_cascades = 0;
  std::optional<std::size_t> biased_top1_users;
  std::optional<std::size_t> unbiased_top1_users;
  std::vector<cascade::VelocityPoint> biased_velocity;
  std::vector<cascade::VelocityPoint> unbiased_velocity;
};

SummaryFigures summarize(const cascade::CohortReport& all, const cascade::CohortReport& biased,
                         const cascade::CohortReport& unbiased);

/// "k=100: 145.31 min (biased) vs 822.43 min (unbiased)"
std::string render_velocity_line(std::size_t k, double biased_minutes, double unbiased_minutes);

/// Plain-text summary; one velocity line per k reached by both cohorts.
std::string render_summary(const SummaryFigures& figures);

/// Static SVG plots.
std::string ccdf_svg(const cascade::SizeDistribution* biased, const cascade::SizeDistribution* unbiased);
std::string velocity_svg(const std::vector<cascade::VelocityPoint>& biased,
                         const std::vector<cascade::VelocityPoint>& unbiased);
std::string authorship_svg(const cascade::Authorship& authorship);

}  // namespace medcascade::report
