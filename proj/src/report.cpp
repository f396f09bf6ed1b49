#include "medcascade/report.hpp"

#include <fmt/format.h>

#include "medcascade/format.hpp"

namespace medcascade::report {

SummaryFigures summarize(const cascade::CohortReport& all, const cascade::CohortReport& biased,
                         const cascade::CohortReport& unbiased) {
  SummaryFigures f;
  f.all_cascades = all.cascades.size();
  if (all.tweets) f.mean_size_tweets = all.tweets->mean;
  if (all.users) f.mean_size_users = all.users->mean;
  if (all.authorship.authors) f.multi_cascade_share = all.authorship.multi_cascade_share();
  f.biased_cascades = biased.cascades.size();
  f.unbiased_cascades = unbiased.cascades.size();
  if (biased.users) f.biased_top1_users = biased.users->quantile(0.99);
  if (unbiased.users) f.unbiased_top1_users = unbiased.users->quantile(0.99);
  f.biased_velocity = biased.velocity;
  f.unbiased_velocity = unbiased.velocity;
  return f;
}

std::string render_velocity_line(std::size_t k, double biased_minutes, double unbiased_minutes) {
  return fmt::format("k={}: {:.2f} min (biased) vs {:.2f} min (unbiased)", k, biased_minutes,
                     unbiased_minutes);
}

std::string render_summary(const SummaryFigures& f) {
  std::string out;
  out += fmt::format("Cascades analysed: {}\n", f.all_cascades);
  if (f.mean_size_tweets) {
    out += fmt::format("Average cascade size: {:.2f} tweets", *f.mean_size_tweets);
    if (f.mean_size_users) out += fmt::format(" ({:.2f} unique users)", *f.mean_size_users);
    out += '\n';
  }
  if (f.multi_cascade_share) {
    out += fmt::format("Users authoring two or more cascades: {}\n", format_percent(*f.multi_cascade_share));
  }
  out += fmt::format("Cohort cascades: {} biased, {} unbiased\n", f.biased_cascades, f.unbiased_cascades);
  if (f.biased_top1_users && f.unbiased_top1_users) {
    out += fmt::format("Top 1% reach: biased >= {} users, unbiased >= {} users\n", *f.biased_top1_users,
                       *f.unbiased_top1_users);
  }
  out += "Median minutes to reach k retweets:\n";
  std::size_t shared = 0;
  for (const auto& b : f.biased_velocity) {
    for (const auto& u : f.unbiased_velocity) {
      if (u.k != b.k) continue;
      out += render_velocity_line(b.k, b.median_minutes, u.median_minutes) + '\n';
      ++shared;
    }
  }
  if (shared == 0) out += "(no k reached by both cohorts)\n";
  return out;
}

}  // namespace medcascade::report
