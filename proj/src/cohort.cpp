#include "medcascade/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "medcascade/csv.hpp"

namespace medcascade::cohort {

std::vector<scoring::ScoredTweet> filter_claims(const std::vector<scoring::ScoredTweet>& rows,
                                                double tau) {
  std::vector<scoring::ScoredTweet> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [tau](const scoring::ScoredTweet& r) { return r.p_claim > tau; });
  return out;
}

std::vector<scoring::ScoredTweet> select_roots(const std::vector<scoring::ScoredTweet>& claims) {
  std::vector<scoring::ScoredTweet> out;
  std::copy_if(claims.begin(), claims.end(), std::back_inserter(out), [](const scoring::ScoredTweet& r) {
    return r.record->ref_kind == ingest::RefKind::original;
  });
  return out;
}

std::size_t cohort_size(std::size_t roots, double fraction) {
  // The epsilon keeps products such as 0.29 * 100 = 28.999999999999996 from
  // flooring one short.
  const auto n = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(roots) + 1e-9));
  return std::max<std::size_t>(1, n);
}

CohortAssignment decile_split(const std::vector<scoring::ScoredTweet>& roots, double fraction) {
  if (!(fraction > 0.0 && fraction <= 0.5)) {
    throw std::invalid_argument("cohort fraction must be in (0, 0.5]");
  }
  CohortAssignment out;
  struct Ranked {
    double p_bias;
    const std::string* id;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(roots.size());
  for (const auto& r : roots) {
    if (!r.p_bias) {
      ++out.excluded_missing_bias;
      continue;
    }
    ranked.push_back({*r.p_bias, &r.record->id});
  }
  if (ranked.size() < 2) {
    throw DataError("cohort split needs at least 2 bias-scored roots, got " +
                    std::to_string(ranked.size()));
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.p_bias != b.p_bias) return a.p_bias > b.p_bias;
    return *a.id < *b.id;
  });

  const std::size_t n = cohort_size(ranked.size(), fraction);
  for (std::size_t i = 0; i < n; ++i) {
    out.biased.push_back(*ranked[i].id);
    out.unbiased.push_back(*ranked[ranked.size() - 1 - i].id);
  }
  return out;
}

void write_cohort_csv(std::ostream& out, const CohortAssignment& assignment) {
  out << "tweet_id,cohort\n";
  for (const auto& id : assignment.biased) csv::write_row(out, {id, "biased"});
  for (const auto& id : assignment.unbiased) csv::write_row(out, {id, "unbiased"});
}

CohortAssignment read_cohort_csv(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return {};
  if (*header != csv::Row{"tweet_id", "cohort"}) throw DataError("cohort header must be 'tweet_id,cohort'", 1);
  CohortAssignment out;
  while (auto row = reader.next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() != 2 || (*row)[0].empty()) throw DataError("expected tweet_id,cohort", reader.line());
    if ((*row)[1] == "biased") {
      out.biased.push_back((*row)[0]);
    } else if ((*row)[1] == "unbiased") {
      out.unbiased.push_back((*row)[0]);
    } else {
      throw DataError("unknown cohort '" + (*row)[1] + "'", reader.line());
    }
  }
  return out;
}

}  // namespace medcascade::cohort
