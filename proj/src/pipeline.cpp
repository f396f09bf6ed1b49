#include "medcascade/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "medcascade/cohort.hpp"
#include "medcascade/csv.hpp"
#include "medcascade/ingest.hpp"
#include "medcascade/report.hpp"
#include "medcascade/scoring.hpp"

namespace medcascade::pipeline {
namespace fs = std::filesystem;

void validate(const RunConfig& config) {
  auto need_file = [](const std::string& path, const char* what) {
    if (path.empty()) throw DataError(std::string("missing ") + what + " path");
    if (!fs::is_regular_file(path)) throw DataError(std::string(what) + " not found: " + path);
  };
  need_file(config.corpus, "corpus");
  need_file(config.scores, "scores");
  if (!config.validation.empty()) need_file(config.validation, "validation");
  if (config.out.empty()) throw DataError("missing output directory");
  if (config.tau && !(*config.tau >= 0.0 && *config.tau <= 1.0)) throw DataError("tau must be in [0,1]");
  if (!(config.recall_floor >= 0.0 && config.recall_floor <= 1.0)) throw DataError("recall floor must be in [0,1]");
  if (!(config.fraction > 0.0 && config.fraction <= 0.5)) throw DataError("fraction must be in (0, 0.5]");
  if (config.ks.empty()) throw DataError("ks must not be empty");
  if (std::find(config.ks.begin(), config.ks.end(), 0u) != config.ks.end()) throw DataError("ks must be positive");
  if (config.threads == 0) throw DataError("threads must be at least 1");
}

namespace {

class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path root) : root_(std::move(root)) {}

  template <typename Fn>
  void write(const std::string& name, Fn&& fill) {
    const fs::path path = root_ / name;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    fill(out);
    if (!out) throw DataError("write failed: " + path.string());
    written_.push_back(name);
  }

  std::vector<std::string> written() const {
    auto names = written_;
    std::sort(names.begin(), names.end());
    return names;
  }

 private:
  fs::path root_;
  std::vector<std::string> written_;
};

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

void write_cohort_artifacts(ArtifactWriter& w, const cascade::CohortReport& r) {
  const std::string& l = r.label;
  w.write("metrics_" + l + ".csv", [&](std::ostream& o) { cascade::write_metrics_csv(o, r.cascades); });
  w.write("velocity_" + l + ".csv", [&](std::ostream& o) { cascade::write_velocity_csv(o, r.velocity); });
  w.write("authorship_" + l + ".csv", [&](std::ostream& o) { cascade::write_authorship_csv(o, r.authorship); });
  if (r.users) w.write("ccdf_" + l + ".csv", [&](std::ostream& o) { cascade::write_ccdf_csv(o, *r.users); });
}

}  // namespace

RunSummary run_pipeline(const RunConfig& config) {
  stage("config", [&] {
    validate(config);
    return 0;
  });
  ArtifactWriter writer(config.out);
  RunSummary summary;

  auto parsed = stage("ingest", [&] {
    auto in = open(config.corpus);
    return ingest::parse_corpus(in, {OnError::skip, config.threads});
  });
  const auto& records = parsed.records;
  summary.records = records.size();
  summary.rejected_records = parsed.errors.size();
  stage("ingest", [&] {
    const auto stats = ingest::corpus_stats(records, config.threads);
    writer.write("stats.txt", [&](std::ostream& o) { ingest::write_stats_document(o, stats); });
    writer.write("kind_counts.csv", [&](std::ostream& o) { ingest::write_kind_counts_csv(o, stats); });
    if (!parsed.errors.empty()) {
      writer.write("ingest_errors.csv", [&](std::ostream& o) {
        o << "line,message\n";
        for (const auto& e : parsed.errors) o << e.line << ',' << csv::escape(e.message) << '\n';
      });
    }
    return 0;
  });

  auto scores = stage("scoring", [&] {
    auto in = open(config.scores);
    return scoring::load_scores(in, OnError::skip);
  });
  const auto joined = stage("scoring", [&] { return scoring::join_scores(records, scores.records); });
  summary.unscored = joined.unscored;

  summary.tau = stage("calibration", [&] {
    if (config.tau) return *config.tau;
    if (config.validation.empty()) return kDefaultTau;
    auto in = open(config.validation);
    const auto examples = calibration::load_validation(in);
    if (examples.empty()) throw DataError("validation set is empty");
    auto result = calibration::select_threshold(calibration::pr_curve(examples), config.recall_floor);
    writer.write("calibration.json", [&](std::ostream& o) { calibration::write_calibration_document(o, result); });
    writer.write("calibration_curve.csv", [&](std::ostream& o) { calibration::write_curve_csv(o, result.curve); });
    writer.write("eval_table.txt", [&](std::ostream& o) {
      o << calibration::render_prf_table(calibration::eval_report(examples, result.tau));
    });
    const double tau = result.tau;
    summary.calibration = std::move(result);
    return tau;
  });

  const auto claims = cohort::filter_claims(joined.rows, summary.tau);
  const auto roots = cohort::select_roots(claims);
  summary.claims = claims.size();
  summary.roots = roots.size();

  std::size_t scored_roots = 0;
  for (const auto& r : roots) scored_roots += r.p_bias.has_value();
  cohort::CohortAssignment assignment;
  if (scored_roots < 2) {
    summary.no_roots = true;
  } else {
    assignment = stage("cohort", [&] { return cohort::decile_split(roots, config.fraction); });
  }
  writer.write("cohort.csv", [&](std::ostream& o) { cohort::write_cohort_csv(o, assignment); });

  stage("cascade", [&] {
    const auto edges = cascade::build_edgelist(records);
    writer.write("edgelist.csv", [&](std::ostream& o) { cascade::write_edgelist_csv(o, edges); });

    std::vector<std::string> root_ids;
    for (const auto& r : roots) root_ids.push_back(r.record->id);
    const auto forest = cascade::reconstruct(root_ids, edges, records, config.threads);

    std::unordered_map<std::string_view, std::size_t> position;
    for (std::size_t i = 0; i < root_ids.size(); ++i) position.emplace(root_ids[i], i);
    auto pick = [&](const std::vector<std::string>& ids) {
      std::vector<cascade::Cascade> out;
      for (const auto& id : ids) out.push_back(forest.cascades[position.at(id)]);
      return out;
    };
    const auto biased = pick(assignment.biased);
    const auto unbiased = pick(assignment.unbiased);
    std::vector<cascade::Cascade> cohort_cascades = biased;
    cohort_cascades.insert(cohort_cascades.end(), unbiased.begin(), unbiased.end());
    writer.write("cascades.jsonl", [&](std::ostream& o) { cascade::write_cascades_jsonl(o, cohort_cascades); });

    summary.all = cascade::build_cohort_report("all", forest.cascades, config.ks);
    summary.biased = cascade::build_cohort_report("biased", biased, config.ks);
    summary.unbiased = cascade::build_cohort_report("unbiased", unbiased, config.ks);
    return 0;
  });

  stage("report", [&] {
    writer.write("authorship_all.csv", [&](std::ostream& o) { cascade::write_authorship_csv(o, summary.all.authorship); });
    write_cohort_artifacts(writer, summary.biased);
    write_cohort_artifacts(writer, summary.unbiased);
    writer.write("summary.txt", [&](std::ostream& o) {
      o << fmt::format("records: {} (rejected {})\n", summary.records, summary.rejected_records);
      o << fmt::format("unscored records: {}\n", summary.unscored);
      o << fmt::format("tau: {}{}\n", summary.tau,
                       config.tau ? " (override)" : summary.calibration ? " (calibrated)" : " (default)");
      o << fmt::format("claims: {}\noriginal claim roots: {}\n", summary.claims, summary.roots);
      if (assignment.excluded_missing_bias) {
        o << fmt::format("roots without p_bias (excluded): {}\n", assignment.excluded_missing_bias);
      }
      if (summary.no_roots) {
        o << "no roots: fewer than two bias-scored original claims, cohorts not formed\n";
      }
      const std::size_t violations = summary.all.timestamp_violations;
      if (violations) o << fmt::format("timestamp violations (child before parent): {}\n", violations);
      o << report::render_summary(report::summarize(summary.all, summary.biased, summary.unbiased));
    });
    writer.write("run_config.txt", [&](std::ostream& o) {
      // No worker count: artifacts must not depend on it.
      o << "corpus=" << config.corpus << "\nscores=" << config.scores << "\nvalidation=" << config.validation
        << "\ntau=" << (config.tau ? fmt::format("{}", *config.tau) : std::string("auto"))
        << "\nrecall_floor=" << fmt::format("{}", config.recall_floor)
        << "\nfraction=" << fmt::format("{}", config.fraction) << "\nks=" << fmt::format("{}", fmt::join(config.ks, ","))
        << "\nseed=" << config.seed << "\nplots=" << (config.plots ? "true" : "false") << '\n';
    });
    if (config.plots) {
      writer.write("plots/size_ccdf.svg", [&](std::ostream& o) {
        o << report::ccdf_svg(summary.biased.users ? &*summary.biased.users : nullptr,
                              summary.unbiased.users ? &*summary.unbiased.users : nullptr);
      });
      writer.write("plots/velocity.svg", [&](std::ostream& o) {
        o << report::velocity_svg(summary.biased.velocity, summary.unbiased.velocity);
      });
      writer.write("plots/authorship.svg", [&](std::ostream& o) {
        o << report::authorship_svg(summary.all.authorship);
      });
    }
    return 0;
  });

  summary.artifacts = writer.written();
  return summary;
}

}  // namespace medcascade::pipeline
