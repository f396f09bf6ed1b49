// medcascade: batch analysis of biased-claim retweet cascades.
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "medcascade/calibration.hpp"
#include "medcascade/cascade.hpp"
#include "medcascade/cohort.hpp"
#include "medcascade/corpusprep.hpp"
#include "medcascade/csv.hpp"
#include "medcascade/ingest.hpp"
#include "medcascade/pipeline.hpp"
#include "medcascade/report.hpp"
#include "medcascade/scoring.hpp"
#include "medcascade/simd/kernels.hpp"
#include "medcascade/synth.hpp"

namespace fs = std::filesystem;
using namespace medcascade;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

ingest::ParseResult read_corpus(const std::string& path, bool strict, unsigned threads) {
  auto in = open_in(path);
  auto parsed = ingest::parse_corpus(in, {strict ? OnError::abort : OnError::skip, threads});
  if (!parsed.errors.empty()) {
    std::cerr << fmt::format("skipped {} malformed record(s); first: line {}: {}\n", parsed.errors.size(),
                             parsed.errors.front().line, parsed.errors.front().message);
  }
  if (parsed.unknown_kind_warnings) {
    std::cerr << fmt::format("warning: {} record(s) with unknown ref_kind mapped to mention\n",
                             parsed.unknown_kind_warnings);
  }
  return parsed;
}

std::vector<scoring::ScoreRecord> read_scores(const std::string& path) {
  auto in = open_in(path);
  auto loaded = scoring::load_scores(in);
  if (!loaded.errors.empty()) {
    std::cerr << fmt::format("skipped {} bad score row(s); first: line {}: {}\n", loaded.errors.size(),
                             loaded.errors.front().line, loaded.errors.front().message);
  }
  if (loaded.duplicate_warnings) {
    std::cerr << fmt::format("warning: {} duplicate tweet_id row(s), last value kept\n", loaded.duplicate_warnings);
  }
  return std::move(loaded.records);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biased-claim cascade analytics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value configuration file (command line wins)");
  app.set_version_flag("--version", "medcascade 1.0.0");

  unsigned threads = 1;
  bool strict = false;
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--strict", strict, "Abort on the first malformed input record");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics and interaction breakdown");
  std::string stats_corpus, stats_out;
  stats_cmd->add_option("--corpus", stats_corpus, "Corpus (JSON lines)")->required();
  stats_cmd->add_option("--out", stats_out, "Output directory")->required();

  // calibrate
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Choose the claim threshold from a validation set");
  std::string cal_validation, cal_out;
  double cal_floor = calibration::kDefaultRecallFloor;
  calibrate_cmd->add_option("--validation", cal_validation, "CSV tweet_id,p_claim,label")->required();
  calibrate_cmd->add_option("--recall-floor", cal_floor, "Minimum recall")->check(CLI::Range(0.0, 1.0));
  calibrate_cmd->add_option("--out", cal_out, "Output directory")->required();

  // score
  auto* score_cmd = app.add_subcommand("score", "Score a corpus with the baseline claim/bias scorers");
  std::string score_corpus, score_out, score_weights;
  std::optional<double> score_tau;
  score_cmd->add_option("--corpus", score_corpus, "Corpus (JSON lines)")->required();
  score_cmd->add_option("--tau", score_tau, "Bias-score only tweets with p_claim > tau")->check(CLI::Range(0.0, 1.0));
  score_cmd->add_option("--weights", score_weights, "Baseline weight file (key=value)");
  score_cmd->add_option("--out", score_out, "Output score CSV")->required();

  // cohort
  auto* cohort_cmd = app.add_subcommand("cohort", "Select claim roots and split into bias deciles");
  std::string cohort_corpus, cohort_scores, cohort_out;
  double cohort_tau = pipeline::kDefaultTau;
  double cohort_fraction = 0.10;
  cohort_cmd->add_option("--corpus", cohort_corpus, "Corpus (JSON lines)")->required();
  cohort_cmd->add_option("--scores", cohort_scores, "Score CSV")->required();
  cohort_cmd->add_option("--tau", cohort_tau, "Claim threshold")->check(CLI::Range(0.0, 1.0));
  cohort_cmd->add_option("--fraction", cohort_fraction, "Cohort fraction")->check(CLI::Range(1e-12, 0.5));
  cohort_cmd->add_option("--out", cohort_out, "Output cohort CSV")->required();

  // cascades
  auto* cascades_cmd = app.add_subcommand("cascades", "Build the retweet edgelist and reconstruct cohort cascades");
  std::string casc_corpus, casc_cohort, casc_out;
  cascades_cmd->add_option("--corpus", casc_corpus, "Corpus (JSON lines)")->required();
  cascades_cmd->add_option("--cohort", casc_cohort, "Cohort CSV")->required();
  cascades_cmd->add_option("--out", casc_out, "Output directory")->required();

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Size, velocity and authorship metrics per cohort");
  std::string met_cascades, met_cohort, met_out;
  std::vector<std::size_t> met_ks(std::begin(cascade::kDefaultKs), std::end(cascade::kDefaultKs));
  bool met_plots = false;
  metrics_cmd->add_option("--cascades", met_cascades, "Cascade JSON lines")->required();
  metrics_cmd->add_option("--cohort", met_cohort, "Cohort CSV")->required();
  metrics_cmd->add_option("--ks", met_ks, "Retweet counts for the velocity curve")->delimiter(',');
  metrics_cmd->add_option("--out", met_out, "Output directory")->required();
  metrics_cmd->add_flag("--plots", met_plots, "Also write SVG plots");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with known cascades");
  std::uint64_t synth_seed = synth::reference_profile().seed;
  std::string synth_out, synth_profile = "reference";
  synth_cmd->add_option("--seed", synth_seed, "Generator seed");
  synth_cmd->add_option("--profile", synth_profile, "reference | small")->check(CLI::IsMember({"reference", "small"}));
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();

  // report
  auto* report_cmd = app.add_subcommand("report", "Render report tables from precomputed values");
  std::string rep_prf, rep_vb, rep_vu;
  report_cmd->add_option("--prf-table", rep_prf, "CSV class,precision,recall,f1");
  report_cmd->add_option("--velocity-biased", rep_vb, "Velocity CSV of the biased cohort");
  report_cmd->add_option("--velocity-unbiased", rep_vu, "Velocity CSV of the unbiased cohort");

  // mine / split
  auto* mine_cmd = app.add_subcommand("mine", "Mine hard negatives for biased excerpts");
  std::string mine_excerpts, mine_documents, mine_out;
  mine_cmd->add_option("--excerpts", mine_excerpts, "Excerpt CSV id,text,label,category")->required();
  mine_cmd->add_option("--documents", mine_documents, "Course material, one document per line")->required();
  mine_cmd->add_option("--out", mine_out, "Output excerpt CSV (input plus mined negatives)")->required();

  auto* split_cmd = app.add_subcommand("split", "Stratified 80/10/10 split of an excerpt corpus");
  std::string split_excerpts, split_out;
  std::uint64_t split_seed = 1;
  split_cmd->add_option("--excerpts", split_excerpts, "Excerpt CSV")->required();
  split_cmd->add_option("--seed", split_seed, "Shuffle seed");
  split_cmd->add_option("--out", split_out, "Output CSV id,split")->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "Full pipeline: stats, calibration, cohorts, cascades, metrics");
  pipeline::RunConfig run;
  run_cmd->add_option("--corpus", run.corpus, "Corpus (JSON lines)")->required();
  run_cmd->add_option("--scores", run.scores, "Score CSV")->required();
  run_cmd->add_option("--validation", run.validation, "Validation CSV for threshold calibration");
  run_cmd->add_option("--tau", run.tau, "Claim threshold override")->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--recall-floor", run.recall_floor, "Minimum recall")->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--fraction", run.fraction, "Cohort fraction")->check(CLI::Range(1e-12, 0.5));
  run_cmd->add_option("--ks", run.ks, "Retweet counts for the velocity curve")->delimiter(',');
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->add_option("--seed", run.seed, "Seed recorded with the run");
  run_cmd->add_flag("--plots", run.plots, "Also write SVG plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*stats_cmd) {
      const auto parsed = read_corpus(stats_corpus, strict, threads);
      const auto stats = ingest::corpus_stats(parsed.records, threads);
      auto doc = open_out(fs::path(stats_out) / "stats.txt");
      ingest::write_stats_document(doc, stats);
      auto counts = open_out(fs::path(stats_out) / "kind_counts.csv");
      ingest::write_kind_counts_csv(counts, stats);
      ingest::write_stats_document(std::cout, stats);
    } else if (*calibrate_cmd) {
      auto in = open_in(cal_validation);
      const auto examples = calibration::load_validation(in);
      if (examples.empty()) throw DataError("validation set is empty");
      const auto result = calibration::select_threshold(calibration::pr_curve(examples), cal_floor);
      auto doc = open_out(fs::path(cal_out) / "calibration.json");
      calibration::write_calibration_document(doc, result);
      auto curve = open_out(fs::path(cal_out) / "calibration_curve.csv");
      calibration::write_curve_csv(curve, result.curve);
      const auto table = calibration::render_prf_table(calibration::eval_report(examples, result.tau));
      auto table_out = open_out(fs::path(cal_out) / "eval_table.txt");
      table_out << table;
      std::cout << fmt::format("tau={}\n", result.tau) << table;
    } else if (*score_cmd) {
      scoring::BaselineConfig weights;
      if (!score_weights.empty()) {
        auto in = open_in(score_weights);
        weights = scoring::load_baseline_config(in);
      }
      const auto parsed = read_corpus(score_corpus, strict, threads);
      const scoring::BaselineClaimScorer claim(weights.claim);
      const scoring::BaselineBiasScorer bias(weights.bias);
      const auto scores = scoring::score_corpus(parsed.records, claim, bias, score_tau, threads);
      auto out = open_out(score_out);
      scoring::write_scores(out, scores);
    } else if (*cohort_cmd) {
      const auto parsed = read_corpus(cohort_corpus, strict, threads);
      const auto scores = read_scores(cohort_scores);
      const auto joined = scoring::join_scores(parsed.records, scores);
      const auto roots = cohort::select_roots(cohort::filter_claims(joined.rows, cohort_tau));
      const auto assignment = cohort::decile_split(roots, cohort_fraction);
      auto out = open_out(cohort_out);
      cohort::write_cohort_csv(out, assignment);
      std::cout << fmt::format("roots={} biased={} unbiased={} excluded_missing_bias={}\n", roots.size(),
                               assignment.biased.size(), assignment.unbiased.size(),
                               assignment.excluded_missing_bias);
    } else if (*cascades_cmd) {
      const auto parsed = read_corpus(casc_corpus, strict, threads);
      auto cohort_in = open_in(casc_cohort);
      const auto assignment = cohort::read_cohort_csv(cohort_in);
      std::vector<std::string> roots = assignment.biased;
      roots.insert(roots.end(), assignment.unbiased.begin(), assignment.unbiased.end());
      const auto edges = cascade::build_edgelist(parsed.records);
      const auto forest = cascade::reconstruct(roots, edges, parsed.records, threads);
      auto edge_out = open_out(fs::path(casc_out) / "edgelist.csv");
      cascade::write_edgelist_csv(edge_out, edges);
      auto casc = open_out(fs::path(casc_out) / "cascades.jsonl");
      cascade::write_cascades_jsonl(casc, forest.cascades);
      std::cout << fmt::format("cascades={} dangling_edges={} timestamp_violations={}\n", forest.cascades.size(),
                               forest.dangling_edges, forest.timestamp_violations);
    } else if (*metrics_cmd) {
      auto casc_in = open_in(met_cascades);
      const auto cascades = cascade::read_cascades_jsonl(casc_in);
      auto cohort_in = open_in(met_cohort);
      const auto assignment = cohort::read_cohort_csv(cohort_in);
      std::unordered_map<std::string, const cascade::Cascade*> by_root;
      for (const auto& c : cascades) by_root[c.root_id] = &c;
      auto pick = [&](const std::vector<std::string>& ids) {
        std::vector<cascade::Cascade> out;
        for (const auto& id : ids) {
          auto it = by_root.find(id);
          if (it == by_root.end()) throw DataError("no cascade for root '" + id + "'");
          out.push_back(*it->second);
        }
        return out;
      };
      const auto biased = cascade::build_cohort_report("biased", pick(assignment.biased), met_ks);
      const auto unbiased = cascade::build_cohort_report("unbiased", pick(assignment.unbiased), met_ks);
      const auto all = cascade::build_cohort_report("all", cascades, met_ks);
      const fs::path dir(met_out);
      for (const auto* r : {&biased, &unbiased}) {
        auto m = open_out(dir / ("metrics_" + r->label + ".csv"));
        cascade::write_metrics_csv(m, r->cascades);
        auto v = open_out(dir / ("velocity_" + r->label + ".csv"));
        cascade::write_velocity_csv(v, r->velocity);
        auto a = open_out(dir / ("authorship_" + r->label + ".csv"));
        cascade::write_authorship_csv(a, r->authorship);
        if (r->users) {
          auto c = open_out(dir / ("ccdf_" + r->label + ".csv"));
          cascade::write_ccdf_csv(c, *r->users);
        }
      }
      const auto text = report::render_summary(report::summarize(all, biased, unbiased));
      auto s = open_out(dir / "summary.txt");
      s << text;
      std::cout << text;
      if (met_plots) {
        auto p1 = open_out(dir / "plots" / "size_ccdf.svg");
        p1 << report::ccdf_svg(biased.users ? &*biased.users : nullptr, unbiased.users ? &*unbiased.users : nullptr);
        auto p2 = open_out(dir / "plots" / "velocity.svg");
        p2 << report::velocity_svg(biased.velocity, unbiased.velocity);
        auto p3 = open_out(dir / "plots" / "authorship.svg");
        p3 << report::authorship_svg(all.authorship);
      }
    } else if (*synth_cmd) {
      auto config = synth::reference_profile();
      if (synth_profile == "small") {
        config.cohorts = {{"biased", 50, 0.9, 50, 0.05, 0.6, 1.0},
                          {"neutral", 400, 0.3, 50, 0.02, 0.3, 0.6},
                          {"unbiased", 50, 0.85, 50, 0.05 / synth::kReferenceRateRatio, 0.0, 0.3}};
        config.noise_non_claims = 20;
        config.noise_replies = 10;
      }
      config.seed = synth_seed;
      const auto truth = synth::generate(config);
      synth::write_ground_truth(synth_out, truth);
      std::cout << fmt::format("records={} cascades={} seed={}\n", truth.records.size(), truth.cascades.size(),
                               config.seed);
    } else if (*report_cmd) {
      if (rep_prf.empty() && rep_vb.empty()) throw CLI::RequiredError("--prf-table or --velocity-biased");
      if (!rep_prf.empty()) {
        auto in = open_in(rep_prf);
        csv::Reader reader(in);
        auto header = reader.next();
        if (!header || *header != csv::Row{"class", "precision", "recall", "f1"}) {
          throw DataError("PRF table header must be 'class,precision,recall,f1'", 1);
        }
        std::vector<calibration::ClassRow> rows;
        while (auto row = reader.next()) {
          if (row->size() != 4) throw DataError("expected 4 fields", reader.line());
          auto num = [&](std::size_t i) {
            auto v = csv::parse_double((*row)[i]);
            if (!v) throw DataError("bad number", reader.line());
            return *v;
          };
          rows.push_back({(*row)[0], num(1), num(2), num(3)});
        }
        std::cout << calibration::render_prf_table(rows);
      }
      if (!rep_vb.empty()) {
        if (rep_vu.empty()) throw CLI::RequiredError("--velocity-unbiased");
        auto bin = open_in(rep_vb);
        auto uin = open_in(rep_vu);
        report::SummaryFigures figures;
        figures.biased_velocity = cascade::read_velocity_csv(bin);
        figures.unbiased_velocity = cascade::read_velocity_csv(uin);
        for (const auto& b : figures.biased_velocity) {
          for (const auto& u : figures.unbiased_velocity) {
            if (u.k == b.k) std::cout << report::render_velocity_line(b.k, b.median_minutes, u.median_minutes) << '\n';
          }
        }
      }
    } else if (*mine_cmd) {
      auto in = open_in(mine_excerpts);
      auto excerpts = corpusprep::load_excerpts(in);
      auto docs_in = open_in(mine_documents);
      std::vector<std::string> documents;
      for (std::string line; std::getline(docs_in, line);) documents.push_back(line);
      std::vector<corpusprep::Excerpt> positives;
      for (const auto& e : excerpts) {
        if (e.label == 1) positives.push_back(e);
      }
      const auto pool = corpusprep::build_pool(documents);
      const auto negatives = corpusprep::mine_hard_negatives(positives, pool, threads);
      const auto mined = corpusprep::negatives_as_excerpts(negatives);
      excerpts.insert(excerpts.end(), mined.begin(), mined.end());
      auto out = open_out(mine_out);
      corpusprep::write_excerpts(out, excerpts);
      std::cout << fmt::format("positives={} mined={} pool={}\n", positives.size(), mined.size(), pool.size());
    } else if (*split_cmd) {
      auto in = open_in(split_excerpts);
      const auto excerpts = corpusprep::load_excerpts(in);
      const auto split = corpusprep::stratified_split(excerpts, {}, split_seed);
      for (const auto& c : split.small_categories) {
        std::cerr << "warning: category '" << c << "' has fewer than 3 items; all assigned to train\n";
      }
      auto out = open_out(split_out);
      corpusprep::write_split_csv(out, split);
    } else if (*run_cmd) {
      run.threads = threads;
      const auto summary = pipeline::run_pipeline(run);
      std::cout << fmt::format("tau={} roots={} biased={} unbiased={}{}\n", summary.tau, summary.roots,
                               summary.biased.cascades.size(), summary.unbiased.cascades.size(),
                               summary.no_roots ? " (no roots)" : "");
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
