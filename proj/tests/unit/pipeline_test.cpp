#include <gtest/gtest.h>

#include "medcascade/pipeline.hpp"
#include "medcascade/synth.hpp"
#include "test_support.hpp"

using namespace medcascade;
using namespace medcascade::pipeline;
namespace mt = medcascade::testing;

namespace {

synth::GenConfig reduced_profile(std::uint64_t seed) {
  auto c = synth::reference_profile();
  c.seed = seed;
  c.cohorts[0].n_roots = 60;
  c.cohorts[1].n_roots = 480;
  c.cohorts[2].n_roots = 60;
  c.noise_non_claims = 30;
  c.noise_replies = 30;
  return c;
}

RunConfig config_for(const mt::TempDir& in, const std::filesystem::path& out) {
  RunConfig c;
  c.corpus = (in / "corpus.jsonl").string();
  c.scores = (in / "scores.csv").string();
  c.out = out.string();
  return c;
}

}  // namespace

TEST(Pipeline, SynthRunRecoversCohortsAndOrdering) {
  mt::TempDir in, out;
  const auto truth = synth::generate(reduced_profile(3));
  synth::write_ground_truth(in.path().string(), truth);
  const auto s = run_pipeline(config_for(in, out.path()));
  EXPECT_EQ(s.tau, kDefaultTau);
  EXPECT_FALSE(s.no_roots);
  EXPECT_EQ(s.roots, 600u);
  ASSERT_EQ(s.biased.cascades.size(), 60u);
  ASSERT_EQ(s.unbiased.cascades.size(), 60u);
  for (const auto& m : s.biased.cascades) EXPECT_EQ(m.root_id.rfind("biased-", 0), 0u);
  for (const auto& m : s.unbiased.cascades) EXPECT_EQ(m.root_id.rfind("unbiased-", 0), 0u);
  const auto first_b = s.biased.velocity.front(), first_u = s.unbiased.velocity.front();
  EXPECT_EQ(first_b.k, 1u);
  EXPECT_LT(first_b.median_minutes, first_u.median_minutes);
  for (const char* name : {"stats.txt", "cohort.csv", "edgelist.csv", "cascades.jsonl", "summary.txt",
                           "velocity_biased.csv", "ccdf_unbiased.csv", "run_config.txt"}) {
    EXPECT_TRUE(std::filesystem::exists(out / name)) << name;
  }
  EXPECT_FALSE(std::filesystem::exists(out / "calibration.json"));
}

TEST(Pipeline, ByteIdenticalAcrossRunsAndThreads) {
  mt::TempDir in;
  synth::write_ground_truth(in.path().string(), synth::generate(reduced_profile(4)));
  mt::TempDir base;
  auto c = config_for(in, base.path());
  c.plots = true;
  run_pipeline(c);
  const auto reference = mt::snapshot(base.path());
  EXPECT_TRUE(reference.count("plots/velocity.svg"));
  for (unsigned threads : {1u, 4u, 8u}) {
    mt::TempDir other;
    c.out = other.path().string();
    c.threads = threads;
    run_pipeline(c);
    EXPECT_EQ(mt::snapshot(other.path()), reference) << threads;
  }
}

TEST(Pipeline, EmptyCorpusReportsNoRoots) {
  mt::TempDir in, out;
  mt::write_file(in / "corpus.jsonl", "");
  mt::write_file(in / "scores.csv", "tweet_id,p_claim,p_bias\n");
  const auto s = run_pipeline(config_for(in, out.path()));
  EXPECT_TRUE(s.no_roots);
  EXPECT_EQ(s.records, 0u);
  EXPECT_NE(mt::read_file(out / "summary.txt").find("no roots"), std::string::npos);
  EXPECT_EQ(mt::read_file(out / "cohort.csv"), "tweet_id,cohort\n");
}

TEST(Pipeline, CalibratesWhenValidationGiven) {
  mt::TempDir in, out;
  synth::write_ground_truth(in.path().string(), synth::generate(reduced_profile(5)));
  auto c = config_for(in, out.path());
  c.validation = mt::fixture("validation10.csv");
  const auto s = run_pipeline(c);
  ASSERT_TRUE(s.calibration);
  EXPECT_EQ(s.tau, 0.93);
  EXPECT_TRUE(std::filesystem::exists(out / "calibration.json"));
  EXPECT_NE(mt::read_file(out / "summary.txt").find("tau: 0.93 (calibrated)"), std::string::npos);

  mt::TempDir out2;
  c.out = out2.path().string();
  c.tau = 0.5;
  const auto overridden = run_pipeline(c);
  EXPECT_FALSE(overridden.calibration);
  EXPECT_EQ(overridden.tau, 0.5);
}

TEST(Pipeline, StageErrors) {
  mt::TempDir in, out;
  auto c = config_for(in, out.path());
  try {
    run_pipeline(c);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "config");
  }
  mt::write_file(in / "corpus.jsonl", "");
  mt::write_file(in / "scores.csv", "wrong,header\n");
  try {
    run_pipeline(c);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "scoring");
  }
  mt::write_file(in / "scores.csv", "tweet_id,p_claim,p_bias\n");
  c.fraction = 0.7;
  EXPECT_THROW(run_pipeline(c), StageError);
}

TEST(Pipeline, RejectedRecordsAreReported) {
  mt::TempDir in, out;
  mt::write_file(in / "corpus.jsonl",
                 "{\"id\":\"a\",\"created_at\":1,\"ref_kind\":\"original\"}\nnot json\n"
                 "{\"id\":\"b\",\"created_at\":2,\"ref_kind\":\"original\"}\n");
  mt::write_file(in / "scores.csv", "tweet_id,p_claim,p_bias\na,0.95,0.9\nb,0.99,0.1\n");
  const auto s = run_pipeline(config_for(in, out.path()));
  EXPECT_EQ(s.rejected_records, 1u);
  EXPECT_EQ(s.roots, 2u);
  EXPECT_EQ(mt::read_file(out / "cohort.csv"), "tweet_id,cohort\na,biased\nb,unbiased\n");
  EXPECT_EQ(mt::read_file(out / "ingest_errors.csv").substr(0, 15), "line,message\n2,");
}
