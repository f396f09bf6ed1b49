#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "medcascade/calibration.hpp"
#include "medcascade/cascade.hpp"
#include "medcascade/error.hpp"

namespace medcascade::pipeline {

/// Threshold used when neither --tau nor a validation set is given.
inline constexpr double kDefaultTau = 0.91;

struct RunConfig {
  std::string corpus;      // line-delimited JSON records
  std::string scores;      // score CSV
  std::string validation;  // optional validation CSV
  std::optional<double> tau;
  double recall_floor = calibration::kDefaultRecallFloor;
  double fraction = 0.10;
  std::vector<std::size_t> ks{std::begin(cascade::kDefaultKs), std::end(cascade::kDefaultKs)};
  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool plots = false;
};

/// Checks documented ranges and that input files exist. Throws DataError.
void validate(const RunConfig& config);

/// A failure in one pipeline stage.
class StageError : public DataError {
 public:
  StageError(std::string stage, const std::string& message)
      : DataError(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct RunSummary {
  std::size_t records = 0;
  std::size_t rejected_records = 0;
  std::size_t unscored = 0;
  std::size_t claims = 0;
  std::size_t roots = 0;
  double tau = kDefaultTau;
  std::optional<calibration::CalibrationResult> calibration;
  bool no_roots = false;
  cascade::CohortReport all;
  cascade::CohortReport biased;
  cascade::CohortReport unbiased;
  std::vector<std::string> artifacts;  // relative paths, sorted
};

/// ingest -> score join -> calibrate (unless tau is given) -> cohorts ->
/// cascades -> metrics, writing every artifact into config.out. Outputs are
/// byte-identical for identical inputs regardless of config.threads.
RunSummary run_pipeline(const RunConfig& config);

}  // namespace medcascade::pipeline
