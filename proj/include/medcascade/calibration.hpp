#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "medcascade/error.hpp"

namespace medcascade::calibration {

/// One annotated validation example: claim probability and gold label.
struct LabeledExample {
  std::string tweet_id;
  double p = 0.0;
  int y = 0;  // 1 = claim
};

/// Column-oriented copy of a validation set, laid out for the vector kernels.
class ValidationSet {
 public:
  ValidationSet() = default;
  explicit ValidationSet(std::span<const LabeledExample> examples);

  std::size_t size() const { return scores_.size(); }
  std::span<const double> scores() const { return scores_; }
  std::span<const std::uint8_t> labels() const { return labels_; }
  std::size_t positives() const { return positives_; }

 private:
  std::vector<double> scores_;
  std::vector<std::uint8_t> labels_;
  std::size_t positives_ = 0;
};

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

/// Predicted positive iff p > tau (strict).
ConfusionCounts confusion_at(const ValidationSet& examples, double tau);
ConfusionCounts confusion_at(std::span<const LabeledExample> examples, double tau);

/// Precision, recall and F1 of the positive class. Zero denominators yield 0
/// with the matching `undefined` flag set.
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
};

Prf prf(const ConfusionCounts& c);

/// Metrics of the negative class, obtained by swapping the roles of the
/// labels.
Prf prf_negative_class(const ConfusionCounts& c);

struct PrPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ConfusionCounts counts;
};

/// One point per distinct score plus the boundaries 0 and 1, ascending by
/// threshold. A score equal to 0 or 1 shares the boundary point.
std::vector<PrPoint> pr_curve(std::span<const LabeledExample> examples);

struct CalibrationResult {
  double tau = 0.0;
  double recall_floor = 0.0;
  std::size_t selected = 0;  // index into curve
  std::vector<PrPoint> curve;
};

inline constexpr double kDefaultRecallFloor = 0.10;

/// Picks the point with the highest precision among those with
/// recall >= recall_floor; ties go to higher recall, then lower threshold.
/// Throws DataError("infeasible floor ...") when no point qualifies.
CalibrationResult select_threshold(std::vector<PrPoint> curve, double recall_floor);

/// Training weight for the positive class: n_pos / n_neg. Throws
/// std::domain_error when n_neg is 0.
double class_weight(std::uint64_t n_pos, std::uint64_t n_neg);

struct ClassRow {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Rows "Non-Claim" then "Claim" at threshold tau.
std::vector<ClassRow> eval_report(std::span<const LabeledExample> examples, double tau);

/// Renders rows as a fixed-layout text table with two-decimal cells.
std::string render_prf_table(const std::vector<ClassRow>& rows);

/// CSV `tweet_id,p_claim,label`.
std::vector<LabeledExample> load_validation(std::istream& in);

/// JSON document with tau, recall_floor and the selected point.
void write_calibration_document(std::ostream& out, const CalibrationResult& result);
/// CSV `threshold,precision,recall,f1,tp,fp,fn,tn`.
void write_curve_csv(std::ostream& out, const std::vector<PrPoint>& curve);
CalibrationResult read_calibration_document(std::istream& document, std::istream& curve_csv);

}  // namespace medcascade::calibration
