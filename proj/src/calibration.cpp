#include "medcascade/calibration.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "medcascade/csv.hpp"
#include "medcascade/simd/kernels.hpp"

namespace medcascade::calibration {

ValidationSet::ValidationSet(std::span<const LabeledExample> examples) {
  scores_.reserve(examples.size());
  labels_.reserve(examples.size());
  for (const auto& e : examples) {
    scores_.push_back(e.p);
    labels_.push_back(e.y ? 1 : 0);
    positives_ += e.y ? 1 : 0;
  }
}

ConfusionCounts confusion_at(const ValidationSet& examples, double tau) {
  const auto above = simd::active_kernels().count_above(examples.scores(), examples.labels(), tau);
  const std::uint64_t positives = examples.positives();
  const std::uint64_t negatives = examples.size() - positives;
  return {above.positive, above.negative, positives - above.positive, negatives - above.negative};
}

ConfusionCounts confusion_at(std::span<const LabeledExample> examples, double tau) {
  return confusion_at(ValidationSet(examples), tau);
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Prf prf(const ConfusionCounts& c) {
  Prf out;
  out.precision_undefined = c.tp + c.fp == 0;
  out.recall_undefined = c.tp + c.fn == 0;
  out.precision = ratio(c.tp, c.tp + c.fp);
  out.recall = ratio(c.tp, c.tp + c.fn);
  // 2PR/(P+R) written over counts so it is one correctly rounded division.
  out.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
  return out;
}

Prf prf_negative_class(const ConfusionCounts& c) { return prf({c.tn, c.fn, c.fp, c.tp}); }

std::vector<PrPoint> pr_curve(std::span<const LabeledExample> examples) {
  std::vector<std::pair<double, int>> sorted;
  sorted.reserve(examples.size());
  for (const auto& e : examples) sorted.emplace_back(e.p, e.y ? 1 : 0);
  std::sort(sorted.begin(), sorted.end());

  // positives_above[i]: positives among sorted[i..n)
  const std::size_t n = sorted.size();
  std::vector<std::uint64_t> positives_above(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) positives_above[i] = positives_above[i + 1] + sorted[i].second;
  const std::uint64_t positives = positives_above[0];
  const std::uint64_t negatives = n - positives;

  std::vector<double> thresholds = {0.0, 1.0};
  for (const auto& [p, y] : sorted) thresholds.push_back(p);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  std::vector<PrPoint> curve;
  curve.reserve(thresholds.size());
  std::size_t cursor = 0;  // first index with score > threshold
  for (double t : thresholds) {
    while (cursor < n && sorted[cursor].first <= t) ++cursor;
    ConfusionCounts c;
    c.tp = positives_above[cursor];
    c.fp = (n - cursor) - c.tp;
    c.fn = positives - c.tp;
    c.tn = negatives - c.fp;
    const Prf m = prf(c);
    curve.push_back({t, m.precision, m.recall, m.f1, c});
  }
  return curve;
}

CalibrationResult select_threshold(std::vector<PrPoint> curve, double recall_floor) {
  if (curve.empty()) throw std::invalid_argument("select_threshold: empty curve");
  if (!(recall_floor >= 0.0 && recall_floor <= 1.0)) {
    throw std::invalid_argument("select_threshold: recall_floor outside [0,1]");
  }
  std::size_t best = curve.size();
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const auto& p = curve[i];
    if (p.recall < recall_floor) continue;
    if (best == curve.size()) {
      best = i;
      continue;
    }
    const auto& b = curve[best];
    const bool better = p.precision > b.precision ||
                        (p.precision == b.precision &&
                         (p.recall > b.recall || (p.recall == b.recall && p.threshold < b.threshold)));
    if (better) best = i;
  }
  if (best == curve.size()) {
    throw DataError(fmt::format("infeasible floor: no threshold reaches recall >= {}", recall_floor));
  }
  CalibrationResult result;
  result.tau = curve[best].threshold;
  result.recall_floor = recall_floor;
  result.selected = best;
  result.curve = std::move(curve);
  return result;
}

double class_weight(std::uint64_t n_pos, std::uint64_t n_neg) {
  if (n_neg == 0) throw std::domain_error("class_weight: no negative instances");
  return static_cast<double>(n_pos) / static_cast<double>(n_neg);
}

std::vector<ClassRow> eval_report(std::span<const LabeledExample> examples, double tau) {
  const ConfusionCounts c = confusion_at(examples, tau);
  const Prf neg = prf_negative_class(c);
  const Prf pos = prf(c);
  return {{"Non-Claim", neg.precision, neg.recall, neg.f1}, {"Claim", pos.precision, pos.recall, pos.f1}};
}

std::string render_prf_table(const std::vector<ClassRow>& rows) {
  std::string out = fmt::format("{:<10} {:>9} {:>6} {:>8}\n", "Class", "Precision", "Recall", "F1-Score");
  for (const auto& r : rows) {
    out += fmt::format("{:<10} {:>9.2f} {:>6.2f} {:>8.2f}\n", r.label, r.precision, r.recall, r.f1);
  }
  return out;
}

std::vector<LabeledExample> load_validation(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return {};
  if (*header != csv::Row{"tweet_id", "p_claim", "label"}) {
    throw DataError("validation header must be 'tweet_id,p_claim,label'", 1);
  }
  std::vector<LabeledExample> examples;
  while (auto row = reader.next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() != 3) throw DataError("expected 3 fields", reader.line());
    const auto p = csv::parse_double((*row)[1]);
    if (!p || *p < 0.0 || *p > 1.0) throw DataError("p_claim out of range [0,1]", reader.line());
    const auto label = csv::parse_int((*row)[2]);
    if (!label || (*label != 0 && *label != 1)) throw DataError("label must be 0 or 1", reader.line());
    examples.push_back({(*row)[0], *p, static_cast<int>(*label)});
  }
  return examples;
}

void write_calibration_document(std::ostream& out, const CalibrationResult& result) {
  const auto& s = result.curve.at(result.selected);
  nlohmann::ordered_json doc;
  doc["tau"] = result.tau;
  doc["recall_floor"] = result.recall_floor;
  doc["selected"] = {{"threshold", s.threshold}, {"precision", s.precision}, {"recall", s.recall},
                     {"f1", s.f1},               {"tp", s.counts.tp},        {"fp", s.counts.fp},
                     {"fn", s.counts.fn},        {"tn", s.counts.tn}};
  doc["curve_points"] = result.curve.size();
  out << doc.dump(2) << '\n';
}

void write_curve_csv(std::ostream& out, const std::vector<PrPoint>& curve) {
  out << "threshold,precision,recall,f1,tp,fp,fn,tn\n";
  for (const auto& p : curve) {
    out << csv::format_double(p.threshold) << ',' << csv::format_double(p.precision) << ','
        << csv::format_double(p.recall) << ',' << csv::format_double(p.f1) << ',' << p.counts.tp << ','
        << p.counts.fp << ',' << p.counts.fn << ',' << p.counts.tn << '\n';
  }
}

CalibrationResult read_calibration_document(std::istream& document, std::istream& curve_csv) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("calibration document: ") + e.what());
  }
  CalibrationResult result;
  result.tau = doc.at("tau").get<double>();
  result.recall_floor = doc.at("recall_floor").get<double>();

  csv::Reader reader(curve_csv);
  auto header = reader.next();
  if (!header || header->size() != 8) throw DataError("bad curve header", 1);
  while (auto row = reader.next()) {
    if (row->size() != 8) throw DataError("expected 8 fields", reader.line());
    PrPoint p;
    auto num = [&](std::size_t i) {
      auto v = csv::parse_double((*row)[i]);
      if (!v) throw DataError("bad number", reader.line());
      return *v;
    };
    auto count = [&](std::size_t i) {
      auto v = csv::parse_int((*row)[i]);
      if (!v || *v < 0) throw DataError("bad count", reader.line());
      return static_cast<std::uint64_t>(*v);
    };
    p.threshold = num(0);
    p.precision = num(1);
    p.recall = num(2);
    p.f1 = num(3);
    p.counts = {count(4), count(5), count(6), count(7)};
    result.curve.push_back(p);
  }
  auto it = std::find_if(result.curve.begin(), result.curve.end(),
                         [&](const PrPoint& p) { return p.threshold == result.tau; });
  if (it == result.curve.end()) throw DataError("tau does not appear in the curve");
  result.selected = static_cast<std::size_t>(it - result.curve.begin());
  return result;
}

}  // namespace medcascade::calibration
