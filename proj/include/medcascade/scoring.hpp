#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "medcascade/error.hpp"
#include "medcascade/ingest.hpp"
#include "medcascade/text.hpp"

namespace medcascade::scoring {

/// Claim and bias probabilities for one tweet. p_bias is only present for
/// tweets that were bias-scored (threshold-passing claims).
struct ScoreRecord {
  std::string tweet_id;
  double p_claim = 0.0;
  std::optional<double> p_bias;

  bool operator==(const ScoreRecord&) const = default;
};

inline constexpr std::string_view kScoreHeader = "tweet_id,p_claim,p_bias";

struct LoadResult {
  std::vector<ScoreRecord> records;  // first-seen order, last value wins
  std::vector<RecordError> errors;
  std::size_t duplicate_warnings = 0;
};

/// Reads a score file (CSV `tweet_id,p_claim,p_bias`, header required).
/// Throws DataError on a bad header regardless of `on_error`.
LoadResult load_scores(std::istream& in, OnError on_error = OnError::skip);

void write_scores(std::ostream& out, const std::vector<ScoreRecord>& scores);

/// Probability model over cleaned tokens.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double score(const ingest::CleanText& text) const = 0;
};

double logistic(double x);

/// Weights of the baseline claim scorer:
///   sigma(intercept + numeral*[has numeral] + percentage*[has percentage]
///         + causal*#causal-verb hits + medical*#medical-term hits)
struct ClaimWeights {
  double intercept = -2.0;
  double numeral = 0.8;
  double percentage = 1.0;
  double causal = 1.2;
  double medical = 0.6;
};

/// Weights of the baseline bias scorer:
///   sigma(intercept + gendered*g + generalization*c + interaction*g*c)
/// with g = gendered-term hits and c = generalization-cue hits ("all",
/// "only", "every", ..., and percentage tokens).
struct BiasWeights {
  double intercept = -1.5;
  double gendered = 0.4;
  double generalization = 0.3;
  double interaction = 0.5;
};

struct BaselineConfig {
  ClaimWeights claim;
  BiasWeights bias;
};

/// Parses a flat `key=value` file (keys like `claim.intercept`). Unknown keys
/// and malformed values throw DataError. Keys not present keep defaults.
BaselineConfig load_baseline_config(std::istream& in);
void write_baseline_config(std::ostream& out, const BaselineConfig& config);

/// Stand-in for a trained claim detector: logistic model over hand-crafted
/// features. Pure function of the tokens and the pinned lexicons.
class BaselineClaimScorer final : public Scorer {
 public:
  explicit BaselineClaimScorer(ClaimWeights weights = {}) : weights_(weights) {}
  double score(const ingest::CleanText& text) const override;

 private:
  ClaimWeights weights_;
};

/// Stand-in for a trained bias detector.
class BaselineBiasScorer final : public Scorer {
 public:
  explicit BaselineBiasScorer(BiasWeights weights = {}) : weights_(weights) {}
  double score(const ingest::CleanText& text) const override;

 private:
  BiasWeights weights_;
};

bool is_causal_verb(std::string_view token);
bool is_medical_term(std::string_view token);
bool is_gendered_term(std::string_view token);
bool is_generalization_cue(std::string_view token);
bool is_percentage(std::string_view token);
bool has_numeral(std::string_view token);

/// Scores every record with the claim scorer; bias-scores records whose
/// p_claim exceeds `bias_tau` (all records when bias_tau is absent).
std::vector<ScoreRecord> score_corpus(const std::vector<ingest::TweetRecord>& records,
                                      const Scorer& claim, const Scorer& bias,
                                      std::optional<double> bias_tau, unsigned threads = 1);

struct ScoredTweet {
  const ingest::TweetRecord* record = nullptr;
  double p_claim = 0.0;
  std::optional<double> p_bias;
};

struct JoinResult {
  std::vector<ScoredTweet> rows;  // in record order
  std::size_t unscored = 0;
};

/// Inner join on tweet id. Rows point into `records`, which must outlive the
/// result.
JoinResult join_scores(const std::vector<ingest::TweetRecord>& records,
                       const std::vector<ScoreRecord>& scores);

}  // namespace medcascade::scoring
