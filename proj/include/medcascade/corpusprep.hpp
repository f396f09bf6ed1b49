#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medcascade/error.hpp"
#include "medcascade/text.hpp"

namespace medcascade::corpusprep {

/// An annotated excerpt of course material. Negatives use category "none".
struct Excerpt {
  std::string id;
  std::string text;
  int label = 0;  // 1 = biased
  std::string category = "none";

  bool operator==(const Excerpt&) const = default;
};

/// CSV `id,text,label,category`.
std::vector<Excerpt> load_excerpts(std::istream& in);
void write_excerpts(std::ostream& out, std::span<const Excerpt> excerpts);

struct SparseVector {
  std::vector<std::pair<std::string, double>> entries;  // sorted by term
  double norm = 0.0;
};

/// Binary term weights scaled by smoothed inverse document frequency,
/// idf(t) = ln((1 + N) / (1 + df(t))) + 1, so identical token sets always
/// have cosine 1 and every term carries positive weight.
class TfidfModel {
 public:
  explicit TfidfModel(std::span<const ingest::CleanText> corpus);

  std::size_t documents() const { return documents_; }
  double idf(std::string_view term) const;
  SparseVector vectorize(const ingest::CleanText& text) const;

 private:
  std::size_t documents_ = 0;
  std::map<std::string, std::size_t, std::less<>> document_frequency_;
};

double cosine(const SparseVector& a, const SparseVector& b);

/// TF-IDF cosine of two texts after preprocess_text, in [0, 1]. Empty token
/// sets give 0.
double tfidf_cosine(std::string_view a, std::string_view b, const TfidfModel& model);
/// Convenience overload building the model from `corpus` (non-empty).
double tfidf_cosine(std::string_view a, std::string_view b, std::span<const std::string> corpus);

struct HardNegative {
  std::string positive_id;
  std::size_t pool_index = 0;
  std::string text;
  double similarity = 0.0;
};

/// Raised when some positives find no eligible pool sentence.
class PoolExhausted : public DataError {
 public:
  explicit PoolExhausted(std::vector<std::string> unmatched);
  const std::vector<std::string>& unmatched() const { return unmatched_; }

 private:
  std::vector<std::string> unmatched_;
};

/// For each positive (in id order) picks the most similar pool sentence that
/// is neither a verbatim copy of some positive nor already picked. Similarity
/// is TF-IDF cosine with document frequencies taken over positives + pool.
/// Ties go to the lower pool index.
std::vector<HardNegative> mine_hard_negatives(std::span<const Excerpt> positives,
                                              std::span<const std::string> pool, unsigned threads = 1);

/// Sentence pool from course-material documents.
std::vector<std::string> build_pool(std::span<const std::string> documents);

/// Excerpts for mined negatives: id "neg-<positive id>", label 0, category "none".
std::vector<Excerpt> negatives_as_excerpts(std::span<const HardNegative> negatives);

enum class Split : std::uint8_t { train, dev, test };
std::string_view to_string(Split split);

struct SplitRatios {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

/// Largest-remainder apportionment of n items; leftover items go to the
/// largest fractional parts, ties in train, dev, test order.
std::array<std::size_t, 3> apportion(std::size_t n, const SplitRatios& ratios);

struct SplitAssignment {
  std::vector<std::pair<std::string, Split>> assignment;  // sorted by id
  std::vector<std::string> small_categories;  // fewer than 3 items, sent to train
};

/// Per-category stratified split, shuffled within category by a generator
/// seeded from (seed, category). Deterministic for a given seed; independent
/// of input order. Ratios must be non-negative and sum to 1.
SplitAssignment stratified_split(std::span<const Excerpt> excerpts, const SplitRatios& ratios,
                                 std::uint64_t seed);

/// CSV `id,split`.
void write_split_csv(std::ostream& out, const SplitAssignment& split);

}  // namespace medcascade::corpusprep
