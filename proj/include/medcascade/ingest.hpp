#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "medcascade/error.hpp"

namespace medcascade::ingest {

enum class RefKind : std::uint8_t { original, retweet, reply, quote, mention };

inline constexpr std::array<RefKind, 5> kAllRefKinds = {
    RefKind::original, RefKind::retweet, RefKind::reply, RefKind::quote, RefKind::mention};

std::string_view to_string(RefKind kind);

/// std::nullopt for unknown names.
std::optional<RefKind> parse_ref_kind(std::string_view name);

/// UTC milliseconds since the Unix epoch.
using EpochMillis = std::int64_t;

/// One post. Immutable after parsing.
struct TweetRecord {
  std::string id;
  std::optional<std::string> author_id;
  EpochMillis created_at = 0;
  std::string text;
  RefKind ref_kind = RefKind::original;
  std::optional<std::string> ref_id;
  std::uint64_t like_count = 0;
  std::uint64_t view_count = 0;
  std::optional<std::string> place;

  bool operator==(const TweetRecord&) const = default;
};

/// Checks the per-record invariants. Returns an error message, or an empty
/// string when the record is valid.
std::string validate(const TweetRecord& record);

/// Parses "2023-04-01T12:00:00Z", "2023-04-01T12:00:00.250+02:00",
/// "2023-04-01 12:00:00" (UTC assumed) and plain dates.
std::optional<EpochMillis> parse_iso8601(std::string_view text);

struct ParseOptions {
  OnError on_error = OnError::skip;
  unsigned threads = 1;
};

struct ParseResult {
  std::vector<TweetRecord> records;
  std::vector<RecordError> errors;
  std::size_t unknown_kind_warnings = 0;
};

/// Reads line-delimited JSON records. Blank lines are ignored. With
/// OnError::abort the first bad line throws DataError.
ParseResult parse_corpus(std::istream& in, const ParseOptions& options = {});

/// Parses one JSON line. Throws DataError (without line number) on failure.
/// Sets *unknown_kind when ref_kind was not recognized and mapped to mention.
TweetRecord parse_record(std::string_view line, bool* unknown_kind = nullptr);

/// Writes one JSON line per record, fields in a fixed order.
void write_corpus(std::ostream& out, const std::vector<TweetRecord>& records);
std::string serialize_record(const TweetRecord& record);

struct CorpusStats {
  std::array<std::uint64_t, 5> kind_counts{};  // indexed by RefKind
  std::uint64_t total = 0;
  std::uint64_t like_sum = 0;
  std::uint64_t view_sum = 0;
  std::uint64_t geotagged = 0;
  std::optional<EpochMillis> earliest;
  std::optional<EpochMillis> latest;

  void add(const TweetRecord& record);
  /// Associative and commutative.
  void merge(const CorpusStats& other);

  std::uint64_t count(RefKind kind) const { return kind_counts[static_cast<std::size_t>(kind)]; }
  /// Means are undefined for an empty corpus.
  bool means_defined() const { return total > 0; }
  double mean_likes() const;
  double mean_views() const;
  double fraction(RefKind kind) const;
  double geotagged_fraction() const;

  bool operator==(const CorpusStats&) const = default;
};

CorpusStats corpus_stats(const std::vector<TweetRecord>& records, unsigned threads = 1);

/// Interaction breakdown with quotes and mentions merged into one bucket.
struct InteractionBreakdown {
  double retweets = 0;
  double replies = 0;
  double mentions_quotes = 0;
  double originals = 0;
};

InteractionBreakdown interaction_breakdown(const CorpusStats& stats);

/// Flat key=value document.
void write_stats_document(std::ostream& out, const CorpusStats& stats);
/// CSV `kind,count,fraction`, one row per kind.
void write_kind_counts_csv(std::ostream& out, const CorpusStats& stats);

}  // namespace medcascade::ingest
