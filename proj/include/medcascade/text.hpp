#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace medcascade::ingest {

/// Lowercase word tokens with URLs, hashtags, handles and stopwords removed.
struct CleanText {
  std::vector<std::string> tokens;

  bool operator==(const CleanText&) const = default;
};

/// Tokenizes and cleans one post. Idempotent: re-running on the joined
/// tokens yields the same tokens.
///
/// Rules, in order, per whitespace-separated token:
///   1. ASCII letters are lowercased; curly quotes become straight quotes.
///   2. Leading ASCII punctuation other than '#' and '@' is stripped.
///   3. Tokens now starting with '#' or '@' are dropped whole.
///   4. Tokens starting with "http://", "https://" or "www.", or containing
///      "://", are dropped.
///   5. Trailing ASCII punctuation other than '%' is stripped.
///   6. Empty tokens and stopwords are dropped.
CleanText preprocess_text(std::string_view text);

/// Version tag of the shipped stopword list.
std::string_view stopword_list_version();

/// The shipped stopword list, sorted.
std::span<const std::string_view> stopwords();

bool is_stopword(std::string_view token);

/// Splits prose into sentences at '.', '!' or '?' followed by whitespace.
/// Sentences are trimmed; empty ones are dropped.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace medcascade::ingest
