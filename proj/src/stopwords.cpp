// English stopwords.
//
// Source: the NLTK English stopword corpus (179 entries), minus the
// quantifiers and negations {all, any, both, each, few, more, most, no, nor,
// not, only, other, own, same, some, such, very}. Those words carry the
// generalization and negation cues the bias scorer reads, so they must survive
// cleaning. Bump the version tag whenever the list changes.

#include <algorithm>
#include <array>
#include <string_view>

#include "medcascade/text.hpp"

namespace medcascade::ingest {
namespace {

constexpr auto kStopwords = [] {
  std::array<std::string_view, 162> words = {
      "a",          "about",    "above",     "after",     "again",      "against",  "ain",
      "am",         "an",       "and",       "are",       "aren",       "aren't",   "as",
      "at",         "be",       "because",   "been",      "before",     "being",    "below",
      "between",    "but",      "by",        "can",       "couldn",     "couldn't", "d",
      "did",        "didn",     "didn't",    "do",        "does",       "doesn",    "doesn't",
      "doing",      "don",      "don't",     "down",      "during",     "for",      "from",
      "further",    "had",      "hadn",      "hadn't",    "has",        "hasn",     "hasn't",
      "have",       "haven",    "haven't",   "having",    "he",         "her",      "here",
      "hers",       "herself",  "him",       "himself",   "his",        "how",      "i",
      "if",         "in",       "into",      "is",        "isn",        "isn't",    "it",
      "it's",       "its",      "itself",    "just",      "ll",         "m",        "ma",
      "me",         "mightn",   "mightn't",  "mustn",     "mustn't",    "my",       "myself",
      "needn",      "needn't",  "now",       "o",         "of",         "off",      "on",
      "once",       "or",       "our",       "ours",      "ourselves",  "out",      "over",
      "re",         "s",        "shan",      "shan't",    "she",        "she's",    "should",
      "should've",  "shouldn",  "shouldn't", "so",        "t",          "than",     "that",
      "that'll",    "the",      "their",     "theirs",    "them",       "themselves", "then",
      "there",      "these",    "they",      "this",      "those",      "through",  "to",
      "too",        "under",    "until",     "up",        "ve",         "was",      "wasn",
      "wasn't",     "we",       "were",      "weren",     "weren't",    "what",     "when",
      "where",      "which",    "while",     "who",       "whom",       "why",      "will",
      "with",       "won",      "won't",     "wouldn",    "wouldn't",   "y",        "you",
      "you'd",      "you'll",   "you're",    "you've",    "your",       "yours",    "yourself",
      "yourselves",
  };
  std::sort(words.begin(), words.end());
  return words;
}();

}  // namespace

std::string_view stopword_list_version() { return "nltk-en-179-minus-quantifiers/v1"; }

std::span<const std::string_view> stopwords() { return kStopwords; }

bool is_stopword(std::string_view token) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), token);
}

}  // namespace medcascade::ingest
