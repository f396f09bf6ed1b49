#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "medcascade/text.hpp"

using namespace medcascade::ingest;

namespace {

std::vector<std::string> tokens(std::string_view text) { return preprocess_text(text).tokens; }

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

TEST(Preprocess, EmptyInput) { EXPECT_TRUE(tokens("").empty()); }

TEST(Preprocess, DropsHashtagsUrlsAndStopwords) {
  EXPECT_EQ(tokens("Check this #depression https://t.co/x"), std::vector<std::string>{"check"});
}

TEST(Preprocess, ContractionStopword) {
  ASSERT_TRUE(is_stopword("don't"));
  EXPECT_EQ(tokens("Men don't cry"), (std::vector<std::string>{"men", "cry"}));
}

TEST(Preprocess, CurlyApostropheFolds) {
  EXPECT_EQ(tokens("Men don\u2019t cry"), (std::vector<std::string>{"men", "cry"}));
}

TEST(Preprocess, HandlesAndPunctuation) {
  EXPECT_EQ(tokens("@who said: \"Exercise causes anxiety!!\""),
            (std::vector<std::string>{"said", "exercise", "causes", "anxiety"}));
  EXPECT_EQ(tokens("(#tag) www.example.org ftp://host/x"), std::vector<std::string>{});
}

TEST(Preprocess, KeepsPercentAndQuantifiers) {
  EXPECT_EQ(tokens("Only 45% of women..."), (std::vector<std::string>{"only", "45%", "women"}));
  EXPECT_EQ(tokens("ALL men are NOT"), (std::vector<std::string>{"all", "men", "not"}));
}

TEST(Preprocess, IdempotentOnRandomText) {
  const std::vector<std::string> vocab{"The", "cause", "#tag", "@user", "http://x.y", "don't", "(Men)", "45%",
                                       "\u201cquoted\u201d", "women!", "...", "www.a.b", "ALL", "a,b", "it's", "x://y",
                                       "mid-word", "!!", "'lead", "only"};
  std::mt19937 gen(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const int n = static_cast<int>(gen() % 12);
    for (int i = 0; i < n; ++i) text += vocab[gen() % vocab.size()] + (gen() % 3 == 0 ? "  " : " ");
    const auto once = preprocess_text(text);
    EXPECT_EQ(preprocess_text(join(once.tokens)), once) << text;
  }
}

TEST(Stopwords, ShippedListShape) {
  const auto list = stopwords();
  EXPECT_EQ(list.size(), 162u);
  EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
  EXPECT_EQ(std::adjacent_find(list.begin(), list.end()), list.end());
  for (const char* kept : {"all", "any", "no", "not", "nor", "only", "some", "most", "very"}) {
    EXPECT_FALSE(is_stopword(kept)) << kept;
  }
  for (const char* dropped : {"this", "the", "don't", "is", "and"}) EXPECT_TRUE(is_stopword(dropped)) << dropped;
  EXPECT_FALSE(stopword_list_version().empty());
}

TEST(Sentences, SplitsOnTerminators) {
  EXPECT_EQ(split_sentences("Men are strong. Women cry! Why?  Done"),
            (std::vector<std::string>{"Men are strong.", "Women cry!", "Why?", "Done"}));
  EXPECT_EQ(split_sentences("Dr.Smith 3.5 mg"), std::vector<std::string>{"Dr.Smith 3.5 mg"});
  EXPECT_TRUE(split_sentences("   ").empty());
}
