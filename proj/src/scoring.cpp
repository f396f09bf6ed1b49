#include "medcascade/scoring.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

#include "medcascade/csv.hpp"
#include "medcascade/parallel.hpp"

namespace medcascade::scoring {
namespace {

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

template <std::size_t N>
bool in_lexicon(const std::array<std::string_view, N>& words, std::string_view token) {
  return std::find(words.begin(), words.end(), token) != words.end();
}

constexpr std::array<std::string_view, 38> kCausalVerbs = {
    "cause",    "causes",     "caused",     "causing",   "lead",      "leads",     "leading",
    "link",     "links",      "linked",     "trigger",   "triggers",  "triggered", "increase",
    "increases", "increased", "reduce",     "reduces",   "reduced",   "prevent",   "prevents",
    "prevented", "cure",      "cures",      "cured",     "induce",    "induces",   "induced",
    "due",      "result",     "results",    "resulting", "affect",    "affects",   "contributes",
    "alters",   "modifies",   "associated",
};

constexpr std::array<std::string_view, 44> kMedicalTerms = {
    "depression", "depressive", "anxiety",    "autism",     "autistic",   "adhd",
    "ptsd",       "bipolar",    "schizophrenia", "dysphoria", "disorder", "disorders",
    "mental",     "health",     "illness",    "therapy",    "medication", "suicide",
    "suicidal",   "anorexia",   "bulimia",    "ocd",        "trauma",     "psychiatric",
    "diagnosis",  "diagnosed",  "symptoms",   "syndrome",   "hormone",    "hormones",
    "estrogen",   "testosterone", "brain",    "disease",    "patients",   "phenotypes",
    "glucocorticoid", "insomnia", "psychosis", "dementia",  "stress",     "panic",
    "eating",     "antidepressants",
};

constexpr std::array<std::string_view, 36> kGenderedTerms = {
    "men",      "man",      "women",    "woman",     "male",      "males",
    "female",   "females",  "boys",     "boy",       "girls",     "girl",
    "gender",   "genders",  "masculine", "feminine", "mother",    "mothers",
    "father",   "fathers",  "moms",     "mom",       "dads",      "dad",
    "wives",    "wife",     "husbands", "husband",   "trans",     "transgender",
    "nonbinary", "sex",     "ladies",   "guys",      "paternal",  "maternal",
};

constexpr std::array<std::string_view, 9> kGeneralizationCues = {
    "all", "only", "every", "always", "never", "everyone", "none", "nobody", "entire",
};

}  // namespace

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

bool is_causal_verb(std::string_view token) { return in_lexicon(kCausalVerbs, token); }
bool is_medical_term(std::string_view token) { return in_lexicon(kMedicalTerms, token); }
bool is_gendered_term(std::string_view token) { return in_lexicon(kGenderedTerms, token); }
bool is_generalization_cue(std::string_view token) {
  return in_lexicon(kGeneralizationCues, token) || is_percentage(token);
}

bool has_numeral(std::string_view token) {
  return std::any_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_percentage(std::string_view token) {
  if (token == "percent" || token == "%") return true;
  return token.size() >= 2 && token.back() == '%' && has_numeral(token);
}

double BaselineClaimScorer::score(const ingest::CleanText& text) const {
  bool numeral = false;
  bool percentage = false;
  int causal = 0;
  int medical = 0;
  for (const auto& token : text.tokens) {
    numeral = numeral || has_numeral(token);
    percentage = percentage || is_percentage(token);
    causal += is_causal_verb(token);
    medical += is_medical_term(token);
  }
  const double z = weights_.intercept + weights_.numeral * numeral +
                   weights_.percentage * percentage + weights_.causal * causal +
                   weights_.medical * medical;
  return logistic(z);
}

double BaselineBiasScorer::score(const ingest::CleanText& text) const {
  int gendered = 0;
  int cues = 0;
  for (const auto& token : text.tokens) {
    gendered += is_gendered_term(token);
    cues += is_generalization_cue(token);
  }
  const double z = weights_.intercept + weights_.gendered * gendered +
                   weights_.generalization * cues +
                   weights_.interaction * static_cast<double>(gendered) * cues;
  return logistic(z);
}

BaselineConfig load_baseline_config(std::istream& in) {
  BaselineConfig config;
  const std::unordered_map<std::string, double*> slots = {
      {"claim.intercept", &config.claim.intercept},
      {"claim.numeral", &config.claim.numeral},
      {"claim.percentage", &config.claim.percentage},
      {"claim.causal", &config.claim.causal},
      {"claim.medical", &config.claim.medical},
      {"bias.intercept", &config.bias.intercept},
      {"bias.gendered", &config.bias.gendered},
      {"bias.generalization", &config.bias.generalization},
      {"bias.interaction", &config.bias.interaction},
  };
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto trim = [](std::string_view s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string_view::npos) return std::string_view{};
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw DataError("expected key=value", line_no);
    const std::string key(trim(view.substr(0, eq)));
    const auto value = csv::parse_double(trim(view.substr(eq + 1)));
    auto slot = slots.find(key);
    if (slot == slots.end()) throw DataError("unknown key '" + key + "'", line_no);
    if (!value || !std::isfinite(*value)) throw DataError("bad value for '" + key + "'", line_no);
    *slot->second = *value;
  }
  return config;
}

void write_baseline_config(std::ostream& out, const BaselineConfig& c) {
  out << "claim.intercept=" << csv::format_double(c.claim.intercept) << '\n'
      << "claim.numeral=" << csv::format_double(c.claim.numeral) << '\n'
      << "claim.percentage=" << csv::format_double(c.claim.percentage) << '\n'
      << "claim.causal=" << csv::format_double(c.claim.causal) << '\n'
      << "claim.medical=" << csv::format_double(c.claim.medical) << '\n'
      << "bias.intercept=" << csv::format_double(c.bias.intercept) << '\n'
      << "bias.gendered=" << csv::format_double(c.bias.gendered) << '\n'
      << "bias.generalization=" << csv::format_double(c.bias.generalization) << '\n'
      << "bias.interaction=" << csv::format_double(c.bias.interaction) << '\n';
}

LoadResult load_scores(std::istream& in, OnError on_error) {
  LoadResult result;
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return result;
  if (!header->empty() && (*header)[0].starts_with("\xEF\xBB\xBF")) (*header)[0].erase(0, 3);
  if (*header != csv::Row{"tweet_id", "p_claim", "p_bias"}) {
    throw DataError("score file header must be '" + std::string(kScoreHeader) + "'", 1);
  }

  std::unordered_map<std::string, std::size_t> index;
  auto reject = [&](std::size_t line, std::string message) {
    if (on_error == OnError::abort) throw DataError(message, line);
    result.errors.push_back({line, std::move(message)});
  };
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() != 3) {
      reject(line, "expected 3 fields, got " + std::to_string(row->size()));
      continue;
    }
    ScoreRecord record;
    record.tweet_id = (*row)[0];
    if (record.tweet_id.empty()) {
      reject(line, "empty tweet_id");
      continue;
    }
    const auto p_claim = csv::parse_double((*row)[1]);
    if (!p_claim) {
      reject(line, "unparseable p_claim '" + (*row)[1] + "'");
      continue;
    }
    if (!valid_probability(*p_claim)) {
      reject(line, "p_claim out of range [0,1]: " + (*row)[1]);
      continue;
    }
    record.p_claim = *p_claim;
    if (!(*row)[2].empty()) {
      const auto p_bias = csv::parse_double((*row)[2]);
      if (!p_bias) {
        reject(line, "unparseable p_bias '" + (*row)[2] + "'");
        continue;
      }
      if (!valid_probability(*p_bias)) {
        reject(line, "p_bias out of range [0,1]: " + (*row)[2]);
        continue;
      }
      record.p_bias = *p_bias;
    }
    auto [it, inserted] = index.try_emplace(record.tweet_id, result.records.size());
    if (inserted) {
      result.records.push_back(std::move(record));
    } else {
      ++result.duplicate_warnings;
      result.records[it->second] = std::move(record);
    }
  }
  return result;
}

void write_scores(std::ostream& out, const std::vector<ScoreRecord>& scores) {
  out << kScoreHeader << '\n';
  for (const auto& s : scores) {
    csv::write_row(out, {s.tweet_id, csv::format_double(s.p_claim),
                         s.p_bias ? csv::format_double(*s.p_bias) : std::string{}});
  }
}

std::vector<ScoreRecord> score_corpus(const std::vector<ingest::TweetRecord>& records,
                                      const Scorer& claim, const Scorer& bias,
                                      std::optional<double> bias_tau, unsigned threads) {
  std::vector<ScoreRecord> out(records.size());
  parallel_for(records.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto clean = ingest::preprocess_text(records[i].text);
      out[i].tweet_id = records[i].id;
      out[i].p_claim = claim.score(clean);
      if (!bias_tau || out[i].p_claim > *bias_tau) out[i].p_bias = bias.score(clean);
    }
  });
  return out;
}

JoinResult join_scores(const std::vector<ingest::TweetRecord>& records,
                       const std::vector<ScoreRecord>& scores) {
  std::unordered_map<std::string_view, const ScoreRecord*> by_id;
  by_id.reserve(scores.size());
  for (const auto& s : scores) by_id[s.tweet_id] = &s;

  JoinResult result;
  for (const auto& record : records) {
    auto it = by_id.find(record.id);
    if (it == by_id.end()) {
      ++result.unscored;
      continue;
    }
    result.rows.push_back({&record, it->second->p_claim, it->second->p_bias});
  }
  return result;
}

}  // namespace medcascade::scoring
