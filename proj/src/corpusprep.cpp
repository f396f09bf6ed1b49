#include "medcascade/corpusprep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "medcascade/csv.hpp"
#include "medcascade/parallel.hpp"
#include "medcascade/random.hpp"
#include "medcascade/simd/kernels.hpp"

namespace medcascade::corpusprep {

std::vector<Excerpt> load_excerpts(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return {};
  if (*header != csv::Row{"id", "text", "label", "category"}) {
    throw DataError("excerpt header must be 'id,text,label,category'", 1);
  }
  std::vector<Excerpt> out;
  std::unordered_set<std::string> seen;
  while (auto row = reader.next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() != 4) throw DataError("expected 4 fields", reader.line());
    Excerpt e{(*row)[0], (*row)[1], 0, (*row)[3]};
    if (e.id.empty()) throw DataError("empty id", reader.line());
    if (!seen.insert(e.id).second) throw DataError("duplicate id '" + e.id + "'", reader.line());
    const auto label = csv::parse_int((*row)[2]);
    if (!label || (*label != 0 && *label != 1)) throw DataError("label must be 0 or 1", reader.line());
    e.label = static_cast<int>(*label);
    if (e.category.empty()) e.category = "none";
    if (e.label == 1 && e.category == "none") {
      throw DataError("biased excerpt needs a bias category", reader.line());
    }
    out.push_back(std::move(e));
  }
  return out;
}

void write_excerpts(std::ostream& out, std::span<const Excerpt> excerpts) {
  out << "id,text,label,category\n";
  for (const auto& e : excerpts) csv::write_row(out, {e.id, e.text, std::to_string(e.label), e.category});
}

TfidfModel::TfidfModel(std::span<const ingest::CleanText> corpus) : documents_(corpus.size()) {
  for (const auto& doc : corpus) {
    std::set<std::string_view> unique(doc.tokens.begin(), doc.tokens.end());
    for (auto term : unique) {
      auto it = document_frequency_.find(term);
      if (it == document_frequency_.end()) {
        document_frequency_.emplace(std::string(term), 1);
      } else {
        ++it->second;
      }
    }
  }
}

double TfidfModel::idf(std::string_view term) const {
  auto it = document_frequency_.find(term);
  const double df = it == document_frequency_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(documents_)) / (1.0 + df)) + 1.0;
}

SparseVector TfidfModel::vectorize(const ingest::CleanText& text) const {
  std::vector<std::string> terms(text.tokens.begin(), text.tokens.end());
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  SparseVector v;
  double squares = 0.0;
  for (auto& term : terms) {
    const double w = idf(term);
    squares += w * w;
    v.entries.emplace_back(std::move(term), w);
  }
  v.norm = std::sqrt(squares);
  return v;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double dot = 0.0;
  auto i = a.entries.begin();
  auto j = b.entries.begin();
  while (i != a.entries.end() && j != b.entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return std::clamp(dot / (a.norm * b.norm), 0.0, 1.0);
}

double tfidf_cosine(std::string_view a, std::string_view b, const TfidfModel& model) {
  return cosine(model.vectorize(ingest::preprocess_text(a)), model.vectorize(ingest::preprocess_text(b)));
}

double tfidf_cosine(std::string_view a, std::string_view b, std::span<const std::string> corpus) {
  if (corpus.empty()) throw std::invalid_argument("tfidf_cosine needs a non-empty corpus");
  std::vector<ingest::CleanText> docs;
  docs.reserve(corpus.size());
  for (const auto& text : corpus) docs.push_back(ingest::preprocess_text(text));
  return tfidf_cosine(a, b, TfidfModel(docs));
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string_view trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

}  // namespace

PoolExhausted::PoolExhausted(std::vector<std::string> unmatched)
    : DataError("hard-negative pool exhausted; unmatched positives: " + join(unmatched)),
      unmatched_(std::move(unmatched)) {}

std::vector<HardNegative> mine_hard_negatives(std::span<const Excerpt> positives,
                                              std::span<const std::string> pool, unsigned threads) {
  std::vector<const Excerpt*> ordered;
  for (const auto& p : positives) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(), [](const Excerpt* a, const Excerpt* b) { return a->id < b->id; });

  std::vector<ingest::CleanText> pos_clean;
  std::vector<ingest::CleanText> pool_clean;
  std::vector<ingest::CleanText> corpus;
  for (const auto* p : ordered) pos_clean.push_back(ingest::preprocess_text(p->text));
  for (const auto& s : pool) pool_clean.push_back(ingest::preprocess_text(s));
  corpus.insert(corpus.end(), pos_clean.begin(), pos_clean.end());
  corpus.insert(corpus.end(), pool_clean.begin(), pool_clean.end());
  const TfidfModel model(corpus);

  std::vector<SparseVector> pos_vec;
  for (const auto& c : pos_clean) pos_vec.push_back(model.vectorize(c));
  std::vector<SparseVector> pool_vec(pool.size());
  parallel_for(pool.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) pool_vec[j] = model.vectorize(pool_clean[j]);
  });

  // Only terms occurring in some positive can contribute to a dot product, so
  // pool rows are projected densely onto the positives' vocabulary.
  std::map<std::string_view, std::size_t> column;
  for (const auto& v : pos_vec) {
    for (const auto& [term, w] : v.entries) column.emplace(term, 0);
  }
  std::size_t next = 0;
  for (auto& [term, col] : column) col = next++;
  const std::size_t dim = column.size();

  std::vector<double> pool_matrix(pool.size() * dim, 0.0);
  parallel_for(pool.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      for (const auto& [term, w] : pool_vec[j].entries) {
        if (auto it = column.find(term); it != column.end()) pool_matrix[j * dim + it->second] = w;
      }
    }
  });

  std::unordered_set<std::string_view> positive_texts;
  for (const auto& p : positives) positive_texts.insert(trimmed(p.text));
  std::vector<std::uint8_t> eligible(pool.size(), 1);
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (positive_texts.count(trimmed(pool[j]))) eligible[j] = 0;
  }

  const auto& kernels = simd::active_kernels();
  std::vector<double> query(dim);
  std::vector<double> similarity(pool.size());
  std::vector<HardNegative> out;
  std::vector<std::string> unmatched;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    std::fill(query.begin(), query.end(), 0.0);
    for (const auto& [term, w] : pos_vec[i].entries) query[column.at(term)] = w;
    const double qnorm = pos_vec[i].norm;
    parallel_for(pool.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        const double denom = qnorm * pool_vec[j].norm;
        if (denom == 0.0) {
          similarity[j] = 0.0;
          continue;
        }
        const double dot = kernels.dot(std::span<const double>(pool_matrix).subspan(j * dim, dim), query);
        similarity[j] = std::clamp(dot / denom, 0.0, 1.0);
      }
    });
    const std::size_t best = kernels.masked_argmax(similarity, eligible);
    if (best == pool.size()) {
      unmatched.push_back(ordered[i]->id);
      continue;
    }
    eligible[best] = 0;
    out.push_back({ordered[i]->id, best, pool[best], similarity[best]});
  }
  if (!unmatched.empty()) throw PoolExhausted(std::move(unmatched));
  return out;
}

std::vector<std::string> build_pool(std::span<const std::string> documents) {
  std::vector<std::string> pool;
  for (const auto& doc : documents) {
    auto sentences = ingest::split_sentences(doc);
    pool.insert(pool.end(), std::make_move_iterator(sentences.begin()), std::make_move_iterator(sentences.end()));
  }
  return pool;
}

std::vector<Excerpt> negatives_as_excerpts(std::span<const HardNegative> negatives) {
  std::vector<Excerpt> out;
  for (const auto& n : negatives) out.push_back({"neg-" + n.positive_id, n.text, 0, "none"});
  return out;
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train:
      return "train";
    case Split::dev:
      return "dev";
    case Split::test:
      return "test";
  }
  return "train";
}

std::array<std::size_t, 3> apportion(std::size_t n, const SplitRatios& ratios) {
  const std::array<double, 3> r = {ratios.train, ratios.dev, ratios.test};
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double quota = r[i] * static_cast<double>(n);
    const double whole = std::floor(quota + 1e-9);
    counts[i] = static_cast<std::size_t>(whole);
    remainder[i] = std::max(0.0, quota - whole);
    assigned += counts[i];
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b] + 1e-9;
  });
  for (std::size_t i = 0; assigned < n; i = (i + 1) % 3, ++assigned) ++counts[order[i]];
  return counts;
}

SplitAssignment stratified_split(std::span<const Excerpt> excerpts, const SplitRatios& ratios,
                                 std::uint64_t seed) {
  if (ratios.train < 0 || ratios.dev < 0 || ratios.test < 0 ||
      std::abs(ratios.train + ratios.dev + ratios.test - 1.0) > 1e-9) {
    throw std::invalid_argument("split ratios must be non-negative and sum to 1");
  }
  std::map<std::string, std::vector<std::string>> by_category;
  for (const auto& e : excerpts) by_category[e.category].push_back(e.id);

  SplitAssignment out;
  for (auto& [category, ids] : by_category) {
    std::sort(ids.begin(), ids.end());
    if (ids.size() < 3) {
      out.small_categories.push_back(category);
      for (auto& id : ids) out.assignment.emplace_back(std::move(id), Split::train);
      continue;
    }
    rng::Engine engine(rng::derive_seed(seed, rng::fnv1a(category)));
    for (std::size_t i = ids.size() - 1; i > 0; --i) {
      std::swap(ids[i], ids[rng::uniform_below(engine, i + 1)]);
    }
    const auto counts = apportion(ids.size(), ratios);
    std::size_t cursor = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t k = 0; k < counts[s]; ++k) {
        out.assignment.emplace_back(std::move(ids[cursor++]), static_cast<Split>(s));
      }
    }
  }
  std::sort(out.assignment.begin(), out.assignment.end());
  return out;
}

void write_split_csv(std::ostream& out, const SplitAssignment& split) {
  out << "id,split\n";
  for (const auto& [id, s] : split.assignment) csv::write_row(out, {id, std::string(to_string(s))});
}

}  // namespace medcascade::corpusprep
