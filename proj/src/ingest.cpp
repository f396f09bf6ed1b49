#include "medcascade/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <unordered_set>
#include <variant>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "medcascade/format.hpp"
#include "medcascade/parallel.hpp"

namespace medcascade::ingest {

using nlohmann::json;

std::string_view to_string(RefKind kind) {
  switch (kind) {
    case RefKind::original:
      return "original";
    case RefKind::retweet:
      return "retweet";
    case RefKind::reply:
      return "reply";
    case RefKind::quote:
      return "quote";
    case RefKind::mention:
      return "mention";
  }
  return "mention";
}

std::optional<RefKind> parse_ref_kind(std::string_view name) {
  for (RefKind kind : kAllRefKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string validate(const TweetRecord& record) {
  if (record.id.empty()) return "empty id";
  if (record.created_at < 0) return "negative created_at";
  if (record.ref_kind == RefKind::original && record.ref_id) return "original record carries ref_id";
  if (record.ref_kind != RefKind::original && !record.ref_id) return "dangling reference kind";
  if (record.ref_id && *record.ref_id == record.id) return "record references itself";
  return {};
}

namespace {

bool read_digits(std::string_view text, std::size_t& pos, std::size_t count, int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  pos += count;
  out = value;
  return true;
}

}  // namespace

std::optional<EpochMillis> parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  std::size_t pos = 0;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!read_digits(text, pos, 4, y) || pos >= text.size() || text[pos++] != '-' ||
      !read_digits(text, pos, 2, mo) || pos >= text.size() || text[pos++] != '-' ||
      !read_digits(text, pos, 2, d)) {
    return std::nullopt;
  }
  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)},
                            day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;

  std::int64_t millis = 0;
  std::int64_t offset_minutes = 0;
  if (pos < text.size()) {
    if (text[pos] != 'T' && text[pos] != ' ') return std::nullopt;
    ++pos;
    if (!read_digits(text, pos, 2, h) || pos >= text.size() || text[pos++] != ':' ||
        !read_digits(text, pos, 2, mi)) {
      return std::nullopt;
    }
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      if (!read_digits(text, pos, 2, s)) return std::nullopt;
      if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
        ++pos;
        int scale = 100;
        std::size_t digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
          if (scale > 0) millis += (text[pos] - '0') * scale;
          scale /= 10;
          ++pos;
          ++digits;
        }
        if (digits == 0) return std::nullopt;
      }
    }
    if (h > 23 || mi > 59 || s > 60) return std::nullopt;
    if (pos < text.size()) {
      const char sign = text[pos];
      if (sign == 'Z' || sign == 'z') {
        ++pos;
      } else if (sign == '+' || sign == '-') {
        ++pos;
        int oh = 0, om = 0;
        if (!read_digits(text, pos, 2, oh)) return std::nullopt;
        if (pos < text.size() && text[pos] == ':') ++pos;
        if (!read_digits(text, pos, 2, om)) return std::nullopt;
        offset_minutes = (oh * 60 + om) * (sign == '+' ? 1 : -1);
      }
    }
    if (pos != text.size()) return std::nullopt;
  }

  const auto day_start = sys_days{date}.time_since_epoch();
  const std::int64_t total = duration_cast<milliseconds>(day_start).count() +
                             ((h * 60LL + mi - offset_minutes) * 60LL + s) * 1000LL + millis;
  return total;
}

namespace {

std::optional<std::string> optional_token(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) {
    auto value = it->get<std::string>();
    if (value.empty()) return std::nullopt;
    return value;
  }
  if (it->is_number_integer() || it->is_number_unsigned()) return it->dump();
  throw DataError(std::string("field '") + key + "' must be a string");
}

std::uint64_t count_field(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return 0;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer()) {
    throw DataError(std::string("field '") + key + "' must be non-negative");
  }
  throw DataError(std::string("field '") + key + "' must be an integer");
}

EpochMillis timestamp_field(const json& object) {
  auto it = object.find("created_at");
  if (it == object.end() || it->is_null()) throw DataError("missing created_at");
  if (it->is_number_integer() || it->is_number_unsigned()) return it->get<std::int64_t>();
  if (it->is_string()) {
    const auto& text = it->get_ref<const std::string&>();
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && !text.empty()) return value;
    if (auto parsed = parse_iso8601(text)) return *parsed;
    throw DataError("unparseable created_at '" + text + "'");
  }
  throw DataError("created_at must be an integer or ISO-8601 string");
}

}  // namespace

TweetRecord parse_record(std::string_view line, bool* unknown_kind) {
  json object;
  try {
    object = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
  if (!object.is_object()) throw DataError("record is not a JSON object");

  TweetRecord record;
  auto id = optional_token(object, "id");
  if (!id) throw DataError("empty id");
  record.id = std::move(*id);
  record.author_id = optional_token(object, "author_id");
  record.created_at = timestamp_field(object);
  if (auto it = object.find("text"); it != object.end() && !it->is_null()) {
    if (!it->is_string()) throw DataError("field 'text' must be a string");
    record.text = it->get<std::string>();
  }

  auto kind_it = object.find("ref_kind");
  if (kind_it == object.end() || !kind_it->is_string()) throw DataError("missing ref_kind");
  const auto& kind_name = kind_it->get_ref<const std::string&>();
  if (auto kind = parse_ref_kind(kind_name)) {
    record.ref_kind = *kind;
  } else {
    record.ref_kind = RefKind::mention;
    if (unknown_kind) *unknown_kind = true;
  }
  record.ref_id = optional_token(object, "ref_id");
  record.like_count = count_field(object, "like_count");
  record.view_count = count_field(object, "view_count");
  record.place = optional_token(object, "place");

  if (auto problem = validate(record); !problem.empty()) throw DataError(problem);
  return record;
}

ParseResult parse_corpus(std::istream& in, const ParseOptions& options) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));

  struct Blank {};
  struct Failure {
    std::string message;
  };
  struct Parsed {
    TweetRecord record;
    bool unknown_kind;
  };
  using Slot = std::variant<Blank, Failure, Parsed>;
  std::vector<Slot> slots(lines.size());

  parallel_for(lines.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::string_view line = lines[i];
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      try {
        bool unknown = false;
        TweetRecord record = parse_record(line, &unknown);
        slots[i] = Parsed{std::move(record), unknown};
      } catch (const DataError& e) {
        slots[i] = Failure{e.what()};
      }
    }
  });

  ParseResult result;
  std::unordered_set<std::string> seen;
  auto reject = [&](std::size_t line, std::string message) {
    if (options.on_error == OnError::abort) throw DataError(message, line);
    result.errors.push_back({line, std::move(message)});
  };
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const std::size_t line = i + 1;
    if (auto* failure = std::get_if<Failure>(&slots[i])) {
      reject(line, std::move(failure->message));
    } else if (auto* parsed = std::get_if<Parsed>(&slots[i])) {
      if (!seen.insert(parsed->record.id).second) {
        reject(line, "duplicate id '" + parsed->record.id + "'");
        continue;
      }
      if (parsed->unknown_kind) ++result.unknown_kind_warnings;
      result.records.push_back(std::move(parsed->record));
    }
  }
  return result;
}

std::string serialize_record(const TweetRecord& record) {
  nlohmann::ordered_json object;
  auto optional = [](const std::optional<std::string>& value) -> nlohmann::ordered_json {
    if (value) return *value;
    return nullptr;
  };
  object["id"] = record.id;
  object["author_id"] = optional(record.author_id);
  object["created_at"] = record.created_at;
  object["text"] = record.text;
  object["ref_kind"] = std::string(to_string(record.ref_kind));
  object["ref_id"] = optional(record.ref_id);
  object["like_count"] = record.like_count;
  object["view_count"] = record.view_count;
  object["place"] = optional(record.place);
  return object.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

void write_corpus(std::ostream& out, const std::vector<TweetRecord>& records) {
  for (const auto& record : records) out << serialize_record(record) << '\n';
}

void CorpusStats::add(const TweetRecord& record) {
  ++kind_counts[static_cast<std::size_t>(record.ref_kind)];
  ++total;
  like_sum += record.like_count;
  view_sum += record.view_count;
  if (record.place) ++geotagged;
  earliest = earliest ? std::min(*earliest, record.created_at) : record.created_at;
  latest = latest ? std::max(*latest, record.created_at) : record.created_at;
}

void CorpusStats::merge(const CorpusStats& other) {
  for (std::size_t k = 0; k < kind_counts.size(); ++k) kind_counts[k] += other.kind_counts[k];
  total += other.total;
  like_sum += other.like_sum;
  view_sum += other.view_sum;
  geotagged += other.geotagged;
  if (other.earliest) earliest = earliest ? std::min(*earliest, *other.earliest) : other.earliest;
  if (other.latest) latest = latest ? std::max(*latest, *other.latest) : other.latest;
}

double CorpusStats::mean_likes() const {
  return total ? static_cast<double>(like_sum) / static_cast<double>(total) : 0.0;
}

double CorpusStats::mean_views() const {
  return total ? static_cast<double>(view_sum) / static_cast<double>(total) : 0.0;
}

double CorpusStats::fraction(RefKind kind) const {
  return total ? static_cast<double>(count(kind)) / static_cast<double>(total) : 0.0;
}

double CorpusStats::geotagged_fraction() const {
  return total ? static_cast<double>(geotagged) / static_cast<double>(total) : 0.0;
}

CorpusStats corpus_stats(const std::vector<TweetRecord>& records, unsigned threads) {
  const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(threads, records.size()));
  std::vector<CorpusStats> partial(shards);
  const std::size_t chunk = records.empty() ? 0 : (records.size() + shards - 1) / shards;
  parallel_for(shards, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const std::size_t first = s * chunk;
      const std::size_t last = std::min(records.size(), first + chunk);
      for (std::size_t i = first; i < last; ++i) partial[s].add(records[i]);
    }
  });
  CorpusStats stats;
  for (const auto& p : partial) stats.merge(p);
  return stats;
}

InteractionBreakdown interaction_breakdown(const CorpusStats& stats) {
  if (stats.total == 0) return {};
  const auto total = static_cast<double>(stats.total);
  return {
      static_cast<double>(stats.count(RefKind::retweet)) / total,
      static_cast<double>(stats.count(RefKind::reply)) / total,
      static_cast<double>(stats.count(RefKind::quote) + stats.count(RefKind::mention)) / total,
      static_cast<double>(stats.count(RefKind::original)) / total,
  };
}

void write_stats_document(std::ostream& out, const CorpusStats& stats) {
  out << "total=" << stats.total << '\n';
  for (RefKind kind : kAllRefKinds) out << "count." << to_string(kind) << '=' << stats.count(kind) << '\n';
  out << "means_defined=" << (stats.means_defined() ? "true" : "false") << '\n';
  if (stats.means_defined()) {
    out << "mean_likes=" << fmt::format("{}", stats.mean_likes()) << '\n';
    out << "mean_views=" << fmt::format("{}", stats.mean_views()) << '\n';
    out << "earliest_created_at=" << *stats.earliest << '\n';
    out << "latest_created_at=" << *stats.latest << '\n';
  }
  out << "geotagged=" << stats.geotagged << '\n';
  out << "geotagged_fraction=" << fmt::format("{}", stats.geotagged_fraction()) << '\n';
  const auto breakdown = interaction_breakdown(stats);
  out << "share.retweets=" << format_percent(breakdown.retweets) << '\n';
  out << "share.replies=" << format_percent(breakdown.replies) << '\n';
  out << "share.mentions_quotes=" << format_percent(breakdown.mentions_quotes) << '\n';
  out << "share.originals=" << format_percent(breakdown.originals) << '\n';
}

void write_kind_counts_csv(std::ostream& out, const CorpusStats& stats) {
  out << "kind,count,fraction\n";
  for (RefKind kind : kAllRefKinds) {
    out << to_string(kind) << ',' << stats.count(kind) << ',' << fmt::format("{}", stats.fraction(kind))
        << '\n';
  }
}

}  // namespace medcascade::ingest
