#include "medcascade/text.hpp"

#include <cctype>

namespace medcascade::ingest {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

// Lowercases ASCII and folds the UTF-8 curly quotes U+2018/2019 to '\'' and
// U+201C/201D to '"'.
std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80) {
      const auto third = static_cast<unsigned char>(text[i + 2]);
      if (third == 0x98 || third == 0x99) {
        out.push_back('\'');
        i += 2;
        continue;
      }
      if (third == 0x9C || third == 0x9D) {
        out.push_back('"');
        i += 2;
        continue;
      }
    }
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }
  return out;
}

bool starts_with_url(std::string_view token) {
  return token.starts_with("http://") || token.starts_with("https://") ||
         token.starts_with("www.") || token.find("://") != std::string_view::npos;
}

}  // namespace

CleanText preprocess_text(std::string_view text) {
  const std::string lowered = normalize(text);
  const std::string_view view = lowered;

  CleanText clean;
  std::size_t pos = 0;
  while (pos < view.size()) {
    while (pos < view.size() && is_space(view[pos])) ++pos;
    std::size_t end = pos;
    while (end < view.size() && !is_space(view[end])) ++end;
    std::string_view token = view.substr(pos, end - pos);
    pos = end;

    while (!token.empty() && is_ascii_punct(token.front()) && token.front() != '#' &&
           token.front() != '@') {
      token.remove_prefix(1);
    }
    if (token.empty() || token.front() == '#' || token.front() == '@') continue;
    if (starts_with_url(token)) continue;
    while (!token.empty() && is_ascii_punct(token.back()) && token.back() != '%') {
      token.remove_suffix(1);
    }
    if (token.empty() || is_stopword(token)) continue;
    clean.tokens.emplace_back(token);
  }
  return clean;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  auto push = [&](std::string_view piece) {
    std::size_t b = 0;
    std::size_t e = piece.size();
    while (b < e && is_space(piece[b])) ++b;
    while (e > b && is_space(piece[e - 1])) --e;
    if (e > b) sentences.emplace_back(piece.substr(b, e - b));
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '!' || c == '?') && is_space(text[i + 1])) {
      push(text.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  push(text.substr(start));
  return sentences;
}

}  // namespace medcascade::ingest
