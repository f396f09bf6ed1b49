#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace medcascade::csv {

using Row = std::vector<std::string>;

/// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
/// newlines. A trailing '\r' before the line break is dropped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the next row; std::nullopt at end of input.
  std::optional<Row> next();

  /// Line on which the most recently returned row started (1-based).
  std::size_t line() const noexcept { return row_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t row_line_ = 0;
};

/// Quotes a field only when it contains a delimiter, quote or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const Row& row);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Parses a whole field as a double; rejects trailing garbage.
std::optional<double> parse_double(std::string_view text);

std::optional<long long> parse_int(std::string_view text);

}  // namespace medcascade::csv
