#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace medcascade {

/// Malformed or inconsistent input data. Carries the 1-based line number when
/// the problem can be traced to one line of an input file (0 otherwise).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& message, std::size_t line = 0)
      : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One rejected input record.
struct RecordError {
  std::size_t line = 0;
  std::string message;

  bool operator==(const RecordError&) const = default;
};

/// What to do when a record fails validation.
enum class OnError { skip, abort };

}  // namespace medcascade
