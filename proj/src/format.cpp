#include "medcascade/format.hpp"

#include <fmt/format.h>

namespace medcascade {

std::string format_percent(double fraction) {
  std::string text = fmt::format("{:.2f}", fraction * 100.0);
  while (text.back() == '0') text.pop_back();
  if (text.back() == '.') text.pop_back();
  if (text == "-0") text = "0";
  return text + "%";
}

std::string format_fixed2(double value) { return fmt::format("{:.2f}", value); }

}  // namespace medcascade
