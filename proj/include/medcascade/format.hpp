#pragma once

#include <string>

namespace medcascade {

/// Fraction as a percentage with at most two decimals and trailing zeros
/// trimmed: 0.575 -> "57.5%", 0.26 -> "26%", 0.1471 -> "14.71%".
std::string format_percent(double fraction);

/// Fixed two decimals: 0.8 -> "0.80".
std::string format_fixed2(double value);

}  // namespace medcascade
