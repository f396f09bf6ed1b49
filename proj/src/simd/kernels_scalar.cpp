#include "kernels_impl.hpp"

namespace medcascade::simd::detail {

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t blocked = n - n % 4;
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < blocked; i += 4) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double product = a[i + j] * b[i + j];
      lane[j] = lane[j] + product;
    }
  }
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = blocked; i < n; ++i) {
    const double product = a[i] * b[i];
    sum = sum + product;
  }
  return sum;
}

LabelCounts count_above_scalar(std::span<const double> scores,
                               std::span<const std::uint8_t> labels, double threshold) {
  LabelCounts counts;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > threshold) {
      if (labels[i]) {
        ++counts.positive;
      } else {
        ++counts.negative;
      }
    }
  }
  return counts;
}

std::size_t masked_argmax_scalar(std::span<const double> values,
                                 std::span<const std::uint8_t> mask) {
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!mask[i]) continue;
    if (best == values.size() || values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace medcascade::simd::detail
