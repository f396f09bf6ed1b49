#pragma once

#include "medcascade/simd/kernels.hpp"

namespace medcascade::simd::detail {

double dot_scalar(std::span<const double> a, std::span<const double> b);
LabelCounts count_above_scalar(std::span<const double> scores,
                               std::span<const std::uint8_t> labels, double threshold);
std::size_t masked_argmax_scalar(std::span<const double> values,
                                 std::span<const std::uint8_t> mask);

#if defined(MEDCASCADE_HAVE_AVX2)
double dot_avx2(std::span<const double> a, std::span<const double> b);
LabelCounts count_above_avx2(std::span<const double> scores,
                             std::span<const std::uint8_t> labels, double threshold);
std::size_t masked_argmax_avx2(std::span<const double> values,
                               std::span<const std::uint8_t> mask);
#endif

}  // namespace medcascade::simd::detail
