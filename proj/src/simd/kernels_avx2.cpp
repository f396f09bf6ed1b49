#include "kernels_impl.hpp"

#if defined(MEDCASCADE_HAVE_AVX2)

#include <immintrin.h>

#include <bit>
#include <cstring>
#include <limits>

namespace medcascade::simd::detail {

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t blocked = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d x = _mm256_loadu_pd(a.data() + i);
    const __m256d y = _mm256_loadu_pd(b.data() + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(x, y));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = blocked; i < n; ++i) {
    const double product = a[i] * b[i];
    sum = sum + product;
  }
  return sum;
}

LabelCounts count_above_avx2(std::span<const double> scores,
                             std::span<const std::uint8_t> labels, double threshold) {
  const std::size_t n = scores.size();
  const std::size_t blocked = n - n % 16;
  const __m256d limit = _mm256_set1_pd(threshold);
  const __m128i zero = _mm_setzero_si128();
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  for (std::size_t i = 0; i < blocked; i += 16) {
    const double* s = scores.data() + i;
    unsigned above = 0;
    for (unsigned q = 0; q < 4; ++q) {
      const __m256d v = _mm256_loadu_pd(s + 4 * q);
      above |= static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(v, limit, _CMP_GT_OQ)))
               << (4 * q);
    }
    const __m128i l = _mm_loadu_si128(reinterpret_cast<const __m128i*>(labels.data() + i));
    const unsigned is_zero = static_cast<unsigned>(_mm_movemask_epi8(_mm_cmpeq_epi8(l, zero)));
    const unsigned is_one = ~is_zero & 0xFFFFu;
    positive += static_cast<unsigned>(std::popcount(above & is_one));
    negative += static_cast<unsigned>(std::popcount(above & is_zero));
  }
  const LabelCounts tail = count_above_scalar(scores.subspan(blocked), labels.subspan(blocked),
                                              threshold);
  return {positive + tail.positive, negative + tail.negative};
}

std::size_t masked_argmax_avx2(std::span<const double> values,
                               std::span<const std::uint8_t> mask) {
  const std::size_t n = values.size();
  const std::size_t blocked = n - n % 4;
  const __m256i none = _mm256_set1_epi64x(-1);
  __m256d best_val = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256i best_idx = none;
  __m256i idx = _mm256_set_epi64x(3, 2, 1, 0);
  const __m256i step = _mm256_set1_epi64x(4);
  for (std::size_t i = 0; i < blocked; i += 4) {
    std::uint32_t packed;
    std::memcpy(&packed, mask.data() + i, sizeof(packed));
    const __m256i m64 = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(packed)));
    const __m256i ineligible = _mm256_cmpeq_epi64(m64, _mm256_setzero_si256());
    const __m256d v = _mm256_loadu_pd(values.data() + i);
    const __m256i greater = _mm256_castpd_si256(_mm256_cmp_pd(v, best_val, _CMP_GT_OQ));
    const __m256i empty = _mm256_cmpeq_epi64(best_idx, none);
    const __m256i take = _mm256_andnot_si256(ineligible, _mm256_or_si256(greater, empty));
    best_val = _mm256_blendv_pd(best_val, v, _mm256_castsi256_pd(take));
    best_idx = _mm256_blendv_epi8(best_idx, idx, take);
    idx = _mm256_add_epi64(idx, step);
  }

  alignas(32) double lane_val[4];
  alignas(32) std::int64_t lane_idx[4];
  _mm256_store_pd(lane_val, best_val);
  _mm256_store_si256(reinterpret_cast<__m256i*>(lane_idx), best_idx);

  std::size_t best = n;
  double best_value = 0.0;
  for (int l = 0; l < 4; ++l) {
    if (lane_idx[l] < 0) continue;
    const auto candidate = static_cast<std::size_t>(lane_idx[l]);
    if (best == n || lane_val[l] > best_value ||
        (lane_val[l] == best_value && candidate < best)) {
      best = candidate;
      best_value = lane_val[l];
    }
  }
  for (std::size_t i = blocked; i < n; ++i) {
    if (!mask[i]) continue;
    if (best == n || values[i] > best_value) {
      best = i;
      best_value = values[i];
    }
  }
  return best;
}

}  // namespace medcascade::simd::detail

#endif
