#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// where the CPU supports it, an AVX2 version. The vector versions are
// bit-identical to the scalar ones: the scalar dot product accumulates in the
// same four-lane order the AVX2 code uses, and neither path uses FMA.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace medcascade::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

struct LabelCounts {
  std::uint64_t positive = 0;  // label 1 with score > threshold
  std::uint64_t negative = 0;  // label 0 with score > threshold

  bool operator==(const LabelCounts&) const = default;
};

struct KernelTable {
  Isa isa;

  /// Sum of a[i] * b[i]. Spans must have equal length.
  double (*dot)(std::span<const double> a, std::span<const double> b);

  /// Counts scores strictly above threshold, split by label (0 or 1).
  LabelCounts (*count_above)(std::span<const double> scores, std::span<const std::uint8_t> labels,
                             double threshold);

  /// Index of the largest value among entries with mask[i] != 0; lowest index
  /// wins ties. Returns values.size() when no entry is eligible.
  std::size_t (*masked_argmax)(std::span<const double> values, std::span<const std::uint8_t> mask);
};

const KernelTable& scalar_kernels();

/// nullptr when the running CPU (or the build) lacks AVX2.
const KernelTable* avx2_kernels();

/// The table used by the library. Picks the widest supported ISA once per
/// process; MEDCASCADE_SIMD=scalar in the environment forces the reference
/// kernels.
const KernelTable& active_kernels();

}  // namespace medcascade::simd
