#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "medcascade/simd/kernels.hpp"

using namespace medcascade::simd;

namespace {

std::vector<double> random_values(std::mt19937_64& gen, std::size_t n, bool with_ties) {
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<double> v(n);
  for (auto& x : v) x = with_ties ? static_cast<double>(gen() % 5) : u(gen);
  return v;
}

}  // namespace

TEST(ScalarKernels, Reference) {
  const auto& s = scalar_kernels();
  EXPECT_EQ(s.isa, Isa::scalar);
  const std::vector<double> a{1, 2, 3, 4, 5}, b{5, 4, 3, 2, 1};
  EXPECT_EQ(s.dot(a, b), 35.0);
  const std::vector<double> scores{0.1, 0.95, 0.91, 0.5};
  const std::vector<std::uint8_t> labels{1, 1, 0, 0};
  EXPECT_EQ(s.count_above(scores, labels, 0.91), (LabelCounts{1, 0}));
  EXPECT_EQ(s.count_above(scores, labels, 0.0), (LabelCounts{2, 2}));
  const std::vector<std::uint8_t> mask{1, 0, 1, 1};
  EXPECT_EQ(s.masked_argmax(scores, mask), 2u);
  EXPECT_EQ(s.masked_argmax(scores, std::vector<std::uint8_t>(4, 0)), 4u);
  EXPECT_EQ(s.masked_argmax({}, {}), 0u);
}

TEST(ActiveKernels, HonoursOverrideName) {
  EXPECT_EQ(isa_name(Isa::scalar), "scalar");
  EXPECT_EQ(isa_name(Isa::avx2), "avx2");
  const auto& active = active_kernels();
  EXPECT_TRUE(active.isa == Isa::scalar || avx2_kernels() != nullptr);
}

TEST(Avx2Kernels, DotBitIdentical) {
  const auto* v = avx2_kernels();
  if (!v) GTEST_SKIP() << "AVX2 unavailable on this CPU or build";
  const auto& s = scalar_kernels();
  std::mt19937_64 gen(1);
  for (std::size_t n = 0; n < 70; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto a = random_values(gen, n, false), b = random_values(gen, n, false);
      EXPECT_EQ(std::bit_cast<std::uint64_t>(v->dot(a, b)), std::bit_cast<std::uint64_t>(s.dot(a, b))) << n;
    }
  }
}

TEST(Avx2Kernels, CountAboveIdentical) {
  const auto* v = avx2_kernels();
  if (!v) GTEST_SKIP() << "AVX2 unavailable on this CPU or build";
  const auto& s = scalar_kernels();
  std::mt19937_64 gen(2);
  for (std::size_t n = 0; n < 100; ++n) {
    std::vector<double> scores(n);
    std::vector<std::uint8_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(gen() % 11) / 10.0;
      labels[i] = gen() % 2;
    }
    for (double t : {0.0, 0.3, 0.5, 0.9, 1.0}) EXPECT_EQ(v->count_above(scores, labels, t), s.count_above(scores, labels, t));
  }
  const std::vector<double> nan_scores(37, std::numeric_limits<double>::quiet_NaN());
  const std::vector<std::uint8_t> ones(37, 1);
  EXPECT_EQ(v->count_above(nan_scores, ones, 0.0), s.count_above(nan_scores, ones, 0.0));
}

TEST(Avx2Kernels, MaskedArgmaxIdentical) {
  const auto* v = avx2_kernels();
  if (!v) GTEST_SKIP() << "AVX2 unavailable on this CPU or build";
  const auto& s = scalar_kernels();
  std::mt19937_64 gen(3);
  for (std::size_t n = 0; n < 90; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto values = random_values(gen, n, rep % 2 == 0);
      std::vector<std::uint8_t> mask(n);
      for (auto& m : mask) m = gen() % 4 != 0;
      if (rep == 3) std::fill(mask.begin(), mask.end(), 0);
      EXPECT_EQ(v->masked_argmax(values, mask), s.masked_argmax(values, mask)) << n;
    }
  }
}
