#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numeric>
#include <vector>

#include "hatemonger/random.hpp"

using namespace hm;

TEST(Splitmix64, KnownValue) {
  // First output of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
    EXPECT_NE(x, d.next());
  }
}

TEST(Rng, UniformMoments) {
  Rng r(1);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 0.002);
}

TEST(Rng, BelowIsUnbiased) {
  Rng r(2);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[r.below(7)];
  // Chi-square with 6 degrees of freedom; 22.5 is the 0.999 quantile.
  double chi = 0;
  for (int c : counts) chi += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  EXPECT_LT(chi, 22.5);
  EXPECT_EQ(r.below(1), 0u);
}

TEST(Rng, NormalMoments) {
  Rng r(3);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.015);
}

TEST(Rng, GammaAndBetaMeans) {
  Rng r(4);
  for (double shape : {0.4, 1.0, 2.5, 8.0}) {
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += r.gamma(shape);
    EXPECT_NEAR(sum / n, shape, 0.02 * shape + 0.01) << shape;
  }
  double sum = 0;
  int above = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double b = r.beta(8, 2);
    ASSERT_GT(b, 0.0);
    ASSERT_LT(b, 1.0);
    sum += b;
    above += b >= 0.5;
  }
  EXPECT_NEAR(sum / n, 0.8, 0.003);
  // P(Beta(8,2) >= 0.5) = 1 - I_{0.5}(8,2) = 1 - 10/512.
  EXPECT_NEAR(static_cast<double>(above) / n, 1.0 - 10.0 / 512.0, 0.003);
}

TEST(Rng, GeometricMean) {
  Rng r(5);
  for (double p : {0.5, 0.05, 0.001}) {
    double sum = 0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(r.geometric(p));
    const double mean = (1 - p) / p;
    EXPECT_NEAR(sum / n, mean, 0.03 * mean + 0.01) << p;
  }
  EXPECT_EQ(r.geometric(1.0), 0u);
}

TEST(Shuffle, IsPermutationAndDeterministic) {
  std::vector<int> a(100), b(100);
  std::iota(a.begin(), a.end(), 0);
  b = a;
  Rng r1(9), r2(9);
  shuffle(std::span<int>(a), r1);
  shuffle(std::span<int>(b), r2);
  EXPECT_EQ(a, b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[i], i);
}
