#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "univalent/series.hpp"

using namespace univalent;

namespace {

TaylorSeries random_series(std::mt19937_64& rng, std::size_t order, double decay) {
  std::normal_distribution<double> n(0.0, 1.0);
  TaylorSeries s(order);
  double w = 1.0;
  for (std::size_t k = 0; k <= order; ++k, w *= decay) s[k] = complex{n(rng), n(rng)} * w;
  return s;
}

double max_diff(const TaylorSeries& a, const TaylorSeries& b) {
  double d = 0.0;
  for (std::size_t k = 0; k <= std::min(a.order(), b.order()); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace

TEST(Series, ConstructionAndAccess) {
  const auto s = TaylorSeries::from({1.0, 2.0, 3.0}, 5);
  EXPECT_EQ(s.order(), 5u);
  EXPECT_EQ(s[2], complex(3.0));
  EXPECT_EQ(s[5], complex(0.0));
  EXPECT_EQ(s[6], complex(0.0));
  auto t = s;
  EXPECT_THROW(t[6] = 1.0, std::out_of_range);
  EXPECT_EQ(TaylorSeries::identity(3)[1], complex(1.0));
}

TEST(Series, HornerMatchesDirectSum) {
  const auto s = TaylorSeries::from({1.0, {0.0, 2.0}, -3.0, 0.5}, 3);
  const complex z{0.3, -0.4};
  const complex direct = 1.0 + complex{0.0, 2.0} * z - 3.0 * z * z + 0.5 * z * z * z;
  EXPECT_NEAR(std::abs(s.eval(z) - direct), 0.0, 1e-15);
}

TEST(Series, ProductOfGeometricSeries) {
  // 1/(1-z)^2 has coefficients k+1.
  TaylorSeries g(20);
  for (std::size_t k = 0; k <= 20; ++k) g[k] = 1.0;
  const auto sq = g * g;
  for (std::size_t k = 0; k <= 20; ++k) EXPECT_NEAR(sq[k].real(), static_cast<double>(k + 1), 1e-13);
}

TEST(Series, DivisionInvertsProduct) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_series(rng, 32, 0.7);
    auto b = random_series(rng, 32, 0.5);
    b[0] = complex{1.0, 0.3};
    EXPECT_LT(max_diff(div(mul(a, b), b), a), 1e-10);
  }
}

TEST(Series, DivisionByNonUnitThrows) {
  const auto a = TaylorSeries::from({1.0}, 4);
  const auto b = TaylorSeries::from({0.0, 1.0}, 4);
  try {
    (void)div(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByNonUnit);
  }
}

TEST(Series, ExpMatchesFactorials) {
  const auto e = exp_series(TaylorSeries::identity(20));
  double fact = 1.0;
  for (std::size_t k = 0; k <= 20; ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    EXPECT_NEAR(e[k].real(), 1.0 / fact, 1e-16);
  }
}

TEST(Series, ExpOfScaledLogIsBinomial) {
  // exp(a log(1/(1-z))) = (1-z)^(-a); coefficients are rising factorials over k!.
  const double a = 2.5;
  const auto e = exp_series(scale(log1m(30), a));
  double c = 1.0;
  for (std::size_t k = 0; k <= 30; ++k) {
    EXPECT_NEAR(e[k].real(), c, 1e-10 * std::max(1.0, c));
    c *= (a + static_cast<double>(k)) / static_cast<double>(k + 1);
  }
}

TEST(Series, ExpRejectsConstantTerm) {
  try {
    (void)exp_series(TaylorSeries::constant(1.0, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonzeroConstantTerm);
  }
}

TEST(Series, Log1mAgainstScalarLog) {
  const auto l = log1m(64);
  EXPECT_EQ(l[0], complex(0.0));
  for (std::size_t k = 1; k <= 64; ++k) EXPECT_DOUBLE_EQ(l[k].real(), 1.0 / static_cast<double>(k));
  const complex z{0.2, 0.3};
  EXPECT_NEAR(std::abs(l.eval(z) + std::log(1.0 - z)), 0.0, 1e-14);
}

TEST(Series, DerivativeAndIntegralAreInverse) {
  std::mt19937_64 rng(2);
  auto a = random_series(rng, 24, 0.8);
  a[0] = 0.0;
  const auto back = integrate0(derivative(a));
  EXPECT_LT(max_diff(back.resized(23), a.resized(23)), 1e-14);
  const auto d = derivative(TaylorSeries::from({5.0, 1.0, 1.0, 1.0}, 3));
  EXPECT_EQ(d[0], complex(1.0));
  EXPECT_EQ(d[1], complex(2.0));
  EXPECT_EQ(d[2], complex(3.0));
}

TEST(Series, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(3);
  const auto a = random_series(rng, 24, 0.5);
  const auto d = derivative(a);
  const complex z{0.2, 0.1};
  const double h = 1e-6;
  const complex fd = (a.eval(z + h) - a.eval(z - h)) / (2.0 * h);
  EXPECT_NEAR(std::abs(d.eval(z) - fd), 0.0, 1e-8);
}

TEST(Series, ShiftsAreInverse) {
  const auto a = TaylorSeries::from({0.0, 1.0, 2.0, 3.0}, 5);
  const auto down = shift_down(a);
  EXPECT_EQ(down[0], complex(1.0));
  EXPECT_EQ(down[2], complex(3.0));
  EXPECT_LT(max_diff(shift_up(down).resized(4), a.resized(4)), 0.0 + 1e-300);
}

TEST(Series, RingAxiomsOnSeededSamples) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_series(rng, 20, 0.9);
    const auto b = random_series(rng, 20, 0.9);
    const auto c = random_series(rng, 20, 0.9);
    EXPECT_LT(max_diff(a * (b + c), a * b + a * c), 1e-12);
    EXPECT_LT(max_diff(a * b, b * a), 1e-13);
    EXPECT_LT(max_diff((a - b) + b, a), 1e-14);
  }
}
