#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "univalent/schwarz.hpp"

using namespace univalent;

TEST(Schwarz, MicroFormatRoundTrip) {
  for (const char* spec : {"const:0.5", "monomial:0.6-0.8i,3", "blaschke:[0.5+0.3i,-0.2i],1,premul_z:true",
                           "blaschke:[],-1,premul_z:false"}) {
    const auto s = parse_schwarz(spec);
    const auto again = parse_schwarz(s.spec());
    const complex z{0.3, -0.2};
    EXPECT_NEAR(std::abs(s(z) - again(z)), 0.0, 1e-15) << spec;
  }
  EXPECT_EQ(parse_complex("0.5-2i"), complex(0.5, -2.0));
  EXPECT_EQ(parse_complex("i"), complex(0.0, 1.0));
  EXPECT_THROW(parse_schwarz("spline:1"), Error);
  EXPECT_THROW(parse_schwarz("blaschke:[1.2],1,premul_z:true"), Error);
  EXPECT_THROW(parse_schwarz("monomial:2,1"), Error);
}

TEST(Schwarz, BlaschkeByHand) {
  // z (z + a)/(1 + conj(a) z) with a = 1/2 at z = 1/2: 0.5 * 1 / 1.25.
  const auto s = SchwarzFunction::blaschke({0.5}, 1.0, true);
  EXPECT_NEAR(std::abs(s(0.5) - 0.4), 0.0, 1e-15);
  EXPECT_TRUE(s.centered());
  EXPECT_FALSE(SchwarzFunction::blaschke({0.5}, 1.0, false).centered());
  // Unimodular on the circle.
  for (int j = 0; j < 16; ++j) EXPECT_NEAR(std::abs(s(std::polar(1.0, 0.4 * j))), 1.0, 1e-14);
}

TEST(Schwarz, DerivativeMatchesFiniteDifference) {
  const auto s = parse_schwarz("blaschke:[0.5+0.3i,-0.4+0.1i],0.6+0.8i,premul_z:true");
  const complex z{0.2, 0.35};
  const double h = 1e-6;
  const complex fd = (s(z + h) - s(z - h)) / (2.0 * h);
  EXPECT_NEAR(std::abs(s.derivative(z) - fd), 0.0, 1e-8);
}

TEST(Schwarz, SeriesMatchesEvaluation) {
  const auto s = parse_schwarz("blaschke:[0.5+0.3i,-0.4+0.1i],0.6+0.8i,premul_z:false");
  const auto ser = s.series(80);
  for (const double r : {0.2, 0.5}) {
    const complex z = std::polar(r, 1.1);
    EXPECT_NEAR(std::abs(ser.eval(z) - s(z)), 0.0, 1e-13);
  }
}

TEST(Schwarz, PickGapsNonnegativeOnSeededSamples) {
  std::mt19937_64 rng(derive_seed(5, 0));
  double worst = 1.0, worst_centered = 1.0;
  for (int i = 0; i < 20000; ++i) {
    const auto s = sample_blaschke(rng, i % 2 == 0);
    const complex z = sample_disk(rng, 0.99);
    worst = std::min(worst, schwarz_pick_gap(s, z));
    if (s.centered()) worst_centered = std::min(worst_centered, omega_centered_gap(s, z));
  }
  EXPECT_GE(worst, -1e-12);
  EXPECT_GE(worst_centered, -1e-12);
}

TEST(Schwarz, CenteredGapRejectsUncentered) {
  try {
    (void)omega_centered_gap(SchwarzFunction::constant(0.3), 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OmegaNotCentered);
  }
}

TEST(Schwarz, PhiTMaxAgainstBruteForce) {
  for (const double r : {0.1, 0.3, 0.5, 0.7, 0.9, 0.95}) {
    double best = -1.0;
    const int n = 200000;
    for (int j = 0; j <= n; ++j) {
      const double t = r * j / n;
      best = std::max(best, (r * r - t * t) / (1.0 - t));
    }
    EXPECT_NEAR(phi_t_max(r), best, 1e-9) << r;
    const double t = phi_t_argmax(r);
    EXPECT_NEAR((r * r - t * t) / (1.0 - t), phi_t_max(r), 1e-14);
  }
}

TEST(Schwarz, ArcsinChainIdentity) {
  double worst = 0.0;
  for (int j = 0; j <= 1000; ++j) {
    const double t = j / 1000.0;
    const auto c = arcsin_chain(t);
    worst = std::max(worst, std::abs(c.lhs - c.rhs));
    // Against the library asin away from the endpoint where it loses digits.
    if (t > 0.05 && t < 0.95) {
      EXPECT_NEAR(c.lhs, std::asin(1 - t * t) + std::asin(t / std::numbers::sqrt2), 1e-9);
    }
  }
  EXPECT_LT(worst, 1e-12);
  EXPECT_THROW(arcsin_chain(1.5), Error);
}

TEST(Schwarz, KoebeFromP) {
  // (1+z)/(1-z) = 1 + 2z + 2z^2 + ...
  TaylorSeries p(20);
  p[0] = 1.0;
  for (std::size_t k = 1; k <= 20; ++k) p[k] = 2.0;
  const auto f = f_from_p(p);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_NEAR(std::abs(f[n] - static_cast<double>(n)), 0.0, 1e-10);
  const auto back = p_from_f(f);
  for (std::size_t n = 0; n < 20; ++n) EXPECT_NEAR(std::abs(back[n] - p[n]), 0.0, 1e-9);
  EXPECT_THROW(f_from_p(TaylorSeries::constant(2.0, 4)), Error);
}

TEST(Schwarz, MakeMemberStarlikeAndG) {
  const auto koebe = make_member(ClassLabel::S_star(), SchwarzFunction::identity(), 20);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_NEAR(koebe.f_series()[n].real(), static_cast<double>(n), 1e-10);
  // omega = z in G gives p = (1-z)/(1-z/2), f = z - z^2/2.
  const auto g = make_member(ClassLabel::G(), SchwarzFunction::identity(), 20);
  EXPECT_NEAR(std::abs(g.f_series()[2] + 0.5), 0.0, 1e-14);
  for (std::size_t n = 3; n <= 20; ++n) EXPECT_NEAR(std::abs(g.f_series()[n]), 0.0, 1e-12);
  // S*(1/2) with omega = z is z/(1-z).
  const auto half = make_member(ClassLabel::S_star_order(0.5), SchwarzFunction::identity(), 20);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_NEAR(half.f_series()[n].real(), 1.0, 1e-11);
  EXPECT_THROW(make_member(ClassLabel::K(), SchwarzFunction::identity()), Error);
  EXPECT_THROW(make_member(ClassLabel::S_star(), SchwarzFunction::constant(0.2)), Error);
}

TEST(Schwarz, PClosedMatchesSeries) {
  std::mt19937_64 rng(derive_seed(6, 0));
  for (int i = 0; i < 20; ++i) {
    const auto w = sample_blaschke(rng, true);
    const auto m = make_member(i % 2 ? ClassLabel::G() : ClassLabel::S_star(), w, 256);
    const complex z = sample_disk(rng, 0.6);
    EXPECT_NEAR(std::abs(m.p_closed(z).value - m.p_series().eval(z)), 0.0, 1e-10);
  }
}

TEST(Schwarz, UMemberReproducesF1) {
  const auto m = make_u_member(SchwarzFunction::constant(1.0), 0.0, 20);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_NEAR(std::abs(m.f_series()[n] - (n % 2 ? 1.0 : 0.0)), 0.0, 1e-10);
  // u = z/f, closed form by quadrature.
  const complex z{0.4, 0.3};
  EXPECT_NEAR(std::abs(m.u_closed(z).value - (1.0 - z * z)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(m.u_closed(z).deriv + 2.0 * z), 0.0, 1e-13);
}

TEST(Schwarz, UMemberRejectsVanishingU) {
  // phi = -1, u1 = 1.5i: u = 1 + 1.5i z + z^2 vanishes at z = i/2, a grid point.
  try {
    (void)make_u_member(SchwarzFunction::constant(-1.0), complex(0, 1.5), 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UVanishes);
  }
}

TEST(Schwarz, DeriveSeedIsDeterministicAndSpread) {
  EXPECT_EQ(derive_seed(42, 3), derive_seed(42, 3));
  EXPECT_NE(derive_seed(42, 3), derive_seed(42, 4));
  EXPECT_NE(derive_seed(42, 3), derive_seed(43, 3));
}
