#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "univalent/certifier.hpp"

using namespace univalent;

TEST(Certifier, CatalogMembershipFacts) {
  for (const char* name : {"k", "f1"}) {
    const auto f = AnalyticInput::catalog(name);
    EXPECT_EQ(certify(f, ClassLabel::S_star()).status, VerdictStatus::grid_pass) << name;
    EXPECT_EQ(certify(f, ClassLabel::U()).status, VerdictStatus::grid_pass) << name;
  }
  const auto f2 = AnalyticInput::catalog("f2");
  EXPECT_EQ(certify(f2, ClassLabel::K()).status, VerdictStatus::grid_pass);
  for (const char* name : {"f2", "f3"}) {
    const auto v = certify(AnalyticInput::catalog(name), ClassLabel::U());
    ASSERT_EQ(v.status, VerdictStatus::violated) << name;
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_GE(std::abs(v.witness->value), 1.0);
    EXPECT_NEAR(std::abs(u_defect(AnalyticInput::catalog(name), v.witness->z) - v.witness->value), 0.0, 1e-15);
  }
}

TEST(Certifier, WitnessIsFirstViolationInGridOrder) {
  // f3 leaves U first on the positive axis.
  const auto v = certify(AnalyticInput::catalog("f3"), ClassLabel::U());
  ASSERT_TRUE(v.witness);
  EXPECT_NEAR(v.witness->z.imag(), 0.0, 1e-15);
  EXPECT_NEAR(v.witness->z.real(), 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(v.checked_max_radius, 0.8);
}

TEST(Certifier, KoebeIsNotConvex) {
  const auto v = certify(AnalyticInput::catalog("k"), ClassLabel::K());
  ASSERT_EQ(v.status, VerdictStatus::violated);
  EXPECT_LT(v.witness->value.real(), 0.0);
}

TEST(Certifier, StarlikeOrder) {
  // z/(1-z) lies in S*(1/2) but z/(1-z)^2 does not.
  const auto half = AnalyticInput::member(make_member(ClassLabel::S_star_order(0.5), SchwarzFunction::identity()));
  EXPECT_EQ(certify(half, ClassLabel::S_star_order(0.5)).status, VerdictStatus::grid_pass);
  EXPECT_EQ(certify(AnalyticInput::catalog("k"), ClassLabel::S_star_order(0.5)).status, VerdictStatus::violated);
}

TEST(Certifier, GeneratedMembersPassTheirClass) {
  std::mt19937_64 rng(derive_seed(30, 0));
  for (int i = 0; i < 20; ++i) {
    const auto w = sample_blaschke(rng, true);
    const auto m = AnalyticInput::member(make_member(ClassLabel::S_star(), w));
    EXPECT_EQ(certify(m, ClassLabel::S_star()).status, VerdictStatus::grid_pass) << w.spec();
  }
  // The omega form for G is only a subordination condition; omega = z gives z - z^2/2, which is in G.
  const auto g = AnalyticInput::member(make_member(ClassLabel::G(), SchwarzFunction::identity()));
  EXPECT_EQ(certify(g, ClassLabel::G()).status, VerdictStatus::grid_pass);
}

TEST(Certifier, GeneratedUMembersPass) {
  std::mt19937_64 rng(derive_seed(31, 0));
  int built = 0;
  for (int i = 0; i < 15; ++i) {
    try {
      const auto m = AnalyticInput::member(make_u_member(sample_blaschke(rng, false), 0.0));
      ++built;
      GridSpec grid;
      grid.radii = {0.3, 0.6, 0.9};
      grid.angles_per_circle = 128;
      EXPECT_EQ(certify(m, ClassLabel::U(), grid).status, VerdictStatus::grid_pass);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::UVanishes);
    }
  }
  EXPECT_GT(built, 5);
}

TEST(Certifier, SeriesInputsAreGridLimited) {
  const auto f = AnalyticInput::from_f_series(get("k", 128).series());
  const auto v = certify(f, ClassLabel::S_star());
  EXPECT_EQ(v.status, VerdictStatus::grid_pass);
  EXPECT_TRUE(v.grid_limited);
  EXPECT_DOUBLE_EQ(v.checked_max_radius, 0.7);
}

TEST(Certifier, RejectsS) {
  try {
    (void)certify(AnalyticInput::catalog("k"), ClassLabel::S());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UncertifiableClass);
  }
}

TEST(Certifier, GridValidation) {
  GridSpec g;
  g.radii = {0.5, 0.4};
  EXPECT_THROW(g.validate(), Error);
  g.radii = {0.5};
  g.angles_per_circle = 10;
  EXPECT_THROW(g.validate(), Error);
  g = GridSpec::with_max_radius(0.999);
  EXPECT_NO_THROW(g.validate());
  g.max_radius = 1.0;
  EXPECT_THROW(g.validate(), Error);
}

TEST(Certifier, GrowthAndDistortionBoundsOnCatalog) {
  for (const auto& name : catalog_names()) {
    const auto f = AnalyticInput::catalog(name);
    for (const double r : {0.1, 0.5, 0.9, 0.99}) {
      for (int j = 0; j < 256; ++j) {
        const complex z = std::polar(r, 2.0 * std::numbers::pi * j / 256.0);
        EXPECT_TRUE(check_growth_bound(f, z).holds) << name << z;
        EXPECT_TRUE(check_distortion_bound(f, z).holds) << name << z;
      }
    }
  }
  // Koebe attains both bounds on the positive axis.
  const auto k = AnalyticInput::catalog("k");
  EXPECT_NEAR(check_growth_bound(k, 0.5).margin, 0.0, 1e-13);
  EXPECT_NEAR(check_distortion_bound(k, 0.5).margin, 0.0, 1e-13);
}

TEST(Certifier, GrowthBoundOnGeneratedMembers) {
  std::mt19937_64 rng(derive_seed(32, 0));
  for (int i = 0; i < 200; ++i) {
    const auto m = AnalyticInput::member(make_member(ClassLabel::S_star(), sample_blaschke(rng, true)));
    const complex z = sample_disk(rng, 0.95);
    EXPECT_TRUE(check_growth_bound(m, z).holds);
    EXPECT_TRUE(check_distortion_bound(m, z).holds);
  }
}

TEST(Certifier, RealPartFloor) {
  EXPECT_NEAR(tanh_half, (std::exp(1.0) - 1.0) / (std::exp(1.0) + 1.0), 1e-15);
  EXPECT_DOUBLE_EQ(real_part_floor_S(0.0), 1.0);
  EXPECT_THROW(real_part_floor_S(0.5), Error);
  for (const auto& name : catalog_names()) {
    const auto f = AnalyticInput::catalog(name);
    for (int j = 0; j < 512; ++j) {
      const complex z = std::polar(tanh_half, 2.0 * std::numbers::pi * j / 512.0);
      EXPECT_GE(starlikeness_functional(f, z).real(), real_part_floor_S(tanh_half) - 1e-12) << name;
    }
  }
}
