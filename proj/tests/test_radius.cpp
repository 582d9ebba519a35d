#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "univalent/radius.hpp"

using namespace univalent;

TEST(Radius, SolveR1) {
  const double r1 = solve_r1();
  EXPECT_GE(r1, 0.83928);
  EXPECT_LE(r1, 0.83930);
  EXPECT_LT(std::abs(r1_polynomial(r1)), 1e-12);
  EXPECT_NEAR(r1 * r1, 0.7044, 1e-4);
}

TEST(Radius, TheoremRadii) {
  const double r2 = paper_radius(TheoremCase::ii);
  EXPECT_NEAR(r2, 0.7861514, 1e-6);
  EXPECT_LT(std::abs(r2 * r2 * r2 * r2 + r2 * r2 - 1.0), 1e-14);
  EXPECT_EQ(paper_radius(TheoremCase::iii), 2.0 / 3.0);
  EXPECT_EQ(paper_radius(TheoremCase::iv), 0.5);
  EXPECT_EQ(paper_radius(TheoremCase::v), 0.25);
  EXPECT_EQ(paper_radius(TheoremCase::i), solve_r1());
}

TEST(Radius, ProofBoundsVanishAtTheoremRadii) {
  for (const TheoremCase c : {TheoremCase::ii, TheoremCase::iii, TheoremCase::iv, TheoremCase::v}) {
    const double root = bisect_root([c](double r) { return proof_lower_bound(c, r); }, 0.01, 0.95, 1e-14);
    EXPECT_NEAR(root, paper_radius(c), 1e-10) << to_string(c);
    EXPECT_GT(proof_lower_bound(c, paper_radius(c) - 0.01), 0.0);
    EXPECT_LT(proof_lower_bound(c, paper_radius(c) + 0.01), 0.0);
  }
  EXPECT_THROW(proof_lower_bound(TheoremCase::i, 0.5), Error);
}

TEST(Radius, CounterexampleThresholds) {
  EXPECT_NEAR(counterexample_threshold("f2"), 1.0 - std::exp(-2.0), 1e-12);
  EXPECT_NEAR(counterexample_threshold("f3"), 1.0 / std::numbers::sqrt2, 1e-12);
  EXPECT_THROW(counterexample_threshold("k"), Error);
}

TEST(Radius, ScanNeverAboveBruteForceGrid) {
  for (const auto& name : catalog_names()) {
    const auto f = AnalyticInput::catalog(name);
    for (const double r : {0.3, 0.6, 0.8}) {
      const auto s = scan_circle(f, r, 256);
      double brute = 1e300;
      for (int j = 0; j < 20000; ++j) {
        brute = std::min(brute, eval_D(f, std::polar(r, 2.0 * std::numbers::pi * j / 20000.0)).real());
      }
      EXPECT_LE(s.min_value, brute + 1e-9) << name << " " << r;
      EXPECT_NEAR(s.min_value, brute, 1e-5) << name << " " << r;
      const auto coarse = scan_circle([&](complex z) { return eval_D(f, z); }, r, 256, false);
      EXPECT_LE(s.min_value, coarse.min_value);
    }
  }
}

TEST(Radius, ScanF3TouchesZeroAtThreshold) {
  const auto s = scan_circle(AnalyticInput::catalog("f3"), 1.0 / std::numbers::sqrt2, 4096);
  EXPECT_NEAR(s.min_value, 0.0, 1e-12);
  EXPECT_NEAR(s.argmin_angle, 0.0, 1e-6);
}

TEST(Radius, ScanRejectsUntrustedRadius) {
  const auto f = AnalyticInput::from_f_series(get("k").series());
  try {
    (void)scan_circle(f, 0.8, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UntrustedRadius);
  }
}

TEST(Radius, PositivityRadiiOfCatalog) {
  const auto f2 = positivity_radius(AnalyticInput::catalog("f2"), {},
                                    PaperReference{1.0 - std::exp(-2.0), PaperReference::Kind::upper_bound});
  EXPECT_TRUE(f2.failure_found);
  EXPECT_NEAR(f2.positivity_radius, 1.0 - std::exp(-2.0), 1e-7);
  EXPECT_EQ(f2.relation, PaperRelation::counterexample_consistent);
  const auto f3 = positivity_radius(AnalyticInput::catalog("f3"));
  EXPECT_NEAR(f3.positivity_radius, 1.0 / std::numbers::sqrt2, 1e-7);
  for (const char* name : {"k", "f1"}) {
    const auto r = positivity_radius(AnalyticInput::catalog(name));
    EXPECT_FALSE(r.failure_found);
    EXPECT_DOUBLE_EQ(r.positivity_radius, radius_cap);
  }
  // Raw series stop at the trust radius.
  const auto s = positivity_radius(AnalyticInput::from_f_series(get("k").series()));
  EXPECT_DOUBLE_EQ(s.cap, series_trust_radius);
}

TEST(Radius, GMemberRadiusIsTheoremConsistent) {
  // omega = z in G is z - z^2/2.
  const auto g = generator_D(TheoremCase::iii, SchwarzFunction::identity());
  const auto rep = positivity_radius(g, "G omega=z", {},
                                     PaperReference{2.0 / 3.0, PaperReference::Kind::lower_bound});
  EXPECT_GE(rep.positivity_radius, 2.0 / 3.0);
  EXPECT_EQ(rep.relation, PaperRelation::theorem_consistent);
  const auto bad = positivity_radius(g, "G omega=z", {}, PaperReference{0.995, PaperReference::Kind::lower_bound});
  EXPECT_EQ(bad.relation, PaperRelation::inconsistent);
}

TEST(Radius, TheoremSuitesPass) {
  for (const TheoremCase c : {TheoremCase::i, TheoremCase::ii, TheoremCase::iii, TheoremCase::iv, TheoremCase::v}) {
    const auto rep = verify_theorem(c, 30, 42);
    EXPECT_TRUE(rep.pass) << to_string(c);
    EXPECT_GT(rep.suite_min, 0.0);
    EXPECT_NEAR(rep.scan_radius, paper_radius(c) - 0.01, 1e-15);
  }
  EXPECT_EQ(verify_theorem(TheoremCase::v, 1, 42).samples, 12u);
}

TEST(Radius, SuiteFailsWhenRadiusIsInflated) {
  VerifyOptions opt;
  opt.radius_override = 0.8;
  const auto rep = verify_theorem(TheoremCase::iv, 30, 42, opt);
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.failures.empty());
  opt.radius_override = 0.8;
  EXPECT_FALSE(verify_theorem(TheoremCase::v, 1, 42, opt).pass);
}

TEST(Radius, SuitesAreThreadIndependent) {
  VerifyOptions one, four;
  four.threads = 4;
  const auto a = verify_theorem(TheoremCase::ii, 40, 7, one);
  const auto b = verify_theorem(TheoremCase::ii, 40, 7, four);
  ASSERT_EQ(a.members.size(), b.members.size());
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    EXPECT_EQ(a.members[i].min_value, b.members[i].min_value);
    EXPECT_EQ(a.members[i].description, b.members[i].description);
  }
}

TEST(Radius, SharpnessSmallBudget) {
  const auto rep = sharpness_probe(TheoremCase::iii, 500, 42);
  EXPECT_EQ(rep.evaluations, 500u);
  EXPECT_FALSE(rep.alert);
  EXPECT_GE(rep.best_radius, 2.0 / 3.0 - 1e-6);
  const auto again = sharpness_probe(TheoremCase::iii, 500, 42);
  EXPECT_EQ(rep.best_radius, again.best_radius);
  EXPECT_EQ(rep.best_generator, again.best_generator);
}

TEST(Radius, SharpnessAlertsUnderFaultInjection) {
  SharpnessOptions opt;
  opt.theorem_radius_override = 0.95;
  const auto rep = sharpness_probe(TheoremCase::iv, 500, 42, opt);
  EXPECT_TRUE(rep.alert);
  EXPECT_FALSE(rep.alert_details.empty());
}
