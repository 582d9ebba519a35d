#pragma once

/**
 * @file radius.hpp
 * @brief Circle minima of Re D, positivity radii, the theorem radii and the
 *        seeded verification and sharpness suites.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "univalent/catalog.hpp"
#include "univalent/error.hpp"
#include "univalent/operator_d.hpp"
#include "univalent/schwarz.hpp"

namespace univalent {

inline constexpr double radius_cap = 0.999;

/// Maps a disk point to D(f;z).
using DFunction = std::function<complex(complex)>;

struct CircleScan {
  double r = 0.0;
  std::size_t n_angles = 0;
  double min_value = 0.0;
  double argmin_angle = 0.0;
  bool refined = false;
};

namespace detail {

/// Golden-section minimization of a unimodal-ish g on [a, b].
template <class G>
std::pair<double, double> golden_section_min(G&& g, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > tol) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  return gc <= gd ? std::pair{c, gc} : std::pair{d, gd};
}

inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  return theta >= two_pi ? 0.0 : theta;
}

/// Calls body(i) for i in [0, n) on up to `threads` workers (0 = hardware).
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            body(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/**
 * Coarse minimum of Re D over n equispaced angles on |z| = r, refined by
 * golden-section search between the neighbours of the coarse argmin.
 * Ties go to the smallest angle index.
 */
inline CircleScan scan_circle(const DFunction& D, double r, std::size_t n_angles, bool refine = true) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidArgument, "radius must lie in (0,1)");
  if (n_angles < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 angles");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n_angles);
  auto re_d = [&](double theta) {
    try {
      return D(std::polar(r, theta)).real();
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " (r = " + std::to_string(r) +
                                ", angle = " + std::to_string(theta) + ")");
    }
  };
  CircleScan scan{r, n_angles, std::numeric_limits<double>::infinity(), 0.0, false};
  std::size_t best = 0;
  for (std::size_t j = 0; j < n_angles; ++j) {
    const double v = re_d(step * static_cast<double>(j));
    if (v < scan.min_value) {
      scan.min_value = v;
      best = j;
    }
  }
  scan.argmin_angle = step * static_cast<double>(best);
  if (refine) {
    const double lo = scan.argmin_angle - step;
    const auto [theta, value] = detail::golden_section_min(re_d, lo, lo + 2.0 * step, 1e-12);
    scan.refined = true;
    if (value < scan.min_value) {
      scan.min_value = value;
      scan.argmin_angle = detail::wrap_angle(theta);
    }
  }
  return scan;
}

/// Scan along a trusted route of `f`; series routes stop at the trust radius.
inline CircleScan scan_circle(const AnalyticInput& f, double r, std::size_t n_angles,
                              Route route = Route::automatic) {
  route = f.resolve(route);
  if (r > f.trusted_radius(route)) {
    throw Error(ErrorKind::UntrustedRadius, "route '" + std::string(to_string(route)) +
                                                "' is not trusted beyond |z| = 0.7");
  }
  return scan_circle([&](complex z) { return eval_D(f, z, route); }, r, n_angles);
}

enum class PaperRelation { theorem_consistent, counterexample_consistent, inconsistent, not_applicable };

constexpr std::string_view to_string(PaperRelation r) {
  switch (r) {
    case PaperRelation::theorem_consistent: return ">= paper (theorem-consistent)";
    case PaperRelation::counterexample_consistent: return "<= paper (counterexample)";
    case PaperRelation::inconsistent: return "inconsistent with paper value";
    case PaperRelation::not_applicable: return "n/a";
  }
  return "n/a";
}

/// A published radius: a lower bound from a theorem, or an upper bound
/// exhibited by a counterexample.
struct PaperReference {
  enum class Kind { lower_bound, upper_bound };
  double value;
  Kind kind;
};

struct RadiusOptions {
  double tol = 1e-8;
  std::size_t n_angles = 1024;
  double step = 0.01;
  double cap = radius_cap;
  /// Golden-section refinement on every circle.
  bool refine = true;
};

struct RadiusReport {
  std::string function_id;
  double positivity_radius = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  /// Min Re D at r_lo.
  double residual = 0.0;
  bool failure_found = false;
  double cap = radius_cap;
  std::optional<double> paper_radius;
  PaperRelation relation = PaperRelation::not_applicable;
};

/**
 * Largest r with Re D > 0 on |z| < r, up to `cap`. Ascending steps bracket
 * the first circle where the minimum is <= 0 (the minimum need not be
 * monotone in r), then bisection narrows the bracket to `tol`. The reported
 * radius is the lower end of the bracket.
 */
inline RadiusReport positivity_radius(const DFunction& D, std::string function_id, RadiusOptions opt = {},
                                      std::optional<PaperReference> paper = std::nullopt) {
  RadiusReport rep;
  rep.function_id = std::move(function_id);
  rep.cap = opt.cap;
  auto min_at = [&](double r) { return scan_circle(D, r, opt.n_angles, opt.refine).min_value; };

  double lo = 0.0;
  double lo_min = 2.0;
  std::optional<double> hi;
  for (int k = 1;; ++k) {
    const double r = std::min(opt.cap, opt.step * k);
    const double m = min_at(r);
    if (m <= 0.0) {
      hi = r;
      break;
    }
    lo = r;
    lo_min = m;
    if (r >= opt.cap) break;
  }
  if (hi) {
    double h = *hi;
    while (h - lo > opt.tol) {
      const double mid = 0.5 * (lo + h);
      const double m = min_at(mid);
      if (m > 0.0) {
        lo = mid;
        lo_min = m;
      } else {
        h = mid;
      }
    }
    rep.failure_found = true;
    rep.r_hi = h;
  } else {
    rep.r_hi = opt.cap;
  }
  rep.r_lo = lo;
  rep.positivity_radius = lo;
  rep.residual = lo_min;
  if (paper) {
    rep.paper_radius = paper->value;
    if (paper->kind == PaperReference::Kind::lower_bound) {
      rep.relation = lo >= paper->value - 1e-6 ? PaperRelation::theorem_consistent : PaperRelation::inconsistent;
    } else {
      rep.relation = lo <= paper->value + opt.tol ? PaperRelation::counterexample_consistent
                                                  : PaperRelation::inconsistent;
    }
  }
  return rep;
}

inline RadiusReport positivity_radius(const AnalyticInput& f, RadiusOptions opt = {},
                                      std::optional<PaperReference> paper = std::nullopt,
                                      Route route = Route::automatic) {
  route = f.resolve(route);
  opt.cap = std::min(opt.cap, f.trusted_radius(route));
  return positivity_radius([&](complex z) { return eval_D(f, z, route); }, f.describe(), opt, paper);
}

// --- theorem radii ------------------------------------------------------------

enum class TheoremCase { i, ii, iii, iv, v };

inline TheoremCase parse_case(std::string_view s) {
  if (s == "i") return TheoremCase::i;
  if (s == "ii") return TheoremCase::ii;
  if (s == "iii") return TheoremCase::iii;
  if (s == "iv") return TheoremCase::iv;
  if (s == "v") return TheoremCase::v;
  throw Error(ErrorKind::InvalidArgument, "case must be one of i, ii, iii, iv, v");
}

constexpr std::string_view to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::i: return "i";
    case TheoremCase::ii: return "ii";
    case TheoremCase::iii: return "iii";
    case TheoremCase::iv: return "iv";
    case TheoremCase::v: return "v";
  }
  return "?";
}

/// Bisection for a sign change of g on [lo, hi]; stops at width tol or when
/// the midpoint no longer moves.
template <class G>
double bisect_root(G&& g, double lo, double hi, double tol = 1e-15) {
  double glo = g(lo);
  if ((glo > 0.0) == (g(hi) > 0.0)) throw Error(ErrorKind::InvalidArgument, "no sign change in bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double r1_polynomial(double r) { return r * r * r + 2.0 * r * r - 2.0; }

/// The root of r^3 + 2r^2 - 2 in (0,1).
inline double solve_r1() { return bisect_root(r1_polynomial, 0.0, 1.0, 1e-15); }

inline double paper_radius(TheoremCase c) {
  switch (c) {
    case TheoremCase::i: return solve_r1();
    case TheoremCase::ii: return std::sqrt((std::sqrt(5.0) - 1.0) / 2.0);
    case TheoremCase::iii: return 2.0 / 3.0;
    case TheoremCase::iv: return 0.5;
    case TheoremCase::v: return 0.25;
  }
  return 0.0;
}

/**
 * Final lower bound for Re D on |z| = r in the proofs of cases ii-v:
 *   ii   2 (sqrt(1-r^2) - r^2)/(1-r^2)
 *   iii  (2 - 3r)/(1 - r)
 *   iv   2 (1 - 2r)/(1 - r^2)
 *   v    2 (1 - 4r)/(1 - r^2)
 */
inline double proof_lower_bound(TheoremCase c, double r) {
  const double d = 1.0 - r * r;
  switch (c) {
    case TheoremCase::ii: return 2.0 * (std::sqrt(d) - r * r) / d;
    case TheoremCase::iii: return (2.0 - 3.0 * r) / (1.0 - r);
    case TheoremCase::iv: return 2.0 * (1.0 - 2.0 * r) / d;
    case TheoremCase::v: return 2.0 * (1.0 - 4.0 * r) / d;
    case TheoremCase::i: break;
  }
  throw Error(ErrorKind::InvalidArgument, "case i has no closed lower bound");
}

/// Real-axis failure threshold of f2 (root of 2 + log(1-r)) or f3 (root of g).
inline double counterexample_threshold(std::string_view name) {
  if (name == "f2") return bisect_root([](double r) { return 2.0 + std::log1p(-r); }, 0.0, 0.999);
  if (name == "f3") return bisect_root([](double r) { return f3_g(r).real(); }, 0.0, 1.0);
  throw Error(ErrorKind::UnknownFunction, "counterexample thresholds exist for f2 and f3");
}

// --- theorem suites -----------------------------------------------------------

/// Class whose members case c is about, for cases ii-iv.
inline ClassLabel case_class(TheoremCase c) {
  switch (c) {
    case TheoremCase::i: return ClassLabel::U();
    case TheoremCase::ii: return ClassLabel::S_star_order(0.5);
    case TheoremCase::iii: return ClassLabel::G();
    case TheoremCase::iv: return ClassLabel::S_star();
    case TheoremCase::v: return ClassLabel::S();
  }
  return ClassLabel::S();
}

/// D of the member induced by a generator (phi for case i, omega otherwise).
inline DFunction generator_D(TheoremCase c, const SchwarzFunction& g) {
  if (c == TheoremCase::i) {
    return [g](complex z) { return eval_D_from_phi(g, z); };
  }
  const ClassLabel label = case_class(c);
  if (!g.centered()) throw Error(ErrorKind::OmegaNotCentered, "omega(0) must vanish");
  return [g, label](complex z) {
    if (z == complex{}) return complex{2.0};
    const auto [w, dw] = g.eval(z);
    complex p, dp;
    if (label.tag == ClassLabel::Tag::G) {
      const complex den = 1.0 - 0.5 * w;
      p = (1.0 - w) / den;
      dp = -0.5 * dw / (den * den);
    } else {
      const double beta = 1.0 - 2.0 * label.alpha;
      const complex den = 1.0 - w;
      p = (1.0 + beta * w) / den;
      dp = (1.0 + beta) * dw / (den * den);
    }
    return d_from_p_values(z, p, dp);
  };
}

struct VerifyOptions {
  double margin = 0.01;
  std::size_t n_angles = 1024;
  unsigned threads = 1;
  /// Replaces the theorem radius; used to check that the suite can fail.
  std::optional<double> radius_override;
  BlaschkeSampling sampling{};
};

struct MemberResult {
  std::size_t member_id = 0;
  std::string description;
  double radius = 0.0;
  double min_value = 0.0;
  double angle = 0.0;
  std::optional<std::string> error;
  bool pass() const { return !error && min_value > 0.0; }
};

struct SuiteReport {
  TheoremCase which = TheoremCase::i;
  double theorem_radius = 0.0;
  double scan_radius = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<MemberResult> members;
  double suite_min = std::numeric_limits<double>::infinity();
  bool pass = true;
  std::vector<std::size_t> failures;
};

/// Catalog functions and rotations checked for case v.
inline std::vector<std::string> case_v_functions() {
  std::vector<std::string> names = catalog_names();
  for (const auto& base : catalog_names()) {
    names.push_back(base + "@0.5");
    names.push_back(base + "@2");
  }
  return names;
}

/**
 * Samples class members and checks min Re D > 0 on |z| = r_case - margin.
 * Member 0 of cases ii-iv uses omega(z) = z; the rest are seeded Blaschke
 * products. Case v uses the catalog and ignores `samples`.
 */
inline SuiteReport verify_theorem(TheoremCase which, std::size_t samples, std::uint64_t seed,
                                  const VerifyOptions& opt = {}) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  SuiteReport rep;
  rep.which = which;
  rep.theorem_radius = paper_radius(which);
  rep.scan_radius = opt.radius_override.value_or(rep.theorem_radius) - opt.margin;
  rep.seed = seed;

  std::vector<std::string> descriptions;
  std::vector<DFunction> members;
  if (which == TheoremCase::v) {
    for (const auto& name : case_v_functions()) {
      const CatalogFunction fn = get(name);
      descriptions.push_back(fn.name());
      members.emplace_back([fn](complex z) { return fn.closed_D(z); });
    }
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      std::mt19937_64 rng(derive_seed(seed, s));
      SchwarzFunction g = (s == 0 && which != TheoremCase::i)
                              ? SchwarzFunction::identity()
                              : sample_blaschke(rng, which != TheoremCase::i, opt.sampling);
      descriptions.push_back(g.spec());
      members.push_back(generator_D(which, g));
    }
  }
  rep.samples = members.size();
  rep.members.resize(members.size());
  detail::parallel_for(members.size(), opt.threads, [&](std::size_t i) {
    MemberResult& m = rep.members[i];
    m.member_id = i;
    m.description = descriptions[i];
    m.radius = rep.scan_radius;
    try {
      const CircleScan scan = scan_circle(members[i], rep.scan_radius, opt.n_angles);
      m.min_value = scan.min_value;
      m.angle = scan.argmin_angle;
    } catch (const Error& e) {
      m.error = e.what();
    }
  });
  for (const auto& m : rep.members) {
    if (!m.error) rep.suite_min = std::min(rep.suite_min, m.min_value);
    if (!m.pass()) {
      rep.pass = false;
      rep.failures.push_back(m.member_id);
    }
  }
  return rep;
}

// --- sharpness probe ----------------------------------------------------------

struct SharpnessOptions {
  unsigned threads = 1;
  /// Objective evaluations per multistart.
  std::size_t evaluations_per_start = 250;
  /// Angles per circle in the cheap objective.
  std::size_t coarse_angles = 256;
  double max_modulus = 0.99;
  /// Replaces the theorem radius in the alert test (fault injection).
  std::optional<double> theorem_radius_override;
};

struct SharpnessReport {
  TheoremCase which = TheoremCase::i;
  std::size_t budget = 0;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  double paper_radius = 0.0;
  /// Smallest positivity radius found (full-resolution recomputation).
  double best_radius = radius_cap;
  std::string best_generator;
  double gap = 0.0;
  bool failure_found = false;
  /// Set when a radius below paper_radius - 1e-6 was seen: an implementation bug, not a disproof.
  bool alert = false;
  std::vector<std::string> alert_details;
};

namespace detail {

/// Generator parameters as a flat vector: [zeta angle, re a_1, im a_1, ...].
struct ProbePoint {
  std::vector<double> x;
  bool premul_z = true;

  SchwarzFunction to_schwarz(double max_modulus) const {
    std::vector<complex> zeros;
    for (std::size_t j = 1; j + 1 < x.size(); j += 2) {
      complex a(x[j], x[j + 1]);
      if (std::abs(a) > max_modulus) a *= max_modulus / std::abs(a);
      zeros.push_back(a);
    }
    return SchwarzFunction::blaschke(std::move(zeros), std::polar(1.0, x[0]), premul_z);
  }
};

/// First radius on the 0.01 grid where the coarse circle minimum is <= 0.
inline double coarse_failure_radius(const DFunction& D, std::size_t angles) {
  for (int k = 1; k <= 100; ++k) {
    const double r = std::min(radius_cap, 0.01 * k);
    if (scan_circle(D, r, angles, false).min_value <= 0.0) return r;
  }
  return radius_cap;
}

}  // namespace detail

/**
 * Multistart coordinate descent over Blaschke parameters, minimizing the
 * positivity radius of the induced member. The budget counts objective
 * evaluations and is split into fixed-size starts so results do not depend
 * on the thread count.
 */
inline SharpnessReport sharpness_probe(TheoremCase which, std::size_t budget, std::uint64_t seed,
                                       const SharpnessOptions& opt = {}) {
  if (which == TheoremCase::v) throw Error(ErrorKind::InvalidArgument, "class S has no generator");
  if (budget < 100) throw Error(ErrorKind::InvalidArgument, "budget must be >= 100");
  SharpnessReport rep;
  rep.which = which;
  rep.budget = budget;
  rep.seed = seed;
  rep.paper_radius = opt.theorem_radius_override.value_or(paper_radius(which));
  const double alert_below = rep.paper_radius - 1e-6;

  const std::size_t per_start = std::min(budget, opt.evaluations_per_start);
  const std::size_t starts = (budget + per_start - 1) / per_start;
  struct StartResult {
    double radius = radius_cap;
    detail::ProbePoint point;
    std::size_t evaluations = 0;
    std::vector<std::string> alerts;
  };
  std::vector<StartResult> results(starts);
  const bool centered = which != TheoremCase::i;

  detail::parallel_for(starts, opt.threads, [&](std::size_t s) {
    std::mt19937_64 rng(derive_seed(seed, s));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    StartResult& res = results[s];
    const std::size_t quota = std::min(per_start, budget - s * per_start);
    const unsigned degree = static_cast<unsigned>(s % 3);
    auto random_point = [&] {
      detail::ProbePoint p;
      p.premul_z = centered || u(rng) < 0.5;
      p.x.push_back(2.0 * std::numbers::pi * u(rng));
      for (unsigned j = 0; j < degree; ++j) {
        const complex a = sample_disk(rng, opt.max_modulus);
        p.x.push_back(a.real());
        p.x.push_back(a.imag());
      }
      return p;
    };
    auto objective = [&](const detail::ProbePoint& p) {
      ++res.evaluations;
      const SchwarzFunction g = p.to_schwarz(opt.max_modulus);
      double r = radius_cap;
      try {
        r = detail::coarse_failure_radius(generator_D(which, g), opt.coarse_angles);
      } catch (const Error&) {
        // A degenerate generator counts as no improvement.
        return radius_cap;
      }
      if (r < alert_below && res.alerts.size() < 8) {
        res.alerts.push_back(g.spec() + " fails at r = " + std::to_string(r));
      }
      return r;
    };
    // Coordinate descent with step halving; restart from a fresh random
    // point whenever the step collapses, until this start's budget is spent.
    while (res.evaluations < quota) {
      detail::ProbePoint pt = random_point();
      double best = objective(pt);
      double h = 0.2;
      while (res.evaluations < quota && h > 1e-4) {
        bool improved = false;
        for (std::size_t c = 0; c < pt.x.size() && !improved && res.evaluations < quota; ++c) {
          for (const double sgn : {1.0, -1.0}) {
            if (res.evaluations >= quota) break;
            detail::ProbePoint trial = pt;
            trial.x[c] += sgn * h;
            const double v = objective(trial);
            if (v < best) {
              best = v;
              pt = std::move(trial);
              improved = true;
              break;
            }
          }
        }
        if (!improved) h *= 0.5;
      }
      if (best < res.radius || res.point.x.empty()) {
        res.radius = best;
        res.point = pt;
      }
    }
  });

  std::size_t best_start = 0;
  for (std::size_t s = 0; s < starts; ++s) {
    rep.evaluations += results[s].evaluations;
    for (auto& a : results[s].alerts) rep.alert_details.push_back(std::move(a));
    if (results[s].radius < results[best_start].radius) best_start = s;
  }

  const SchwarzFunction best_g = results[best_start].point.to_schwarz(opt.max_modulus);
  rep.best_generator = best_g.spec();
  const RadiusReport full = positivity_radius(generator_D(which, best_g), rep.best_generator);
  rep.best_radius = full.positivity_radius;
  rep.failure_found = full.failure_found;
  rep.gap = rep.best_radius - rep.paper_radius;
  if (rep.best_radius < alert_below) {
    rep.alert_details.push_back(rep.best_generator + " has positivity radius " + std::to_string(rep.best_radius));
  }
  rep.alert = !rep.alert_details.empty();
  return rep;
}

}  // namespace univalent
