#pragma once

/**
 * @file operator_d.hpp
 * @brief D(f;z) = 2 z f'/f - z f''/f' and the related class functionals.
 *
 * D is computed along independent routes:
 *   closed  the catalog's displayed formula, or closed-form member data
 *   series  f, f', f'' from a truncated Taylor series of f
 *   p       D = p + 1 - z p'/p with p = z f'/f
 *   phi     D = 2 (1 - z^3 phi'/2) / (1 + z^2 phi) for members of U
 *
 * With p = z f'/f the second logarithmic derivative is
 * z f''/f' = p - 1 + z p'/p, which every p-based route uses.
 */

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <variant>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "univalent/catalog.hpp"
#include "univalent/error.hpp"
#include "univalent/schwarz.hpp"
#include "univalent/series.hpp"

namespace univalent {

/// Values below this are treated as zero by every evaluator.
inline constexpr double singular_eps = 1e-12;

enum class Route { automatic, closed, series, p, phi };

constexpr std::string_view to_string(Route r) {
  switch (r) {
    case Route::automatic: return "auto";
    case Route::closed: return "closed";
    case Route::series: return "series";
    case Route::p: return "p";
    case Route::phi: return "phi";
  }
  return "?";
}

inline Route parse_route(std::string_view s) {
  if (s == "auto") return Route::automatic;
  if (s == "closed") return Route::closed;
  if (s == "series") return Route::series;
  if (s == "p") return Route::p;
  if (s == "phi") return Route::phi;
  throw Error(ErrorKind::InvalidArgument, "unknown route '" + std::string(s) + "'");
}

/// z f'/f and z f''/f' at one point.
struct Jet {
  complex p;
  complex q;
};

/// D from p = z f'/f and p' at z.
inline complex d_from_p_values(complex z, complex p, complex dp) {
  if (std::abs(p) <= singular_eps) throw Error(ErrorKind::ZeroP, "z f'/f vanishes");
  return p + 1.0 - z * dp / p;
}

/// D through the p-identity, without constructing f.
inline complex eval_D_from_p(const TaylorSeries& p, complex z) {
  if (std::abs(p[0] - 1.0) > 1e-12) throw Error(ErrorKind::NonUnitP, "p(0) must equal 1");
  if (z == complex{}) return 2.0;
  return d_from_p_values(z, p.eval(z), derivative(p).eval(z));
}

/// D of the U-member induced by phi; independent of the free coefficient u1.
inline complex eval_D_from_phi(const SchwarzFunction& phi, complex z) {
  if (z == complex{}) return 2.0;
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::OutsideDisk, "|z| must be < 1");
  const auto [w, dw] = phi.eval(z);
  const complex den = 1.0 + z * z * w;
  if (std::abs(den) <= singular_eps) throw Error(ErrorKind::DenominatorVanish, "1 + z^2 phi vanishes");
  return 2.0 * (1.0 - 0.5 * z * z * z * dw) / den;
}

namespace detail {

inline Jet jet_from_f(complex z, complex f, complex df, complex d2f) {
  if (std::abs(df) < singular_eps) throw Error(ErrorKind::CriticalPoint, "f' vanishes");
  if (std::abs(f) < singular_eps) throw Error(ErrorKind::ZeroValue, "f vanishes away from 0");
  return {z * df / f, z * d2f / df};
}

inline Jet jet_from_p(complex z, complex p, complex dp) {
  if (std::abs(p) <= singular_eps) throw Error(ErrorKind::ZeroP, "z f'/f vanishes");
  return {p, p - 1.0 + z * dp / p};
}

struct FSeriesSource {
  TaylorSeries f, df, d2f, p, dp;
};

struct PSeriesSource {
  TaylorSeries p, dp, f, df, d2f;
};

struct CatalogSource {
  CatalogFunction fn;
  TaylorSeries df, d2f, p, dp;
};

struct MemberSource {
  FamilyMember member;
  TaylorSeries df, d2f, dp;
};

}  // namespace detail

/**
 * An analytic function in one of the representations the evaluators accept:
 * a catalog entry, a Taylor series of f, a Taylor series of p = z f'/f, or
 * a Schwarz-generated family member.
 */
class AnalyticInput {
 public:
  static AnalyticInput catalog(CatalogFunction fn) {
    const TaylorSeries f = fn.series();
    TaylorSeries p = p_from_f(f);
    TaylorSeries dp = derivative(p);
    return AnalyticInput(detail::CatalogSource{std::move(fn), derivative(f), derivative(derivative(f)),
                                               std::move(p), std::move(dp)});
  }

  static AnalyticInput catalog(std::string_view name, std::size_t order = default_order) {
    return catalog(get(name, order));
  }

  static AnalyticInput from_f_series(TaylorSeries f) {
    if (std::abs(f[0]) > 1e-12 || std::abs(f[1] - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidArgument, "f must satisfy f(0) = 0 and f'(0) = 1");
    }
    TaylorSeries p = p_from_f(f);
    TaylorSeries dp = derivative(p);
    TaylorSeries df = derivative(f);
    TaylorSeries d2f = derivative(df);
    return AnalyticInput(detail::FSeriesSource{std::move(f), std::move(df), std::move(d2f), std::move(p), std::move(dp)});
  }

  static AnalyticInput from_p_series(TaylorSeries p) {
    TaylorSeries f = f_from_p(p);
    detail::PSeriesSource src{p, derivative(p), f, derivative(f), derivative(derivative(f))};
    return AnalyticInput(std::move(src));
  }

  static AnalyticInput member(FamilyMember m) {
    TaylorSeries df = derivative(m.f_series());
    TaylorSeries d2f = derivative(df);
    TaylorSeries dp = derivative(m.p_series());
    return AnalyticInput(detail::MemberSource{std::move(m), std::move(df), std::move(d2f), std::move(dp)});
  }

  std::string describe() const {
    return std::visit(
        [](const auto& s) -> std::string {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, detail::CatalogSource>) return s.fn.name();
          else if constexpr (std::is_same_v<S, detail::FSeriesSource>) return "f-series";
          else if constexpr (std::is_same_v<S, detail::PSeriesSource>) return "p-series";
          else return (s.member.is_u_member() ? "U-member[" : to_string(s.member.class_label()) + "-member[") +
                      s.member.generator().spec() + "]";
        },
        source_);
  }

  const CatalogFunction* as_catalog() const {
    const auto* s = std::get_if<detail::CatalogSource>(&source_);
    return s ? &s->fn : nullptr;
  }
  const FamilyMember* as_member() const {
    const auto* s = std::get_if<detail::MemberSource>(&source_);
    return s ? &s->member : nullptr;
  }

  Route default_route() const {
    if (as_catalog()) return Route::closed;
    if (std::holds_alternative<detail::FSeriesSource>(source_)) return Route::series;
    if (std::holds_alternative<detail::PSeriesSource>(source_)) return Route::p;
    return as_member()->is_u_member() ? Route::phi : Route::p;
  }

  /// Concrete route for a request; throws RouteUnavailable if the
  /// representation cannot serve it.
  Route resolve(Route r) const {
    if (r == Route::automatic) return default_route();
    const bool ok = std::visit(
        [r](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, detail::CatalogSource>) return r != Route::phi;
          else if constexpr (std::is_same_v<S, detail::MemberSource>) return r != Route::phi || s.member.is_u_member();
          else return r == Route::series || r == Route::p;
        },
        source_);
    if (!ok) {
      throw Error(ErrorKind::RouteUnavailable,
                  "route '" + std::string(to_string(r)) + "' not available for " + describe());
    }
    return r;
  }

  /// Radius inside which the route's values are trusted.
  double trusted_radius(Route r) const {
    r = resolve(r);
    if (r == Route::series) return series_trust_radius;
    if (r == Route::p) {
      if (const auto* m = as_member(); m && !m->is_u_member()) return 1.0;
      return series_trust_radius;
    }
    return 1.0;
  }

  /// z f'/f and z f''/f' at z != 0.
  Jet jet(complex z, Route r) const {
    r = resolve(r);
    return std::visit([&](const auto& s) { return jet_impl(s, z, r); }, source_);
  }

  /// z/f at z != 0.
  complex z_over_f(complex z, Route r) const {
    r = resolve(r);
    return std::visit([&](const auto& s) { return z_over_f_impl(s, z, r); }, source_);
  }

  /// D at z != 0 along a concrete route.
  complex D(complex z, Route r) const {
    r = resolve(r);
    if (r == Route::closed) {
      if (const auto* fn = as_catalog()) return fn->closed_D(z);
    }
    if (r == Route::phi) return eval_D_from_phi(as_member()->generator(), z);
    const Jet j = jet(z, r);
    return 2.0 * j.p - j.q;
  }

 private:
  using Source = std::variant<detail::CatalogSource, detail::FSeriesSource, detail::PSeriesSource,
                              detail::MemberSource>;
  explicit AnalyticInput(Source s) : source_(std::move(s)) {}

  static Jet jet_impl(const detail::CatalogSource& s, complex z, Route r) {
    if (r == Route::closed) return detail::jet_from_f(z, s.fn.f(z), s.fn.df(z), s.fn.d2f(z));
    if (r == Route::p) return detail::jet_from_p(z, s.p.eval(z), s.dp.eval(z));
    return detail::jet_from_f(z, s.fn.series().eval(z), s.df.eval(z), s.d2f.eval(z));
  }
  static Jet jet_impl(const detail::FSeriesSource& s, complex z, Route r) {
    if (r == Route::p) return detail::jet_from_p(z, s.p.eval(z), s.dp.eval(z));
    return detail::jet_from_f(z, s.f.eval(z), s.df.eval(z), s.d2f.eval(z));
  }
  static Jet jet_impl(const detail::PSeriesSource& s, complex z, Route r) {
    if (r == Route::p) return detail::jet_from_p(z, s.p.eval(z), s.dp.eval(z));
    return detail::jet_from_f(z, s.f.eval(z), s.df.eval(z), s.d2f.eval(z));
  }
  static Jet jet_impl(const detail::MemberSource& s, complex z, Route r) {
    const FamilyMember& m = s.member;
    if (r == Route::series) {
      return detail::jet_from_f(z, m.f_series().eval(z), s.df.eval(z), s.d2f.eval(z));
    }
    if (!m.is_u_member()) {
      const auto [p, dp] = m.p_closed(z);
      return detail::jet_from_p(z, p, dp);
    }
    if (r == Route::p) return detail::jet_from_p(z, m.p_series().eval(z), s.dp.eval(z));
    // u = z/f, w = 1 + z^2 phi = u - z u'; f' = w/u^2.
    const auto [u, du] = m.u_closed(z);
    const auto [phi, dphi] = m.generator().eval(z);
    const complex w = 1.0 + z * z * phi;
    const complex dw = 2.0 * z * phi + z * z * dphi;
    if (std::abs(u) < singular_eps) throw Error(ErrorKind::DenominatorVanish, "z/f vanishes");
    if (std::abs(w) < singular_eps) throw Error(ErrorKind::CriticalPoint, "f' vanishes");
    return {w / u, z * dw / w - 2.0 * z * du / u};
  }

  static complex checked_z_over_f(complex z, complex f) {
    if (std::abs(f) < singular_eps) throw Error(ErrorKind::ZeroValue, "f vanishes away from 0");
    return z / f;
  }
  static complex z_over_f_impl(const detail::CatalogSource& s, complex z, Route r) {
    return checked_z_over_f(z, r == Route::closed ? s.fn.f(z) : s.fn.series().eval(z));
  }
  static complex z_over_f_impl(const detail::FSeriesSource& s, complex z, Route) {
    return checked_z_over_f(z, s.f.eval(z));
  }
  static complex z_over_f_impl(const detail::PSeriesSource& s, complex z, Route) {
    return checked_z_over_f(z, s.f.eval(z));
  }
  static complex z_over_f_impl(const detail::MemberSource& s, complex z, Route r) {
    const FamilyMember& m = s.member;
    if (r == Route::series || (m.is_u_member() && r == Route::p)) {
      return checked_z_over_f(z, m.f_series().eval(z));
    }
    if (m.is_u_member()) return m.u_closed(z).value;
    // log(f/z) = int_0^z (p(t) - 1)/t dt along the ray.
    auto integrand = [&](double t) {
      const complex zt = t * z;
      return (m.p_closed(zt).value - 1.0) / t;
    };
    double err = 0.0;
    const complex log_f_over_z =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 12, 1e-15, &err);
    return std::exp(-log_f_over_z);
  }

  Source source_;
};

namespace detail {

inline void check_point(const AnalyticInput& f, complex z, Route r) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::OutsideDisk, "|z| must be < 1");
  const Route resolved = f.resolve(r);
  if (f.trusted_radius(resolved) < 1.0 && std::abs(z) > eval_radius_cap) {
    throw Error(ErrorKind::OutsideDisk, "series evaluation is capped at |z| <= 0.999");
  }
}

}  // namespace detail

/// D(f;z); exactly 2 at z = 0.
inline complex eval_D(const AnalyticInput& f, complex z, Route r = Route::automatic) {
  detail::check_point(f, z, r);
  if (z == complex{}) return 2.0;
  return f.D(z, r);
}

/// (z/f)^2 f' - 1; 0 at z = 0.
inline complex u_defect(const AnalyticInput& f, complex z, Route r = Route::automatic) {
  detail::check_point(f, z, r);
  if (z == complex{}) return 0.0;
  r = f.resolve(r);
  if (r == Route::phi) r = Route::closed;
  const complex p = f.jet(z, r).p;
  return f.z_over_f(z, r) * p - 1.0;
}

/// z f'/f; 1 at z = 0.
inline complex starlikeness_functional(const AnalyticInput& f, complex z, Route r = Route::automatic) {
  detail::check_point(f, z, r);
  if (z == complex{}) return 1.0;
  r = f.resolve(r);
  return f.jet(z, r == Route::phi ? Route::closed : r).p;
}

/// 1 + z f''/f'; 1 at z = 0.
inline complex convexity_functional(const AnalyticInput& f, complex z, Route r = Route::automatic) {
  detail::check_point(f, z, r);
  if (z == complex{}) return 1.0;
  r = f.resolve(r);
  return 1.0 + f.jet(z, r == Route::phi ? Route::closed : r).q;
}

/// (1 - alpha) z f'/f + alpha (1 + z f''/f'); at alpha = -1 this is D - 1.
inline complex m_alpha_functional(const AnalyticInput& f, double alpha, complex z,
                                  Route r = Route::automatic) {
  detail::check_point(f, z, r);
  if (z == complex{}) return 1.0;
  r = f.resolve(r);
  const Jet j = f.jet(z, r == Route::phi ? Route::closed : r);
  return (1.0 - alpha) * j.p + alpha * (1.0 + j.q);
}

}  // namespace univalent
