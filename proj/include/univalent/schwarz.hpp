#pragma once

/**
 * @file schwarz.hpp
 * @brief Schwarz functions (analytic self-maps of the disk) and the class
 *        members generated from them.
 *
 * A SchwarzFunction is one of
 *   - a constant c, |c| <= 1,
 *   - a monomial zeta z^m, |zeta| <= 1,
 *   - a finite Blaschke product zeta [z] prod_j (z + a_j)/(1 + conj(a_j) z),
 *     |a_j| < 1, |zeta| <= 1, with an optional leading factor z.
 *
 * Members of S*(alpha) and G are generated from a centered omega through
 * z f'/f = p(omega); members of U from an arbitrary phi through
 * (z/f)^2 f' = 1 + z^2 phi, solved as f = z/u with u - z u' = 1 + z^2 phi.
 */

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "univalent/catalog.hpp"
#include "univalent/error.hpp"
#include "univalent/series.hpp"

namespace univalent {

/// Value and first derivative at one point.
struct ValueDeriv {
  complex value;
  complex deriv;
};

class SchwarzFunction {
 public:
  enum class Kind { constant, monomial, blaschke };

  static SchwarzFunction constant(complex c) {
    if (std::abs(c) > 1.0 + 1e-15) throw Error(ErrorKind::InvalidArgument, "|c| must be <= 1");
    SchwarzFunction s;
    s.kind_ = Kind::constant;
    s.zeta_ = c;
    return s;
  }

  static SchwarzFunction monomial(complex zeta, unsigned m) {
    if (std::abs(zeta) > 1.0 + 1e-15) throw Error(ErrorKind::InvalidArgument, "|zeta| must be <= 1");
    SchwarzFunction s;
    s.kind_ = Kind::monomial;
    s.zeta_ = zeta;
    s.power_ = m;
    return s;
  }

  static SchwarzFunction blaschke(std::vector<complex> zeros, complex zeta, bool premul_z) {
    if (std::abs(zeta) > 1.0 + 1e-15) throw Error(ErrorKind::InvalidArgument, "|zeta| must be <= 1");
    for (auto a : zeros) {
      if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::InvalidArgument, "Blaschke parameters need |a| < 1");
    }
    SchwarzFunction s;
    s.kind_ = Kind::blaschke;
    s.zeta_ = zeta;
    s.params_ = std::move(zeros);
    s.premul_z_ = premul_z;
    return s;
  }

  /// The identity map z.
  static SchwarzFunction identity() { return monomial(1.0, 1); }

  Kind kind() const { return kind_; }
  complex zeta() const { return zeta_; }
  unsigned power() const { return power_; }
  const std::vector<complex>& params() const { return params_; }
  bool premul_z() const { return premul_z_; }

  ValueDeriv eval(complex z) const {
    switch (kind_) {
      case Kind::constant:
        return {zeta_, 0.0};
      case Kind::monomial: {
        if (power_ == 0) return {zeta_, 0.0};
        const complex zm1 = std::pow(z, static_cast<int>(power_ - 1));
        return {zeta_ * zm1 * z, zeta_ * static_cast<double>(power_) * zm1};
      }
      case Kind::blaschke: {
        complex w = premul_z_ ? zeta_ * z : zeta_;
        complex dw = premul_z_ ? zeta_ : complex{};
        for (const complex a : params_) {
          const complex den = 1.0 + std::conj(a) * z;
          const complex b = (z + a) / den;
          const complex db = (1.0 - std::norm(a)) / (den * den);
          dw = dw * b + w * db;
          w *= b;
        }
        return {w, dw};
      }
    }
    return {};
  }

  complex operator()(complex z) const { return eval(z).value; }
  complex derivative(complex z) const { return eval(z).deriv; }

  bool centered(double tol = 1e-14) const { return std::abs(eval(0.0).value) <= tol; }

  TaylorSeries series(std::size_t order) const {
    switch (kind_) {
      case Kind::constant:
        return TaylorSeries::constant(zeta_, order);
      case Kind::monomial: {
        TaylorSeries s(order);
        if (power_ <= order) s[power_] = zeta_;
        return s;
      }
      case Kind::blaschke: {
        TaylorSeries s = premul_z_ ? scale(TaylorSeries::identity(order), zeta_)
                                   : TaylorSeries::constant(zeta_, order);
        for (const complex a : params_) {
          s = mul(s, div(TaylorSeries::from({a, 1.0}, order),
                         TaylorSeries::from({1.0, std::conj(a)}, order)));
        }
        return s;
      }
    }
    return TaylorSeries(order);
  }

  /// Micro-format: const:c | monomial:zeta,m | blaschke:[a1,a2],zeta,premul_z:<bool>.
  std::string spec() const;

 private:
  Kind kind_ = Kind::constant;
  complex zeta_{};
  unsigned power_ = 0;
  std::vector<complex> params_;
  bool premul_z_ = false;
};

// --- micro-format ---------------------------------------------------------

inline std::string format_complex(complex c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
  return os.str();
}

namespace detail {

inline double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "x", "yi", "x+yi", "x-yi" (also with 'j').
inline complex parse_complex(std::string_view s) {
  s = detail::trim(s);
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return {detail::parse_double(s, "complex"), 0.0};
  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return detail::parse_double(t, "imaginary part");
  };
  if (split == std::string_view::npos) return {0.0, imag_of(s)};
  return {detail::parse_double(s.substr(0, split), "real part"), imag_of(s.substr(split))};
}

inline SchwarzFunction parse_schwarz(std::string_view spec) {
  spec = detail::trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, "Schwarz spec needs '<kind>:<params>'");
  }
  const std::string_view kind = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);
  if (kind == "const") return SchwarzFunction::constant(parse_complex(rest));
  if (kind == "monomial") {
    const auto comma = rest.rfind(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::InvalidArgument, "monomial:zeta,m");
    const double m = detail::parse_double(rest.substr(comma + 1), "monomial power");
    if (m < 0 || m != std::floor(m)) throw Error(ErrorKind::InvalidArgument, "monomial power must be a non-negative integer");
    return SchwarzFunction::monomial(parse_complex(rest.substr(0, comma)), static_cast<unsigned>(m));
  }
  if (kind == "blaschke") {
    rest = detail::trim(rest);
    if (rest.empty() || rest.front() != '[') throw Error(ErrorKind::InvalidArgument, "blaschke:[a1,...],zeta,premul_z:<bool>");
    const auto close = rest.find(']');
    if (close == std::string_view::npos) throw Error(ErrorKind::InvalidArgument, "unterminated Blaschke zero list");
    std::vector<complex> zeros;
    std::string_view list = rest.substr(1, close - 1);
    while (!detail::trim(list).empty()) {
      const auto comma = list.find(',');
      zeros.push_back(parse_complex(list.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    std::string_view tail = rest.substr(close + 1);
    complex zeta = 1.0;
    bool premul = false;
    while (!tail.empty()) {
      if (tail.front() == ',') tail.remove_prefix(1);
      const auto comma = tail.find(',');
      const std::string_view item = detail::trim(tail.substr(0, comma));
      if (item.starts_with("premul_z:")) {
        const auto v = item.substr(9);
        if (v == "true") premul = true;
        else if (v == "false") premul = false;
        else throw Error(ErrorKind::InvalidArgument, "premul_z must be true or false");
      } else if (!item.empty()) {
        zeta = parse_complex(item);
      }
      if (comma == std::string_view::npos) break;
      tail.remove_prefix(comma + 1);
    }
    return SchwarzFunction::blaschke(std::move(zeros), zeta, premul);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown Schwarz kind '" + std::string(kind) + "'");
}

inline std::string SchwarzFunction::spec() const {
  switch (kind_) {
    case Kind::constant:
      return "const:" + format_complex(zeta_);
    case Kind::monomial:
      return "monomial:" + format_complex(zeta_) + "," + std::to_string(power_);
    case Kind::blaschke: {
      std::string out = "blaschke:[";
      for (std::size_t j = 0; j < params_.size(); ++j) {
        if (j) out += ",";
        out += format_complex(params_[j]);
      }
      return out + "]," + format_complex(zeta_) + ",premul_z:" + (premul_z_ ? "true" : "false");
    }
  }
  return {};
}

// --- Schwarz-Pick and proof helpers ---------------------------------------

/// (1 - |s(z)|^2)/(1 - |z|^2) - |s'(z)|; nonnegative for every Schwarz function.
inline double schwarz_pick_gap(const SchwarzFunction& s, complex z) {
  const auto [w, dw] = s.eval(z);
  return (1.0 - std::norm(w)) / (1.0 - std::norm(z)) - std::abs(dw);
}

/// (r^2 - |w|^2)/(1 - r^2) - |z w'(z) - w(z)| with r = |z|, for w(0) = 0.
inline double omega_centered_gap(const SchwarzFunction& s, complex z) {
  if (!s.centered()) throw Error(ErrorKind::OmegaNotCentered, "omega(0) must vanish");
  const auto [w, dw] = s.eval(z);
  const double r2 = std::norm(z);
  return (r2 - std::norm(w)) / (1.0 - r2) - std::abs(z * dw - w);
}

/// max over t in [0,r] of (r^2 - t^2)/(1 - t), attained at t* = 1 - sqrt(1 - r^2).
inline double phi_t_max(double r) { return 2.0 * (1.0 - std::sqrt(1.0 - r * r)); }

inline double phi_t_argmax(double r) { return 1.0 - std::sqrt(1.0 - r * r); }

struct ArcsinChain {
  double lhs;
  double rhs;
};

/**
 * arcsin(1 - t^2) + arcsin(t/sqrt2) against arcsin(sqrt(1 - t^2/2)).
 * Each arcsin is evaluated as atan2(sin, cos) with the cosine written out
 * exactly, since asin loses half the digits near 1.
 */
inline ArcsinChain arcsin_chain(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidArgument, "t must lie in [0,1]");
  const double a = std::atan2(1.0 - t * t, t * std::sqrt(2.0 - t * t));
  const double b = std::atan2(t / sqrt2, std::sqrt(1.0 - t * t / 2.0));
  const double c = std::atan2(std::sqrt(1.0 - t * t / 2.0), t / sqrt2);
  return {a + b, c};
}

// --- construction from p ---------------------------------------------------

/// f(z) = z exp( int_0^z (p(t) - 1)/t dt ), the normalized f with z f'/f = p.
inline TaylorSeries f_from_p(const TaylorSeries& p) {
  if (std::abs(p[0] - 1.0) > 1e-12) throw Error(ErrorKind::NonUnitP, "p(0) must equal 1");
  TaylorSeries p_minus_1 = p;
  p_minus_1[0] = 0.0;
  const TaylorSeries log_f_over_z = integrate0(shift_down(p_minus_1));
  return shift_up(exp_series(log_f_over_z));
}

/// z f'/f as a series; f must be normalized (f_0 = 0, f_1 = 1).
inline TaylorSeries p_from_f(const TaylorSeries& f) {
  const TaylorSeries f_over_z = shift_down(f);
  return div(derivative(f), f_over_z);
}

// --- class members ----------------------------------------------------------

/**
 * A member of S*(alpha), G or U generated from a Schwarz function.
 *
 * For omega-generated members p = z f'/f is a Moebius image of omega:
 *   S*(alpha): (1 + (1 - 2 alpha) omega)/(1 - omega)
 *   G:         (1 - omega)/(1 - omega/2)
 * For U-members u = z/f = 1 + u1 z - z Phi(z), Phi(z) = int_0^z phi.
 * The z^1 coefficient u1 is free; D does not depend on it.
 */
class FamilyMember {
 public:
  enum class Representation { omega, phi };

  const ClassLabel& class_label() const { return label_; }
  const SchwarzFunction& generator() const { return generator_; }
  complex u1() const { return u1_; }
  const TaylorSeries& p_series() const { return p_series_; }
  const TaylorSeries& f_series() const { return f_series_; }
  Representation representation() const { return rep_; }
  bool is_u_member() const { return rep_ == Representation::phi; }

  /// p = z f'/f and p' in closed form (omega members only).
  ValueDeriv p_closed(complex z) const {
    const auto [w, dw] = generator_.eval(z);
    if (label_.tag == ClassLabel::Tag::G) {
      const complex den = 1.0 - 0.5 * w;
      return {(1.0 - w) / den, -0.5 * dw / (den * den)};
    }
    const double beta = 1.0 - 2.0 * label_.alpha;
    const complex den = 1.0 - w;
    return {(1.0 + beta * w) / den, (1.0 + beta) * dw / (den * den)};
  }

  /// Phi(z) = int_0^z phi(t) dt, by adaptive Gauss-Kronrod along the ray.
  complex phi_integral(complex z) const {
    if (z == complex{}) return 0.0;
    auto integrand = [&](double s) { return z * generator_(s * z); };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 12,
                                                                          1e-15, &err);
  }

  /// u = z/f and u' in closed form (U-members only).
  ValueDeriv u_closed(complex z) const {
    const complex big_phi = phi_integral(z);
    return {1.0 + u1_ * z - z * big_phi, u1_ - big_phi - z * generator_(z)};
  }

 private:
  FamilyMember() = default;
  friend FamilyMember make_member(const ClassLabel&, const SchwarzFunction&, std::size_t);
  friend FamilyMember make_u_member(const SchwarzFunction&, complex, std::size_t);

  ClassLabel label_;
  SchwarzFunction generator_;
  complex u1_{};
  Representation rep_ = Representation::omega;
  TaylorSeries p_series_;
  TaylorSeries f_series_;
};

/// Member of S_star, S_star_order(alpha) or G induced by a centered omega.
inline FamilyMember make_member(const ClassLabel& label, const SchwarzFunction& omega,
                                std::size_t order = default_order) {
  using T = ClassLabel::Tag;
  if (label.tag != T::S_star && label.tag != T::S_star_order && label.tag != T::G) {
    throw Error(ErrorKind::UnsupportedLabel, "no omega representation for " + to_string(label));
  }
  if (!omega.centered()) throw Error(ErrorKind::OmegaNotCentered, "omega(0) must vanish");
  FamilyMember m;
  m.label_ = label;
  m.generator_ = omega;
  m.rep_ = FamilyMember::Representation::omega;

  const TaylorSeries w = omega.series(order);
  const TaylorSeries one = TaylorSeries::constant(1.0, order);
  if (label.tag == T::G) {
    m.p_series_ = div(sub(one, w), sub(one, scale(w, 0.5)));
  } else {
    const double beta = 1.0 - 2.0 * label.alpha;
    m.p_series_ = div(add(one, scale(w, beta)), sub(one, w));
  }
  m.f_series_ = f_from_p(m.p_series_);
  return m;
}

/// Default grid used to reject U-members whose u = z/f vanishes.
inline std::vector<double> default_grid_radii() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
}
inline constexpr std::size_t default_grid_angles = 512;

/// Member of U with (z/f)^2 f' = 1 + z^2 phi and u = z/f having u'(0) = u1.
inline FamilyMember make_u_member(const SchwarzFunction& phi, complex u1,
                                  std::size_t order = default_order) {
  FamilyMember m;
  m.label_ = ClassLabel::U();
  m.generator_ = phi;
  m.u1_ = u1;
  m.rep_ = FamilyMember::Representation::phi;

  // u - z u' = 1 + z^2 phi  =>  u_k = -phi_{k-2}/(k-1) for k >= 2.
  const TaylorSeries phi_series = phi.series(order);
  TaylorSeries u(order);
  u[0] = 1.0;
  if (order >= 1) u[1] = u1;
  for (std::size_t k = 2; k <= order; ++k) u[k] = -phi_series[k - 2] / static_cast<double>(k - 1);

  for (const double r : default_grid_radii()) {
    for (std::size_t j = 0; j < default_grid_angles; ++j) {
      const complex z = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                          static_cast<double>(default_grid_angles));
      if (std::abs(m.u_closed(z).value) < 1e-9) {
        throw Error(ErrorKind::UVanishes, "z/f vanishes near z = " + format_complex(z));
      }
    }
  }
  m.f_series_ = shift_up(div(TaylorSeries::constant(1.0, order), u));
  m.p_series_ = p_from_f(m.f_series_);
  return m;
}

// --- seeded sampling ---------------------------------------------------------

/// Independent stream seed for member `index` of a suite seeded with `suite`.
inline std::uint64_t derive_seed(std::uint64_t suite, std::uint64_t index) {
  std::uint64_t x = suite + 0x9E3779B97F4A7C15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct BlaschkeSampling {
  double max_modulus = 0.8;
  unsigned max_degree = 2;
};

/// Uniform point in the closed disk of radius `radius`.
template <class Rng>
complex sample_disk(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rho = radius * std::sqrt(u(rng));
  return std::polar(rho, 2.0 * std::numbers::pi * u(rng));
}

/// Random Blaschke product. `centered` forces the leading z factor; otherwise
/// it is included with probability 1/2.
template <class Rng>
SchwarzFunction sample_blaschke(Rng& rng, bool centered, BlaschkeSampling cfg = {}) {
  std::uniform_int_distribution<unsigned> degree(0, cfg.max_degree);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const unsigned d = degree(rng);
  std::vector<complex> zeros;
  zeros.reserve(d);
  for (unsigned j = 0; j < d; ++j) zeros.push_back(sample_disk(rng, cfg.max_modulus));
  const complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * u(rng));
  const bool premul = centered || u(rng) < 0.5;
  return SchwarzFunction::blaschke(std::move(zeros), zeta, premul);
}

}  // namespace univalent
