#pragma once

/**
 * @file catalog.hpp
 * @brief Named test functions with closed-form evaluators.
 *
 *   k(z)  = z / (1-z)^2          Koebe function
 *   f1(z) = z / (1-z^2)
 *   f2(z) = -log(1-z)            principal branch
 *   f3(z) = z (1 - z/sqrt2) / (1-z^2)
 *
 * Each entry carries f, f', f'' and D(f;z) in closed form, its Taylor series
 * and a list of stored class-membership facts. A rotation f_t(z) =
 * e^{-it} f(e^{it} z) keeps every class used here, so rotations are catalog
 * entries as well ("k@0.5" is k rotated by 0.5 rad).
 */

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "univalent/error.hpp"
#include "univalent/series.hpp"

namespace univalent {

inline constexpr double sqrt2 = std::numbers::sqrt2;

struct ClassLabel {
  enum class Tag { S, S_star, S_star_order, K, U, G, M_alpha };

  Tag tag = Tag::S;
  /// Order for S_star_order (in [0,1)), parameter for M_alpha (any real).
  double alpha = 0.0;

  static ClassLabel S() { return {Tag::S, 0.0}; }
  static ClassLabel S_star() { return {Tag::S_star, 0.0}; }
  static ClassLabel S_star_order(double a) {
    if (!(a >= 0.0 && a < 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "starlikeness order must lie in [0,1)");
    }
    return {Tag::S_star_order, a};
  }
  static ClassLabel K() { return {Tag::K, 0.0}; }
  static ClassLabel U() { return {Tag::U, 0.0}; }
  static ClassLabel G() { return {Tag::G, 0.0}; }
  static ClassLabel M_alpha(double a) { return {Tag::M_alpha, a}; }

  bool operator==(const ClassLabel&) const = default;
};

inline std::string to_string(const ClassLabel& label) {
  using T = ClassLabel::Tag;
  switch (label.tag) {
    case T::S: return "S";
    case T::S_star: return "S_star";
    case T::S_star_order: return "S_star_order(" + std::to_string(label.alpha) + ")";
    case T::K: return "K";
    case T::U: return "U";
    case T::G: return "G";
    case T::M_alpha: return "M_alpha(" + std::to_string(label.alpha) + ")";
  }
  return "?";
}

/// Parses S, S_star, S_star_order, K, U, G, M_alpha; alpha is used by the
/// parametrized labels.
inline ClassLabel parse_class_label(std::string_view tag, double alpha = 0.0) {
  if (tag == "S") return ClassLabel::S();
  if (tag == "S_star") return ClassLabel::S_star();
  if (tag == "S_star_order") return ClassLabel::S_star_order(alpha);
  if (tag == "K") return ClassLabel::K();
  if (tag == "U") return ClassLabel::U();
  if (tag == "G") return ClassLabel::G();
  if (tag == "M_alpha") return ClassLabel::M_alpha(alpha);
  throw Error(ErrorKind::InvalidArgument, "unknown class label '" + std::string(tag) + "'");
}

enum class MembershipStatus { member, non_member, unknown };

constexpr std::string_view to_string(MembershipStatus s) {
  switch (s) {
    case MembershipStatus::member: return "member";
    case MembershipStatus::non_member: return "non-member";
    case MembershipStatus::unknown: return "unknown";
  }
  return "unknown";
}

struct Membership {
  ClassLabel label;
  MembershipStatus status;
  std::string provenance;
};

namespace detail {

using ComplexFn = complex (*)(complex);

// k(z) = z/(1-z)^2
inline complex k_f(complex z) { return z / ((1.0 - z) * (1.0 - z)); }
inline complex k_df(complex z) { return (1.0 + z) / std::pow(1.0 - z, 3); }
inline complex k_d2f(complex z) { return (4.0 + 2.0 * z) / std::pow(1.0 - z, 4); }
inline complex k_D(complex z) { return 1.0 + (1.0 + z * z) / (1.0 - z * z); }

// f1(z) = z/(1-z^2)
inline complex f1_f(complex z) { return z / (1.0 - z * z); }
inline complex f1_df(complex z) { return (1.0 + z * z) / std::pow(1.0 - z * z, 2); }
inline complex f1_d2f(complex z) { return 2.0 * z * (3.0 + z * z) / std::pow(1.0 - z * z, 3); }
inline complex f1_D(complex z) { return 1.0 + (1.0 - z * z) / (1.0 + z * z); }

// f2(z) = -log(1-z)
inline complex f2_f(complex z) { return -std::log(1.0 - z); }
inline complex f2_df(complex z) { return 1.0 / (1.0 - z); }
inline complex f2_d2f(complex z) { return 1.0 / ((1.0 - z) * (1.0 - z)); }

/// Taylor series of D(f2;z) around 0, used where log(1-z) ~ -z loses digits.
inline const TaylorSeries& f2_D_series() {
  static const TaylorSeries series = [] {
    constexpr std::size_t n = 24;
    const TaylorSeries f_over_z = shift_down(log1m(n + 1)).resized(n);
    TaylorSeries geometric(n);
    for (std::size_t k = 0; k <= n; ++k) geometric[k] = 1.0;
    const TaylorSeries p = div(geometric, f_over_z);  // z f'/f
    const TaylorSeries zdp = shift_up(derivative(p));
    return add(add(p, TaylorSeries::constant(1.0, n)), neg(div(zdp, p)));
  }();
  return series;
}

inline complex f2_D(complex z) {
  if (std::abs(z) < 1e-3) return f2_D_series().eval(z);
  const complex log1z = std::log(1.0 - z);
  return -z * (2.0 + log1z) / ((1.0 - z) * log1z);
}

// f3(z) = z(1 - z/sqrt2)/(1-z^2)
inline complex f3_f(complex z) { return z * (1.0 - z / sqrt2) / (1.0 - z * z); }
inline complex f3_df(complex z) { return (1.0 - sqrt2 * z + z * z) / std::pow(1.0 - z * z, 2); }
inline complex f3_d2f(complex z) {
  return (2.0 * z * z * z - 3.0 * sqrt2 * z * z + 6.0 * z - sqrt2) / std::pow(1.0 - z * z, 3);
}

}  // namespace detail

/// Numerator of D(f3;z) = g(z)/h(z).
inline complex f3_g(complex z) { return -sqrt2 * z * z * z + 3.0 * z * z - 3.0 * sqrt2 * z + 2.0; }
/// Denominator of D(f3;z). Zero-free on the open disk: 1 - sqrt2 z + z^2
/// vanishes at e^{+-i pi/4} and 1 - z/sqrt2 at sqrt2.
inline complex f3_h(complex z) { return (1.0 - z / sqrt2) * (1.0 - sqrt2 * z + z * z); }
inline double f3_g_prime(double r) { return -3.0 * (sqrt2 * r * r - 2.0 * r + sqrt2); }

namespace detail {
inline complex f3_D(complex z) { return f3_g(z) / f3_h(z); }

struct CatalogEntry {
  std::string_view name;
  std::string_view formula_f;
  std::string_view formula_D;
  ComplexFn f, df, d2f, D;
  /// n-th Taylor coefficient for n >= 1.
  double (*coeff)(std::size_t);
};

inline const std::array<CatalogEntry, 4>& catalog_entries() {
  static const std::array<CatalogEntry, 4> entries{{
      {"k", "z/(1-z)^2", "1 + (1+z^2)/(1-z^2)", k_f, k_df, k_d2f, k_D,
       [](std::size_t n) { return static_cast<double>(n); }},
      {"f1", "z/(1-z^2)", "1 + (1-z^2)/(1+z^2)", f1_f, f1_df, f1_d2f, f1_D,
       [](std::size_t n) { return n % 2 == 1 ? 1.0 : 0.0; }},
      {"f2", "-log(1-z)", "-z(2+log(1-z)) / ((1-z) log(1-z))", f2_f, f2_df, f2_d2f, f2_D,
       [](std::size_t n) { return 1.0 / static_cast<double>(n); }},
      {"f3", "z(1-z/sqrt2)/(1-z^2)",
       "(-sqrt2 z^3 + 3z^2 - 3sqrt2 z + 2) / ((1-z/sqrt2)(1-sqrt2 z+z^2))", f3_f, f3_df, f3_d2f,
       f3_D, [](std::size_t n) { return n % 2 == 1 ? 1.0 : -1.0 / sqrt2; }},
  }};
  return entries;
}

inline std::vector<Membership> stored_memberships(std::string_view name) {
  using L = ClassLabel;
  using M = MembershipStatus;
  if (name == "k") {
    return {{L::S(), M::member, "starlike, hence univalent"},
            {L::S_star(), M::member, "z k'/k = (1+z)/(1-z) has positive real part"},
            {L::U(), M::member, "u-defect equals -z^2"}};
  }
  if (name == "f1") {
    return {{L::S(), M::member, "starlike, hence univalent"},
            {L::S_star(), M::member, "z f1'/f1 = (1+z^2)/(1-z^2) has positive real part"},
            {L::U(), M::member, "u-defect equals z^2"}};
  }
  if (name == "f2") {
    return {{L::S(), M::member, "convex, hence univalent"},
            {L::K(), M::member, "1 + z f2''/f2' = 1/(1-z) has positive real part"},
            {L::U(), M::non_member, "(z/f2)^2 f2' - 1 is unbounded as z -> 1"}};
  }
  if (name == "f3") {
    return {{L::S(), M::member,
             "close-to-convex and univalent (Ponnusamy and Obradovic, 2005)"},
            {L::U(), M::non_member,
             "u-defect z^2 / (2 (1-z/sqrt2)^2) exceeds 1 for real z > 1/sqrt2"}};
  }
  return {};
}

}  // namespace detail

/**
 * A catalog function, possibly rotated by angle theta. Evaluators are cheap
 * function pointers; the Taylor series is materialized at construction.
 */
class CatalogFunction {
 public:
  CatalogFunction(const detail::CatalogEntry& entry, double theta, std::size_t order)
      : entry_(&entry), theta_(theta), rot_(std::polar(1.0, theta)), series_(order) {
    for (std::size_t n = 1; n <= order; ++n) {
      series_[n] = entry.coeff(n) * std::polar(1.0, static_cast<double>(n - 1) * theta);
    }
    memberships_ = detail::stored_memberships(entry.name);
  }

  /// "k", or "k@<theta>" when rotated.
  std::string name() const {
    if (theta_ == 0.0) return std::string(entry_->name);
    std::array<char, 32> buf{};
    const auto end = std::to_chars(buf.data(), buf.data() + buf.size(), theta_).ptr;
    return std::string(entry_->name) + "@" + std::string(buf.data(), end);
  }
  std::string_view base_name() const { return entry_->name; }
  double theta() const { return theta_; }
  std::string_view formula_f() const { return entry_->formula_f; }
  std::string_view formula_D() const { return entry_->formula_D; }

  complex f(complex z) const { return entry_->f(rot_ * z) / rot_; }
  complex df(complex z) const { return entry_->df(rot_ * z); }
  complex d2f(complex z) const { return rot_ * entry_->d2f(rot_ * z); }

  /// D(f;z) from the displayed closed form; exactly 2 at z = 0.
  complex closed_D(complex z) const {
    if (z == complex{}) return 2.0;
    return entry_->D(rot_ * z);
  }

  const TaylorSeries& series() const { return series_; }
  std::size_t order() const { return series_.order(); }
  const std::vector<Membership>& memberships() const { return memberships_; }

  std::optional<MembershipStatus> membership(const ClassLabel& label) const {
    for (const auto& m : memberships_) {
      if (m.label == label) return m.status;
    }
    return std::nullopt;
  }

  const detail::CatalogEntry& entry() const { return *entry_; }

 private:
  const detail::CatalogEntry* entry_;
  double theta_;
  complex rot_;
  TaylorSeries series_;
  std::vector<Membership> memberships_;
};

inline std::vector<std::string> catalog_names() { return {"k", "f1", "f2", "f3"}; }

/// Looks up "k", "f1", "f2", "f3", optionally suffixed "@theta" for a rotation.
inline CatalogFunction get(std::string_view name, std::size_t order = default_order) {
  double theta = 0.0;
  if (const auto at = name.find('@'); at != std::string_view::npos) {
    const std::string_view angle = name.substr(at + 1);
    const auto [ptr, ec] = std::from_chars(angle.data(), angle.data() + angle.size(), theta);
    if (ec != std::errc{} || ptr != angle.data() + angle.size()) {
      throw Error(ErrorKind::UnknownFunction, "bad rotation angle in '" + std::string(name) + "'");
    }
    name = name.substr(0, at);
  }
  for (const auto& entry : detail::catalog_entries()) {
    if (entry.name == name) return CatalogFunction(entry, theta, order);
  }
  throw Error(ErrorKind::UnknownFunction, "no catalog function named '" + std::string(name) + "'");
}

inline complex closed_D(std::string_view name, complex z) { return get(name, 1).closed_D(z); }

/// f_theta(z) = e^{-i theta} f(e^{i theta} z); rotations compose additively.
inline CatalogFunction rotate(const CatalogFunction& fn, double theta) {
  return CatalogFunction(fn.entry(), fn.theta() + theta, fn.order());
}

}  // namespace univalent
