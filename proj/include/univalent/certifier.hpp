#pragma once

/**
 * @file certifier.hpp
 * @brief Grid-based class membership checks and the univalent-class bounds.
 *
 * A grid-pass means the defining strict inequality held at every grid point;
 * it is a necessary-condition check at finite resolution, not a proof.
 * Grid order is ascending radius, then ascending angle index; the first
 * violating point is reported as the witness.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "univalent/catalog.hpp"
#include "univalent/error.hpp"
#include "univalent/operator_d.hpp"
#include "univalent/schwarz.hpp"

namespace univalent {

struct GridSpec {
  std::vector<double> radii = default_grid_radii();
  std::size_t angles_per_circle = default_grid_angles;
  double max_radius = 0.99;

  void validate() const {
    if (radii.empty()) throw Error(ErrorKind::InvalidArgument, "grid needs at least one radius");
    if (!(max_radius > 0.0 && max_radius <= 0.999)) {
      throw Error(ErrorKind::InvalidArgument, "max_radius must lie in (0, 0.999]");
    }
    if (angles_per_circle < 64) throw Error(ErrorKind::InvalidArgument, "need at least 64 angles per circle");
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] > 0.0 && radii[i] <= max_radius)) {
        throw Error(ErrorKind::InvalidArgument, "grid radii must lie in (0, max_radius]");
      }
      if (i > 0 && !(radii[i] > radii[i - 1])) {
        throw Error(ErrorKind::InvalidArgument, "grid radii must be strictly ascending");
      }
    }
  }

  /// Default radii with the last circle moved out to `max_r`.
  static GridSpec with_max_radius(double max_r) {
    GridSpec g;
    g.max_radius = max_r;
    g.radii.back() = max_r;
    return g;
  }
};

enum class VerdictStatus { grid_pass, violated };

constexpr std::string_view to_string(VerdictStatus s) {
  return s == VerdictStatus::grid_pass ? "grid-pass" : "violated";
}

struct Witness {
  complex z;
  /// Value of the class functional at z (complex; see functional_name).
  complex value;
};

struct MembershipVerdict {
  ClassLabel label;
  VerdictStatus status = VerdictStatus::grid_pass;
  std::optional<Witness> witness;
  GridSpec grid;
  /// Largest radius actually checked (series inputs stop at the trust radius).
  double checked_max_radius = 0.0;
  bool grid_limited = false;
  Route route = Route::automatic;
};

namespace detail {

/// Functional value at z and whether the class inequality holds there.
inline std::pair<complex, bool> class_test(const AnalyticInput& f, const ClassLabel& label, complex z,
                                           Route r) {
  using T = ClassLabel::Tag;
  switch (label.tag) {
    case T::S_star: {
      const complex v = starlikeness_functional(f, z, r);
      return {v, v.real() > 0.0};
    }
    case T::S_star_order: {
      const complex v = starlikeness_functional(f, z, r);
      return {v, v.real() > label.alpha};
    }
    case T::K: {
      const complex v = convexity_functional(f, z, r);
      return {v, v.real() > 0.0};
    }
    case T::G: {
      const complex v = convexity_functional(f, z, r);
      return {v, v.real() < 1.5};
    }
    case T::U: {
      const complex v = u_defect(f, z, r);
      return {v, std::abs(v) < 1.0};
    }
    case T::M_alpha: {
      const complex v = m_alpha_functional(f, label.alpha, z, r);
      return {v, v.real() > 0.0};
    }
    case T::S:
      break;
  }
  throw Error(ErrorKind::UncertifiableClass, "univalence cannot be certified on a grid");
}

}  // namespace detail

inline MembershipVerdict certify(const AnalyticInput& f, const ClassLabel& label, const GridSpec& grid = {},
                                 Route route = Route::automatic) {
  if (label.tag == ClassLabel::Tag::S) {
    throw Error(ErrorKind::UncertifiableClass, "univalence cannot be certified on a grid");
  }
  grid.validate();
  MembershipVerdict v;
  v.label = label;
  v.grid = grid;
  v.route = f.resolve(route);
  const double trust = f.trusted_radius(v.route);
  for (const double r : grid.radii) {
    if (r > trust) {
      v.grid_limited = true;
      break;
    }
    v.checked_max_radius = r;
    for (std::size_t j = 0; j < grid.angles_per_circle; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(grid.angles_per_circle);
      const complex z = std::polar(r, theta);
      const auto [value, holds] = detail::class_test(f, label, z, v.route);
      if (!holds) {
        v.status = VerdictStatus::violated;
        v.witness = Witness{z, value};
        return v;
      }
    }
  }
  return v;
}

struct BoundCheck {
  bool holds;
  double margin;
};

/// Rounding allowance for the equality cases of the bounds (Koebe on the real axis).
inline constexpr double bound_slack = 1e-12;

/// |log(z f'/f)| - log((1+r)/(1-r)), r = |z|; holds when <= 0 up to rounding.
inline BoundCheck check_growth_bound(const AnalyticInput& f, complex z) {
  if (z == complex{}) return {true, 0.0};
  const double r = std::abs(z);
  const double margin = std::abs(std::log(starlikeness_functional(f, z))) - std::log((1.0 + r) / (1.0 - r));
  return {margin <= bound_slack, margin};
}

/// |z f''/f' - 2r^2/(1-r^2)| - 4r/(1-r^2), r = |z|.
inline BoundCheck check_distortion_bound(const AnalyticInput& f, complex z) {
  const double r = std::abs(z);
  const complex q = convexity_functional(f, z) - 1.0;
  const double margin = std::abs(q - 2.0 * r * r / (1.0 - r * r)) - 4.0 * r / (1.0 - r * r);
  return {margin <= bound_slack, margin};
}

/// tanh(1/2) = (e-1)/(e+1): the largest r with log((1+r)/(1-r)) <= 1.
inline const double tanh_half = std::tanh(0.5);

/// (1-r)/(1+r), the lower bound for Re z f'/f over S, valid for r <= tanh(1/2).
inline double real_part_floor_S(double r) {
  if (r < 0.0 || r > tanh_half + 1e-12) {
    throw Error(ErrorKind::RadiusOutOfRange, "r must lie in [0, tanh(1/2)]");
  }
  return (1.0 - r) / (1.0 + r);
}

}  // namespace univalent
