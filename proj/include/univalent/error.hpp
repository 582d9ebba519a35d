#pragma once

/**
 * @file error.hpp
 * @brief Error kinds raised by the univalent toolkit.
 *
 * Every failure is reported as a univalent::Error carrying a machine-readable
 * ErrorKind; the CLI maps it onto exit code 2 and a JSON error object.
 */

#include <stdexcept>
#include <string>
#include <string_view>

namespace univalent {

enum class ErrorKind {
  DivisionByNonUnit,
  NonzeroConstantTerm,
  UnknownFunction,
  CriticalPoint,
  ZeroValue,
  ZeroP,
  DenominatorVanish,
  UncertifiableClass,
  RadiusOutOfRange,
  OmegaNotCentered,
  NonUnitP,
  UnsupportedLabel,
  UVanishes,
  RouteUnavailable,
  UntrustedRadius,
  OutsideDisk,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByNonUnit: return "DivisionByNonUnit";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::CriticalPoint: return "CriticalPoint";
    case ErrorKind::ZeroValue: return "ZeroValue";
    case ErrorKind::ZeroP: return "ZeroP";
    case ErrorKind::DenominatorVanish: return "DenominatorVanish";
    case ErrorKind::UncertifiableClass: return "UncertifiableClass";
    case ErrorKind::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorKind::OmegaNotCentered: return "OmegaNotCentered";
    case ErrorKind::NonUnitP: return "NonUnitP";
    case ErrorKind::UnsupportedLabel: return "UnsupportedLabel";
    case ErrorKind::UVanishes: return "UVanishes";
    case ErrorKind::RouteUnavailable: return "RouteUnavailable";
    case ErrorKind::UntrustedRadius: return "UntrustedRadius";
    case ErrorKind::OutsideDisk: return "OutsideDisk";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace univalent
