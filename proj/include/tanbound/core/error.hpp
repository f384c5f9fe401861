#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tanbound {

enum class ErrorKind {
  DivisionByZero,
  DivisorContainsZero,
  EnclosureBlowup,
  PowerWindowOverflow,
  ReductionFailure,
  PoleProximity,
  ContainsZero,
  OutsideValidity,
  Parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DivisorContainsZero: return "DivisorContainsZero";
    case ErrorKind::EnclosureBlowup: return "EnclosureBlowup";
    case ErrorKind::PowerWindowOverflow: return "PowerWindowOverflow";
    case ErrorKind::ReductionFailure: return "ReductionFailure";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::ContainsZero: return "ContainsZero";
    case ErrorKind::OutsideValidity: return "OutsideValidity";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this one exception type;
/// callers dispatch on kind() rather than on a class hierarchy.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tanbound
