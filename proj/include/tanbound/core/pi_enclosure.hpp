#pragma once

#include "tanbound/core/interval.hpp"

namespace tanbound {

/// Certified enclosure of pi. Every numeric appearance of pi in the
/// certified paths goes through one of these.
class PiEnclosure {
 public:
  /// The two binary64 neighbours of pi (53 bits, width one ulp).
  static const PiEnclosure& standard();
  /// Endpoints rounded outward to `bits` significant bits, 2 <= bits <= 53.
  static PiEnclosure with_precision(int bits);

  /// The 30-digit decimal literal the standard enclosure is built from.
  static constexpr const char* kLiteral = "3.14159265358979323846264338328";

  const Interval& value() const { return value_; }
  int precision_bits() const { return precision_bits_; }

  /// pi^k for any integer k; negative powers divide.
  Interval power(int k) const;
  Interval half() const;

 private:
  PiEnclosure(Interval value, int bits) : value_(value), precision_bits_(bits) {}

  Interval value_;
  int precision_bits_;
};

}  // namespace tanbound
