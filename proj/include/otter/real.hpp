#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <iosfwd>
#include <string>

#include "otter/bigint.hpp"

namespace otter {

using Float = boost::multiprecision::mpfr_float;

/// Sets the default MPFR precision (in decimal digits) for this thread and
/// restores the previous one on destruction. Every Float created inside the
/// scope carries that precision.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned digits10);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

/// Working precision used for a request of `digits` output digits.
inline unsigned working_digits(unsigned digits) { return digits + 12; }

Float to_float(const BigInt& z);
Float to_float(const Rational& q);

/// Unit roundoff of the current default precision, 2^(1-bits).
Float unit_roundoff();

/// A real number known to lie in [value - radius, value + radius].
///
/// Every operation adds the rounding error of its result and inflates the
/// propagated radius slightly, so the enclosure stays valid under MPFR's
/// round-to-nearest.
class RealValue {
 public:
  RealValue();
  RealValue(Float value, Float radius);  // NOLINT(google-explicit-constructor)
  explicit RealValue(const Float& value);
  explicit RealValue(long v);

  static RealValue from_bounds(const Float& lo, const Float& hi);
  static RealValue from_integer(const BigInt& z);
  static RealValue from_rational(const Rational& q);
  /// Parses a decimal literal; radius covers the conversion error.
  static RealValue from_string(const std::string& text);

  const Float& value() const { return value_; }
  const Float& radius() const { return radius_; }
  Float lower() const { return value_ - radius_; }
  Float upper() const { return value_ + radius_; }
  double to_double() const { return value_.convert_to<double>(); }
  double radius_double() const { return radius_.convert_to<double>(); }

  bool contains(const Float& x) const;
  bool overlaps(const RealValue& other) const;
  bool is_positive() const { return lower() > 0; }
  bool is_negative() const { return upper() < 0; }

  /// Widens the enclosure by `e` (e >= 0).
  RealValue& widen(const Float& e);
  /// Adds an unknown nonnegative amount at most `tail` (e.g. a truncated series tail).
  RealValue& add_tail(const Float& tail);

  RealValue& operator+=(const RealValue& o);
  RealValue& operator-=(const RealValue& o);
  RealValue& operator*=(const RealValue& o);
  RealValue& operator/=(const RealValue& o);

  friend RealValue operator+(RealValue a, const RealValue& b) { return a += b; }
  friend RealValue operator-(RealValue a, const RealValue& b) { return a -= b; }
  friend RealValue operator*(RealValue a, const RealValue& b) { return a *= b; }
  friend RealValue operator/(RealValue a, const RealValue& b) { return a /= b; }
  friend RealValue operator-(RealValue a) {
    a.value_ = -a.value_;
    return a;
  }

  /// "value ± radius" with `digits` significant digits.
  std::string to_string(int digits = 20) const;

 private:
  Float value_;
  Float radius_;
};

RealValue operator*(const RealValue& a, long k);
RealValue operator/(const RealValue& a, long k);
RealValue exp(const RealValue& x);
RealValue expm1(const RealValue& x);
/// Natural log; throws PreconditionError unless x is certainly positive.
RealValue log(const RealValue& x);
/// log(1 + x) for x certainly > -1.
RealValue log1p(const RealValue& x);
RealValue sqrt(const RealValue& x);
RealValue abs(const RealValue& x);
/// x^p for x certainly positive.
RealValue pow(const RealValue& x, const Float& p);
RealValue pow(const RealValue& x, unsigned long k);

std::ostream& operator<<(std::ostream& os, const RealValue& x);

}  // namespace otter
