#include "otter/real.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "otter/error.hpp"

namespace otter {

namespace {

mpfr_prec_t bits_of(const Float& x) { return mpfr_get_prec(x.backend().data()); }

// |x| * 2^(1 - prec): bound on the round-to-nearest error of a result x.
Float ulp_of(const Float& x) {
  Float e = abs(x);
  mpfr_mul_2si(e.backend().data(), e.backend().data(), 1 - static_cast<long>(bits_of(x)), MPFR_RNDU);
  return e;
}

// Radius computations are themselves rounded; scale up by 1 + 2^(4 - prec).
void inflate(Float& r) {
  if (r == 0) return;
  Float bump = r;
  mpfr_mul_2si(bump.backend().data(), bump.backend().data(), 4 - static_cast<long>(bits_of(r)), MPFR_RNDU);
  r += bump;
}

}  // namespace

ScopedPrecision::ScopedPrecision(unsigned digits10) : saved_(Float::default_precision()) {
  Float::default_precision(digits10);
}

ScopedPrecision::~ScopedPrecision() { Float::default_precision(saved_); }

Float to_float(const BigInt& z) {
  Float f;
  mpfr_set_z(f.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return f;
}

Float to_float(const Rational& q) {
  Float f;
  mpfr_set_q(f.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return f;
}

Float unit_roundoff() {
  Float one(1);
  return ulp_of(one);
}

RealValue::RealValue() : value_(0), radius_(0) {}

RealValue::RealValue(Float value, Float radius) : value_(std::move(value)), radius_(std::move(radius)) {
  if (radius_ < 0) throw PreconditionError("negative radius");
}

RealValue::RealValue(const Float& value) : value_(value), radius_(0) {}

RealValue::RealValue(long v) : value_(v), radius_(0) {}

RealValue RealValue::from_bounds(const Float& lo, const Float& hi) {
  if (hi < lo) throw PreconditionError("from_bounds: hi < lo");
  Float mid = (lo + hi) / 2;
  Float r = (hi - lo) / 2;
  r += ulp_of(mid);
  inflate(r);
  return RealValue(std::move(mid), std::move(r));
}

RealValue RealValue::from_integer(const BigInt& z) {
  Float f;
  int ternary = mpfr_set_z(f.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  Float r = ternary == 0 ? Float(0) : ulp_of(f);
  return RealValue(std::move(f), std::move(r));
}

RealValue RealValue::from_rational(const Rational& q) {
  Float f;
  int ternary = mpfr_set_q(f.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  Float r = ternary == 0 ? Float(0) : ulp_of(f);
  return RealValue(std::move(f), std::move(r));
}

RealValue RealValue::from_string(const std::string& text) {
  Float f;
  if (mpfr_set_str(f.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0)
    throw PreconditionError("not a decimal number: '" + text + "'");
  return RealValue(f, ulp_of(f));
}

bool RealValue::contains(const Float& x) const { return abs(x - value_) <= radius_; }

bool RealValue::overlaps(const RealValue& other) const {
  return abs(value_ - other.value_) <= radius_ + other.radius_;
}

RealValue& RealValue::widen(const Float& e) {
  radius_ += abs(e);
  inflate(radius_);
  return *this;
}

RealValue& RealValue::add_tail(const Float& tail) {
  Float half = abs(tail) / 2;
  value_ += half;
  radius_ += half + ulp_of(value_);
  inflate(radius_);
  return *this;
}

RealValue& RealValue::operator+=(const RealValue& o) {
  value_ += o.value_;
  radius_ += o.radius_;
  radius_ += ulp_of(value_);
  inflate(radius_);
  return *this;
}

RealValue& RealValue::operator-=(const RealValue& o) {
  value_ -= o.value_;
  radius_ += o.radius_;
  radius_ += ulp_of(value_);
  inflate(radius_);
  return *this;
}

RealValue& RealValue::operator*=(const RealValue& o) {
  Float r = abs(value_) * o.radius_ + abs(o.value_) * radius_ + radius_ * o.radius_;
  value_ *= o.value_;
  r += ulp_of(value_);
  inflate(r);
  radius_ = std::move(r);
  return *this;
}

RealValue& RealValue::operator/=(const RealValue& o) {
  Float ob = abs(o.value_);
  if (ob <= o.radius_) throw PreconditionError("division by an interval containing zero");
  Float r = (abs(value_) * o.radius_ + ob * radius_) / (ob * (ob - o.radius_));
  value_ /= o.value_;
  r += ulp_of(value_);
  inflate(r);
  radius_ = std::move(r);
  return *this;
}

RealValue operator*(const RealValue& a, long k) {
  Float v = a.value() * k;
  Float r = a.radius() * std::abs(k) + ulp_of(v);
  inflate(r);
  return RealValue(std::move(v), std::move(r));
}

RealValue operator/(const RealValue& a, long k) {
  if (k == 0) throw PreconditionError("division by zero");
  Float v = a.value() / k;
  Float r = a.radius() / std::abs(k) + ulp_of(v);
  inflate(r);
  return RealValue(std::move(v), std::move(r));
}

RealValue exp(const RealValue& x) {
  Float v = exp(x.value());
  Float r = v * expm1(x.radius()) + ulp_of(v);
  inflate(r);
  return RealValue(std::move(v), std::move(r));
}

RealValue expm1(const RealValue& x) {
  Float v = expm1(x.value());
  Float r = exp(x.value()) * expm1(x.radius()) + ulp_of(v);
  inflate(r);
  return RealValue(std::move(v), std::move(r));
}

RealValue log(const RealValue& x) {
  if (!x.is_positive()) throw PreconditionError("log of a value not certainly positive: " + x.to_string(10));
  Float v = log(x.value());
  Float r = -log1p(-x.radius() / x.value()) + ulp_of(v);
  inflate(r);
  return RealValue(std::move(v), std::move(r));
}

RealValue log1p(const RealValue& x) {
  Float base = 1 + x.value();
  if (base <= x.radius()) throw PreconditionError("log1p argument not certainly > -1");
  Float v = log1p(x.value());
  Float r = -log1p(-x.radius() / base) + ulp_of(v);
  inflate(r);
  return RealValue(std::move(v), std::move(r));
}

RealValue sqrt(const RealValue& x) {
  if (x.upper() < 0) throw PreconditionError("sqrt of a negative value");
  Float lo = x.lower();
  if (lo < 0) lo = 0;
  Float v = sqrt(x.value() < 0 ? Float(0) : x.value());
  Float denom = v + sqrt(lo);
  Float r = denom > 0 ? Float(x.radius() / denom) : Float(sqrt(x.radius()));
  r += ulp_of(v);
  inflate(r);
  return RealValue(std::move(v), std::move(r));
}

RealValue abs(const RealValue& x) { return RealValue(abs(x.value()), x.radius()); }

RealValue pow(const RealValue& x, const Float& p) { return exp(log(x) * RealValue(p)); }

RealValue pow(const RealValue& x, unsigned long k) {
  RealValue result(1L);
  RealValue base = x;
  while (k > 0) {
    if (k & 1UL) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

std::string RealValue::to_string(int digits) const {
  std::ostringstream os;
  os << std::setprecision(digits) << value_ << " +/- " << std::setprecision(3) << std::scientific
     << radius_.convert_to<double>();
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RealValue& x) { return os << x.to_string(); }

}  // namespace otter
