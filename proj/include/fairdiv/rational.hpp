#pragma once

// Exact number types used throughout the library.
//
//   Rational       arbitrary precision fraction (GMP mpq_class)
//   ExtRational    a non-negative Rational or +infinity
//   QuadraticSurd  a + b * sqrt(d) with rational a, b and a positive integer d
//
// Every comparison against an irrational constant goes through
// QuadraticSurd so that no floating point value ever decides a branch.

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fairdiv {

using Rational = mpq_class;

/// Parses "p" or "p/q" (non-negative integers, q > 0) into a canonical
/// Rational. Throws fairdiv::Error(InvalidInput) on anything else.
Rational parse_rational(std::string_view text);

/// Parses a decimal literal such as "0.73" or "2" exactly. A "p/q" form
/// is accepted as well.
Rational parse_decimal(std::string_view text);

std::string to_string(const Rational& value);
double to_double(const Rational& value);

/// Non-negative extended rational: a finite value or +infinity.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational value) : value_(std::move(value)) {}  // NOLINT
  ExtRational(long value) : value_(value) {}                 // NOLINT

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  bool is_zero() const { return !infinite_ && sgn(value_) == 0; }

  /// Finite value; meaningless when is_infinite().
  const Rational& value() const { return value_; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a,
                                          const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

  /// Product with the convention inf * 0 = 0 (a path through a worthless
  /// edge or item carries no value, however large the other factor).
  friend ExtRational operator*(const ExtRational& a, const ExtRational& b) {
    if (a.is_zero() || b.is_zero()) return ExtRational(0L);
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtRational(Rational(a.value_ * b.value_));
  }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

std::string to_string(const ExtRational& value);

/// The real number rational + coefficient * sqrt(radicand).
struct QuadraticSurd {
  Rational rational{0};
  Rational coefficient{0};
  unsigned long radicand = 1;

  static QuadraticSurd of(Rational value) { return {std::move(value), 0, 1}; }
  static QuadraticSurd sqrt3_minus_1() { return {-1, 1, 3}; }
  static QuadraticSurd sqrt3_plus_1() { return {1, 1, 3}; }
  /// (1 + sqrt 5) / 2
  static QuadraticSurd golden_ratio() {
    return {Rational(1, 2), Rational(1, 2), 5};
  }
  /// (sqrt 5 - 1) / 2 = 1 / golden_ratio
  static QuadraticSurd golden_ratio_minus_1() {
    return {Rational(-1, 2), Rational(1, 2), 5};
  }

  bool is_rational() const { return sgn(coefficient) == 0 || radicand == 1; }
  std::string describe() const;
  double approx() const;
};

/// Sign of a + b*sqrt(d), exactly.
int sign(const Rational& a, const Rational& b, unsigned long d);

/// lhs >= c * rhs, exactly. Used for every "x is at least c times y" check.
bool at_least(const Rational& lhs, const QuadraticSurd& c, const Rational& rhs);

/// value > c, exactly.
bool greater_than(const Rational& value, const QuadraticSurd& c);

}  // namespace fairdiv
