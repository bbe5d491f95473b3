#include "fairdiv/rational.hpp"

#include <cctype>
#include <cmath>

#include "fairdiv/error.hpp"

namespace fairdiv {

const char* code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MalformedAllocation: return "MalformedAllocation";
    case ErrorCode::MalformedCycle: return "MalformedCycle";
    case ErrorCode::InstanceTooSmall: return "InstanceTooSmall";
    case ErrorCode::ImprovingCycleExists: return "ImprovingCycleExists";
    case ErrorCode::CyclicEnvyGraph: return "CyclicEnvyGraph";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::InternalGuaranteeViolated: return "InternalGuaranteeViolated";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1")
                                                   : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::InvalidInput,
                "not a non-negative rational: '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) {
    throw Error(ErrorCode::InvalidInput,
                "zero denominator: '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational parse_decimal(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return parse_rational(text);
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return parse_rational(text);
  const auto whole = text.substr(0, dot);
  const auto frac = text.substr(dot + 1);
  if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
    throw Error(ErrorCode::InvalidInput,
                "not a decimal: '" + std::string(text) + "'");
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
  Rational r(digits, scale);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

std::string to_string(const ExtRational& value) {
  return value.is_infinite() ? std::string("inf") : to_string(value.value());
}

int sign(const Rational& a, const Rational& b, unsigned long d) {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: the term with the larger square wins.
  const Rational a2 = a * a;
  const Rational b2d = b * b * d;
  const int c = cmp(a2, b2d);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

bool at_least(const Rational& lhs, const QuadraticSurd& c, const Rational& rhs) {
  const Rational a = lhs - c.rational * rhs;
  const Rational b = -c.coefficient * rhs;
  return sign(a, b, c.radicand) >= 0;
}

bool greater_than(const Rational& value, const QuadraticSurd& c) {
  return sign(Rational(value - c.rational), Rational(-c.coefficient), c.radicand) > 0;
}

std::string QuadraticSurd::describe() const {
  if (is_rational()) return to_string(Rational(rational + coefficient));
  std::string s;
  if (coefficient == -1) {
    s = "-";
  } else if (coefficient != 1) {
    s = to_string(coefficient) + "*";
  }
  s += "sqrt(" + std::to_string(radicand) + ")";
  if (sgn(rational) > 0) s += " + " + to_string(rational);
  if (sgn(rational) < 0) s += " - " + to_string(Rational(-rational));
  return s;
}

double QuadraticSurd::approx() const {
  return rational.get_d() +
         coefficient.get_d() * std::sqrt(static_cast<double>(radicand));
}

}  // namespace fairdiv
