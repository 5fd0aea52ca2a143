#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>

#include "qm/bigint.hpp"
#include "qm/errors.hpp"

namespace qm {

// Exact rational, always normalized: positive denominator, coprime parts,
// zero stored as 0/1. All certificate arithmetic in the library goes through
// this type so that equality claims need no tolerance.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt v) : num_(std::move(v)), den_(1) {}

  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("rational with zero denominator");
    normalize();
  }

  // Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt::parse(text));
    BigInt n = BigInt::parse(text.substr(0, slash));
    BigInt d = BigInt::parse(text.substr(slash + 1));
    if (d.is_zero()) throw ParseError("rational: zero denominator in '" + std::string(text) + "'");
    return Rational(std::move(n), std::move(d));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Rational abs() const {
    Rational r = *this;
    r.num_ = r.num_.abs();
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error("rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  // "p" when integral, "p/q" otherwise; parse() accepts both.
  std::string str() const {
    if (den_ == BigInt(1)) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  double to_double() const { return num_.to_double() / den_.to_double(); }

 private:
  BigInt num_, den_;

  void normalize() {
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    BigInt g = gcd(num_, den_);
    if (g > BigInt(1)) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
};

}  // namespace qm
