#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qm/errors.hpp"

namespace qm {

// Arbitrary-precision signed integer, sign/magnitude with base-2^32 limbs.
// Every quantity in this library fits a few limbs, but syllable exponents and
// certificate values must never wrap.
class BigInt {
 public:
  BigInt() = default;

  BigInt(long long v) {  // NOLINT(google-explicit-constructor): literals everywhere
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on LLONG_MIN
    unsigned long long u =
        v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL : static_cast<unsigned long long>(v);
    while (u != 0) {
      mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffULL));
      u >>= 32;
    }
  }

  static BigInt parse(std::string_view text) {
    std::string_view t = text;
    bool neg = false;
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
      neg = t.front() == '-';
      t.remove_prefix(1);
    }
    if (t.empty()) throw ParseError("integer: empty digit string in '" + std::string(text) + "'");
    BigInt r;
    for (char c : t) {
      if (c < '0' || c > '9')
        throw ParseError("integer: bad character '" + std::string(1, c) + "' in '" +
                         std::string(text) + "'");
      r.mul_small_add(10, static_cast<std::uint32_t>(c - '0'));
    }
    if (!r.mag_.empty()) r.sign_ = neg ? -1 : 1;
    return r;
  }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }

  BigInt operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  BigInt abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
      r.mag_ = add_mag(a.mag_, b.mag_);
      r.sign_ = a.sign_;
    } else {
      int c = cmp_mag(a.mag_, b.mag_);
      if (c == 0) return r;  // zero
      if (c > 0) {
        r.mag_ = sub_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_;
      } else {
        r.mag_ = sub_mag(b.mag_, a.mag_);
        r.sign_ = b.sign_;
      }
    }
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return {};
    BigInt r;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.mag_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] +
                            r.mag_[i + j] + carry;
        r.mag_[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      r.mag_[i + b.mag_.size()] += static_cast<std::uint32_t>(carry);
    }
    r.trim();
    r.sign_ = a.sign_ * b.sign_;
    return r;
  }

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Truncated division: quotient rounds toward zero, remainder has the
  // dividend's sign, a == q*b + r.
  static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
    if (b.sign_ == 0) throw Error("integer division by zero");
    if (cmp_mag(a.mag_, b.mag_) < 0) return {BigInt{}, a};
    BigInt q, r;
    q.mag_.assign(a.mag_.size(), 0);
    // schoolbook binary long division on magnitudes, msb first
    for (std::size_t i = a.mag_.size(); i-- > 0;) {
      for (int bit = 31; bit >= 0; --bit) {
        r.shl1();
        if ((a.mag_[i] >> bit) & 1u) {
          if (r.mag_.empty()) r.mag_.push_back(1);
          else r.mag_[0] |= 1u;
        }
        if (cmp_mag(r.mag_, b.mag_) >= 0) {
          r.mag_ = sub_mag(r.mag_, b.mag_);
          q.mag_[i] |= 1u << bit;
        }
      }
    }
    q.trim();
    r.trim();
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
    return {q, r};
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
  friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

  friend BigInt gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    while (!b.is_zero()) {
      BigInt r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
  }

  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    int c = cmp_mag(a.mag_, b.mag_) * a.sign_;
    return c <=> 0;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    BigInt n = abs();
    const BigInt chunk(1000000000LL);
    std::vector<std::uint32_t> groups;
    while (!n.is_zero()) {
      auto [q, r] = divmod(n, chunk);
      groups.push_back(r.mag_.empty() ? 0u : r.mag_[0]);
      n = std::move(q);
    }
    out = std::to_string(groups.back());
    for (std::size_t i = groups.size() - 1; i-- > 0;) {
      std::string part = std::to_string(groups[i]);
      out += std::string(9 - part.size(), '0') + part;
    }
    if (sign_ < 0) out.insert(out.begin(), '-');
    return out;
  }

  bool fits_longlong() const {
    static const BigInt lo(std::numeric_limits<long long>::min());
    static const BigInt hi(std::numeric_limits<long long>::max());
    return *this >= lo && *this <= hi;
  }

  long long to_longlong() const {
    if (!fits_longlong()) throw Error("integer too large for long long: " + str());
    unsigned long long u = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
    if (sign_ < 0) return static_cast<long long>(~u + 1ULL);
    return static_cast<long long>(u);
  }

  double to_double() const {
    double r = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) r = r * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -r : r;
  }

 private:
  int sign_ = 0;                    // -1, 0, +1
  std::vector<std::uint32_t> mag_;  // little-endian, trimmed, empty iff zero

  void trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
  }

  void shl1() {
    std::uint32_t carry = 0;
    for (auto& limb : mag_) {
      std::uint32_t next = limb >> 31;
      limb = (limb << 1) | carry;
      carry = next;
    }
    if (carry) mag_.push_back(carry);
  }

  void mul_small_add(std::uint32_t m, std::uint32_t add) {
    std::uint64_t carry = add;
    for (auto& limb : mag_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
      limb = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    while (carry) {
      mag_.push_back(static_cast<std::uint32_t>(carry));
      carry >>= 32;
    }
    if (!mag_.empty()) sign_ = 1;
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r = big;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::uint64_t cur = static_cast<std::uint64_t>(r[i]) + (i < small.size() ? small[i] : 0) + carry;
      r[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
      if (carry == 0 && i >= small.size()) break;
    }
    if (carry) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }

  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(r[i]) - (i < b.size() ? b[i] : 0) - borrow;
      borrow = cur < 0 ? 1 : 0;
      r[i] = static_cast<std::uint32_t>(cur + (borrow << 32));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
};

}  // namespace qm
