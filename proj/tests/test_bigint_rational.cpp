#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "qm/bigint.hpp"
#include "qm/rational.hpp"

using qm::BigInt;
using qm::Rational;

TEST_CASE("bigint construction and printing") {
  CHECK(BigInt().str() == "0");
  CHECK(BigInt(0).str() == "0");
  CHECK(BigInt(-1).str() == "-1");
  CHECK(BigInt(1234567890123456789LL).str() == "1234567890123456789");
  CHECK(BigInt::parse("-0").str() == "0");
  CHECK(BigInt::parse("+17").str() == "17");
  CHECK(BigInt::parse("000042").str() == "42");
  CHECK_THROWS_AS(BigInt::parse(""), qm::ParseError);
  CHECK_THROWS_AS(BigInt::parse("12a"), qm::ParseError);
  CHECK_THROWS_AS(BigInt::parse("-"), qm::ParseError);
}

TEST_CASE("bigint arithmetic beyond 64 bits") {
  // 2^100, frozen independently
  BigInt two(2), p(1);
  for (int i = 0; i < 100; ++i) p *= two;
  CHECK(p.str() == "1267650600228229401496703205376");
  CHECK(!p.fits_longlong());
  CHECK((p - p).is_zero());
  CHECK((p + (-p)).is_zero());
  CHECK((p * BigInt(0)).is_zero());

  // 30!, frozen independently
  BigInt f(1);
  for (long long i = 2; i <= 30; ++i) f *= BigInt(i);
  CHECK(f.str() == "265252859812191058636308480000000");
  CHECK(BigInt::parse(f.str()) == f);
}

TEST_CASE("bigint division follows truncation semantics") {
  auto check_divmod = [](long long a, long long b) {
    auto [q, r] = BigInt::divmod(BigInt(a), BigInt(b));
    CHECK(q == BigInt(a / b));
    CHECK(r == BigInt(a % b));
    CHECK(q * BigInt(b) + r == BigInt(a));
  };
  for (long long a : {0LL, 1LL, -1LL, 7LL, -7LL, 100LL, -100LL, 123456789LL})
    for (long long b : {1LL, -1LL, 2LL, -3LL, 10LL, -17LL, 123456789LL}) check_divmod(a, b);
  CHECK_THROWS_AS(BigInt::divmod(BigInt(1), BigInt(0)), qm::Error);
}

TEST_CASE("bigint divmod identity on random wide values") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    BigInt a(static_cast<long long>(rng()));
    BigInt b(static_cast<long long>(rng() >> (rng() % 48)));
    a = a * a + BigInt(static_cast<long long>(rng() % 1000));  // up to ~128 bits
    if (b.is_zero()) continue;
    auto [q, r] = BigInt::divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
    if (!r.is_zero()) CHECK(r.sign() == a.sign());
  }
}

TEST_CASE("bigint gcd") {
  CHECK(gcd(BigInt(12), BigInt(18)) == BigInt(6));
  CHECK(gcd(BigInt(-12), BigInt(18)) == BigInt(6));
  CHECK(gcd(BigInt(0), BigInt(5)) == BigInt(5));
  CHECK(gcd(BigInt(7), BigInt(0)) == BigInt(7));
  CHECK(gcd(BigInt(1000000007LL), BigInt(998244353LL)) == BigInt(1));
}

TEST_CASE("bigint ordering and conversions") {
  CHECK(BigInt(-5) < BigInt(3));
  CHECK(BigInt(3) < BigInt(5));
  CHECK(BigInt(-5) < BigInt(-3));
  CHECK(BigInt(5).to_longlong() == 5);
  CHECK(BigInt(-5).to_longlong() == -5);
  BigInt big = BigInt::parse("123456789012345678901234567890");
  CHECK_THROWS_AS(big.to_longlong(), qm::Error);
  CHECK(BigInt(1).to_double() == doctest::Approx(1.0));
  CHECK(BigInt(-4294967296LL).to_double() == doctest::Approx(-4294967296.0));
}

TEST_CASE("rational normalization and printing") {
  CHECK(Rational(BigInt(2), BigInt(4)).str() == "1/2");
  CHECK(Rational(BigInt(2), BigInt(-4)).str() == "-1/2");
  CHECK(Rational(BigInt(0), BigInt(-7)).str() == "0");
  CHECK(Rational(6).str() == "6");
  CHECK(Rational::parse("3/6") == Rational(BigInt(1), BigInt(2)));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK_THROWS_AS(Rational::parse("1/0"), qm::ParseError);
  CHECK_THROWS_AS(Rational::parse("x/2"), qm::ParseError);
}

TEST_CASE("rational field operations") {
  Rational half = Rational::parse("1/2");
  Rational third = Rational::parse("1/3");
  CHECK((half + third).str() == "5/6");
  CHECK((half - third).str() == "1/6");
  CHECK((half * third).str() == "1/6");
  CHECK((half / third).str() == "3/2");
  CHECK((-half).str() == "-1/2");
  CHECK(Rational(-3).abs() == Rational(3));
  CHECK_THROWS_AS(half / Rational(0), qm::Error);
}

TEST_CASE("rational ordering") {
  CHECK(Rational::parse("1/3") < Rational::parse("1/2"));
  CHECK(Rational::parse("-1/2") < Rational::parse("-1/3"));
  CHECK(Rational::parse("2/4") == Rational::parse("1/2"));
  std::vector<Rational> vals = {Rational::parse("-5/3"), Rational(0), Rational(1),
                                Rational::parse("7/2")};
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) CHECK(vals[i] < vals[i + 1]);
  CHECK(Rational::parse("7/2").to_double() == doctest::Approx(3.5));
}
