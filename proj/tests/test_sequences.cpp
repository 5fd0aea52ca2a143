#include <vector>

#include "doctest.h"
#include "qm/sequences.hpp"

using qm::BigInt;
using qm::Rational;
using qm::SequenceSpec;

namespace {
const SequenceSpec kSign1 = SequenceSpec::sign(Rational(1));
const SequenceSpec kDelta1 = SequenceSpec::finite_table({Rational(1)});
const SequenceSpec kZero = SequenceSpec::zero();
}  // namespace

TEST_CASE("evaluation with odd extension") {
  CHECK(kSign1.eval(BigInt(5)) == Rational(1));
  CHECK(kSign1.eval(BigInt(-5)) == Rational(-1));
  CHECK(kSign1.eval(BigInt(0)) == Rational(0));
  CHECK(kDelta1.eval(BigInt(2)) == Rational(0));
  CHECK(kDelta1.eval(BigInt(1)) == Rational(1));
  CHECK(kDelta1.eval(BigInt(-1)) == Rational(-1));

  SequenceSpec per = SequenceSpec::periodic({Rational::parse("1/2"), Rational(2)});
  CHECK(per.eval(BigInt(1)) == Rational::parse("1/2"));
  CHECK(per.eval(BigInt(2)) == Rational(2));
  CHECK(per.eval(BigInt(3)) == Rational::parse("1/2"));
  CHECK(per.eval(BigInt(-2)) == Rational(-2));
  // period lookup works for exponents far beyond 64 bits
  CHECK(per.eval(BigInt::parse("1000000000000000000000000000001")) == Rational::parse("1/2"));
}

TEST_CASE("oddness across the whole window") {
  std::vector<SequenceSpec> specs = {
      kSign1, kDelta1, kZero, SequenceSpec::finite_table({Rational(1), Rational(-3)}),
      SequenceSpec::periodic({Rational::parse("1/2"), Rational(2), Rational::parse("-7/3")})};
  for (const auto& s : specs)
    for (long k = -100; k <= 100; ++k)
      CHECK((s.eval(BigInt(k)) + s.eval(BigInt(-k))).is_zero());
}

TEST_CASE("sup norm from finite data") {
  CHECK(kSign1.sup_norm() == Rational(1));
  CHECK(SequenceSpec::finite_table({Rational(1), Rational(-3)}).sup_norm() == Rational(3));
  CHECK(SequenceSpec::periodic({Rational::parse("1/2"), Rational(2)}).sup_norm() == Rational(2));
  CHECK(kZero.sup_norm() == Rational(0));
}

TEST_CASE("defect values") {
  CHECK(kSign1.defect() == Rational(1));
  CHECK(kDelta1.defect() == Rational(2));
  CHECK(kZero.defect() == Rational(0));
}

TEST_CASE("window oracle examples and monotonicity") {
  CHECK(kSign1.defect_window_oracle(3) == Rational(1));
  CHECK(kDelta1.defect_window_oracle(3) == Rational(2));
  CHECK(kZero.defect_window_oracle(5) == Rational(0));
  CHECK_THROWS_AS(kSign1.defect_window_oracle(0), qm::ConfigError);

  SequenceSpec table = SequenceSpec::finite_table(
      {Rational::parse("2/3"), Rational::parse("-1/5"), Rational::parse("7/4")});
  Rational prev;
  for (long W = 1; W <= 12; ++W) {
    Rational cur = table.defect_window_oracle(W);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("window stabilization at three times the support") {
  std::vector<SequenceSpec> tables = {
      kDelta1, SequenceSpec::finite_table({Rational(1), Rational(-3)}),
      SequenceSpec::finite_table({Rational::parse("2/3"), Rational::parse("-1/5"),
                                  Rational::parse("7/4"), Rational(0), Rational(2)})};
  for (const auto& s : tables) {
    long K = s.window();
    CHECK(s.defect_window_oracle(3 * K) == s.defect_window_oracle(6 * K));
  }
  std::vector<SequenceSpec> periodics = {
      SequenceSpec::periodic({Rational(1)}),
      SequenceSpec::periodic({Rational::parse("1/2"), Rational(2)}),
      SequenceSpec::periodic({Rational(1), Rational(-1), Rational::parse("3/7")})};
  for (const auto& s : periodics) {
    long p = s.window();
    CHECK(s.defect_window_oracle(3 * p) == s.defect_window_oracle(6 * p));
  }
}

TEST_CASE("defect agrees with a much wider window") {
  // the 3x-window computation equals a brute scan far past the support
  for (const auto& s :
       {kSign1, kDelta1, SequenceSpec::finite_table({Rational(1), Rational(-3)}),
        SequenceSpec::periodic({Rational::parse("1/2"), Rational(2)}),
        SequenceSpec::periodic({Rational(1), Rational(-1), Rational::parse("3/7")})}) {
    CHECK(s.defect() == s.defect_window_oracle(50));
  }
}

TEST_CASE("defect is at most three sup norms") {
  std::vector<SequenceSpec> specs = {
      kSign1, kDelta1, kZero,
      SequenceSpec::finite_table({Rational(1), Rational(-3), Rational::parse("5/2")}),
      SequenceSpec::periodic({Rational::parse("-1/2"), Rational(2)}),
      SequenceSpec::sign(Rational::parse("7/5"))};
  for (const auto& s : specs) CHECK(s.defect() <= Rational(3) * s.sup_norm());
}

TEST_CASE("defect argmax avoids degenerate pairs and realizes the defect") {
  for (const auto& s :
       {kSign1, kDelta1, SequenceSpec::finite_table({Rational(1), Rational(-3)})}) {
    auto [k, l] = s.defect_argmax();
    CHECK(k != 0);
    CHECK(l != 0);
    CHECK(k + l != 0);
    Rational at = (s.eval(BigInt(k)) + s.eval(BigInt(l)) - s.eval(BigInt(k + l))).abs();
    CHECK(at == s.defect());
  }
  auto [k, l] = kZero.defect_argmax();
  CHECK(k == 1);
  CHECK(l == 1);
}

TEST_CASE("sequence family") {
  qm::Alphabet st{"s", "t"};
  auto fam = qm::SequenceFamily::shared(st, kSign1);
  CHECK(fam.at("s") == kSign1);
  CHECK_THROWS_AS(fam.at("u"), qm::ConfigError);
  fam.set("t", kDelta1);
  CHECK(fam.at("t") == kDelta1);
  CHECK(fam.uniform_sup_norm() == Rational(1));
}
