#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "qm/free_products.hpp"

using qm::BigInt;
using qm::FactorFamily;
using qm::FactorGroup;
using qm::FPLetter;
using qm::FPWord;
using qm::Mat2;
using qm::OddBoundedMap;
using qm::OddMapFamily;
using qm::Rational;

namespace {

FactorFamily z2_z3() {
  return FactorFamily({FactorGroup::cyclic("A", 2), FactorGroup::cyclic("B", 3)});
}

FactorFamily z5_z() {
  return FactorFamily({FactorGroup::cyclic("C", 5), FactorGroup::integers("Z")});
}

// sigma_B(1) = 1 on the order-3 factor, zero map on the order-2 factor
OddMapFamily basic_sigma(const FactorFamily& fam) {
  OddMapFamily sigma;
  sigma.set(OddBoundedMap::cyclic_free(fam.at("A"), {}));
  sigma.set(OddBoundedMap::cyclic_free(fam.at("B"), {Rational(1)}));
  return sigma;
}

// all alternating words over Z2*Z3 with at most max_len letters
std::vector<FPWord> all_words_z2z3(const FactorFamily& fam, int max_len) {
  std::vector<FPWord> out;
  std::vector<FPLetter> stack;
  auto rec = [&](auto&& self, int remaining) -> void {
    out.push_back(FPWord::reduce(fam, std::vector<FPLetter>(stack)));
    if (remaining == 0) return;
    for (const char* f : {"A", "B"}) {
      if (!stack.empty() && stack.back().factor == f) continue;
      long max_e = f[0] == 'A' ? 1 : 2;
      for (long e = 1; e <= max_e; ++e) {
        stack.push_back(FPLetter{f, BigInt(e)});
        self(self, remaining - 1);
        stack.pop_back();
      }
    }
  };
  rec(rec, max_len);
  return out;
}

std::vector<FPWord> all_words_z5z(const FactorFamily& fam, int max_len, long max_exp) {
  std::vector<FPWord> out;
  std::vector<FPLetter> stack;
  auto rec = [&](auto&& self, int remaining) -> void {
    out.push_back(FPWord::reduce(fam, std::vector<FPLetter>(stack)));
    if (remaining == 0) return;
    for (const char* f : {"C", "Z"}) {
      if (!stack.empty() && stack.back().factor == f) continue;
      if (f[0] == 'C') {
        for (long e = 1; e <= 4; ++e) {
          stack.push_back(FPLetter{f, BigInt(e)});
          self(self, remaining - 1);
          stack.pop_back();
        }
      } else {
        for (long e = -max_exp; e <= max_exp; ++e) {
          if (e == 0) continue;
          stack.push_back(FPLetter{f, BigInt(e)});
          self(self, remaining - 1);
          stack.pop_back();
        }
      }
    }
  };
  rec(rec, max_len);
  return out;
}

}  // namespace

TEST_CASE("factor group construction and table axioms") {
  CHECK_THROWS_AS(FactorGroup::cyclic("A", 1), qm::ConfigError);

  // cyclic group of order 3 as an explicit table
  auto z3 = FactorGroup::from_table("B", {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(z3.mul(BigInt(1), BigInt(2)).is_zero());
  CHECK(z3.inv(BigInt(1)) == BigInt(2));

  // broken identity
  CHECK_THROWS_AS(FactorGroup::from_table("X", {{1, 0}, {0, 1}}), qm::ConfigError);
  // non-associative magma on 3 elements
  CHECK_THROWS_AS(FactorGroup::from_table("X", {{0, 1, 2}, {1, 0, 0}, {2, 0, 1}}),
                  qm::ConfigError);
  // out-of-range entry
  CHECK_THROWS_AS(FactorGroup::from_table("X", {{0, 1}, {1, 7}}), qm::ConfigError);
}

TEST_CASE("normal form multiplication in Z2 * Z3") {
  FactorFamily fam = z2_z3();
  FPWord a = fp_parse(fam, "A:1");
  FPWord b = fp_parse(fam, "B:1");
  CHECK(fp_multiply(fam, a, a).is_identity());
  CHECK(fp_multiply(fam, b, b) == fp_parse(fam, "B:2"));
  FPWord ab = fp_parse(fam, "A:1 B:1");
  FPWord b2a = fp_parse(fam, "B:2 A:1");
  CHECK(fp_multiply(fam, ab, b2a).is_identity());
  CHECK(fp_invert(fam, ab) == b2a);
}

TEST_CASE("parsing rejects malformed input") {
  FactorFamily fam = z2_z3();
  CHECK_THROWS_AS(fp_parse(fam, "A1"), qm::ParseError);
  CHECK_THROWS_AS(fp_parse(fam, "Q:1"), qm::ConfigError);
  CHECK_THROWS_AS(fp_parse(fam, "B:3"), qm::ConfigError);
  CHECK_THROWS_AS(fp_parse(fam, "A:x"), qm::ParseError);
  CHECK(fp_parse(fam, "A:0 B:0").is_identity());  // identity letters drop out
}

TEST_CASE("normal form is spelling independent") {
  FactorFamily fam = z2_z3();
  CHECK(fp_parse(fam, "B:1 B:2 A:1") == fp_parse(fam, "A:1"));
  CHECK(fp_parse(fam, "A:1 A:1 B:1 B:1") == fp_parse(fam, "B:2"));
  CHECK(fp_parse(fam, "B:1 A:1 A:1 B:2") .is_identity());
}

TEST_CASE("multiplication is associative on random words") {
  for (int family_case = 0; family_case < 2; ++family_case) {
    FactorFamily fam = family_case == 0 ? z2_z3() : z5_z();
    std::vector<FPWord> pool =
        family_case == 0 ? all_words_z2z3(fam, 3) : all_words_z5z(fam, 3, 2);
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 250; ++i) {
      const FPWord& x = pool[pick(rng)];
      const FPWord& y = pool[pick(rng)];
      const FPWord& z = pool[pick(rng)];
      CHECK(fp_multiply(fam, fp_multiply(fam, x, y), z) ==
            fp_multiply(fam, x, fp_multiply(fam, y, z)));
      CHECK(fp_multiply(fam, x, fp_invert(fam, x)).is_identity());
    }
  }
}

TEST_CASE("evaluation sums odd map values over letters") {
  FactorFamily fam = z2_z3();
  OddMapFamily sigma = basic_sigma(fam);
  CHECK(fp_eval(sigma, FPWord{}) == Rational(0));
  CHECK(fp_eval(sigma, fp_parse(fam, "A:1 B:1")) == Rational(1));
  CHECK(fp_eval(sigma, fp_parse(fam, "B:1 A:1 B:2")) == Rational(0));
}

TEST_CASE("missing factor map is reported") {
  FactorFamily fam = z2_z3();
  OddMapFamily sigma;
  sigma.set(OddBoundedMap::cyclic_free(fam.at("A"), {}));
  CHECK_THROWS_AS(fp_eval(sigma, fp_parse(fam, "B:1")), qm::ConfigError);
}

TEST_CASE("odd map construction enforces oddness") {
  FactorFamily fam = z2_z3();
  CHECK_THROWS_AS(OddBoundedMap::table(fam.at("B"), {Rational(0), Rational(1), Rational(1)}),
                  qm::ConfigError);
  CHECK_THROWS_AS(OddBoundedMap::table(fam.at("B"), {Rational(1), Rational(1), Rational(-1)}),
                  qm::ConfigError);
  CHECK_THROWS_AS(OddBoundedMap::cyclic_free(fam.at("A"), {Rational(1)}), qm::ConfigError);
  auto ok = OddBoundedMap::table(fam.at("B"), {Rational(0), Rational(1), Rational(-1)});
  CHECK(ok.sup_norm() == Rational(1));
}

TEST_CASE("free-product witness values") {
  FactorFamily fam = z2_z3();
  OddMapFamily sigma = basic_sigma(fam);
  CHECK(qm::fp_injectivity_witness(fam, sigma, "A", "B", BigInt(1), BigInt(1), 7, 1) ==
        Rational(7));
  CHECK(qm::fp_injectivity_witness(fam, sigma, "A", "B", BigInt(1), BigInt(1), 0, 1) ==
        Rational(0));
  CHECK(qm::fp_injectivity_witness(fam, sigma, "A", "B", BigInt(1), BigInt(1), 3, -1) ==
        Rational(-3));
  CHECK_THROWS_AS(
      qm::fp_injectivity_witness(fam, sigma, "A", "A", BigInt(1), BigInt(1), 2, 1),
      qm::ConfigError);
  CHECK_THROWS_AS(
      qm::fp_injectivity_witness(fam, sigma, "A", "B", BigInt(0), BigInt(1), 2, 1),
      qm::ConfigError);
}

TEST_CASE("quasi-morphism bound on free products") {
  // |dg(x,y)| <= 3 sup norms, exhaustively over short words
  FactorFamily fam23 = z2_z3();
  OddMapFamily sigma23 = basic_sigma(fam23);
  Rational bound = Rational(3) * sigma23.uniform_sup_norm();
  std::vector<FPWord> pool = all_words_z2z3(fam23, 4);
  for (const auto& x : pool)
    for (const auto& y : pool)
      CHECK(qm::fp_coboundary(fam23, sigma23, x, y).abs() <= bound);

  FactorFamily fam5z = z5_z();
  OddMapFamily sigma5z;
  sigma5z.set(OddBoundedMap::cyclic_free(fam5z.at("C"), {Rational::parse("1/2"), Rational(2)}));
  sigma5z.set(OddBoundedMap::integer_sequence(fam5z.at("Z"),
                                              qm::SequenceSpec::sign(Rational(1))));
  Rational bound5 = Rational(3) * sigma5z.uniform_sup_norm();
  std::vector<FPWord> pool5 = all_words_z5z(fam5z, 4, 2);
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::size_t> pick(0, pool5.size() - 1);
  for (int i = 0; i < 20000; ++i)
    CHECK(qm::fp_coboundary(fam5z, sigma5z, pool5[pick(rng)], pool5[pick(rng)]).abs() <= bound5);
}

TEST_CASE("odd map dimensions") {
  CHECK(*qm::odd_map_dimension(FactorGroup::cyclic("A", 2)) == 0);
  CHECK(*qm::odd_map_dimension(FactorGroup::cyclic("B", 3)) == 1);
  CHECK(*qm::odd_map_dimension(FactorGroup::cyclic("G", 7)) == 3);
  CHECK(!qm::odd_map_dimension(FactorGroup::integers("Z")).has_value());

  // formula agrees with the independent count over the explicit table
  for (long n = 2; n <= 12; ++n) {
    std::vector<std::vector<std::uint32_t>> mul(n, std::vector<std::uint32_t>(n));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) mul[i][j] = static_cast<std::uint32_t>((i + j) % n);
    auto as_table = FactorGroup::from_table("G", mul);
    CHECK(*qm::odd_map_dimension(as_table) == (n - 1) / 2);
    CHECK(*qm::odd_map_dimension(FactorGroup::cyclic("G", n)) == (n - 1) / 2);
  }

  CHECK(*qm::v0_dimension(qm::psl2_factors()) == 1);
  CHECK(!qm::v0_dimension(z5_z()).has_value());
}

TEST_CASE("modular group parser examples") {
  CHECK(qm::psl2_parse(Mat2{}).is_identity());
  FactorFamily fam = qm::psl2_factors();
  CHECK(qm::psl2_parse(qm::kMatT) == fp_parse(fam, "A:1 B:1"));
  FPWord t5 = qm::psl2_parse(Mat2{1, 5, 0, 1});
  CHECK(t5 == fp_power(fam, fp_parse(fam, "A:1 B:1"), 5));
  CHECK_THROWS_AS(qm::psl2_parse(Mat2{2, 0, 0, 1}), qm::ConfigError);
}

TEST_CASE("parser round-trips sampled unimodular matrices") {
  int found = 0;
  for (long long a = -12; a <= 12; ++a)
    for (long long b = -12; b <= 12; ++b)
      for (long long c = -12; c <= 12; ++c) {
        if (a == 0) continue;  // thin slice; acceptance sweeps the full box
        long long num = 1 + b * c;
        if (num % a != 0) continue;
        long long d = num / a;
        if (d < -12 || d > 12) continue;
        Mat2 m{a, b, c, d};
        FPWord w = qm::psl2_parse(m);
        CHECK(qm::projectively_equal(qm::psl2_matrix(w), m));
        ++found;
      }
  CHECK(found > 500);
}

TEST_CASE("modular-group quasi-morphism") {
  FactorFamily fam = qm::psl2_factors();
  OddMapFamily sigma = basic_sigma(fam);
  CHECK(qm::psl2_qm(sigma, Mat2{}) == Rational(0));
  for (long long k = -20; k <= 20; ++k) {
    Mat2 tk{1, k, 0, 1};
    CHECK(qm::psl2_qm(sigma, tk) == Rational(k));
  }
  // the value is projective: a matrix and its negation agree
  Mat2 m{3, 2, 4, 3};
  REQUIRE(m.det() == 1);
  CHECK(qm::psl2_parse(m) == qm::psl2_parse(m.neg()));
  CHECK(qm::psl2_qm(sigma, m) == qm::psl2_qm(sigma, m.neg()));
}
