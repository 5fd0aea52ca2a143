#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qm/free_products.hpp"
#include "qm/metric_targets.hpp"
#include "qm/qm_core.hpp"
#include "qm/sequences.hpp"
#include "qm/twisted.hpp"
#include "qm/words.hpp"

namespace qm {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteBudget {
  long max_exp = 3;
  long max_len = 4;
  std::uint64_t seed = kDefaultSeed;
};

namespace detail {

class Checker {
 public:
  explicit Checker(std::string suite) : suite_(std::move(suite)) {}

  template <class Fn>
  void run(const std::string& name, Fn&& fn) {
    CheckResult r;
    r.suite = suite_;
    r.name = name;
    try {
      std::string detail = fn();
      r.passed = true;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    results_.push_back(std::move(r));
  }

  static void expect(bool ok, const std::string& message) {
    if (!ok) throw VerificationError(message);
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<CheckResult> results_;
};

inline const Alphabet& st_alphabet() {
  static const Alphabet a{"s", "t"};
  return a;
}

}  // namespace detail

inline std::vector<CheckResult> check_words(const SuiteBudget& budget) {
  using detail::Checker;
  Checker c("words");
  const Alphabet& st = detail::st_alphabet();

  c.run("enumeration count matches closed form", [&] {
    for (long K : {1L, 2L}) {
      for (long L : {1L, 2L, 3L}) {
        auto words = enumerate_words(st, K, L);
        Checker::expect(BigInt(static_cast<long long>(words.size())) ==
                            enumerated_word_count(2, K, L),
                        "count mismatch at K=" + std::to_string(K) + " L=" + std::to_string(L));
      }
    }
    return "K in {1,2}, L in {1,2,3}";
  });

  c.run("group laws on random triples", [&] {
    auto pool = enumerate_words(st, 2, 3);
    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 300; ++i) {
      const Word& a = pool[pick(rng)];
      const Word& b = pool[pick(rng)];
      const Word& cc = pool[pick(rng)];
      Checker::expect(multiply(multiply(a, b), cc) == multiply(a, multiply(b, cc)),
                      "associativity failed");
      Checker::expect(multiply(a, invert(a)).is_identity(), "inverse failed");
    }
    return "300 seeded triples";
  });

  c.run("cyclic decomposition reconstructs", [&] {
    for (const Word& x : enumerate_words(st, 2, 3)) {
      auto d = cyclically_reduce(x);
      Checker::expect(conjugate(d.conjugator, d.core) == x, "reconstruction failed for " + x.str());
    }
    return "all words, K=2 L=3";
  });

  c.run("grammar round trip", [&] {
    for (const Word& x : enumerate_words(st, 2, 2))
      Checker::expect(parse_word(x.str(), st) == x, "round trip failed for " + x.str());
    return "all words, K=2 L=2";
  });

  return c.take();
}

inline std::vector<CheckResult> check_sequences(const SuiteBudget&) {
  using detail::Checker;
  Checker c("sequences");
  std::vector<SequenceSpec> specs = {
      SequenceSpec::sign(Rational(1)), SequenceSpec::finite_table({Rational(1)}),
      SequenceSpec::finite_table({Rational(1), Rational(-3)}),
      SequenceSpec::periodic({Rational::parse("1/2"), Rational(2)}), SequenceSpec::zero()};

  c.run("odd extension", [&] {
    for (const auto& s : specs)
      for (long k = -100; k <= 100; ++k)
        Checker::expect((s.eval(BigInt(k)) + s.eval(BigInt(-k))).is_zero(), "oddness failed");
    return "k in [-100, 100]";
  });

  c.run("defect bounded by three sup norms", [&] {
    for (const auto& s : specs)
      Checker::expect(s.defect() <= Rational(3) * s.sup_norm(), "triangle bound failed");
    return "";
  });

  c.run("window stabilization", [&] {
    for (const auto& s : specs) {
      long w = s.window();
      Checker::expect(s.defect_window_oracle(3 * w) == s.defect_window_oracle(6 * w),
                      "oracle not stable between 3W and 6W");
    }
    return "";
  });

  c.run("known defects", [&] {
    Checker::expect(specs[0].defect() == Rational(1), "sign defect");
    Checker::expect(specs[1].defect() == Rational(2), "delta defect");
    Checker::expect(specs[4].defect() == Rational(0), "zero defect");
    return "sign: 1, delta: 2, zero: 0";
  });

  return c.take();
}

inline std::vector<CheckResult> check_qm_core(const SuiteBudget& budget) {
  using detail::Checker;
  Checker c("qm_core");
  const Alphabet& st = detail::st_alphabet();
  FreeQM sign = FreeQM::with_shared_sequence(st, SequenceSpec::sign(Rational(1)));
  FreeQM delta = FreeQM::with_shared_sequence(st, SequenceSpec::finite_table({Rational(1)}));

  c.run("brute-force defect equals sequence defect", [&] {
    long K = std::min(budget.max_exp, 3L), L = std::min(budget.max_len, 3L);
    for (const FreeQM* g : {&sign, &delta}) {
      auto cert = defect_bruteforce(*g, K, L, budget.seed);
      Checker::expect(cert.agrees(), "mismatch: " + cert.oracle_value.str() + " vs " +
                                         cert.claimed.str());
    }
    return "all pairs at K=" + std::to_string(K) + " L=" + std::to_string(L);
  });

  c.run("coboundary bound of three sup norms", [&] {
    auto cert = defect_bruteforce(sign, budget.max_exp, budget.max_len, budget.seed);
    Checker::expect(cert.oracle_value <= Rational(3) * sign.family().uniform_sup_norm(),
                    "bound exceeded");
    Checker::expect(cert.oracle_value <= cert.claimed, "oracle exceeded the exact defect");
    return std::to_string(cert.pairs_checked) + " pairs at K=" + std::to_string(budget.max_exp) +
           " L=" + std::to_string(budget.max_len) + (cert.sampled ? " (sampled)" : "");
  });

  c.run("two-path homogenization", [&] {
    for (const FreeQM* g : {&sign, &delta}) {
      Rational defect = g->defect_exact();
      for (const Word& x : enumerate_words(st, 2, 3)) {
        Rational closed = homogenize_closed_form(*g, x);
        auto [est, err] = homogenize_limit(*g, x, 256);
        Checker::expect((closed - est).abs() <= err, "limit disagrees for " + x.str());
        Checker::expect(err == defect / Rational(256), "wrong error bound");
      }
    }
    return "n = 256, all words K=2 L=3";
  });

  c.run("homogeneity and conjugation invariance", [&] {
    std::mt19937_64 rng(budget.seed);
    auto pool = enumerate_words(st, 2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (const Word& x : pool) {
      Rational hx = homogenize_closed_form(sign, x);
      for (long long m = -5; m <= 5; ++m)
        Checker::expect(homogenize_closed_form(sign, power(x, m)) == Rational(m) * hx,
                        "homogeneity failed for " + x.str());
      for (int i = 0; i < 3; ++i)
        Checker::expect(homogenize_closed_form(sign, conjugate(pool[pick(rng)], x)) == hx,
                        "conjugation invariance failed for " + x.str());
    }
    return "m in [-5, 5], seeded conjugators";
  });

  c.run("norm witness relations on the grid", [&] {
    for (const FreeQM* g : {&sign, &delta})
      for (long long k = -4; k <= 4; ++k)
        for (long long l = -4; l <= 4; ++l) {
          if (k == 0 || l == 0 || k + l == 0) continue;
          gromov_witness(*g, Generator{"s"}, Generator{"t"}, k, l);  // throws on failure
        }
    return "k, l in [-4, 4]";
  });

  c.run("injectivity witnesses", [&] {
    for (const FreeQM* g : {&sign, &delta})
      for (long long l = -3; l <= 3; ++l) {
        if (l == 0) continue;
        for (long long k = -10; k <= 10; ++k)
          injectivity_witness(*g, Generator{"s"}, Generator{"t"}, l, k);  // throws on failure
      }
    return "l in [-3, 3], k in [-10, 10]";
  });

  return c.take();
}

inline std::vector<CheckResult> check_free_products(const SuiteBudget& budget) {
  using detail::Checker;
  Checker c("free_products");
  FactorFamily fam = psl2_factors();
  OddMapFamily sigma;
  sigma.set(OddBoundedMap::cyclic_free(fam.at("A"), {}));
  sigma.set(OddBoundedMap::cyclic_free(fam.at("B"), {Rational(1)}));

  c.run("normal-form laws", [&] {
    std::vector<FPWord> pool;
    std::vector<FPLetter> stack;
    auto rec = [&](auto&& self, int remaining) -> void {
      pool.push_back(FPWord::reduce(fam, std::vector<FPLetter>(stack)));
      if (remaining == 0) return;
      for (const char* f : {"A", "B"}) {
        if (!stack.empty() && stack.back().factor == f) continue;
        for (long e = 1; e <= (f[0] == 'A' ? 1 : 2); ++e) {
          stack.push_back(FPLetter{f, BigInt(e)});
          self(self, remaining - 1);
          stack.pop_back();
        }
      }
    };
    rec(rec, 4);
    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 300; ++i) {
      const FPWord& x = pool[pick(rng)];
      const FPWord& y = pool[pick(rng)];
      const FPWord& z = pool[pick(rng)];
      Checker::expect(fp_multiply(fam, fp_multiply(fam, x, y), z) ==
                          fp_multiply(fam, x, fp_multiply(fam, y, z)),
                      "associativity failed");
      Checker::expect(fp_multiply(fam, x, fp_invert(fam, x)).is_identity(), "inverse failed");
    }
    Rational bound = Rational(3) * sigma.uniform_sup_norm();
    for (const auto& x : pool)
      for (const auto& y : pool)
        Checker::expect(fp_coboundary(fam, sigma, x, y).abs() <= bound, "bound exceeded");
    return std::to_string(pool.size()) + " words of length <= 4";
  });

  c.run("odd map dimensions", [&] {
    for (long n = 2; n <= 12; ++n)
      Checker::expect(*odd_map_dimension(FactorGroup::cyclic("G", n)) == (n - 1) / 2,
                      "dimension formula failed at n=" + std::to_string(n));
    Checker::expect(*v0_dimension(fam) == 1, "modular-group family dimension");
    return "n = 2..12, total for the modular group = 1";
  });

  c.run("matrix parser round trip", [&] {
    long checked = 0;
    for (long long a = -20; a <= 20; ++a)
      for (long long b = -20; b <= 20; ++b)
        for (long long cc = -20; cc <= 20; ++cc) {
          long long num = 1 + b * cc;
          if (a == 0 || num % a != 0) continue;
          long long d = num / a;
          if (d < -20 || d > 20) continue;
          Mat2 m{a, b, cc, d};
          Checker::expect(projectively_equal(psl2_matrix(psl2_parse(m)), m),
                          "round trip failed for " + m.str());
          ++checked;
        }
    return std::to_string(checked) + " unimodular matrices, entries in [-20, 20]";
  });

  c.run("translation powers evaluate linearly", [&] {
    for (long long k = -20; k <= 20; ++k)
      Checker::expect(psl2_qm(sigma, Mat2{1, k, 0, 1}) == Rational(k),
                      "wrong value at k=" + std::to_string(k));
    return "k in [-20, 20]";
  });

  return c.take();
}

inline std::vector<CheckResult> check_metric_targets(const SuiteBudget& budget) {
  using detail::Checker;
  Checker c("metric_targets");
  const Alphabet& st = detail::st_alphabet();

  c.run("bi-invariance on random triples", [&] {
    std::mt19937_64 rng(budget.seed);
    RealLine r;
    CircleGroup u1;
    UnitaryGroup u2(2);
    std::uniform_real_distribution<double> real(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
      double g = real(rng), x = real(rng), y = real(rng);
      Checker::expect(std::abs(r.distance(r.mul(g, x), r.mul(g, y)) - r.distance(x, y)) <= 1e-9 &&
                          std::abs(r.distance(r.mul(x, g), r.mul(y, g)) - r.distance(x, y)) <= 1e-9,
                      "real line");
      double ga = CircleGroup::wrap(real(rng)), xa = CircleGroup::wrap(real(rng)),
             ya = CircleGroup::wrap(real(rng));
      Checker::expect(
          std::abs(u1.distance(u1.mul(ga, xa), u1.mul(ga, ya)) - u1.distance(xa, ya)) <= 1e-9 &&
              std::abs(u1.distance(u1.mul(xa, ga), u1.mul(ya, ga)) - u1.distance(xa, ya)) <= 1e-9,
          "circle");
    }
    for (int i = 0; i < 200; ++i) {
      UnitaryGroup u(2);
      CMat g = random_unitary(rng, 2), x = random_unitary(rng, 2), y = random_unitary(rng, 2);
      Checker::expect(
          std::abs(u.distance(u.mul(g, x), u.mul(g, y)) - u.distance(x, y)) <= 1e-9 &&
              std::abs(u.distance(u.mul(x, g), u.mul(y, g)) - u.distance(x, y)) <= 1e-9,
          "unitary");
    }
    return "1000 real/circle, 200 unitary triples";
  });

  c.run("defect scan within bound, cancellations at zero", [&] {
    CircleGroup u1;
    auto sig = GroupSequence<CircleGroup>::sign_form(u1, 0.3);
    auto rep = eps_defect_bruteforce(u1, sig, st, 2, 3);
    Checker::expect(rep.observed_max <= rep.bound_claimed + 1e-9, "circle bound");
    Checker::expect(rep.cancellation_pairs > 0 && rep.max_cancellation_distance <= 1e-9,
                    "circle cancellation");
    return "circle, K=2 L=3";
  });

  c.run("real-line path matches the rational one", [&] {
    RealLine r;
    auto sig = GroupSequence<RealLine>::sign_form(r, 1.0);
    auto rep = eps_defect_bruteforce(r, sig, st, 2, 3);
    FreeQM g = FreeQM::with_shared_sequence(st, SequenceSpec::sign(Rational(1)));
    auto cert = defect_bruteforce(g, 2, 3, budget.seed);
    Checker::expect(rep.observed_max == cert.oracle_value.to_double(), "defect differs");
    for (const Word& x : enumerate_words(st, 2, 2))
      Checker::expect(grp_eval(r, sig, x) == g.eval(x).to_double(), "value differs at " + x.str());
    return "bit-for-bit over K=2 L=3";
  });

  c.run("probe verdicts", [&] {
    CircleGroup u1;
    Checker::expect(
        small_subgroup_probe(u1, std::numbers::pi / 4, 0.5, 100) == ProbeVerdict::escapes,
        "pi/4 should escape");
    Checker::expect(small_subgroup_probe(u1, 0.0, 0.5, 100) == ProbeVerdict::periodic_small,
                    "identity should be periodic");
    Checker::expect(small_subgroup_probe(u1, 1e-9, 0.5, 100) == ProbeVerdict::inconclusive,
                    "tiny rotation should be inconclusive");
    return "";
  });

  c.run("non-triviality hypothesis logic", [&] {
    CircleGroup u1(2.0);
    Checker::expect(
        nontriviality_check(u1, GroupSequence<CircleGroup>::sign_form(u1, 0.3), 2.0).applicable,
        "0.3 vs 2.0 should apply");
    Checker::expect(
        !nontriviality_check(u1, GroupSequence<CircleGroup>::table(u1, {}), 2.0).applicable,
        "trivial sigma should not apply");
    Checker::expect(
        !nontriviality_check(u1, GroupSequence<CircleGroup>::sign_form(u1, 1.5), 2.0).applicable,
        "1.5 vs 2.0 should not apply");
    return "";
  });

  return c.take();
}

inline std::vector<CheckResult> check_twisted(const SuiteBudget& budget) {
  using detail::Checker;
  Checker c("twisted");
  const Alphabet& st = detail::st_alphabet();

  c.run("oddness and coboundary bound for seeded reps", [&] {
    std::mt19937_64 rng(budget.seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    auto pool = enumerate_words(st, 2, 3);
    for (int trial = 0; trial < 5; ++trial) {
      UnitaryRep rep(2, {{"s", random_unitary(rng, 2)}, {"t", random_unitary(rng, 2)}});
      std::map<std::string, std::vector<CVec>> tables;
      for (const char* gen : {"s", "t"}) {
        std::vector<CVec> vecs;
        for (int k = 0; k < 2; ++k) {
          CVec v(2);
          for (auto& z : v) z = cplx(coord(rng), coord(rng));
          vecs.push_back(std::move(v));
        }
        tables[gen] = std::move(vecs);
      }
      TwistedSequence sigma(2, std::move(tables));
      Checker::expect(twisted_oddness_defect(rep, sigma) <= 1e-9, "oddness violated");
      double bound = 3 * sigma.sup_norm() + 1e-9;
      for (const Word& x : pool)
        for (const Word& y : pool)
          Checker::expect(vec_norm(twisted_coboundary(rep, sigma, x, y)) <= bound,
                          "bound violated at (" + x.str() + ", " + y.str() + ")");
    }
    return "5 seeded reps at d=2, pairs K=2 L=3";
  });

  c.run("trivial representation reduces to the scalar path", [&] {
    UnitaryRep rep(2, {{"s", CMat::identity(2)}, {"t", CMat::identity(2)}});
    std::map<std::string, std::vector<CVec>> tables;
    tables["s"] = {CVec{1.0, 0.0}};
    tables["t"] = {CVec{1.0, 0.0}};
    TwistedSequence sigma(2, std::move(tables));
    FreeQM g = FreeQM::with_shared_sequence(st, SequenceSpec::finite_table({Rational(1)}));
    for (const Word& x : enumerate_words(st, 2, 3)) {
      CVec v = twisted_eval(rep, sigma, x);
      Checker::expect(v[0] == cplx(g.eval(x).to_double()) && v[1] == cplx(0.0),
                      "reduction failed at " + x.str());
    }
    return "delta sequence in coordinate 0";
  });

  c.run("unitarity preserved along long words", [&] {
    std::mt19937_64 rng(budget.seed + 1);
    UnitaryRep rep(4, {{"s", random_unitary(rng, 4)}, {"t", random_unitary(rng, 4)}});
    std::vector<Syllable> raw;
    for (int i = 0; i < 64; ++i)
      raw.push_back(Syllable{i % 2 == 0 ? "s" : "t", BigInt(1 + static_cast<long>(rng() % 3))});
    Checker::expect(unitarity_defect(rep.apply(Word::reduce(std::move(raw)))) <= 1e-9,
                    "drift beyond 1e-9");
    return "length-64 word at d=4";
  });

  return c.take();
}

inline std::vector<CheckResult> run_all_checks(const SuiteBudget& budget) {
  std::vector<CheckResult> all;
  for (auto* fn : {check_words, check_sequences, check_qm_core, check_free_products,
                   check_metric_targets, check_twisted}) {
    auto part = fn(budget);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace qm
