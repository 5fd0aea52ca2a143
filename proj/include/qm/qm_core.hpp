#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qm/errors.hpp"
#include "qm/rational.hpp"
#include "qm/sequences.hpp"
#include "qm/words.hpp"

namespace qm {

inline constexpr std::uint64_t kDefaultSeed = 1729;

// Quasi-morphism on a free group built from a family of bounded odd
// sequences: a word evaluates to the sum of sigma_s(k) over its syllables
// s^k. The deviation from additivity is controlled by the sequence data
// alone, which is what every certificate in this module exploits.
class FreeQM {
 public:
  FreeQM(Alphabet alphabet, SequenceFamily family)
      : alphabet_(std::move(alphabet)), family_(std::move(family)) {
    if (alphabet_.size() < 2) throw ConfigError("quasi-morphism needs at least 2 generators");
    for (const auto& g : alphabet_.generators())
      family_.at(g.name);  // throws if uncovered
  }

  static FreeQM with_shared_sequence(Alphabet alphabet, const SequenceSpec& spec) {
    SequenceFamily fam = SequenceFamily::shared(alphabet, spec);
    return FreeQM(std::move(alphabet), std::move(fam));
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const SequenceFamily& family() const { return family_; }

  Rational eval(const Word& x) const {
    Rational sum;
    for (const auto& s : x.syllables()) sum += family_.at(s.gen).eval(s.exp);
    return sum;
  }

  Rational operator()(const Word& x) const { return eval(x); }

  Rational coboundary(const Word& x, const Word& y) const {
    return eval(x) + eval(y) - eval(multiply(x, y));
  }

  // Largest per-generator sequence defect. For a shared sequence this is the
  // exact defect of the quasi-morphism; the brute-force certificate checks
  // the same value from the word side.
  Rational defect_exact() const {
    Rational m;
    for (const auto& [_, spec] : family_)
      if (spec.defect() > m) m = spec.defect();
    return m;
  }

  long max_window() const {
    long w = 1;
    for (const auto& [_, spec] : family_)
      if (spec.window() > w) w = spec.window();
    return w;
  }

 private:
  Alphabet alphabet_;
  SequenceFamily family_;
};

// f(x) + f(y) - f(xy) for any evaluation contract f : Word -> Rational.
template <class F>
Rational coboundary(F&& f, const Word& x, const Word& y) {
  return f(x) + f(y) - f(multiply(x, y));
}

struct DefectCertificate {
  Rational claimed;       // exact sequence defect
  Rational oracle_value;  // max |coboundary| over the enumerated pairs
  Word witness_x, witness_y;
  long max_exp = 0, max_len = 0;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t pairs_checked = 0;
  bool sampled = false;

  // Enumeration covers every cancellation pattern of the defect once words
  // of length 2 with exponents up to the sequence window are present.
  bool coverage_met(long window) const { return max_len >= 2 && max_exp >= window; }
  bool agrees() const { return oracle_value == claimed; }
};

// Scans pairs of enumerated words for the largest coboundary. All pairs for
// max_len <= 3; beyond that a seeded random sample of 10^6 pairs keeps the
// run desk-scale.
inline DefectCertificate defect_bruteforce(const FreeQM& qm, long max_exp, long max_len,
                                           std::uint64_t seed = kDefaultSeed) {
  if (max_exp < 1 || max_len < 1) throw ConfigError("defect budget must be >= 1");
  std::vector<Word> words = enumerate_words(qm.alphabet(), max_exp, max_len);
  std::vector<Rational> values;
  values.reserve(words.size());
  for (const auto& w : words) values.push_back(qm.eval(w));

  DefectCertificate cert;
  cert.claimed = qm.defect_exact();
  cert.max_exp = max_exp;
  cert.max_len = max_len;
  cert.seed = seed;
  cert.sampled = max_len > 3;

  auto consider = [&](std::size_t i, std::size_t j) {
    Rational d = (values[i] + values[j] - qm.eval(multiply(words[i], words[j]))).abs();
    ++cert.pairs_checked;
    if (d > cert.oracle_value) {
      cert.oracle_value = d;
      cert.witness_x = words[i];
      cert.witness_y = words[j];
    }
  };

  if (!cert.sampled) {
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = 0; j < words.size(); ++j) consider(i, j);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (std::uint64_t n = 0; n < 1000000; ++n) consider(pick(rng), pick(rng));
  }
  return cert;
}

// Evaluates the quasi-morphism on (s^l t^l)^k and checks the closed form
// k (sigma_s(l) + sigma_t(l)); with one shared sequence this is 2k sigma(l),
// the unboundedness witness that separates distinct sequences.
inline Rational injectivity_witness(const FreeQM& qm, const Generator& s, const Generator& t,
                                    long long l, long long k) {
  if (s == t) throw ConfigError("witness needs two distinct generators");
  Word base = Word::reduce({Syllable{s.name, BigInt(l)}, Syllable{t.name, BigInt(l)}});
  Rational actual = qm.eval(power(base, k));
  Rational expected = Rational(k) * (qm.family().at(s.name).eval(BigInt(l)) +
                                     qm.family().at(t.name).eval(BigInt(l)));
  if (actual != expected)
    throw VerificationError("injectivity witness mismatch at l=" + std::to_string(l) +
                            " k=" + std::to_string(k) + ": " + actual.str() + " != " +
                            expected.str());
  return actual;
}

// One term of the homogenization limit: f(x^n)/n together with the a-priori
// error bound def(f)/n on its distance to the limit.
template <class F>
std::pair<Rational, Rational> homogenize_limit(F&& f, const Rational& defect, const Word& x,
                                               long long n) {
  if (n < 1) throw ConfigError("homogenization step must be >= 1");
  Rational estimate = f(power(x, n)) / Rational(n);
  return {estimate, defect / Rational(n)};
}

inline std::pair<Rational, Rational> homogenize_limit(const FreeQM& qm, const Word& x,
                                                      long long n) {
  return homogenize_limit([&](const Word& w) { return qm.eval(w); }, qm.defect_exact(), x, n);
}

// Exact homogenization. The closed form g(y) - dg(y,y) holds for words that
// are not powers, but applying it verbatim to a word merely *conjugate* to a
// power gives the wrong value, so the word is cyclically reduced first;
// homogeneous quasi-morphisms are conjugation invariant, which makes
// evaluating on the core legitimate. The limit oracle cross-checks this.
inline Rational homogenize_closed_form(const FreeQM& qm, const Word& x) {
  Word core = cyclically_reduce(x).core;
  if (core.length() <= 1) return Rational(0);  // a power homogenizes to zero
  return qm.eval(core) - qm.coboundary(core, core);
}

inline Rational homogenized_coboundary(const FreeQM& qm, const Word& x, const Word& y) {
  return homogenize_closed_form(qm, x) + homogenize_closed_form(qm, y) -
         homogenize_closed_form(qm, multiply(x, y));
}

struct GromovNormReport {
  Rational defect;            // def sigma = sup-norm of the coboundary cocycle
  Rational hqm_defect_lower;  // |dg_h(x, y)|, a lower bound for the homogenized defect
  Word witness_x, witness_y;
  Rational d;  // the sequence coboundary value the witness pair realizes
  long k = 0, l = 0;
  // Set exactly when the lower bound closes the sandwich
  // defect <= hqm_defect_lower / 2 <= norm <= defect; equals the defect then.
  std::optional<Rational> conclusion;
};

// Builds the witness pair
//   x = s^-k t^-k s t^-l s^k,   y = s^l t^-l s t^-k s^-l
// whose coboundaries load the entire sequence defect into a single
// homogenized value, checks the four exact relations
//   dg(x,y) = d,  dg(x,x) = dg(y,y) = dg(xy,xy) = -d,  d = dsigma(k,l),
// and combines them with the homogenized coboundary identity and the
// norm-vs-defect sandwich to pin the Gromov norm of the class.
inline GromovNormReport gromov_witness(const FreeQM& qm, const Generator& s, const Generator& t,
                                       long long k, long long l) {
  if (s == t) throw ConfigError("witness needs two distinct generators");
  if (k == 0 || l == 0 || k + l == 0)
    throw ConfigError("witness requires k, l, k+l all nonzero");
  const SequenceSpec& sig_s = qm.family().at(s.name);
  const SequenceSpec& sig_t = qm.family().at(t.name);
  if (!(sig_s == sig_t))
    throw ConfigError("norm witness requires the same sequence on both generators");

  Rational d = sig_s.eval(BigInt(k)) + sig_s.eval(BigInt(l)) - sig_s.eval(BigInt(k + l));

  auto syll = [](const Generator& g, long long e) { return Syllable{g.name, BigInt(e)}; };
  Word x = Word::reduce({syll(s, -k), syll(t, -k), syll(s, 1), syll(t, -l), syll(s, k)});
  Word y = Word::reduce({syll(s, l), syll(t, -l), syll(s, 1), syll(t, -k), syll(s, -l)});
  Word xy = multiply(x, y);

  auto relation = [&](const Rational& got, const Rational& want, const char* what) {
    if (got != want)
      throw VerificationError(std::string("witness relation failed: ") + what + " = " +
                              got.str() + ", expected " + want.str());
  };
  relation(qm.coboundary(x, y), d, "dg(x,y)");
  relation(qm.coboundary(x, x), -d, "dg(x,x)");
  relation(qm.coboundary(y, y), -d, "dg(y,y)");
  relation(qm.coboundary(xy, xy), -d, "dg(xy,xy)");

  // coboundary of the homogenization, via the closed form valid off powers
  Rational hd = qm.coboundary(x, y) + qm.coboundary(xy, xy) - qm.coboundary(x, x) -
                qm.coboundary(y, y);
  relation(hd, Rational(2) * d, "dg_h(x,y)");

  GromovNormReport report;
  report.defect = qm.defect_exact();
  report.hqm_defect_lower = hd.abs();
  report.witness_x = x;
  report.witness_y = y;
  report.d = d;
  report.k = static_cast<long>(k);
  report.l = static_cast<long>(l);
  if (report.hqm_defect_lower >= Rational(2) * report.defect)
    report.conclusion = report.defect;
  return report;
}

// Convenience: run the norm certificate at the argmax of the sequence defect.
inline GromovNormReport gromov_witness_at_argmax(const FreeQM& qm, const Generator& s,
                                                 const Generator& t) {
  const SequenceSpec& spec = qm.family().at(s.name);
  auto [k, l] = spec.defect_argmax();
  return gromov_witness(qm, s, t, k, l);
}

}  // namespace qm
