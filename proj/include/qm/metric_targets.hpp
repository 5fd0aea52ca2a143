#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qm/bigint.hpp"
#include "qm/errors.hpp"
#include "qm/linalg.hpp"
#include "qm/words.hpp"

namespace qm {

// Target groups carry a bi-invariant metric and a configured
// no-small-subgroup constant. The constant is configuration, not derivation:
// it is whatever epsilon the user asserts for their group.
template <class G>
concept MetricGroupLike = requires(const G& g, const typename G::Elem& a,
                                   const typename G::Elem& b, typename G::Elem& mut) {
  { g.identity() } -> std::convertible_to<typename G::Elem>;
  { g.mul(a, b) } -> std::convertible_to<typename G::Elem>;
  { g.inverse(a) } -> std::convertible_to<typename G::Elem>;
  { g.distance(a, b) } -> std::convertible_to<double>;
  { g.nss_epsilon() } -> std::convertible_to<double>;
  { g.renormalize(mut) };
  { g.validate(a) };
};

// (R, +) with |x - y|; every eps-small subgroup is trivial.
class RealLine {
 public:
  using Elem = double;
  RealLine() = default;
  Elem identity() const { return 0.0; }
  Elem mul(Elem a, Elem b) const { return a + b; }
  Elem inverse(Elem a) const { return -a; }
  double distance(Elem a, Elem b) const { return std::abs(a - b); }
  double nss_epsilon() const { return std::numeric_limits<double>::infinity(); }
  void renormalize(Elem&) const {}
  void validate(Elem) const {}
  static constexpr const char* name() { return "reals"; }
};

// U(1) as angles with the angular distance; default epsilon 2.0.
class CircleGroup {
 public:
  using Elem = double;  // angle in (-pi, pi]
  explicit CircleGroup(double nss_eps = 2.0) : eps_(nss_eps) {}

  static double wrap(double theta) {
    const double two_pi = 2 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta <= -std::numbers::pi) theta += two_pi;
    if (theta > std::numbers::pi) theta -= two_pi;
    return theta;
  }

  Elem identity() const { return 0.0; }
  Elem mul(Elem a, Elem b) const { return wrap(a + b); }
  Elem inverse(Elem a) const { return wrap(-a); }
  double distance(Elem a, Elem b) const { return std::abs(wrap(a - b)); }
  double nss_epsilon() const { return eps_; }
  void renormalize(Elem& a) const { a = wrap(a); }
  void validate(Elem) const {}
  static constexpr const char* name() { return "u1"; }

 private:
  double eps_;
};

// U(d) with the operator-norm distance; default epsilon 0.5.
class UnitaryGroup {
 public:
  using Elem = CMat;
  explicit UnitaryGroup(std::size_t dim, double nss_eps = 0.5) : dim_(dim), eps_(nss_eps) {
    if (dim < 1) throw ConfigError("unitary target needs dimension >= 1");
  }

  std::size_t dim() const { return dim_; }
  Elem identity() const { return CMat::identity(dim_); }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inverse(const Elem& a) const { return a.adjoint(); }
  double distance(const Elem& a, const Elem& b) const { return operator_norm(a - b); }
  double nss_epsilon() const { return eps_; }
  void renormalize(Elem& a) const { reorthonormalize(a); }

  void validate(const Elem& a) const {
    if (a.dim() != dim_) throw ConfigError("unitary element has wrong dimension");
    if (!approx_unitary(a, 1e-9))
      throw ConfigError("matrix is not unitary within 1e-9");
  }

  static constexpr const char* name() { return "unitary"; }

 private:
  std::size_t dim_;
  double eps_;
};

// Bounded odd map Z -> G from finite data: a table sigma(1..K) (identity
// beyond the support) or a single sign element. Negative arguments take the
// inverse, sigma(0) = e.
template <MetricGroupLike G>
class GroupSequence {
 public:
  static GroupSequence table(const G& g, std::vector<typename G::Elem> values) {
    for (const auto& v : values) g.validate(v);
    GroupSequence s;
    s.table_ = std::move(values);
    return s;
  }

  static GroupSequence sign_form(const G& g, typename G::Elem c) {
    g.validate(c);
    GroupSequence s;
    s.sign_ = true;
    s.table_ = {std::move(c)};
    return s;
  }

  typename G::Elem eval(const G& g, const BigInt& k) const {
    if (k.is_zero()) return g.identity();
    BigInt a = k.abs();
    typename G::Elem v = g.identity();
    if (sign_) {
      v = table_[0];
    } else if (a <= BigInt(static_cast<long long>(table_.size()))) {
      v = table_[static_cast<std::size_t>(a.to_longlong()) - 1];
    }
    return k.sign() < 0 ? g.inverse(v) : v;
  }

  double sup_norm(const G& g) const {
    double m = 0;
    for (const auto& v : table_) m = std::max(m, g.distance(v, g.identity()));
    return m;
  }

  long window() const { return sign_ ? 1 : std::max<long>(1, static_cast<long>(table_.size())); }

 private:
  std::vector<typename G::Elem> table_;
  bool sign_ = false;
};

// g(x): ordered product of sigma(k_i) over the syllables; order matters for
// nonabelian targets. Long products are re-projected every 64 factors.
template <MetricGroupLike G>
typename G::Elem grp_eval(const G& g, const GroupSequence<G>& sigma, const Word& x) {
  typename G::Elem acc = g.identity();
  int count = 0;
  for (const auto& s : x.syllables()) {
    acc = g.mul(acc, sigma.eval(g, s.exp));
    if (++count % 64 == 0) g.renormalize(acc);
  }
  return acc;
}

struct EpsRepReport {
  double bound_claimed = 0;  // 3 * sup norm
  double observed_max = 0;   // max distance d(g(xy), g(x)g(y)) over the pairs
  Word witness_x, witness_y;
  std::uint64_t pairs_checked = 0;
  // pairs whose product cancels completely at the junction; those must sit
  // at distance (numerically) zero
  std::uint64_t cancellation_pairs = 0;
  double max_cancellation_distance = 0;
};

template <MetricGroupLike G>
EpsRepReport eps_defect_bruteforce(const G& g, const GroupSequence<G>& sigma,
                                   const Alphabet& alphabet, long max_exp, long max_len) {
  EpsRepReport report;
  report.bound_claimed = 3 * sigma.sup_norm(g);
  std::vector<Word> words = enumerate_words(alphabet, max_exp, max_len);
  std::vector<typename G::Elem> values;
  values.reserve(words.size());
  for (const auto& w : words) values.push_back(grp_eval(g, sigma, w));

  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      typename G::Elem lhs = grp_eval(g, sigma, multiply(words[i], words[j]));
      double dist = g.distance(lhs, g.mul(values[i], values[j]));
      ++report.pairs_checked;
      if (dist > report.observed_max) {
        report.observed_max = dist;
        report.witness_x = words[i];
        report.witness_y = words[j];
      }
      if (junction_fully_cancels(words[i], words[j])) {
        ++report.cancellation_pairs;
        report.max_cancellation_distance = std::max(report.max_cancellation_distance, dist);
      }
    }
  }
  if (report.observed_max > report.bound_claimed + 1e-9)
    throw VerificationError("quasi-morphism bound violated: observed " +
                            std::to_string(report.observed_max) + " > 3*sup = " +
                            std::to_string(report.bound_claimed));
  return report;
}

enum class ProbeVerdict { escapes, periodic_small, inconclusive };

inline const char* to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::escapes:
      return "escapes";
    case ProbeVerdict::periodic_small:
      return "periodic_small";
    case ProbeVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

// Iterates powers of one element against the ball B_eps(e). Cannot decide
// density (irrational rotations never come back exactly), hence the third
// verdict.
template <MetricGroupLike G>
ProbeVerdict small_subgroup_probe(const G& g, const typename G::Elem& elem, double eps,
                                  long max_iter) {
  if (max_iter < 1) throw ConfigError("probe needs max_iter >= 1");
  typename G::Elem h = elem;
  for (long i = 1; i <= max_iter; ++i) {
    double dist = g.distance(h, g.identity());
    if (dist > eps) return ProbeVerdict::escapes;
    if (dist <= 1e-12) return ProbeVerdict::periodic_small;
    h = g.mul(h, elem);
    if (i % 64 == 0) g.renormalize(h);
  }
  return ProbeVerdict::inconclusive;
}

struct WitnessProbe {
  std::string label;
  ProbeVerdict verdict = ProbeVerdict::inconclusive;
};

struct NontrivialityReport {
  bool applicable = false;  // hypothesis 0 < sup < eps/2 holds
  std::string reason;
  double sup_norm = 0;
  double eps = 0;
  std::vector<WitnessProbe> probes;
};

// Hypothesis check for non-triviality: with 0 < ||sigma|| < eps/2 no
// homomorphism stays within ||sigma|| of g_sigma. The probes run the
// constructive part on the elements g_sigma(s^l t^+-1) whose cyclic groups
// the argument forces to be small.
template <MetricGroupLike G>
NontrivialityReport nontriviality_check(const G& g, const GroupSequence<G>& sigma, double eps,
                                        long max_iter = 256) {
  NontrivialityReport report;
  report.sup_norm = sigma.sup_norm(g);
  report.eps = eps;
  if (report.sup_norm == 0.0) {
    report.reason = "sigma is trivial";
    return report;
  }
  if (report.sup_norm >= eps / 2) {
    report.reason = "sup norm not below eps/2";
    return report;
  }
  report.applicable = true;
  report.reason = "0 < sup norm < eps/2";
  for (long l = 1; l <= sigma.window(); ++l) {
    for (int dir : {1, -1}) {
      typename G::Elem elem =
          g.mul(sigma.eval(g, BigInt(l)), sigma.eval(g, BigInt(dir)));
      WitnessProbe probe;
      probe.label = "s^" + std::to_string(l) + (dir == 1 ? " t" : " t^-1");
      probe.verdict = small_subgroup_probe(g, elem, eps, max_iter);
      report.probes.push_back(std::move(probe));
    }
  }
  return report;
}

}  // namespace qm
