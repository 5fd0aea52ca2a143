#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qm/bigint.hpp"
#include "qm/errors.hpp"
#include "qm/rational.hpp"
#include "qm/words.hpp"

namespace qm {

enum class SeqForm { finite, periodic, sign };

// A bounded odd integer sequence given by finite data. Three forms:
//   finite    sigma(k) = values[k-1] for 1 <= k <= K, 0 beyond
//   periodic  sigma(k) = values[(k-1) mod p] for k >= 1
//   sign      sigma(k) = amplitude for k >= 1
// Negative arguments follow the odd extension sigma(-k) = -sigma(k), and
// sigma(0) = 0. Values are exact rationals throughout.
class SequenceSpec {
 public:
  static SequenceSpec finite_table(std::vector<Rational> values) {
    SequenceSpec s;
    s.form_ = SeqForm::finite;
    s.values_ = std::move(values);
    return s;
  }

  static SequenceSpec periodic(std::vector<Rational> values) {
    if (values.empty()) throw ConfigError("periodic sequence needs at least one value");
    SequenceSpec s;
    s.form_ = SeqForm::periodic;
    s.values_ = std::move(values);
    return s;
  }

  static SequenceSpec sign(Rational amplitude) {
    SequenceSpec s;
    s.form_ = SeqForm::sign;
    s.amplitude_ = std::move(amplitude);
    return s;
  }

  static SequenceSpec zero() { return finite_table({}); }

  SeqForm form() const { return form_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& amplitude() const { return amplitude_; }

  Rational eval(const BigInt& k) const {
    if (k.is_zero()) return Rational(0);
    BigInt a = k.abs();
    Rational v;
    switch (form_) {
      case SeqForm::finite: {
        if (a <= BigInt(static_cast<long long>(values_.size())))
          v = values_[static_cast<std::size_t>(a.to_longlong()) - 1];
        break;
      }
      case SeqForm::periodic: {
        BigInt idx = (a - BigInt(1)) % BigInt(static_cast<long long>(values_.size()));
        v = values_[static_cast<std::size_t>(idx.to_longlong())];
        break;
      }
      case SeqForm::sign:
        v = amplitude_;
        break;
    }
    return k.sign() < 0 ? -v : v;
  }

  Rational sup_norm() const {
    if (form_ == SeqForm::sign) return amplitude_.abs();
    Rational m;
    for (const auto& v : values_)
      if (v.abs() > m) m = v.abs();
    return m;
  }

  // Support bound K, period p, or 1 for the sign form. The defect of the
  // sequence is realized inside a window of three times this size.
  long window() const {
    switch (form_) {
      case SeqForm::finite:
        return values_.empty() ? 1 : static_cast<long>(values_.size());
      case SeqForm::periodic:
        return static_cast<long>(values_.size());
      case SeqForm::sign:
        return 1;
    }
    return 1;
  }

  // max |sigma(k) + sigma(l) - sigma(k+l)| over k,l in [-W, W].
  Rational defect_window_oracle(long W) const {
    if (W < 1) throw ConfigError("defect window must be >= 1");
    Rational best;
    for (long k = -W; k <= W; ++k) {
      Rational sk = eval(BigInt(k));
      for (long l = -W; l <= W; ++l) {
        Rational d = (sk + eval(BigInt(l)) - eval(BigInt(k + l))).abs();
        if (d > best) best = d;
      }
    }
    return best;
  }

  // Exact defect. Outside the window 3K all sigma-values vanish or repeat, so
  // every triple appearing in the coboundary is realized inside it; computing
  // at twice the window and demanding equality guards that argument.
  Rational defect() const {
    long W = 3 * window();
    Rational v = defect_window_oracle(W);
    Rational v2 = defect_window_oracle(2 * W);
    if (v != v2)
      throw VerificationError("sequence defect did not stabilize: " + v.str() + " at W=" +
                              std::to_string(W) + " vs " + v2.str() + " at 2W");
    return v;
  }

  // Argmax pair of the defect with k, l, k+l all nonzero; such a pair always
  // realizes the defect since the coboundary vanishes whenever k, l or k+l
  // is zero. Falls back to (1, 1) for the zero sequence.
  std::pair<long, long> defect_argmax() const {
    long W = 3 * window();
    Rational best;
    std::pair<long, long> arg{1, 1};
    for (long k = -W; k <= W; ++k) {
      if (k == 0) continue;
      for (long l = -W; l <= W; ++l) {
        if (l == 0 || k + l == 0) continue;
        Rational d = (eval(BigInt(k)) + eval(BigInt(l)) - eval(BigInt(k + l))).abs();
        if (d > best) {
          best = d;
          arg = {k, l};
        }
      }
    }
    return arg;
  }

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;

 private:
  SeqForm form_ = SeqForm::finite;
  std::vector<Rational> values_;
  Rational amplitude_;
};

// Per-generator assignment of sequences.
class SequenceFamily {
 public:
  SequenceFamily() = default;

  static SequenceFamily shared(const Alphabet& alphabet, const SequenceSpec& spec) {
    SequenceFamily f;
    for (const auto& g : alphabet.generators()) f.by_gen_.emplace(g.name, spec);
    return f;
  }

  void set(const std::string& gen, SequenceSpec spec) {
    by_gen_.insert_or_assign(gen, std::move(spec));
  }

  bool contains(const std::string& gen) const { return by_gen_.count(gen) != 0; }

  const SequenceSpec& at(const std::string& gen) const {
    auto it = by_gen_.find(gen);
    if (it == by_gen_.end()) throw ConfigError("no sequence assigned to generator '" + gen + "'");
    return it->second;
  }

  Rational uniform_sup_norm() const {
    Rational m;
    for (const auto& [_, s] : by_gen_)
      if (s.sup_norm() > m) m = s.sup_norm();
    return m;
  }

  auto begin() const { return by_gen_.begin(); }
  auto end() const { return by_gen_.end(); }
  std::size_t size() const { return by_gen_.size(); }

 private:
  std::map<std::string, SequenceSpec> by_gen_;
};

}  // namespace qm
