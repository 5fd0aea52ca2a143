#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qm/bigint.hpp"
#include "qm/errors.hpp"
#include "qm/linalg.hpp"
#include "qm/words.hpp"

namespace qm {

// Finite-dimensional unitary representation of the free group, given by the
// generator images and extended multiplicatively.
class UnitaryRep {
 public:
  UnitaryRep(std::size_t dim, std::map<std::string, CMat> images)
      : dim_(dim), images_(std::move(images)) {
    if (images_.size() < 2) throw ConfigError("representation needs at least 2 generators");
    for (const auto& [gen, u] : images_) {
      if (u.dim() != dim_)
        throw ConfigError("image of '" + gen + "' has wrong dimension");
      if (!approx_unitary(u, 1e-9))
        throw ConfigError("image of '" + gen + "' is not unitary within 1e-9");
    }
  }

  std::size_t dim() const { return dim_; }

  const CMat& image(const std::string& gen) const {
    auto it = images_.find(gen);
    if (it == images_.end()) throw ConfigError("no image for generator '" + gen + "'");
    return it->second;
  }

  CMat power(const std::string& gen, const BigInt& k) const {
    return unitary_power(image(gen), k.to_longlong());
  }

  CMat apply(const Word& x) const {
    CMat acc = CMat::identity(dim_);
    int count = 0;
    for (const auto& s : x.syllables()) {
      acc = acc * power(s.gen, s.exp);
      if (++count % 64 == 0) reorthonormalize(acc);
    }
    return acc;
  }

  std::vector<std::string> generators() const {
    std::vector<std::string> out;
    for (const auto& [gen, _] : images_) out.push_back(gen);
    return out;
  }

 private:
  std::size_t dim_;
  std::map<std::string, CMat> images_;
};

// Per-generator table sigma_s(1..K) of vectors, extended by sigma_s(0) = 0
// and the twisted oddness rule sigma_s(-k) = -pi(s^-k) sigma_s(k), which is
// exactly what makes sigma_s(k) + pi(s^k) sigma_s(-k) vanish.
class TwistedSequence {
 public:
  TwistedSequence(std::size_t dim, std::map<std::string, std::vector<CVec>> tables)
      : dim_(dim), tables_(std::move(tables)) {
    for (const auto& [gen, vecs] : tables_)
      for (const auto& v : vecs)
        if (v.size() != dim_)
          throw ConfigError("sequence vector for '" + gen + "' has wrong dimension");
  }

  std::size_t dim() const { return dim_; }

  long window() const {
    long w = 1;
    for (const auto& [_, vecs] : tables_)
      w = std::max(w, static_cast<long>(vecs.size()));
    return w;
  }

  CVec eval(const UnitaryRep& rep, const std::string& gen, const BigInt& k) const {
    CVec zero(dim_, cplx(0.0));
    if (k.is_zero()) return zero;
    auto it = tables_.find(gen);
    if (it == tables_.end()) throw ConfigError("no sequence for generator '" + gen + "'");
    const auto& vecs = it->second;
    BigInt a = k.abs();
    if (a > BigInt(static_cast<long long>(vecs.size()))) return zero;
    const CVec& positive = vecs[static_cast<std::size_t>(a.to_longlong()) - 1];
    if (k.sign() > 0) return positive;
    return vec_neg(mat_vec(rep.power(gen, k), positive));
  }

  // The unitary extension preserves norms, so the sup over the tables is the
  // sup over all of Z.
  double sup_norm() const {
    double m = 0;
    for (const auto& [_, vecs] : tables_)
      for (const auto& v : vecs) m = std::max(m, vec_norm(v));
    return m;
  }

 private:
  std::size_t dim_;
  std::map<std::string, std::vector<CVec>> tables_;
};

// Largest violation of sigma_s(k) + pi(s^k) sigma_s(-k) = 0 over the window;
// zero up to rounding by construction, verified rather than assumed.
inline double twisted_oddness_defect(const UnitaryRep& rep, const TwistedSequence& sigma) {
  double worst = 0;
  for (const auto& gen : rep.generators()) {
    for (long k = -sigma.window(); k <= sigma.window(); ++k) {
      CVec lhs = vec_add(sigma.eval(rep, gen, BigInt(k)),
                         mat_vec(rep.power(gen, BigInt(k)), sigma.eval(rep, gen, BigInt(-k))));
      worst = std::max(worst, vec_norm(lhs));
    }
  }
  return worst;
}

// g(x) = sum_i pi(x_0 ... x_{i-1}) sigma_{s_i}(k_i) over the factorization.
inline CVec twisted_eval(const UnitaryRep& rep, const TwistedSequence& sigma, const Word& x) {
  CVec sum(rep.dim(), cplx(0.0));
  CMat prefix = CMat::identity(rep.dim());
  int count = 0;
  for (const auto& s : x.syllables()) {
    sum = vec_add(sum, mat_vec(prefix, sigma.eval(rep, s.gen, s.exp)));
    prefix = prefix * rep.power(s.gen, s.exp);
    if (++count % 64 == 0) reorthonormalize(prefix);
  }
  return sum;
}

// Degree-one twisted coboundary: pi(x) f(y) - f(xy) + f(x).
inline CVec twisted_coboundary(const UnitaryRep& rep, const TwistedSequence& sigma, const Word& x,
                               const Word& y) {
  CVec fy = mat_vec(rep.apply(x), twisted_eval(rep, sigma, y));
  CVec fxy = twisted_eval(rep, sigma, multiply(x, y));
  CVec fx = twisted_eval(rep, sigma, x);
  return vec_add(vec_sub(fy, fxy), fx);
}

}  // namespace qm
