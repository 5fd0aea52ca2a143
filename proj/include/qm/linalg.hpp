#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "qm/errors.hpp"

namespace qm {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense square complex matrix, row major. Sized for representation
// dimensions of at most a few dozen; nothing here is blocked or clever.
class CMat {
 public:
  CMat() = default;
  explicit CMat(std::size_t n) : n_(n), a_(n * n) {}

  static CMat identity(std::size_t n) {
    CMat m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return n_; }
  cplx& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  CMat adjoint() const {
    CMat m(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m.at(i, j) = std::conj(at(j, i));
    return m;
  }

  friend CMat operator*(const CMat& x, const CMat& y) {
    if (x.n_ != y.n_) throw ConfigError("matrix dimension mismatch");
    CMat r(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        cplx xi = x.at(i, k);
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < x.n_; ++j) r.at(i, j) += xi * y.at(k, j);
      }
    return r;
  }

  friend CMat operator-(const CMat& x, const CMat& y) {
    if (x.n_ != y.n_) throw ConfigError("matrix dimension mismatch");
    CMat r(x.n_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
  }

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

inline CVec mat_vec(const CMat& m, const CVec& v) {
  if (v.size() != m.dim()) throw ConfigError("matrix/vector dimension mismatch");
  CVec r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

inline CVec vec_add(const CVec& x, const CVec& y) {
  CVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

inline CVec vec_sub(const CVec& x, const CVec& y) {
  CVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

inline CVec vec_neg(const CVec& x) {
  CVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
  return r;
}

inline double vec_norm(const CVec& v) {
  double s = 0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline double max_abs_entry(const CMat& m) {
  double best = 0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) best = std::max(best, std::abs(m.at(i, j)));
  return best;
}

// Largest singular value: power iteration on A*A until the Rayleigh quotient
// moves by less than 1e-12. The fixed quasi-random start vector keeps runs
// reproducible and away from unlucky orthogonal starts.
inline double operator_norm(const CMat& m) {
  const std::size_t n = m.dim();
  if (n == 0) return 0.0;
  if (max_abs_entry(m) == 0.0) return 0.0;
  CMat b = m.adjoint() * m;
  CVec v(n);
  std::minstd_rand lcg(12345);
  for (auto& z : v)
    z = cplx(1.0 + static_cast<double>(lcg() % 1000) / 1000.0,
             static_cast<double>(lcg() % 1000) / 1000.0);
  double scale = vec_norm(v);
  for (auto& z : v) z /= scale;
  double lambda = 0;
  for (int iter = 0; iter < 20000; ++iter) {
    CVec w = mat_vec(b, v);
    double nw = vec_norm(w);
    if (nw == 0.0) return 0.0;
    for (auto& z : w) z /= nw;
    v = std::move(w);
    if (std::abs(nw - lambda) <= 1e-12 * std::max(1.0, nw)) {
      lambda = nw;
      break;
    }
    lambda = nw;
  }
  return std::sqrt(lambda);
}

// Modified Gram-Schmidt on the rows; projects a drifted product back onto
// the unitary group.
inline void reorthonormalize(CMat& m) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      cplx dot = 0;
      for (std::size_t j = 0; j < n; ++j) dot += std::conj(m.at(k, j)) * m.at(i, j);
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) -= dot * m.at(k, j);
    }
    double norm = 0;
    for (std::size_t j = 0; j < n; ++j) norm += std::norm(m.at(i, j));
    norm = std::sqrt(norm);
    if (norm == 0.0) throw Error("cannot orthonormalize a singular matrix");
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) /= norm;
  }
}

inline double unitarity_defect(const CMat& m) {
  return max_abs_entry(m * m.adjoint() - CMat::identity(m.dim()));
}

inline bool approx_unitary(const CMat& m, double tol) { return unitarity_defect(m) <= tol; }

// Haar-ish random unitary: complex Gaussian entries, then Gram-Schmidt.
inline CMat random_unitary(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = cplx(gauss(rng), gauss(rng));
  reorthonormalize(m);
  return m;
}

// U^k for unitary U, with U^-1 realized as the adjoint.
inline CMat unitary_power(const CMat& u, long long k) {
  if (k < 0) return unitary_power(u.adjoint(), -k);
  CMat acc = CMat::identity(u.dim());
  CMat base = u;
  int mults = 0;
  while (k > 0) {
    if (k & 1) {
      acc = acc * base;
      if (++mults % 64 == 0) reorthonormalize(acc);
    }
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

}  // namespace qm
