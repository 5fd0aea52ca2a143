#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qm/bigint.hpp"
#include "qm/errors.hpp"
#include "qm/rational.hpp"
#include "qm/sequences.hpp"

namespace qm {

// One factor of a free product. Elements are held as BigInt: the index
// 0..n-1 for finite factors (0 is the identity) and the integer itself for
// the infinite cyclic factor.
class FactorGroup {
 public:
  enum class Kind { cyclic, integers, table };

  static FactorGroup cyclic(std::string id, long n) {
    if (n < 2) throw ConfigError("cyclic factor must have order >= 2");
    FactorGroup g;
    g.id_ = std::move(id);
    g.kind_ = Kind::cyclic;
    g.order_ = n;
    return g;
  }

  static FactorGroup integers(std::string id) {
    FactorGroup g;
    g.id_ = std::move(id);
    g.kind_ = Kind::integers;
    return g;
  }

  // Multiplication table with 0 as the identity; the group axioms are
  // checked outright at construction.
  static FactorGroup from_table(std::string id, std::vector<std::vector<std::uint32_t>> mul) {
    FactorGroup g;
    g.id_ = std::move(id);
    g.kind_ = Kind::table;
    const std::size_t n = mul.size();
    if (n < 2) throw ConfigError("table factor must have order >= 2");
    for (const auto& row : mul)
      if (row.size() != n) throw ConfigError("multiplication table is not square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (mul[i][j] >= n) throw ConfigError("table entry out of range");
    for (std::size_t i = 0; i < n; ++i)
      if (mul[0][i] != i || mul[i][0] != i)
        throw ConfigError("table element 0 is not an identity");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (mul[mul[i][j]][k] != mul[i][mul[j][k]])
            throw ConfigError("multiplication table is not associative");
    g.inverse_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (mul[i][j] == 0 && mul[j][i] == 0) g.inverse_[i] = static_cast<std::uint32_t>(j);
      if (g.inverse_[i] == n) throw ConfigError("table element without inverse");
    }
    g.order_ = static_cast<long>(n);
    g.table_ = std::move(mul);
    return g;
  }

  const std::string& id() const { return id_; }
  Kind kind() const { return kind_; }
  bool finite() const { return kind_ != Kind::integers; }

  long order() const {
    if (!finite()) throw ConfigError("factor '" + id_ + "' is infinite");
    return order_;
  }

  void validate(const BigInt& x) const {
    if (finite() && (x.sign() < 0 || x >= BigInt(order_)))
      throw ConfigError("element " + x.str() + " out of range for factor '" + id_ + "'");
  }

  bool is_identity(const BigInt& x) const { return x.is_zero(); }

  BigInt mul(const BigInt& x, const BigInt& y) const {
    switch (kind_) {
      case Kind::cyclic:
        return (x + y) % BigInt(order_);
      case Kind::integers:
        return x + y;
      case Kind::table:
        return BigInt(
            table_[static_cast<std::size_t>(x.to_longlong())][static_cast<std::size_t>(
                y.to_longlong())]);
    }
    return {};
  }

  BigInt inv(const BigInt& x) const {
    switch (kind_) {
      case Kind::cyclic:
        return x.is_zero() ? BigInt(0) : BigInt(order_) - x;
      case Kind::integers:
        return -x;
      case Kind::table:
        return BigInt(inverse_[static_cast<std::size_t>(x.to_longlong())]);
    }
    return {};
  }

 private:
  std::string id_;
  Kind kind_ = Kind::cyclic;
  long order_ = 0;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
};

class FactorFamily {
 public:
  FactorFamily() = default;
  explicit FactorFamily(std::vector<FactorGroup> factors) : factors_(std::move(factors)) {
    if (factors_.size() < 2) throw ConfigError("free product needs at least 2 factors");
    for (std::size_t i = 0; i < factors_.size(); ++i)
      for (std::size_t j = i + 1; j < factors_.size(); ++j)
        if (factors_[i].id() == factors_[j].id())
          throw ConfigError("duplicate factor id '" + factors_[i].id() + "'");
  }

  const FactorGroup& at(std::string_view id) const {
    for (const auto& f : factors_)
      if (f.id() == id) return f;
    throw ConfigError("unknown factor '" + std::string(id) + "'");
  }

  const std::vector<FactorGroup>& factors() const { return factors_; }

 private:
  std::vector<FactorGroup> factors_;
};

struct FPLetter {
  std::string factor;
  BigInt elem;
  friend bool operator==(const FPLetter&, const FPLetter&) = default;
};

// Normal form of a free-product element: alternating nonidentity letters.
class FPWord {
 public:
  FPWord() = default;

  static FPWord reduce(const FactorFamily& family, std::vector<FPLetter> raw) {
    std::vector<FPLetter> stack;
    stack.reserve(raw.size());
    for (auto& letter : raw) {
      const FactorGroup& g = family.at(letter.factor);
      g.validate(letter.elem);
      if (g.is_identity(letter.elem)) continue;
      if (!stack.empty() && stack.back().factor == letter.factor) {
        stack.back().elem = g.mul(stack.back().elem, letter.elem);
        if (g.is_identity(stack.back().elem)) stack.pop_back();
      } else {
        stack.push_back(std::move(letter));
      }
    }
    FPWord w;
    w.letters_ = std::move(stack);
    return w;
  }

  const std::vector<FPLetter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }

  // Grammar: whitespace-separated `factor:element` tokens.
  std::string str() const {
    std::string out;
    for (const auto& l : letters_) {
      if (!out.empty()) out += ' ';
      out += l.factor + ":" + l.elem.str();
    }
    return out;
  }

  friend bool operator==(const FPWord&, const FPWord&) = default;

 private:
  std::vector<FPLetter> letters_;
};

inline FPWord fp_parse(const FactorFamily& family, std::string_view text) {
  std::vector<FPLetter> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    i = j;
    auto colon = tok.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("free-product word: token '" + std::string(tok) +
                       "' is not factor:element");
    std::string factor(tok.substr(0, colon));
    BigInt elem;
    try {
      elem = BigInt::parse(tok.substr(colon + 1));
    } catch (const ParseError&) {
      throw ParseError("free-product word: bad element in token '" + std::string(tok) + "'");
    }
    family.at(factor).validate(elem);
    raw.push_back(FPLetter{std::move(factor), std::move(elem)});
  }
  return FPWord::reduce(family, std::move(raw));
}

inline FPWord fp_multiply(const FactorFamily& family, const FPWord& x, const FPWord& y) {
  std::vector<FPLetter> raw;
  raw.reserve(x.length() + y.length());
  raw.insert(raw.end(), x.letters().begin(), x.letters().end());
  raw.insert(raw.end(), y.letters().begin(), y.letters().end());
  return FPWord::reduce(family, std::move(raw));
}

inline FPWord fp_invert(const FactorFamily& family, const FPWord& x) {
  std::vector<FPLetter> raw;
  for (auto it = x.letters().rbegin(); it != x.letters().rend(); ++it)
    raw.push_back(FPLetter{it->factor, family.at(it->factor).inv(it->elem)});
  return FPWord::reduce(family, std::move(raw));
}

inline FPWord fp_power(const FactorFamily& family, const FPWord& x, long long n) {
  if (n == 0) return {};
  if (n < 0) return fp_power(family, fp_invert(family, x), -n);
  FPWord acc, base = x;
  while (n > 0) {
    if (n & 1) acc = fp_multiply(family, acc, base);
    n >>= 1;
    if (n > 0) base = fp_multiply(family, base, base);
  }
  return acc;
}

// Bounded odd map on one factor: finite value table with f(x^-1) = -f(x) and
// f(e) = 0, or a SequenceSpec for the infinite cyclic factor.
class OddBoundedMap {
 public:
  static OddBoundedMap table(const FactorGroup& g, std::vector<Rational> values) {
    if (static_cast<long>(values.size()) != g.order())
      throw ConfigError("odd map table size must equal the factor order");
    if (!values[0].is_zero()) throw ConfigError("odd map must vanish on the identity");
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::size_t j = static_cast<std::size_t>(g.inv(BigInt(static_cast<long long>(i))).to_longlong());
      if (values[j] != -values[i])
        throw ConfigError("odd map violates f(x^-1) = -f(x) at element " + std::to_string(i));
    }
    OddBoundedMap m;
    m.factor_id_ = g.id();
    m.values_ = std::move(values);
    return m;
  }

  // Free coordinates: values at 1..floor((n-1)/2) for a cyclic factor, the
  // rest forced by oddness (self-inverse elements get zero).
  static OddBoundedMap cyclic_free(const FactorGroup& g, const std::vector<Rational>& free_values) {
    if (g.kind() != FactorGroup::Kind::cyclic)
      throw ConfigError("free coordinates need a cyclic factor");
    long n = g.order();
    long dim = (n - 1) / 2;
    if (static_cast<long>(free_values.size()) > dim)
      throw ConfigError("too many free values: odd maps on this factor have dimension " +
                        std::to_string(dim));
    std::vector<Rational> values(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t i = 0; i < free_values.size(); ++i) {
      values[i + 1] = free_values[i];
      values[static_cast<std::size_t>(n) - 1 - i] = -free_values[i];
    }
    return table(g, std::move(values));
  }

  static OddBoundedMap integer_sequence(const FactorGroup& g, SequenceSpec spec) {
    if (g.kind() != FactorGroup::Kind::integers)
      throw ConfigError("sequence-backed odd map needs the integer factor");
    OddBoundedMap m;
    m.factor_id_ = g.id();
    m.seq_ = std::move(spec);
    return m;
  }

  const std::string& factor_id() const { return factor_id_; }

  Rational eval(const BigInt& x) const {
    if (seq_) return seq_->eval(x);
    return values_[static_cast<std::size_t>(x.to_longlong())];
  }

  Rational sup_norm() const {
    if (seq_) return seq_->sup_norm();
    Rational m;
    for (const auto& v : values_)
      if (v.abs() > m) m = v.abs();
    return m;
  }

 private:
  std::string factor_id_;
  std::vector<Rational> values_;
  std::optional<SequenceSpec> seq_;
};

class OddMapFamily {
 public:
  void set(OddBoundedMap m) { maps_.insert_or_assign(m.factor_id(), std::move(m)); }

  const OddBoundedMap& at(const std::string& factor) const {
    auto it = maps_.find(factor);
    if (it == maps_.end()) throw ConfigError("no odd map for factor '" + factor + "'");
    return it->second;
  }

  Rational uniform_sup_norm() const {
    Rational m;
    for (const auto& [_, f] : maps_)
      if (f.sup_norm() > m) m = f.sup_norm();
    return m;
  }

 private:
  std::map<std::string, OddBoundedMap> maps_;
};

// g(x) = sum of sigma_{s_i}(x_i) over the normal form.
inline Rational fp_eval(const OddMapFamily& sigma, const FPWord& x) {
  Rational sum;
  for (const auto& l : x.letters()) sum += sigma.at(l.factor).eval(l.elem);
  return sum;
}

inline Rational fp_coboundary(const FactorFamily& family, const OddMapFamily& sigma,
                              const FPWord& x, const FPWord& y) {
  return fp_eval(sigma, x) + fp_eval(sigma, y) - fp_eval(sigma, fp_multiply(family, x, y));
}

// Evaluates g on (x y^sign)^k and checks k (sigma_s(x) + sign * sigma_t(y)),
// the unboundedness witness on free products.
inline Rational fp_injectivity_witness(const FactorFamily& family, const OddMapFamily& sigma,
                                       const std::string& s, const std::string& t,
                                       const BigInt& x, const BigInt& y, long long k, int sign) {
  if (s == t) throw ConfigError("witness needs two distinct factors");
  if (sign != 1 && sign != -1) throw ConfigError("witness sign must be +1 or -1");
  const FactorGroup& gs = family.at(s);
  const FactorGroup& gt = family.at(t);
  if (gs.is_identity(x) || gt.is_identity(y))
    throw ConfigError("witness elements must be nonidentity");
  BigInt ye = sign == 1 ? y : gt.inv(y);
  FPWord base = FPWord::reduce(family, {FPLetter{s, x}, FPLetter{t, ye}});
  Rational actual = fp_eval(sigma, fp_power(family, base, k));
  Rational expected =
      Rational(k) * (sigma.at(s).eval(x) + Rational(sign) * sigma.at(t).eval(y));
  if (actual != expected)
    throw VerificationError("free-product witness mismatch: " + actual.str() + " != " +
                            expected.str());
  return actual;
}

// Dimension of the space of bounded odd maps on one factor; empty for the
// infinite cyclic factor, whose odd maps form an infinite-dimensional space.
inline std::optional<long> odd_map_dimension(const FactorGroup& g) {
  switch (g.kind()) {
    case FactorGroup::Kind::cyclic:
      return (g.order() - 1) / 2;
    case FactorGroup::Kind::integers:
      return std::nullopt;
    case FactorGroup::Kind::table: {
      long paired = 0;
      for (long i = 1; i < g.order(); ++i)
        if (g.inv(BigInt(i)) != BigInt(i)) ++paired;
      return paired / 2;
    }
  }
  return std::nullopt;
}

inline std::optional<long> v0_dimension(const FactorFamily& family) {
  long total = 0;
  for (const auto& g : family.factors()) {
    auto d = odd_map_dimension(g);
    if (!d) return std::nullopt;
    total += *d;
  }
  return total;
}

// --- the modular group as Z2 * Z3 ---------------------------------------

struct Mat2 {
  long long a = 1, b = 0, c = 0, d = 1;

  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return Mat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
                m.c * n.b + m.d * n.d};
  }
  long long det() const { return a * d - b * c; }
  Mat2 neg() const { return Mat2{-a, -b, -c, -d}; }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  std::string str() const {
    return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
           std::to_string(d) + "]]";
  }
};

inline bool projectively_equal(const Mat2& m, const Mat2& n) { return m == n || m == n.neg(); }

inline const Mat2 kMatS{0, -1, 1, 0};   // order 2 in the projective group
inline const Mat2 kMatT{1, 1, 0, 1};
inline const Mat2 kMatST = kMatS * kMatT;  // order 3 in the projective group

// Factors named A (image of S, order 2) and B (image of ST, order 3).
inline FactorFamily psl2_factors() {
  return FactorFamily({FactorGroup::cyclic("A", 2), FactorGroup::cyclic("B", 3)});
}

// Matrix of a word in the generators a = S, b = ST.
inline Mat2 psl2_matrix(const FPWord& w) {
  Mat2 m;
  for (const auto& l : w.letters()) {
    if (l.factor == "A") {
      m = m * kMatS;
    } else {
      Mat2 p = kMatST;
      if (l.elem == BigInt(2)) p = p * kMatST;
      m = m * p;
    }
  }
  return m;
}

// Writes a unimodular matrix as a word in a, b by Euclidean reduction on the
// bottom row: right-multiplications by T^q shrink |d| modulo |c|, S swaps the
// pair, and |c| strictly decreases until the matrix is an upper-triangular
// power of T. The reversed, inverted move log is the word; T maps to ab.
inline FPWord psl2_parse(const Mat2& input) {
  if (input.det() != 1)
    throw ConfigError("matrix " + input.str() + " is not unimodular (det = " +
                      std::to_string(input.det()) + ")");
  const FactorFamily family = psl2_factors();

  struct Move {
    bool is_s = false;
    long long q = 0;  // T^q when !is_s
  };
  std::vector<Move> moves;

  auto tpow = [](long long q) { return Mat2{1, q, 0, 1}; };
  auto nearest_quotient = [](long long num, long long den) {
    long long q = num / den;
    long long r = num - q * den;
    if (2 * std::abs(r) > std::abs(den)) q += (num < 0) == (den < 0) ? 1 : -1;
    return q;
  };

  Mat2 m = input;
  while (!projectively_equal(m, Mat2{})) {
    if (m.c != 0) {
      long long q = nearest_quotient(m.d, m.c);
      if (q != 0) {
        m = m * tpow(-q);
        moves.push_back({false, -q});
      }
      m = m * kMatS;
      moves.push_back({true, 0});
    } else {
      // m = +-T^(a*b)
      long long q = m.a * m.b;
      m = m * tpow(-q);
      moves.push_back({false, -q});
    }
  }

  // input * g1 * ... * gk = +-I, so input = +-(gk^-1 ... g1^-1)
  std::vector<FPLetter> letters;
  const BigInt one(1), two(2);
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
    if (it->is_s) {
      letters.push_back(FPLetter{"A", one});
    } else {
      long long q = -it->q;  // inverse of T^q is T^-q
      for (long long n = 0; n < std::abs(q); ++n) {
        if (q > 0) {  // ab
          letters.push_back(FPLetter{"A", one});
          letters.push_back(FPLetter{"B", one});
        } else {  // b^2 a
          letters.push_back(FPLetter{"B", two});
          letters.push_back(FPLetter{"A", one});
        }
      }
    }
  }
  FPWord word = FPWord::reduce(family, std::move(letters));
  if (!projectively_equal(psl2_matrix(word), input))
    throw VerificationError("modular-group decomposition failed to round-trip for " +
                            input.str());
  return word;
}

inline Rational psl2_qm(const OddMapFamily& sigma, const Mat2& m) {
  return fp_eval(sigma, psl2_parse(m));
}

}  // namespace qm
