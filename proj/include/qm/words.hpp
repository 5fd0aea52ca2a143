#pragma once

#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qm/bigint.hpp"
#include "qm/errors.hpp"

namespace qm {

struct Generator {
  std::string name;
  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

// Finite generating set with unique identifier names.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::initializer_list<std::string> names)
      : Alphabet(std::vector<std::string>(names)) {}

  explicit Alphabet(const std::vector<std::string>& names) {
    for (const auto& n : names) {
      if (!valid_name(n)) throw ConfigError("bad generator name '" + n + "'");
      if (contains(n)) throw ConfigError("duplicate generator '" + n + "'");
      gens_.push_back(Generator{n});
    }
  }

  static bool valid_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])))) return false;
    for (char c : s)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
  }

  bool contains(std::string_view name) const {
    for (const auto& g : gens_)
      if (g.name == name) return true;
    return false;
  }

  std::size_t size() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }

 private:
  std::vector<Generator> gens_;
};

// One maximal power s^k inside a reduced word, k != 0.
struct Syllable {
  std::string gen;
  BigInt exp;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Reduced free-group word: alternating syllables (adjacent syllables carry
// distinct generators, exponents never zero). The empty word is the identity.
// Immutable value; every operation below returns a fresh reduced word.
class Word {
 public:
  Word() = default;

  // Normalizes an arbitrary syllable list: merges same-generator neighbours,
  // drops vanishing exponents, cascades.
  static Word reduce(std::vector<Syllable> raw) {
    std::vector<Syllable> stack;
    stack.reserve(raw.size());
    for (auto& s : raw) {
      if (s.exp.is_zero()) continue;
      if (!stack.empty() && stack.back().gen == s.gen) {
        stack.back().exp += s.exp;
        if (stack.back().exp.is_zero()) stack.pop_back();
      } else {
        stack.push_back(std::move(s));
      }
    }
    Word w;
    w.syl_ = std::move(stack);
    return w;
  }

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool is_identity() const { return syl_.empty(); }
  std::size_t length() const { return syl_.size(); }

  // Word grammar: whitespace-separated `name` (exponent 1) or `name^int`.
  std::string str() const {
    if (syl_.empty()) return "";
    std::string out;
    for (const auto& s : syl_) {
      if (!out.empty()) out += ' ';
      out += s.gen;
      if (s.exp != BigInt(1)) out += "^" + s.exp.str();
    }
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Syllable> syl_;
};

inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::vector<Syllable> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    std::string at = " at column " + std::to_string(i + 1);
    i = j;

    std::string_view name = tok;
    BigInt exp(1);
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      name = tok.substr(0, caret);
      std::string_view es = tok.substr(caret + 1);
      try {
        exp = BigInt::parse(es);
      } catch (const ParseError&) {
        throw ParseError("word: malformed exponent in token '" + std::string(tok) + "'" + at);
      }
      if (exp.is_zero())
        throw ParseError("word: zero exponent in token '" + std::string(tok) + "'" + at);
    }
    if (!alphabet.contains(name))
      throw ParseError("word: unknown generator '" + std::string(name) + "'" + at);
    raw.push_back(Syllable{std::string(name), std::move(exp)});
  }
  return Word::reduce(std::move(raw));
}

inline Word multiply(const Word& x, const Word& y) {
  std::vector<Syllable> raw;
  raw.reserve(x.length() + y.length());
  raw.insert(raw.end(), x.syllables().begin(), x.syllables().end());
  raw.insert(raw.end(), y.syllables().begin(), y.syllables().end());
  return Word::reduce(std::move(raw));
}

inline Word invert(const Word& x) {
  std::vector<Syllable> raw;
  raw.reserve(x.length());
  for (auto it = x.syllables().rbegin(); it != x.syllables().rend(); ++it)
    raw.push_back(Syllable{it->gen, -it->exp});
  Word w = Word::reduce(std::move(raw));
  return w;
}

inline Word power(const Word& x, long long n) {
  if (n == 0) return {};
  if (n < 0) return power(invert(x), -n);
  // binary powering keeps x^1024 linear in the output length
  Word acc, base = x;
  while (n > 0) {
    if (n & 1) acc = multiply(acc, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return acc;
}

inline Word conjugate(const Word& w, const Word& x) {
  return multiply(multiply(w, x), invert(w));
}

// x = conjugator * core * conjugator^-1 with the core cyclically reduced:
// at most one syllable, or first/last syllables that cannot cancel when the
// word is squared.
struct CyclicDecomposition {
  Word conjugator;
  Word core;
};

inline CyclicDecomposition cyclically_reduce(const Word& x) {
  std::vector<Syllable> core(x.syllables());
  std::vector<Syllable> conj;
  std::size_t lo = 0, hi = core.size();
  while (hi - lo >= 2) {
    const Syllable& f = core[lo];
    const Syllable& l = core[hi - 1];
    if (f.gen != l.gen) break;
    BigInt sum = f.exp + l.exp;
    if (sum.is_zero()) {
      // full inverse pair at the ends
      conj.push_back(f);
      ++lo;
      --hi;
    } else if (f.exp.sign() == l.exp.sign()) {
      break;  // ends merge into a single nonzero power when squared: reduced
    } else if (f.exp.abs() > l.exp.abs()) {
      // absorb the tail into the head: x = g^-b (g^(a+b) m) g^b
      conj.push_back(Syllable{l.gen, -l.exp});
      core[lo].exp = sum;
      --hi;
    } else {
      // absorb the head into the tail: x = g^a (m g^(a+b)) g^-a
      conj.push_back(f);
      core[hi - 1].exp = sum;
      ++lo;
    }
  }
  CyclicDecomposition d;
  d.conjugator = Word::reduce(std::move(conj));
  d.core = Word::reduce(std::vector<Syllable>(core.begin() + lo, core.begin() + hi));
  return d;
}

// Emits every reduced word with at most max_len syllables whose exponents are
// bounded by max_exp in absolute value, identity first, each exactly once.
template <class Visitor>
void for_each_word(const Alphabet& alphabet, long max_exp, long max_len, Visitor&& visit) {
  if (max_exp < 1 || max_len < 0) throw ConfigError("enumeration bounds must be positive");
  std::vector<Syllable> stack;
  auto emit = [&] {
    Word w = Word::reduce(std::vector<Syllable>(stack));
    visit(w);
  };
  emit();  // identity
  auto rec = [&](auto&& self, long remaining) -> void {
    if (remaining == 0) return;
    for (const auto& g : alphabet.generators()) {
      if (!stack.empty() && stack.back().gen == g.name) continue;
      for (long e = -max_exp; e <= max_exp; ++e) {
        if (e == 0) continue;
        stack.push_back(Syllable{g.name, BigInt(e)});
        emit();
        self(self, remaining - 1);
        stack.pop_back();
      }
    }
  };
  rec(rec, max_len);
}

inline std::vector<Word> enumerate_words(const Alphabet& alphabet, long max_exp, long max_len) {
  std::vector<Word> out;
  for_each_word(alphabet, max_exp, max_len, [&](const Word& w) { out.push_back(w); });
  return out;
}

// Closed-form count for the enumeration above:
// 1 + sum_{l=1..L} |S| (|S|-1)^(l-1) (2K)^l.
inline BigInt enumerated_word_count(std::size_t alphabet_size, long max_exp, long max_len) {
  BigInt total(1);
  BigInt per_len(static_cast<long long>(alphabet_size) * 2 * max_exp);
  for (long l = 1; l <= max_len; ++l) {
    total += per_len;
    per_len *= BigInt(static_cast<long long>(alphabet_size - 1) * 2 * max_exp);
  }
  return total;
}

// True when the product x*y reduces with "complete cancellation" at the
// junction: no leftover syllables of x and y merge into a joint power. In the
// other ("partial merge") case exactly one merged syllable appears between
// the surviving halves.
inline bool junction_fully_cancels(const Word& x, const Word& y) {
  const auto& xs = x.syllables();
  const auto& ys = y.syllables();
  std::size_t i = 0;
  while (i < xs.size() && i < ys.size()) {
    const Syllable& a = xs[xs.size() - 1 - i];
    const Syllable& b = ys[i];
    if (a.gen == b.gen && (a.exp + b.exp).is_zero()) {
      ++i;
      continue;
    }
    return a.gen != b.gen;
  }
  return true;  // one factor consumed entirely
}

}  // namespace qm
