#pragma once

// Graded generators, noncommutative words, Koszul signs and free DG algebras.
// Degrees are homological: differentials have degree -1.

#include "dpoisson/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace dpoisson {

struct Generator {
  std::string name;
  int degree = 0;
  int weight = 0;

  friend bool operator==(const Generator &, const Generator &) = default;
};

using Letter = std::uint16_t;
using Word = std::vector<Letter>;

/// An ordered table of generators with unique names.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Generator> gens) : gens_(std::move(gens)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].name.empty())
        throw std::invalid_argument("generator with empty name");
      if (!index_.emplace(gens_[i].name, static_cast<Letter>(i)).second)
        throw std::invalid_argument("duplicate generator name '" + gens_[i].name + "'");
    }
  }

  std::size_t size() const { return gens_.size(); }
  const Generator &operator[](Letter i) const { return gens_.at(i); }
  const std::vector<Generator> &generators() const { return gens_; }

  std::optional<Letter> find(const std::string &name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  Letter at(const std::string &name) const {
    auto l = find(name);
    if (!l)
      throw AlgebraError(ErrorKind::Parse, "unknown generator '" + name + "'");
    return *l;
  }

  int degree(const Word &w) const {
    int d = 0;
    for (Letter l : w)
      d += gens_[l].degree;
    return d;
  }
  int weight(const Word &w) const {
    int d = 0;
    for (Letter l : w)
      d += gens_[l].weight;
    return d;
  }
  int degree(std::span<const Letter> w) const {
    int d = 0;
    for (Letter l : w)
      d += gens_[l].degree;
    return d;
  }

  friend bool operator==(const Alphabet &a, const Alphabet &b) { return a.gens_ == b.gens_; }

private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, Letter> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Sign of moving the block `moved` past the block `past`:
/// (-1)^(sum over pairs of degree products).
inline int koszul_sign(std::span<const int> moved, std::span<const int> past) {
  long m = 0, p = 0;
  for (int d : moved)
    m += d;
  for (int d : past)
    p += d;
  return parity_sign(m * p);
}

inline Word concat(const Word &a, const Word &b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

inline Word subword(const Word &w, std::size_t begin, std::size_t end) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(begin),
              w.begin() + static_cast<std::ptrdiff_t>(end));
}

inline std::string word_to_string(const Alphabet &a, const Word &w) {
  if (w.empty())
    return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i])
      ++j;
    if (!out.empty())
      out += "*";
    out += a[w[i]].name;
    if (j - i > 1)
      out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline void append_term(std::string &out, const Q &c, const std::string &basis) {
  const bool neg = c < 0;
  const Q mag = neg ? Q(-c) : c;
  if (out.empty())
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  if (basis == "1") {
    out += to_string(mag);
  } else {
    if (mag != 1)
      out += to_string(mag) + "*";
    out += basis;
  }
}

/// Sparse rational linear combination of words over one alphabet.
class Element {
public:
  using Terms = std::map<Word, Q>;

  Element() = default;
  explicit Element(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
  Element(AlphabetPtr alphabet, const Word &w, const Q &c = 1) : alphabet_(std::move(alphabet)) {
    add(w, c);
  }

  static Element unit(AlphabetPtr a, const Q &c = 1) { return Element(std::move(a), Word{}, c); }

  const AlphabetPtr &alphabet() const { return alphabet_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Q coefficient(const Word &w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Q(0) : it->second;
  }

  void add(const Word &w, const Q &c) {
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  Element &operator+=(const Element &o) {
    adopt(o);
    for (const auto &[w, c] : o.terms_)
      add(w, c);
    return *this;
  }
  Element &operator-=(const Element &o) {
    adopt(o);
    for (const auto &[w, c] : o.terms_)
      add(w, -c);
    return *this;
  }
  Element &operator*=(const Q &c) {
    if (c == 0)
      terms_.clear();
    for (auto &[w, v] : terms_)
      v *= c;
    return *this;
  }

  friend Element operator+(Element a, const Element &b) { return a += b; }
  friend Element operator-(Element a, const Element &b) { return a -= b; }
  friend Element operator*(const Q &c, Element a) { return a *= c; }
  friend Element operator-(Element a) { return a *= Q(-1); }

  friend bool operator==(const Element &a, const Element &b) { return a.terms_ == b.terms_; }

  /// True when every term has the same (degree, weight).
  bool is_homogeneous() const {
    if (terms_.empty())
      return true;
    const int d = alphabet_->degree(terms_.begin()->first);
    const int w = alphabet_->weight(terms_.begin()->first);
    for (const auto &[word, c] : terms_)
      if (alphabet_->degree(word) != d || alphabet_->weight(word) != w)
        return false;
    return true;
  }

  /// Splits into (degree, weight)-homogeneous parts.
  std::map<std::pair<int, int>, Element> homogeneous_parts() const {
    std::map<std::pair<int, int>, Element> parts;
    for (const auto &[w, c] : terms_) {
      auto key = std::make_pair(alphabet_->degree(w), alphabet_->weight(w));
      auto it = parts.try_emplace(key, alphabet_).first;
      it->second.add(w, c);
    }
    return parts;
  }

  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string out;
    for (const auto &[w, c] : terms_)
      append_term(out, c, word_to_string(*alphabet_, w));
    return out;
  }

private:
  void adopt(const Element &o) {
    if (!alphabet_)
      alphabet_ = o.alphabet_;
    else if (o.alphabet_ && o.alphabet_ != alphabet_ && !(*o.alphabet_ == *alphabet_))
      throw AlgebraError(ErrorKind::MixedAlgebras, "elements over different generator sets");
  }

  AlphabetPtr alphabet_;
  Terms terms_;
};

inline void check_same_alphabet(const Element &a, const Element &b) {
  if (a.alphabet() && b.alphabet() && a.alphabet() != b.alphabet() &&
      !(*a.alphabet() == *b.alphabet()))
    throw AlgebraError(ErrorKind::MixedAlgebras, "elements over different generator sets");
}

/// Concatenation product, extended bilinearly.
inline Element multiply(const Element &a, const Element &b) {
  check_same_alphabet(a, b);
  Element out(a.alphabet() ? a.alphabet() : b.alphabet());
  for (const auto &[u, cu] : a.terms())
    for (const auto &[v, cv] : b.terms())
      out.add(concat(u, v), cu * cv);
  return out;
}

inline Element operator*(const Element &a, const Element &b) { return multiply(a, b); }

struct CheckReport {
  bool passed = true;
  std::string detail;
};

/// Free graded algebra on an alphabet with a degree -1 derivation given on
/// generators.
class FreeDGAlgebra {
public:
  FreeDGAlgebra() = default;
  explicit FreeDGAlgebra(std::vector<Generator> gens)
      : alphabet_(std::make_shared<const Alphabet>(std::move(gens))) {
    for (std::size_t i = 0; i < alphabet_->size(); ++i)
      diff_.emplace_back(alphabet_);
  }

  const AlphabetPtr &alphabet() const { return alphabet_; }
  std::size_t num_generators() const { return alphabet_->size(); }
  const Generator &generator(Letter l) const { return (*alphabet_)[l]; }

  Element gen(const std::string &name) const { return Element(alphabet_, Word{alphabet_->at(name)}); }
  Element gen(Letter l) const { return Element(alphabet_, Word{l}); }
  Element one() const { return Element::unit(alphabet_); }
  Element zero() const { return Element(alphabet_); }
  Element word(const Word &w, const Q &c = 1) const { return Element(alphabet_, w, c); }

  /// Sets d(g). The value must be homogeneous of degree |g|-1 and weight wt(g).
  void set_differential(Letter g, Element value) {
    check_same_alphabet(value, one());
    const Generator &gg = generator(g);
    for (const auto &[w, c] : value.terms()) {
      if (alphabet_->degree(w) != gg.degree - 1)
        throw AlgebraError(ErrorKind::InvalidCoalgebra,
                           "d(" + gg.name + ") has a term of degree " +
                               std::to_string(alphabet_->degree(w)) + ", expected " +
                               std::to_string(gg.degree - 1));
      if (alphabet_->weight(w) != gg.weight)
        throw AlgebraError(ErrorKind::InvalidCoalgebra,
                           "d(" + gg.name + ") does not preserve weight");
    }
    diff_.at(g) = Element(alphabet_) + value;
  }

  const Element &differential_of(Letter g) const { return diff_.at(g); }

  bool has_zero_differential() const {
    for (const auto &d : diff_)
      if (!d.is_zero())
        return false;
    return true;
  }

private:
  AlphabetPtr alphabet_;
  std::vector<Element> diff_;
};

/// d(w) for a single word by the graded Leibniz rule, accumulated into `out`
/// with coefficient c.
inline void differential_of_word(const FreeDGAlgebra &alg, const Word &w, const Q &c, Element &out) {
  const Alphabet &a = *alg.alphabet();
  int prefix_degree = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Element &dg = alg.differential_of(w[i]);
    if (!dg.is_zero()) {
      const Q s = c * parity_sign(prefix_degree);
      for (const auto &[m, cm] : dg.terms()) {
        Word nw;
        nw.reserve(w.size() + m.size());
        nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        nw.insert(nw.end(), m.begin(), m.end());
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
        out.add(nw, s * cm);
      }
    }
    prefix_degree += a[w[i]].degree;
  }
}

inline Element apply_differential(const FreeDGAlgebra &alg, const Element &e) {
  check_same_alphabet(e, alg.one());
  Element out(alg.alphabet());
  for (const auto &[w, c] : e.terms())
    differential_of_word(alg, w, c, out);
  return out;
}

/// d(d(g)) = 0 for every generator; by Leibniz this gives d^2 = 0 everywhere.
inline CheckReport check_d_squared(const FreeDGAlgebra &alg) {
  for (Letter g = 0; g < alg.num_generators(); ++g) {
    Element dd = apply_differential(alg, alg.differential_of(g));
    if (!dd.is_zero())
      return {false, "d(d(" + alg.generator(g).name + ")) = " + dd.to_string()};
  }
  return {};
}

/// Throws NotAComplex unless d^2 = 0 on every generator.
inline void require_d_squared_zero(const FreeDGAlgebra &alg) {
  auto rep = check_d_squared(alg);
  if (!rep.passed)
    throw AlgebraError(ErrorKind::NotAComplex, rep.detail);
}

/// Ordered enumeration of all words of the given degree and weight.
/// Requires every generator to have positive weight.
inline std::vector<Word> slice_basis(const Alphabet &a, int degree, int weight) {
  for (const auto &g : a.generators())
    if (g.weight <= 0)
      throw AlgebraError(ErrorKind::InfiniteSlice,
                         "generator '" + g.name + "' has weight " + std::to_string(g.weight) +
                             "; slices are not finite");
  std::vector<Word> out;
  if (weight < 0)
    return out;
  Word cur;
  std::function<void(int, int)> rec = [&](int deg, int wt) {
    if (wt == weight) {
      if (deg == degree)
        out.push_back(cur);
      return;
    }
    for (Letter l = 0; l < a.size(); ++l) {
      if (wt + a[l].weight > weight)
        continue;
      cur.push_back(l);
      rec(deg + a[l].degree, wt + a[l].weight);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

inline std::vector<Word> slice_basis(const FreeDGAlgebra &alg, int degree, int weight) {
  return slice_basis(*alg.alphabet(), degree, weight);
}

/// All words of weight <= max_weight, ordered by (weight, lexicographic).
inline std::vector<Word> words_up_to_weight(const Alphabet &a, int max_weight) {
  for (const auto &g : a.generators())
    if (g.weight <= 0)
      throw AlgebraError(ErrorKind::InfiniteSlice, "generator '" + g.name + "' has weight 0");
  std::vector<std::vector<Word>> by_weight(static_cast<std::size_t>(std::max(max_weight, 0)) + 1);
  by_weight[0].push_back(Word{});
  for (int w = 1; w <= max_weight; ++w)
    for (Letter l = 0; l < a.size(); ++l) {
      const int rest = w - a[l].weight;
      if (rest < 0)
        continue;
      for (const Word &tail : by_weight[static_cast<std::size_t>(rest)]) {
        Word nw{l};
        nw.insert(nw.end(), tail.begin(), tail.end());
        by_weight[static_cast<std::size_t>(w)].push_back(std::move(nw));
      }
    }
  std::vector<Word> out;
  for (auto &ws : by_weight) {
    std::sort(ws.begin(), ws.end());
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

} // namespace dpoisson
