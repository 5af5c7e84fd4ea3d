#pragma once

// The cobar construction of a cyclic coalgebra and its double bracket.
//
// Generators: one letter su per basis element u, |su| = |u| - 1, wt su = wt u.
// Differential: D(su) = s(du) - sum (-1)^|u'| su' su''.
// Pairing on letters: P(su, sv) = (-1)^|u| <u,v>.
// Bracket degree N = n + 2. For words v = v_1..v_p, w = w_1..w_q:
//
//   {{v,w}} = sum_{i,j} e(i,j) P(v_i,w_j) (w_<j v_>i) (x) (v_<i w_>j)
//   e(i,j)  = (-1)^((|v|+N)|w_<j| + (|w_j|+N)|v_>i| + |v_<i||v_>i|)
//
// which is the unique extension of the generator values that is an outer
// derivation in the second slot and graded skew-symmetric.

#include "dpoisson/coalgebra.hpp"
#include "dpoisson/graded.hpp"

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace dpoisson {

/// Deliberate sign corruptions, used to show that the checks are not vacuous.
enum class BracketMutation {
  none,
  flip_right_terms,  // negate terms whose right factor is nonempty and left factor empty
};

inline const char *mutation_name(BracketMutation m) {
  switch (m) {
  case BracketMutation::none: return "none";
  case BracketMutation::flip_right_terms: return "flip_right_terms";
  }
  return "none";
}

/// Sparse combination of pairs of words: an element of A (x) A.
class DoubleElement {
public:
  using Key = std::pair<Word, Word>;
  using Terms = std::map<Key, Q>;

  DoubleElement() = default;
  explicit DoubleElement(AlphabetPtr a) : alphabet_(std::move(a)) {}

  const AlphabetPtr &alphabet() const { return alphabet_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Word &l, const Word &r, const Q &c) {
    if (c == 0)
      return;
    auto [it, ins] = terms_.try_emplace(Key{l, r}, c);
    if (!ins) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  Q coefficient(const Word &l, const Word &r) const {
    auto it = terms_.find(Key{l, r});
    return it == terms_.end() ? Q(0) : it->second;
  }

  DoubleElement &operator+=(const DoubleElement &o) {
    if (!alphabet_)
      alphabet_ = o.alphabet_;
    for (const auto &[k, c] : o.terms_)
      add(k.first, k.second, c);
    return *this;
  }
  DoubleElement &operator*=(const Q &c) {
    if (c == 0)
      terms_.clear();
    for (auto &[k, v] : terms_)
      v *= c;
    return *this;
  }
  friend DoubleElement operator+(DoubleElement a, const DoubleElement &b) { return a += b; }
  friend DoubleElement operator-(DoubleElement a, const DoubleElement &b) {
    DoubleElement nb = b;
    nb *= Q(-1);
    return a += nb;
  }
  friend bool operator==(const DoubleElement &a, const DoubleElement &b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string out;
    for (const auto &[k, c] : terms_)
      append_term(out, c, word_to_string(*alphabet_, k.first) + "(x)" + word_to_string(*alphabet_, k.second));
    return out;
  }

private:
  AlphabetPtr alphabet_;
  Terms terms_;
};

/// Element of A (x) A (x) A, as a map of word triples.
using TripleTerms = std::map<std::tuple<Word, Word, Word>, Q>;

inline void add_triple(TripleTerms &t, const Word &a, const Word &b, const Word &c, const Q &q) {
  if (q == 0)
    return;
  auto [it, ins] = t.try_emplace(std::make_tuple(a, b, c), q);
  if (!ins) {
    it->second += q;
    if (it->second == 0)
      t.erase(it);
  }
}

inline std::string triple_to_string(const Alphabet &a, const TripleTerms &t) {
  if (t.empty())
    return "0";
  std::string out;
  for (const auto &[k, c] : t)
    append_term(out, c,
                word_to_string(a, std::get<0>(k)) + "(x)" + word_to_string(a, std::get<1>(k)) + "(x)" +
                    word_to_string(a, std::get<2>(k)));
  return out;
}

struct CobarAlgebra {
  FreeDGAlgebra algebra;
  CyclicCoalgebra source;
  int bracket_degree = 0;
  std::vector<std::vector<Q>> letter_pairing; // P(su, sv)
  BracketMutation mutation = BracketMutation::none;

  const Alphabet &alphabet() const { return *algebra.alphabet(); }
  Element gen(const std::string &name) const { return algebra.gen(name); }
  int degree(const Word &w) const { return alphabet().degree(w); }

  /// Weight lost by a bracket: wt {{u,v}} = wt u + wt v - pairing_weight.
  int pairing_weight() const { return source.pairing_weight().value_or(0); }
};

/// Builds the cobar construction. `names` optionally renames the generators
/// (same order as the coalgebra basis). Throws InvalidCoalgebra unless the
/// required validation checks pass.
inline CobarAlgebra cobar(const CyclicCoalgebra &c, const std::vector<std::string> &names = {}) {
  const ValidationReport rep = validate(c);
  for (const auto &chk : rep.checks)
    if (chk.required && !chk.passed)
      throw AlgebraError(ErrorKind::InvalidCoalgebra, chk.name + ": " + chk.detail);
  if (!names.empty() && names.size() != c.dim())
    throw AlgebraError(ErrorKind::InvalidCoalgebra, "wrong number of cobar generator names");

  std::vector<Generator> gens;
  for (std::size_t i = 0; i < c.dim(); ++i)
    gens.push_back({names.empty() ? c.basis[i].name : names[i], c.degree(i) - 1, c.weight(i)});
  CobarAlgebra out{FreeDGAlgebra(std::move(gens)), c, c.cyclic_degree + 2, {}, BracketMutation::none};

  const auto &al = out.algebra.alphabet();
  for (std::size_t i = 0; i < c.dim(); ++i) {
    Element d(al);
    for (const auto &[j, q] : c.differential[i])
      d.add(Word{static_cast<Letter>(j)}, q);
    for (const auto &t : c.coproduct[i])
      d.add(Word{static_cast<Letter>(t.left), static_cast<Letter>(t.right)},
            -t.coeff * parity_sign(c.degree(t.left)));
    out.algebra.set_differential(static_cast<Letter>(i), d);
  }
  require_d_squared_zero(out.algebra);

  out.letter_pairing.assign(c.dim(), std::vector<Q>(c.dim(), Q(0)));
  for (const auto &[ij, q] : c.pairing)
    out.letter_pairing[ij.first][ij.second] = parity_sign(c.degree(ij.first)) * q;
  return out;
}

/// {{v, w}} on a pair of words, accumulated into `out` with coefficient c.
inline void double_bracket_words(const CobarAlgebra &alg, const Word &v, const Word &w, const Q &c,
                                 DoubleElement &out) {
  const Alphabet &a = alg.alphabet();
  const long N = alg.bracket_degree;
  const long dv = a.degree(v);
  std::vector<int> vpre(v.size() + 1, 0), wpre(w.size() + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    vpre[i + 1] = vpre[i] + a[v[i]].degree;
  for (std::size_t j = 0; j < w.size(); ++j)
    wpre[j + 1] = wpre[j] + a[w[j]].degree;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const long before_v = vpre[i], after_v = vpre[v.size()] - vpre[i + 1];
    for (std::size_t j = 0; j < w.size(); ++j) {
      const Q &p = alg.letter_pairing[v[i]][w[j]];
      if (p == 0)
        continue;
      const long before_w = wpre[j];
      const long e = (dv + N) * before_w + (a[w[j]].degree + N) * after_v + before_v * after_v;
      Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
      left.insert(left.end(), v.begin() + static_cast<std::ptrdiff_t>(i) + 1, v.end());
      Word right(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
      right.insert(right.end(), w.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.end());
      int s = parity_sign(e);
      if (alg.mutation == BracketMutation::flip_right_terms && left.empty() && !right.empty())
        s = -s;
      out.add(left, right, c * s * p);
    }
  }
}

inline DoubleElement double_bracket(const CobarAlgebra &alg, const Element &v, const Element &w) {
  DoubleElement out(alg.algebra.alphabet());
  for (const auto &[wv, cv] : v.terms())
    for (const auto &[ww, cw] : w.terms())
      double_bracket_words(alg, wv, ww, cv * cw, out);
  return out;
}

inline DoubleElement double_bracket(const CobarAlgebra &alg, const Word &v, const Word &w) {
  DoubleElement out(alg.algebra.alphabet());
  double_bracket_words(alg, v, w, 1, out);
  return out;
}

/// (X (x) Y)° = (-1)^(|X||Y|) Y (x) X
inline DoubleElement flip(const Alphabet &a, const DoubleElement &e) {
  DoubleElement out(e.alphabet());
  for (const auto &[k, c] : e.terms())
    out.add(k.second, k.first, c * parity_sign(static_cast<long>(a.degree(k.first)) * a.degree(k.second)));
  return out;
}

/// d(X (x) Y) = dX (x) Y + (-1)^|X| X (x) dY
inline DoubleElement tensor_differential(const FreeDGAlgebra &alg, const DoubleElement &e) {
  const Alphabet &a = *alg.alphabet();
  DoubleElement out(e.alphabet());
  for (const auto &[k, c] : e.terms()) {
    Element dl(alg.alphabet()), dr(alg.alphabet());
    differential_of_word(alg, k.first, c, dl);
    differential_of_word(alg, k.second, c * parity_sign(a.degree(k.first)), dr);
    for (const auto &[w, q] : dl.terms())
      out.add(w, k.second, q);
    for (const auto &[w, q] : dr.terms())
      out.add(k.first, w, q);
  }
  return out;
}

/// Multiplication A (x) A -> A.
inline Element mu(const DoubleElement &e) {
  Element out(e.alphabet());
  for (const auto &[k, c] : e.terms())
    out.add(concat(k.first, k.second), c);
  return out;
}

struct AxiomCheck {
  bool passed = true;
  std::string detail; // witness and residual on failure
};

namespace detail {

inline std::string words_label(const Alphabet &a, std::initializer_list<const Word *> ws) {
  std::string s = "(";
  bool first = true;
  for (const Word *w : ws) {
    if (!first)
      s += ", ";
    s += word_to_string(a, *w);
    first = false;
  }
  return s + ")";
}

inline AxiomCheck compare(const Alphabet &a, std::initializer_list<const Word *> ws, const DoubleElement &lhs,
                          const DoubleElement &rhs) {
  if (lhs == rhs)
    return {};
  return {false, words_label(a, ws) + ": lhs = " + lhs.to_string() + ", rhs = " + rhs.to_string()};
}

} // namespace detail

/// {{u, vw}} = {{u,v}} w + (-1)^((|u|+N)|v|) v {{u,w}}  (outer bimodule structure)
inline AxiomCheck check_outer_derivation(const CobarAlgebra &alg, const Word &u, const Word &v, const Word &w) {
  const Alphabet &a = alg.alphabet();
  const long N = alg.bracket_degree;
  DoubleElement lhs = double_bracket(alg, u, concat(v, w));
  DoubleElement rhs(alg.algebra.alphabet());
  const DoubleElement uv = double_bracket(alg, u, v), uw = double_bracket(alg, u, w);
  for (const auto &[k, c] : uv.terms())
    rhs.add(k.first, concat(k.second, w), c);
  const int s = parity_sign((a.degree(u) + N) * a.degree(v));
  for (const auto &[k, c] : uw.terms())
    rhs.add(concat(v, k.first), k.second, s * c);
  return detail::compare(a, {&u, &v, &w}, lhs, rhs);
}

/// {{u,v}} = -(-1)^((|u|+N)(|v|+N)) {{v,u}}°
inline AxiomCheck check_skew(const CobarAlgebra &alg, const Word &u, const Word &v) {
  const Alphabet &a = alg.alphabet();
  const long N = alg.bracket_degree;
  DoubleElement lhs = double_bracket(alg, u, v);
  DoubleElement rhs = flip(a, double_bracket(alg, v, u));
  rhs *= Q(-parity_sign((a.degree(u) + N) * (a.degree(v) + N)));
  return detail::compare(a, {&u, &v}, lhs, rhs);
}

/// {{a, X (x) Y}}_L = {{a, X}} (x) Y
inline TripleTerms bracket_left(const CobarAlgebra &alg, const Word &a, const DoubleElement &e) {
  TripleTerms out;
  for (const auto &[k, c] : e.terms()) {
    const DoubleElement inner = double_bracket(alg, a, k.first);
    for (const auto &[k2, c2] : inner.terms())
      add_triple(out, k2.first, k2.second, k.second, c * c2);
  }
  return out;
}

/// Residual of the double Jacobi identity
///   {{a,{{b,c}}}}_L + (-1)^((|a|+N)(|b|+|c|)) s_(123) {{b,{{c,a}}}}_L
///     + (-1)^((|c|+N)(|a|+|b|)) s_(132) {{c,{{a,b}}}}_L
/// with s_(123)(X(x)Y(x)Z) = (-1)^(|Z|(|X|+|Y|)) Z(x)X(x)Y and
///      s_(132)(X(x)Y(x)Z) = (-1)^(|X|(|Y|+|Z|)) Y(x)Z(x)X.
inline TripleTerms double_jacobi_residual(const CobarAlgebra &alg, const Word &x, const Word &y, const Word &z) {
  const Alphabet &al = alg.alphabet();
  const long N = alg.bracket_degree;
  const long da = al.degree(x), db = al.degree(y), dc = al.degree(z);
  TripleTerms out = bracket_left(alg, x, double_bracket(alg, y, z));
  const int s2 = parity_sign((da + N) * (db + dc));
  for (const auto &[k, c] : bracket_left(alg, y, double_bracket(alg, z, x))) {
    const auto &[X, Y, Z] = k;
    const long e = static_cast<long>(al.degree(Z)) * (al.degree(X) + al.degree(Y));
    add_triple(out, Z, X, Y, c * s2 * parity_sign(e));
  }
  const int s3 = parity_sign((dc + N) * (da + db));
  for (const auto &[k, c] : bracket_left(alg, z, double_bracket(alg, x, y))) {
    const auto &[X, Y, Z] = k;
    const long e = static_cast<long>(al.degree(X)) * (al.degree(Y) + al.degree(Z));
    add_triple(out, Y, Z, X, c * s3 * parity_sign(e));
  }
  return out;
}

inline AxiomCheck check_double_jacobi(const CobarAlgebra &alg, const Word &x, const Word &y, const Word &z) {
  TripleTerms r = double_jacobi_residual(alg, x, y, z);
  if (r.empty())
    return {};
  return {false, detail::words_label(alg.alphabet(), {&x, &y, &z}) + ": residual " +
                     triple_to_string(alg.alphabet(), r)};
}

/// d{{u,v}} = {{du,v}} + (-1)^(|u|+N) {{u,dv}}: d graded-commutes with {{u,-}}
inline AxiomCheck check_d_compat(const CobarAlgebra &alg, const Word &u, const Word &v) {
  const Alphabet &a = alg.alphabet();
  const auto &ap = alg.algebra.alphabet();
  DoubleElement lhs = tensor_differential(alg.algebra, double_bracket(alg, u, v));
  Element du(ap), dv(ap);
  differential_of_word(alg.algebra, u, 1, du);
  differential_of_word(alg.algebra, v, 1, dv);
  DoubleElement rhs = double_bracket(alg, du, Element(ap, v));
  DoubleElement r2 = double_bracket(alg, Element(ap, u), dv);
  r2 *= Q(parity_sign(a.degree(u) + alg.bracket_degree));
  rhs += r2;
  return detail::compare(a, {&u, &v}, lhs, rhs);
}

struct AxiomFamily {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  bool passed() const { return failed == 0; }
  void record(const AxiomCheck &c) {
    ++checked;
    if (!c.passed) {
      if (failed == 0)
        first_failure = c.detail;
      ++failed;
    }
  }
};

struct AxiomReport {
  std::vector<AxiomFamily> families;

  bool passed() const {
    for (const auto &f : families)
      if (!f.passed())
        return false;
    return true;
  }
  const AxiomFamily *find(const std::string &name) const {
    for (const auto &f : families)
      if (f.name == name)
        return &f;
    return nullptr;
  }
};

/// Exhaustive check of the double Poisson axioms on all words (the empty
/// word included): pairs up to total weight `max_weight`, outer-derivation
/// triples up to `max_weight`, Jacobi triples up to `max_jacobi_weight`.
inline AxiomReport axiom_suite(const CobarAlgebra &alg, int max_weight, int max_jacobi_weight) {
  const Alphabet &a = alg.alphabet();
  const std::vector<Word> words = words_up_to_weight(a, max_weight);
  std::vector<int> wt;
  for (const auto &w : words)
    wt.push_back(a.weight(w));

  AxiomFamily outer{"outer_derivation"}, skew{"skew_symmetry"}, jacobi{"double_jacobi"}, dcomp{"d_compatibility"};
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size() && wt[i] + wt[j] <= max_weight; ++j) {
      skew.record(check_skew(alg, words[i], words[j]));
      dcomp.record(check_d_compat(alg, words[i], words[j]));
      for (std::size_t k = 0; k < words.size() && wt[i] + wt[j] + wt[k] <= max_weight; ++k) {
        outer.record(check_outer_derivation(alg, words[i], words[j], words[k]));
        if (wt[i] + wt[j] + wt[k] <= max_jacobi_weight)
          jacobi.record(check_double_jacobi(alg, words[i], words[j], words[k]));
      }
    }
  return {{outer, skew, jacobi, dcomp}};
}

} // namespace dpoisson
