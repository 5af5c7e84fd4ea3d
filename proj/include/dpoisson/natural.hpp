#pragma once

// Commutator quotients A/[A,A] and A/(k.1 + [A,A]) of a free DG algebra,
// cyclic-word normal forms, the induced bracket mu o {{-,-}} and its
// descent to the quotient and to homology.
//
// Rotation: g.u = (-1)^(|g||u|) u.g in the quotient. The normal form of a
// word is its lexicographically least rotation (letters ordered by index);
// a word equal to minus itself under some rotation is zero.

#include "dpoisson/cobar.hpp"
#include "dpoisson/exactla.hpp"
#include "dpoisson/graded.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dpoisson {

/// Normal form of a single word: (sign, canonical word); sign 0 if the class vanishes.
inline std::pair<int, Word> canonical_rotation(const Alphabet &a, const Word &w) {
  if (w.size() <= 1)
    return {1, w};
  const std::size_t n = w.size();
  std::vector<int> pre(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    pre[i + 1] = pre[i] + a[w[i]].degree;
  const long total = pre[n];
  Word best;
  int best_sign = 0;
  bool vanishes = false;
  for (std::size_t k = 0; k < n; ++k) {
    Word r(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    // moving the prefix w[0..k) to the back
    const int s = parity_sign(static_cast<long>(pre[k]) * (total - pre[k]));
    if (best_sign == 0 || r < best) {
      best = std::move(r);
      best_sign = s;
    } else if (r == best && s != best_sign) {
      vanishes = true;
    }
  }
  if (vanishes)
    return {0, best};
  return {best_sign, best};
}

class NaturalElement {
public:
  using Terms = std::map<Word, Q>;

  NaturalElement() = default;
  NaturalElement(AlphabetPtr a, bool reduced) : alphabet_(std::move(a)), reduced_(reduced) {}

  const AlphabetPtr &alphabet() const { return alphabet_; }
  bool reduced() const { return reduced_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c times the class of an arbitrary word.
  void add_word(const Word &w, const Q &c) {
    if (c == 0 || (reduced_ && w.empty()))
      return;
    auto [s, cw] = canonical_rotation(*alphabet_, w);
    if (s == 0)
      return;
    auto [it, ins] = terms_.try_emplace(cw, c * s);
    if (!ins) {
      it->second += c * s;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  Q coefficient(const Word &canonical) const {
    auto it = terms_.find(canonical);
    return it == terms_.end() ? Q(0) : it->second;
  }

  NaturalElement &operator+=(const NaturalElement &o) {
    check(o);
    for (const auto &[w, c] : o.terms_)
      add_word(w, c);
    return *this;
  }
  NaturalElement &operator-=(const NaturalElement &o) {
    check(o);
    for (const auto &[w, c] : o.terms_)
      add_word(w, -c);
    return *this;
  }
  NaturalElement &operator*=(const Q &c) {
    if (c == 0)
      terms_.clear();
    for (auto &[w, v] : terms_)
      v *= c;
    return *this;
  }
  friend NaturalElement operator+(NaturalElement a, const NaturalElement &b) { return a += b; }
  friend NaturalElement operator-(NaturalElement a, const NaturalElement &b) { return a -= b; }
  friend NaturalElement operator*(const Q &c, NaturalElement a) { return a *= c; }
  friend bool operator==(const NaturalElement &a, const NaturalElement &b) {
    return a.reduced_ == b.reduced_ && a.terms_ == b.terms_;
  }

  /// The canonical words as an Element (a lift).
  Element lift() const {
    Element e(alphabet_);
    for (const auto &[w, c] : terms_)
      e.add(w, c);
    return e;
  }

  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string out;
    for (const auto &[w, c] : terms_)
      append_term(out, c, "[" + word_to_string(*alphabet_, w) + "]");
    return out;
  }

private:
  void check(const NaturalElement &o) const {
    if (o.reduced_ != reduced_)
      throw AlgebraError(ErrorKind::MixedAlgebras, "mixing reduced and unreduced natural elements");
    if (alphabet_ && o.alphabet_ && o.alphabet_ != alphabet_ && !(*o.alphabet_ == *alphabet_))
      throw AlgebraError(ErrorKind::MixedAlgebras, "natural elements over different generator sets");
  }

  AlphabetPtr alphabet_;
  bool reduced_ = false;
  Terms terms_;
};

inline NaturalElement project_natural(const Element &e, bool reduced) {
  NaturalElement out(e.alphabet(), reduced);
  for (const auto &[w, c] : e.terms())
    out.add_word(w, c);
  return out;
}

inline NaturalElement natural_differential(const FreeDGAlgebra &alg, const NaturalElement &ne) {
  return project_natural(apply_differential(alg, ne.lift()), ne.reduced());
}

/// {a,b} = mu({{a,b}})
inline Element induced_bracket(const CobarAlgebra &alg, const Element &a, const Element &b) {
  return mu(double_bracket(alg, a, b));
}

inline NaturalElement natural_bracket(const CobarAlgebra &alg, const NaturalElement &a, const NaturalElement &b) {
  if (a.reduced() != b.reduced())
    throw AlgebraError(ErrorKind::MixedAlgebras, "mixing reduced and unreduced natural elements");
  return project_natural(induced_bracket(alg, a.lift(), b.lift()), a.reduced());
}

/// Nonzero canonical words of a (degree, weight) slice, in lexicographic order.
inline std::vector<Word> natural_slice_basis(const Alphabet &a, int degree, int weight, bool reduced) {
  std::vector<Word> out;
  for (const Word &w : slice_basis(a, degree, weight)) {
    if (reduced && w.empty())
      continue;
    auto [s, cw] = canonical_rotation(a, w);
    if (s != 0 && cw == w)
      out.push_back(w);
  }
  return out;
}

namespace detail {

inline std::size_t index_of(const std::vector<Word> &basis, const Word &w) {
  auto it = std::lower_bound(basis.begin(), basis.end(), w);
  if (it == basis.end() || *it != w)
    throw std::logic_error("word not in slice basis");
  return static_cast<std::size_t>(it - basis.begin());
}

} // namespace detail

/// Coordinates of a natural element in a slice basis (sorted canonical words).
inline SparseVec natural_coordinates(const std::vector<Word> &basis, const NaturalElement &ne) {
  std::map<std::size_t, Q> v;
  for (const auto &[w, c] : ne.terms())
    v[detail::index_of(basis, w)] = c;
  return la::from_map(v);
}

inline NaturalElement natural_from_coordinates(const AlphabetPtr &a, bool reduced, const std::vector<Word> &basis,
                                               const SparseVec &v) {
  NaturalElement out(a, reduced);
  for (const auto &[i, c] : v)
    out.add_word(basis.at(i), c);
  return out;
}

/// Matrix of d from the (degree, weight) slice to the (degree-1, weight) slice.
inline RatMatrix natural_differential_matrix(const FreeDGAlgebra &alg, int degree, int weight, bool reduced) {
  const Alphabet &a = *alg.alphabet();
  const auto src = natural_slice_basis(a, degree, weight, reduced);
  const auto dst = natural_slice_basis(a, degree - 1, weight, reduced);
  std::vector<SparseVec> cols;
  for (const Word &w : src) {
    NaturalElement ne(alg.alphabet(), reduced);
    ne.add_word(w, 1);
    cols.push_back(natural_coordinates(dst, natural_differential(alg, ne)));
  }
  return RatMatrix::from_columns(dst.size(), cols);
}

struct NaturalHomology {
  int degree = 0;
  int weight = 0;
  bool reduced = false;
  std::vector<Word> basis; // chain basis of the slice
  HomologySlice slice;

  std::size_t dimension() const { return slice.dimension; }
};

inline NaturalHomology natural_slice_homology(const FreeDGAlgebra &alg, int degree, int weight, bool reduced) {
  NaturalHomology h{degree, weight, reduced, natural_slice_basis(*alg.alphabet(), degree, weight, reduced), {}};
  const RatMatrix d_in = natural_differential_matrix(alg, degree + 1, weight, reduced);
  const RatMatrix d_out = natural_differential_matrix(alg, degree, weight, reduced);
  h.slice = homology_slice(d_in, d_out);
  return h;
}

/// Class representatives of a homology slice, as natural elements.
inline std::vector<NaturalElement> homology_representatives(const FreeDGAlgebra &alg, const NaturalHomology &h) {
  std::vector<NaturalElement> out;
  for (const auto &v : h.slice.representatives)
    out.push_back(natural_from_coordinates(alg.alphabet(), h.reduced, h.basis, v));
  return out;
}

inline bool is_natural_cycle(const FreeDGAlgebra &alg, const NaturalElement &ne) {
  return natural_differential(alg, ne).is_zero();
}

/// True when ne is d of something (ne must be homogeneous).
inline bool is_natural_boundary(const FreeDGAlgebra &alg, const NaturalElement &ne) {
  if (ne.is_zero())
    return true;
  const Alphabet &a = *alg.alphabet();
  const Word &w0 = ne.terms().begin()->first;
  const int deg = a.degree(w0), wt = a.weight(w0);
  for (const auto &[w, c] : ne.terms())
    if (a.degree(w) != deg || a.weight(w) != wt)
      throw std::invalid_argument("is_natural_boundary: inhomogeneous element");
  const auto basis = natural_slice_basis(a, deg, wt, ne.reduced());
  const Subspace im = image(natural_differential_matrix(alg, deg + 1, wt, ne.reduced()));
  return im.contains(natural_coordinates(basis, ne));
}

/// Bracket of two homology classes, returned as a cycle representative.
/// Throws NotACycle if either input is not a cycle.
inline NaturalElement homology_bracket(const CobarAlgebra &alg, const NaturalElement &a, const NaturalElement &b) {
  if (!is_natural_cycle(alg.algebra, a))
    throw AlgebraError(ErrorKind::NotACycle, "first argument " + a.to_string() + " is not a cycle");
  if (!is_natural_cycle(alg.algebra, b))
    throw AlgebraError(ErrorKind::NotACycle, "second argument " + b.to_string() + " is not a cycle");
  return natural_bracket(alg, a, b);
}

/// Single-word classes of all slices with 1 <= weight <= max_weight, sorted by
/// (weight, degree, word).
inline std::vector<NaturalElement> natural_word_classes(const AlphabetPtr &a, int max_weight, bool reduced) {
  int lo = 0, hi = 0;
  for (const Word &w : words_up_to_weight(*a, max_weight)) {
    lo = std::min(lo, a->degree(w));
    hi = std::max(hi, a->degree(w));
  }
  std::vector<NaturalElement> out;
  for (int wt = 1; wt <= max_weight; ++wt)
    for (int d = lo; d <= hi; ++d)
      for (const Word &w : natural_slice_basis(*a, d, wt, reduced)) {
        NaturalElement e(a, reduced);
        e.add_word(w, 1);
        out.push_back(std::move(e));
      }
  return out;
}

/// Graded antisymmetry and d-derivation on pairs of word classes up to total
/// weight max_pair_weight, Jacobi on triples up to max_triple_weight.
///   {a,b} = -(-1)^((|a|+N)(|b|+N)) {b,a}
///   {a,{b,c}} = {{a,b},c} + (-1)^((|a|+N)(|b|+N)) {b,{a,c}}
///   d{a,b} = {da,b} + (-1)^(|a|+N) {a,db}
inline AxiomReport natural_axiom_suite(const CobarAlgebra &alg, bool reduced, int max_pair_weight,
                                       int max_triple_weight) {
  const Alphabet &a = alg.alphabet();
  const long N = alg.bracket_degree;
  const auto classes = natural_word_classes(alg.algebra.alphabet(), std::max(max_pair_weight, max_triple_weight), reduced);
  auto deg = [&](const NaturalElement &e) { return static_cast<long>(a.degree(e.terms().begin()->first)); };
  auto wt = [&](const NaturalElement &e) { return a.weight(e.terms().begin()->first); };
  auto br = [&](const NaturalElement &x, const NaturalElement &y) { return natural_bracket(alg, x, y); };
  auto d = [&](const NaturalElement &x) { return natural_differential(alg.algebra, x); };
  auto label = [](std::initializer_list<const NaturalElement *> xs) {
    std::string s = "(";
    for (const auto *x : xs)
      s += (s.size() > 1 ? ", " : "") + x->to_string();
    return s + ")";
  };

  AxiomFamily anti{"antisymmetry"}, jacobi{"jacobi"}, deriv{"d_derivation"};
  for (const auto &x : classes)
    for (const auto &y : classes) {
      const int wxy = wt(x) + wt(y);
      if (wxy <= max_pair_weight) {
        const NaturalElement xy = br(x, y);
        const NaturalElement res = xy + Q(parity_sign((deg(x) + N) * (deg(y) + N))) * br(y, x);
        anti.record(res.is_zero() ? AxiomCheck{} : AxiomCheck{false, label({&x, &y}) + ": {a,b} = " + xy.to_string()});
        const NaturalElement lhs = d(xy);
        const NaturalElement rhs = br(d(x), y) + Q(parity_sign(deg(x) + N)) * br(x, d(y));
        deriv.record(lhs == rhs ? AxiomCheck{}
                                : AxiomCheck{false, label({&x, &y}) + ": lhs = " + lhs.to_string() +
                                                        ", rhs = " + rhs.to_string()});
      }
      if (wxy >= max_triple_weight)
        continue;
      const NaturalElement xy = br(x, y);
      for (const auto &z : classes) {
        if (wxy + wt(z) > max_triple_weight)
          continue;
        const NaturalElement res = br(x, br(y, z)) - br(xy, z) -
                                   Q(parity_sign((deg(x) + N) * (deg(y) + N))) * br(y, br(x, z));
        jacobi.record(res.is_zero() ? AxiomCheck{}
                                    : AxiomCheck{false, label({&x, &y, &z}) + ": residual " + res.to_string()});
      }
    }
  return {{anti, jacobi, deriv}};
}

/// Coordinates of a homogeneous cycle in the basis of homology_representatives.
inline std::vector<Q> homology_coordinates(const FreeDGAlgebra &alg, const NaturalHomology &h, const NaturalElement &ne) {
  if (!is_natural_cycle(alg, ne))
    throw AlgebraError(ErrorKind::NotACycle, ne.to_string() + " is not a cycle");
  const std::size_t n = h.basis.size();
  // Solve v = b + sum c_k rep_k with b in boundaries: eliminate against an
  // echelon form of [boundaries | reps] tracking rep coefficients.
  const std::size_t r = h.slice.representatives.size();
  Echelon e(n + r);
  for (const auto &b : h.slice.boundaries.basis)
    e.insert(b);
  for (std::size_t k = 0; k < r; ++k) {
    SparseVec v = h.slice.representatives[k];
    v.emplace_back(n + k, Q(1));
    e.insert(v);
  }
  SparseVec rem = e.reduce(natural_coordinates(h.basis, ne));
  std::vector<Q> coords(r, Q(0));
  for (const auto &[i, q] : rem) {
    if (i < n)
      throw std::logic_error("homology_coordinates: cycle not in span");
    coords[i - n] = -q;
  }
  return coords;
}

} // namespace dpoisson
