#pragma once

// Cyclic bicomplex operators of a DG coalgebra C. An elementary tensor
// (c_1, ..., c_n) is stored as the cobar word s c_1 ... s c_n, and slices are
// graded by total shifted degree sum(|c_i| - 1) and weight, so every operator
// below is a square or rectangular matrix between finite slices.
//
//   T(c_1, ..., c_n) = (-1)^((|c_1|-1) sum_{i>1}(|c_i|-1)) (c_2, ..., c_n, c_1)
//   N   = sum_{k<n} T^k
//   b'  = cobar differential D (internal d plus coproduct insertions)
//   b   = b' + T o D_1, D_1 = coproduct insertion at the first slot only
//
// With these signs (1-T) b = b' (1-T), N b = b' N on coker, b^2 = 0 on ker(1-T).

#include "dpoisson/cobar.hpp"
#include "dpoisson/natural.hpp"

#include <map>
#include <string>
#include <vector>

namespace dpoisson {

struct TensorSlice {
  int degree = 0;
  int weight = 0;
  std::vector<Word> basis; // sorted; all tensor lengths >= 1
};

inline TensorSlice tensor_slice(const CobarAlgebra &alg, int degree, int weight) {
  TensorSlice s{degree, weight, {}};
  for (Word &w : slice_basis(alg.alphabet(), degree, weight))
    if (!w.empty())
      s.basis.push_back(std::move(w));
  return s;
}

namespace detail {

inline void add_word(std::map<Word, Q> &m, const Word &w, const Q &c) {
  if (c == 0)
    return;
  auto [it, ins] = m.try_emplace(w, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0)
      m.erase(it);
  }
}

inline SparseVec to_coordinates(const TensorSlice &s, const std::map<Word, Q> &m) {
  std::map<std::size_t, Q> v;
  for (const auto &[w, c] : m)
    v[index_of(s.basis, w)] = c;
  return la::from_map(v);
}

template <class F> RatMatrix operator_matrix(const TensorSlice &src, const TensorSlice &dst, F &&f) {
  std::vector<SparseVec> cols;
  cols.reserve(src.basis.size());
  for (const Word &w : src.basis) {
    std::map<Word, Q> out;
    f(w, out);
    cols.push_back(to_coordinates(dst, out));
  }
  return RatMatrix::from_columns(dst.basis.size(), cols);
}

} // namespace detail

/// T applied to one tensor, accumulated with coefficient c.
inline void apply_T(const Alphabet &a, const Word &w, const Q &c, std::map<Word, Q> &out) {
  if (w.empty())
    return;
  Word r(w.begin() + 1, w.end());
  r.push_back(w.front());
  const long first = a[w.front()].degree;
  detail::add_word(out, r, c * parity_sign(first * (a.degree(w) - first)));
}

inline void apply_N(const Alphabet &a, const Word &w, const Q &c, std::map<Word, Q> &out) {
  Word cur = w;
  Q coeff = c;
  for (std::size_t k = 0; k < w.size(); ++k) {
    detail::add_word(out, cur, coeff);
    const long first = a[cur.front()].degree;
    coeff *= parity_sign(first * (a.degree(cur) - first));
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
  }
}

inline void apply_b_prime(const CobarAlgebra &alg, const Word &w, const Q &c, std::map<Word, Q> &out) {
  Element e(alg.algebra.alphabet());
  differential_of_word(alg.algebra, w, c, e);
  for (const auto &[m, q] : e.terms())
    detail::add_word(out, m, q);
}

inline void apply_b(const CobarAlgebra &alg, const Word &w, const Q &c, std::map<Word, Q> &out) {
  apply_b_prime(alg, w, c, out);
  if (w.empty())
    return;
  // quadratic part of D on the first letter, then rotate
  const Element &dg = alg.algebra.differential_of(w.front());
  for (const auto &[m, q] : dg.terms()) {
    if (m.size() != 2)
      continue;
    Word nw = m;
    nw.insert(nw.end(), w.begin() + 1, w.end());
    apply_T(alg.alphabet(), nw, c * q, out);
  }
}

inline RatMatrix op_T(const CobarAlgebra &alg, const TensorSlice &s) {
  return detail::operator_matrix(s, s, [&](const Word &w, auto &out) { apply_T(alg.alphabet(), w, 1, out); });
}

inline RatMatrix op_N(const CobarAlgebra &alg, const TensorSlice &s) {
  return detail::operator_matrix(s, s, [&](const Word &w, auto &out) { apply_N(alg.alphabet(), w, 1, out); });
}

/// b' from the (degree, weight) slice to the (degree-1, weight) slice.
inline RatMatrix op_b_prime(const CobarAlgebra &alg, const TensorSlice &src, const TensorSlice &dst) {
  return detail::operator_matrix(src, dst, [&](const Word &w, auto &out) { apply_b_prime(alg, w, 1, out); });
}

inline RatMatrix op_b(const CobarAlgebra &alg, const TensorSlice &src, const TensorSlice &dst) {
  return detail::operator_matrix(src, dst, [&](const Word &w, auto &out) { apply_b(alg, w, 1, out); });
}

/// One slice of the cyclic complex ker(1-T), with b restricted to it.
struct CyclicSlice {
  TensorSlice tensors;
  Subspace cycles_of_T; // ker(1 - T), RREF basis
};

inline CyclicSlice cyclic_slice(const CobarAlgebra &alg, int degree, int weight) {
  CyclicSlice c{tensor_slice(alg, degree, weight), {}};
  const RatMatrix T = op_T(alg, c.tensors);
  c.cycles_of_T = kernel(RatMatrix::identity(c.tensors.basis.size()) - T);
  return c;
}

namespace detail {

/// Coordinates of v in an RREF basis: the entries at the pivot positions.
inline SparseVec rref_coordinates(const Subspace &s, const SparseVec &v) {
  std::map<std::size_t, Q> out;
  for (std::size_t k = 0; k < s.basis.size(); ++k) {
    const Q q = la::entry(v, s.basis[k].front().first);
    if (q != 0)
      out[k] = q;
  }
  return la::from_map(out);
}

} // namespace detail

/// Matrix of b : CC(degree, weight) -> CC(degree-1, weight) in the RREF bases.
/// Throws NotAComplex if b does not preserve ker(1-T).
inline RatMatrix cyclic_differential(const CobarAlgebra &alg, const CyclicSlice &src, const CyclicSlice &dst) {
  const RatMatrix b = op_b(alg, src.tensors, dst.tensors);
  const Echelon target = dst.cycles_of_T.echelon();
  std::vector<SparseVec> cols;
  for (const auto &v : src.cycles_of_T.basis) {
    const SparseVec bv = b.apply(v);
    if (!target.contains(bv))
      throw AlgebraError(ErrorKind::NotAComplex, "b does not preserve ker(1-T)");
    cols.push_back(detail::rref_coordinates(dst.cycles_of_T, bv));
  }
  return RatMatrix::from_columns(dst.cycles_of_T.dim(), cols);
}

/// Homology of the cyclic complex at one slice. Checks b^2 = 0 on the way.
inline HomologySlice cyclic_slice_homology(const CobarAlgebra &alg, int degree, int weight) {
  const CyclicSlice lo = cyclic_slice(alg, degree - 1, weight);
  const CyclicSlice mid = cyclic_slice(alg, degree, weight);
  const CyclicSlice hi = cyclic_slice(alg, degree + 1, weight);
  return homology_slice(cyclic_differential(alg, hi, mid), cyclic_differential(alg, mid, lo));
}

struct SliceComparison {
  int degree = 0;
  int weight = 0;
  std::size_t natural_dim = 0; // chains of the natural quotient
  std::size_t cyclic_dim = 0;  // chains of ker(1-T)
  bool bijective = false;
  bool chain_map = false;
  std::size_t natural_homology = 0;
  std::size_t cyclic_homology = 0;

  bool ok() const { return bijective && chain_map && natural_homology == cyclic_homology; }
};

/// Compares the natural quotient of the cobar construction (unreduced, weight
/// >= 1) with ker(1-T) through N, slice by slice.
inline SliceComparison compare_slice(const CobarAlgebra &alg, int degree, int weight) {
  SliceComparison r;
  r.degree = degree;
  r.weight = weight;
  const Alphabet &a = alg.alphabet();
  const auto nat = natural_slice_basis(a, degree, weight, false);
  const CyclicSlice cyc = cyclic_slice(alg, degree, weight);
  r.natural_dim = nat.size();
  r.cyclic_dim = cyc.cycles_of_T.dim();

  // N on canonical words, landing in ker(1-T)
  std::vector<SparseVec> images;
  for (const Word &w : nat) {
    std::map<Word, Q> out;
    apply_N(a, w, 1, out);
    images.push_back(detail::to_coordinates(cyc.tensors, out));
  }
  const Echelon ker = cyc.cycles_of_T.echelon();
  bool inside = true;
  for (const auto &v : images)
    inside = inside && ker.contains(v);
  r.bijective = inside && rank(RatMatrix::from_columns(cyc.tensors.basis.size(), images)) == nat.size() &&
                nat.size() == r.cyclic_dim;

  // b N = N D on every canonical word
  bool chain = true;
  for (const Word &w : nat) {
    std::map<Word, Q> nw, bnw, dw, ndw;
    apply_N(a, w, 1, nw);
    for (const auto &[m, c] : nw)
      apply_b(alg, m, c, bnw);
    apply_b_prime(alg, w, 1, dw);
    for (const auto &[m, c] : dw)
      apply_N(a, m, c, ndw);
    chain = chain && bnw == ndw;
  }
  r.chain_map = chain;

  r.natural_homology = natural_slice_homology(alg.algebra, degree, weight, false).dimension();
  r.cyclic_homology = cyclic_slice_homology(alg, degree, weight).dimension;
  return r;
}

/// compare_slice over all slices with 1 <= weight <= max_weight and
/// min_degree <= degree <= max_degree.
inline std::vector<SliceComparison> compare_with_cobar(const CobarAlgebra &alg, int max_weight, int min_degree,
                                                       int max_degree) {
  std::vector<SliceComparison> out;
  for (int w = 1; w <= max_weight; ++w)
    for (int d = min_degree; d <= max_degree; ++d)
      out.push_back(compare_slice(alg, d, w));
  return out;
}

/// Degree range spanned by the words of weight <= max_weight.
inline std::pair<int, int> degree_range(const Alphabet &a, int max_weight) {
  int lo = 0, hi = 0;
  for (const Word &w : words_up_to_weight(a, max_weight)) {
    lo = std::min(lo, a.degree(w));
    hi = std::max(hi, a.degree(w));
  }
  return {lo, hi};
}

} // namespace dpoisson
