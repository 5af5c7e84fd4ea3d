#pragma once

// Exact sparse linear algebra over Q: kernels, images, quotients and the
// homology of a single slice of a chain complex.

#include "dpoisson/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace dpoisson {

/// Sparse vector: (index, value) pairs sorted by index, no zero values.
using SparseVec = std::vector<std::pair<std::size_t, Q>>;

namespace la {

inline Q entry(const SparseVec &v, std::size_t i) {
  auto it = std::lower_bound(v.begin(), v.end(), i,
                             [](const auto &p, std::size_t k) { return p.first < k; });
  if (it != v.end() && it->first == i)
    return it->second;
  return Q(0);
}

/// Returns a + c * b.
inline SparseVec axpy(const SparseVec &a, const Q &c, const SparseVec &b) {
  if (c == 0)
    return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, c * ib->second);
      ++ib;
    } else {
      Q v = ia->second + c * ib->second;
      if (v != 0)
        out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return out;
}

inline SparseVec scaled(SparseVec v, const Q &c) {
  if (c == 0)
    return {};
  for (auto &e : v)
    e.second *= c;
  return v;
}

/// Builds a sparse vector from an index->value map, dropping zeros.
inline SparseVec from_map(const std::map<std::size_t, Q> &m) {
  SparseVec v;
  v.reserve(m.size());
  for (const auto &[i, q] : m)
    if (q != 0)
      v.emplace_back(i, q);
  return v;
}

inline SparseVec unit(std::size_t i) { return SparseVec{{i, Q(1)}}; }

} // namespace la

/// Sparse rational matrix stored row-major. Every stored entry is nonzero.
class RatMatrix {
public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m.set(i, i, 1);
    return m;
  }

  /// Builds a matrix from its columns (each column a sparse vector of length `rows`).
  static RatMatrix from_columns(std::size_t rows, const std::vector<SparseVec> &columns) {
    RatMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (const auto &[r, q] : columns[c])
        m.rows_.at(r).emplace_back(c, q);
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  Q at(std::size_t r, std::size_t c) const { return la::entry(rows_.at(r), c); }

  void set(std::size_t r, std::size_t c, const Q &value) {
    if (r >= rows() || c >= cols_)
      throw std::out_of_range("RatMatrix::set index out of bounds");
    auto &row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto &p, std::size_t k) { return p.first < k; });
    if (it != row.end() && it->first == c) {
      if (value == 0)
        row.erase(it);
      else
        it->second = value;
    } else if (value != 0) {
      row.insert(it, {c, value});
    }
  }

  void add(std::size_t r, std::size_t c, const Q &value) { set(r, c, at(r, c) + value); }

  const SparseVec &row(std::size_t r) const { return rows_.at(r); }

  SparseVec column(std::size_t c) const {
    SparseVec v;
    for (std::size_t r = 0; r < rows(); ++r) {
      Q q = at(r, c);
      if (q != 0)
        v.emplace_back(r, q);
    }
    return v;
  }

  std::vector<SparseVec> columns() const {
    std::vector<SparseVec> out(cols_);
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto &[c, q] : rows_[r])
        out[c].emplace_back(r, q);
    return out;
  }

  SparseVec apply(const SparseVec &v) const {
    std::map<std::size_t, Q> acc;
    for (std::size_t r = 0; r < rows(); ++r) {
      Q s = 0;
      auto iv = v.begin();
      for (const auto &[c, q] : rows_[r]) {
        while (iv != v.end() && iv->first < c)
          ++iv;
        if (iv != v.end() && iv->first == c)
          s += q * iv->second;
      }
      if (s != 0)
        acc[r] = s;
    }
    return la::from_map(acc);
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const auto &r) { return r.empty(); });
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto &r : rows_)
      n += r.size();
    return n;
  }

  friend RatMatrix operator*(const RatMatrix &a, const RatMatrix &b) {
    if (a.cols() != b.rows())
      throw std::invalid_argument("RatMatrix product: dimension mismatch");
    RatMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      SparseVec acc;
      for (const auto &[k, q] : a.rows_[r])
        acc = la::axpy(acc, q, b.rows_[k]);
      out.rows_[r] = std::move(acc);
    }
    return out;
  }

  friend RatMatrix operator-(const RatMatrix &a, const RatMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw std::invalid_argument("RatMatrix difference: dimension mismatch");
    RatMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
      out.rows_[r] = la::axpy(a.rows_[r], Q(-1), b.rows_[r]);
    return out;
  }

  friend RatMatrix operator+(const RatMatrix &a, const RatMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw std::invalid_argument("RatMatrix sum: dimension mismatch");
    RatMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
      out.rows_[r] = la::axpy(a.rows_[r], Q(1), b.rows_[r]);
    return out;
  }

  friend bool operator==(const RatMatrix &a, const RatMatrix &b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

private:
  std::size_t cols_ = 0;
  std::vector<SparseVec> rows_;
};

/// Incrementally maintained reduced row echelon form. Each stored row has a
/// pivot entry equal to 1 and zeros in every other pivot column.
class Echelon {
public:
  explicit Echelon(std::size_t dim = 0) : dim_(dim) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Remainder of v after eliminating all pivot columns.
  SparseVec reduce(const SparseVec &v) const {
    SparseVec out = v;
    for (const auto &[i, q] : v) {
      auto it = rows_.find(i);
      if (it != rows_.end())
        out = la::axpy(out, -q, it->second);
    }
    return out;
  }

  bool contains(const SparseVec &v) const { return reduce(v).empty(); }

  /// Adds v to the span. Returns false if v was already in the span.
  bool insert(const SparseVec &v) {
    SparseVec r = reduce(v);
    if (r.empty())
      return false;
    const std::size_t pivot = r.front().first;
    r = la::scaled(std::move(r), Q(1) / r.front().second);
    for (auto &[p, row] : rows_) {
      Q c = la::entry(row, pivot);
      if (c != 0)
        row = la::axpy(row, -c, r);
    }
    rows_.emplace(pivot, std::move(r));
    return true;
  }

  const std::map<std::size_t, SparseVec> &rows() const { return rows_; }

private:
  std::size_t dim_;
  std::map<std::size_t, SparseVec> rows_;
};

/// A linear subspace of Q^ambient_dim, kept in reduced echelon form.
struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<SparseVec> basis; // sorted by pivot, pivot entries 1

  std::size_t dim() const { return basis.size(); }

  static Subspace span(std::size_t ambient, const std::vector<SparseVec> &vectors) {
    Echelon e(ambient);
    for (const auto &v : vectors)
      e.insert(v);
    return from_echelon(e);
  }

  static Subspace from_echelon(const Echelon &e) {
    Subspace s;
    s.ambient_dim = e.ambient_dim();
    for (const auto &[p, row] : e.rows())
      s.basis.push_back(row);
    return s;
  }

  Echelon echelon() const {
    Echelon e(ambient_dim);
    for (const auto &v : basis)
      e.insert(v);
    return e;
  }

  bool contains(const SparseVec &v) const { return echelon().contains(v); }
};

inline Echelon row_echelon(const RatMatrix &m) {
  Echelon e(m.cols());
  // Insert sparsest rows first: keeps fill-in and coefficient growth down.
  std::vector<std::size_t> order(m.rows());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return m.row(a).size() < m.row(b).size();
  });
  for (std::size_t r : order)
    e.insert(m.row(r));
  return e;
}

inline std::size_t rank(const RatMatrix &m) { return row_echelon(m).rank(); }

/// Basis of {v : m v = 0}.
inline Subspace kernel(const RatMatrix &m) {
  const Echelon e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto &[p, row] : e.rows())
    is_pivot[p] = true;
  std::vector<SparseVec> vectors;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f])
      continue;
    std::map<std::size_t, Q> v;
    v[f] = 1;
    for (const auto &[p, row] : e.rows()) {
      Q c = la::entry(row, f);
      if (c != 0)
        v[p] = -c;
    }
    vectors.push_back(la::from_map(v));
  }
  return Subspace::span(m.cols(), vectors);
}

/// Column span of m.
inline Subspace image(const RatMatrix &m) { return Subspace::span(m.rows(), m.columns()); }

/// Representatives of a basis of total / sub. Throws NotASubspace unless sub <= total.
inline std::vector<SparseVec> quotient_basis(const Subspace &sub, const Subspace &total) {
  if (sub.ambient_dim != total.ambient_dim)
    throw AlgebraError(ErrorKind::NotASubspace, "ambient dimensions differ");
  Echelon t = total.echelon();
  for (const auto &v : sub.basis)
    if (!t.contains(v))
      throw AlgebraError(ErrorKind::NotASubspace, "a basis vector of sub is not in total");
  Echelon e = sub.echelon();
  std::vector<SparseVec> reps;
  for (const auto &v : total.basis)
    if (e.insert(v))
      reps.push_back(v);
  return reps;
}

struct HomologySlice {
  std::size_t dimension = 0;
  std::vector<SparseVec> representatives;
  Subspace cycles;
  Subspace boundaries;
};

/// Homology ker(d_out) / im(d_in) at the middle space of
///   A --d_in--> B --d_out--> C.
inline HomologySlice homology_slice(const RatMatrix &d_in, const RatMatrix &d_out) {
  if (d_in.rows() != d_out.cols())
    throw std::invalid_argument("homology_slice: d_in target and d_out source differ in dimension");
  if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
    throw AlgebraError(ErrorKind::NotAComplex, "d_out * d_in is nonzero");
  HomologySlice h;
  h.cycles = kernel(d_out);
  h.boundaries = image(d_in);
  h.representatives = quotient_basis(h.boundaries, h.cycles);
  h.dimension = h.representatives.size();
  return h;
}

} // namespace dpoisson
