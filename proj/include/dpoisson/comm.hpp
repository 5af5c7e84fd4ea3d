#pragma once

// Graded-commutative polynomial DG algebras. Monomials are kept in canonical
// form: generators sorted by index, odd generators with exponent at most 1.

#include "dpoisson/graded.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace dpoisson {

/// Sorted (generator, exponent) pairs with positive exponents.
using CommMonomial = std::vector<std::pair<Letter, std::uint16_t>>;

inline bool is_odd(const Alphabet &a, Letter l) { return a[l].degree % 2 != 0; }

inline int monomial_degree(const Alphabet &a, const CommMonomial &m) {
  int d = 0;
  for (auto [l, e] : m)
    d += a[l].degree * e;
  return d;
}

inline int monomial_weight(const Alphabet &a, const CommMonomial &m) {
  int d = 0;
  for (auto [l, e] : m)
    d += a[l].weight * e;
  return d;
}

/// Product of two canonical monomials: returns the sign (0 when the product
/// vanishes) and writes the canonical product to `out`.
inline int multiply_monomials(const Alphabet &a, const CommMonomial &x, const CommMonomial &y,
                              CommMonomial &out) {
  out.clear();
  out.reserve(x.size() + y.size());
  // Sign: each odd letter of y moves left past the odd letters of x with larger index.
  int odd_x_remaining = 0;
  for (auto [l, e] : x)
    if (is_odd(a, l))
      odd_x_remaining += e;
  long crossings = 0;
  auto ix = x.begin(), iy = y.begin();
  while (ix != x.end() || iy != y.end()) {
    if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
      if (is_odd(a, ix->first))
        odd_x_remaining -= ix->second;
      out.push_back(*ix++);
    } else if (ix == x.end() || iy->first < ix->first) {
      if (is_odd(a, iy->first))
        crossings += static_cast<long>(odd_x_remaining) * iy->second;
      out.push_back(*iy++);
    } else {
      if (is_odd(a, ix->first))
        return 0;
      out.emplace_back(ix->first, static_cast<std::uint16_t>(ix->second + iy->second));
      ++ix;
      ++iy;
    }
  }
  return parity_sign(crossings);
}

/// Canonical form of an ordered product of letters: (sign, monomial); sign 0 if it vanishes.
inline std::pair<int, CommMonomial> normalize_sequence(const Alphabet &a, const std::vector<Letter> &seq) {
  CommMonomial acc, tmp;
  int sign = 1;
  for (Letter l : seq) {
    int s = multiply_monomials(a, acc, CommMonomial{{l, 1}}, tmp);
    if (s == 0)
      return {0, {}};
    sign *= s;
    acc.swap(tmp);
  }
  return {sign, acc};
}

inline std::string monomial_to_string(const Alphabet &a, const CommMonomial &m) {
  if (m.empty())
    return "1";
  std::string out;
  for (auto [l, e] : m) {
    if (!out.empty())
      out += "*";
    out += a[l].name;
    if (e > 1)
      out += "^" + std::to_string(e);
  }
  return out;
}

/// Sparse rational combination of canonical monomials.
class CommElement {
public:
  using Terms = std::map<CommMonomial, Q>;

  CommElement() = default;
  explicit CommElement(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
  CommElement(AlphabetPtr alphabet, const CommMonomial &m, const Q &c = 1)
      : alphabet_(std::move(alphabet)) {
    add(m, c);
  }

  static CommElement constant(AlphabetPtr a, const Q &c) { return CommElement(std::move(a), {}, c); }
  static CommElement generator(AlphabetPtr a, Letter l) {
    return CommElement(std::move(a), CommMonomial{{l, 1}});
  }

  const AlphabetPtr &alphabet() const { return alphabet_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Q coefficient(const CommMonomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Q(0) : it->second;
  }

  void add(const CommMonomial &m, const Q &c) {
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  CommElement &operator+=(const CommElement &o) {
    adopt(o);
    for (const auto &[m, c] : o.terms_)
      add(m, c);
    return *this;
  }
  CommElement &operator-=(const CommElement &o) {
    adopt(o);
    for (const auto &[m, c] : o.terms_)
      add(m, -c);
    return *this;
  }
  CommElement &operator*=(const Q &c) {
    if (c == 0)
      terms_.clear();
    for (auto &[m, v] : terms_)
      v *= c;
    return *this;
  }

  friend CommElement operator+(CommElement a, const CommElement &b) { return a += b; }
  friend CommElement operator-(CommElement a, const CommElement &b) { return a -= b; }
  friend CommElement operator*(const Q &c, CommElement a) { return a *= c; }
  friend CommElement operator-(CommElement a) { return a *= Q(-1); }
  friend bool operator==(const CommElement &a, const CommElement &b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string out;
    for (const auto &[m, c] : terms_)
      append_term(out, c, monomial_to_string(*alphabet_, m));
    return out;
  }

private:
  void adopt(const CommElement &o) {
    if (!alphabet_)
      alphabet_ = o.alphabet_;
    else if (o.alphabet_ && o.alphabet_ != alphabet_ && !(*o.alphabet_ == *alphabet_))
      throw AlgebraError(ErrorKind::MixedAlgebras, "elements over different generator sets");
  }

  AlphabetPtr alphabet_;
  Terms terms_;
};

/// Graded-commutative product.
inline CommElement comm_multiply(const CommElement &a, const CommElement &b) {
  const AlphabetPtr &al = a.alphabet() ? a.alphabet() : b.alphabet();
  CommElement out(al);
  if (a.is_zero() || b.is_zero())
    return out;
  CommMonomial tmp;
  for (const auto &[x, cx] : a.terms())
    for (const auto &[y, cy] : b.terms()) {
      int s = multiply_monomials(*al, x, y, tmp);
      if (s != 0)
        out.add(tmp, s * cx * cy);
    }
  return out;
}

inline CommElement operator*(const CommElement &a, const CommElement &b) { return comm_multiply(a, b); }

/// Re-normalizes every monomial (identity on canonical input).
inline CommElement renormalize(const CommElement &e) {
  CommElement out(e.alphabet());
  for (const auto &[m, c] : e.terms()) {
    std::vector<Letter> seq;
    for (auto [l, k] : m)
      for (int i = 0; i < k; ++i)
        seq.push_back(l);
    auto [s, nm] = normalize_sequence(*e.alphabet(), seq);
    if (s != 0)
      out.add(nm, s * c);
  }
  return out;
}

/// Polynomial graded-commutative algebra with a degree -1 derivation given on generators.
class CommDGAlgebra {
public:
  CommDGAlgebra() = default;
  explicit CommDGAlgebra(std::vector<Generator> gens)
      : alphabet_(std::make_shared<const Alphabet>(std::move(gens))) {
    for (std::size_t i = 0; i < alphabet_->size(); ++i)
      diff_.emplace_back(alphabet_);
  }

  const AlphabetPtr &alphabet() const { return alphabet_; }
  std::size_t num_generators() const { return alphabet_->size(); }
  CommElement gen(Letter l) const { return CommElement::generator(alphabet_, l); }
  CommElement constant(const Q &c) const { return CommElement::constant(alphabet_, c); }
  CommElement zero() const { return CommElement(alphabet_); }

  void set_differential(Letter g, CommElement v) { diff_.at(g) = CommElement(alphabet_) + v; }
  const CommElement &differential_of(Letter g) const { return diff_.at(g); }

private:
  AlphabetPtr alphabet_;
  std::vector<CommElement> diff_;
};

inline CommElement comm_differential(const CommDGAlgebra &alg, const CommElement &e) {
  const Alphabet &a = *alg.alphabet();
  CommElement out(alg.alphabet());
  for (const auto &[m, c] : e.terms()) {
    // d(g^k) = k g^(k-1) dg for even g; odd g has k = 1.
    int prefix_degree = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto [g, k] = m[i];
      const CommElement &dg = alg.differential_of(g);
      if (!dg.is_zero()) {
        CommMonomial before(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(i));
        CommMonomial after(m.begin() + static_cast<std::ptrdiff_t>(i) + 1, m.end());
        if (k > 1)
          before.emplace_back(g, static_cast<std::uint16_t>(k - 1));
        CommElement left(alg.alphabet(), before, c * k * parity_sign(prefix_degree));
        out += comm_multiply(comm_multiply(left, dg), CommElement(alg.alphabet(), after));
      }
      prefix_degree += a[g].degree * k;
    }
  }
  return out;
}

inline CheckReport check_comm_d_squared(const CommDGAlgebra &alg) {
  for (Letter g = 0; g < alg.num_generators(); ++g) {
    CommElement dd = comm_differential(alg, alg.differential_of(g));
    if (!dd.is_zero())
      return {false, "d(d(" + (*alg.alphabet())[g].name + ")) = " + dd.to_string()};
  }
  return {};
}

/// All canonical monomials of the given degree and weight, in lexicographic order.
inline std::vector<CommMonomial> comm_slice_basis(const Alphabet &a, int degree, int weight) {
  for (const auto &g : a.generators())
    if (g.weight <= 0)
      throw AlgebraError(ErrorKind::InfiniteSlice, "generator '" + g.name + "' has weight 0");
  std::vector<CommMonomial> out;
  CommMonomial cur;
  std::function<void(Letter, int, int)> rec = [&](Letter next, int deg, int wt) {
    if (wt == weight) {
      if (deg == degree)
        out.push_back(cur);
      return;
    }
    for (Letter l = next; l < a.size(); ++l) {
      const int gw = a[l].weight;
      const int max_e = is_odd(a, l) ? 1 : (weight - wt) / gw;
      for (int e = 1; e <= max_e; ++e) {
        if (wt + e * gw > weight)
          break;
        cur.emplace_back(l, static_cast<std::uint16_t>(e));
        rec(static_cast<Letter>(l + 1), deg + e * a[l].degree, wt + e * gw);
        cur.pop_back();
      }
    }
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace dpoisson
