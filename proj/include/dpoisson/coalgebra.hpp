#pragma once

// Finite-dimensional cyclic DG coalgebras (non-counital) and their dual cyclic
// algebras.
//
// Conventions:
//  * coalgebra degrees are homological, d has degree -1;
//  * the pairing has cyclic degree n: <u,v> != 0 only if |u| + |v| + n = 0;
//  * the pairing is graded symmetric: <u,v> = (-1)^(|u||v|) <v,u>;
//  * (1 (x) d)(u (x) v) = (-1)^|u| u (x) dv.
// The cyclicity conditions are the coalgebra shadows of d-compatibility of
// the double bracket on the cobar construction; see cobar.hpp for the signs.

#include "dpoisson/exactla.hpp"
#include "dpoisson/graded.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dpoisson {

struct CoTerm {
  std::size_t left = 0;
  std::size_t right = 0;
  Q coeff;
};

struct CyclicCoalgebra {
  std::vector<Generator> basis;
  std::vector<std::vector<CoTerm>> coproduct; // reduced coproduct of each basis element
  std::vector<SparseVec> differential;        // d(e_i) over the basis
  std::map<std::pair<std::size_t, std::size_t>, Q> pairing;
  int cyclic_degree = 0;

  CyclicCoalgebra() = default;
  CyclicCoalgebra(std::vector<Generator> b, int n)
      : basis(std::move(b)), coproduct(basis.size()), differential(basis.size()), cyclic_degree(n) {}

  std::size_t dim() const { return basis.size(); }
  int degree(std::size_t i) const { return basis.at(i).degree; }
  int weight(std::size_t i) const { return basis.at(i).weight; }

  std::size_t index(const std::string &name) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].name == name)
        return i;
    throw AlgebraError(ErrorKind::Parse, "unknown basis element '" + name + "'");
  }

  Q pair(std::size_t i, std::size_t j) const {
    auto it = pairing.find({i, j});
    return it == pairing.end() ? Q(0) : it->second;
  }

  void set_pair(std::size_t i, std::size_t j, const Q &v) {
    if (v == 0)
      pairing.erase({i, j});
    else
      pairing[{i, j}] = v;
  }

  void add_coproduct(std::size_t of, std::size_t l, std::size_t r, const Q &c) {
    if (c != 0)
      coproduct.at(of).push_back({l, r, c});
  }

  void add_differential(std::size_t of, std::size_t to, const Q &c) {
    differential.at(of) = la::axpy(differential.at(of), c, la::unit(to));
  }

  /// Weight carried by the pairing (wt u + wt v on nonzero entries), if homogeneous.
  std::optional<int> pairing_weight() const {
    std::optional<int> w;
    for (const auto &[ij, q] : pairing) {
      const int s = weight(ij.first) + weight(ij.second);
      if (w && *w != s)
        return std::nullopt;
      w = s;
    }
    return w;
  }
};

/// Finite-dimensional algebra with a pairing of degree n. Degrees here are
/// cohomological (the differential raises degree by one, <a,b> != 0 only if
/// |a| + |b| = n), matching the way cohomology rings are usually written.
struct CyclicAlgebra {
  std::vector<Generator> basis;
  std::map<std::pair<std::size_t, std::size_t>, SparseVec> multiplication;
  std::vector<SparseVec> differential;
  std::map<std::pair<std::size_t, std::size_t>, Q> pairing;
  int cyclic_degree = 0;

  CyclicAlgebra() = default;
  CyclicAlgebra(std::vector<Generator> b, int n)
      : basis(std::move(b)), differential(basis.size()), cyclic_degree(n) {}

  std::size_t dim() const { return basis.size(); }
  int degree(std::size_t i) const { return basis.at(i).degree; }

  std::size_t index(const std::string &name) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].name == name)
        return i;
    throw AlgebraError(ErrorKind::Parse, "unknown basis element '" + name + "'");
  }

  SparseVec product(std::size_t i, std::size_t j) const {
    auto it = multiplication.find({i, j});
    return it == multiplication.end() ? SparseVec{} : it->second;
  }

  void set_product(std::size_t i, std::size_t j, SparseVec v) {
    if (v.empty())
      multiplication.erase({i, j});
    else
      multiplication[{i, j}] = std::move(v);
  }

  Q pair(std::size_t i, std::size_t j) const {
    auto it = pairing.find({i, j});
    return it == pairing.end() ? Q(0) : it->second;
  }

  /// Bilinear product of vectors.
  SparseVec multiply(const SparseVec &a, const SparseVec &b) const {
    SparseVec out;
    for (const auto &[i, ca] : a)
      for (const auto &[j, cb] : b)
        out = la::axpy(out, ca * cb, product(i, j));
    return out;
  }

  Q pair(const SparseVec &a, const SparseVec &b) const {
    Q s = 0;
    for (const auto &[i, ca] : a)
      for (const auto &[j, cb] : b)
        s += ca * cb * pair(i, j);
    return s;
  }
};

struct CheckResult {
  std::string name;
  bool passed = true;
  bool required = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool required_pass() const {
    for (const auto &c : checks)
      if (c.required && !c.passed)
        return false;
    return true;
  }
  bool all_pass() const {
    for (const auto &c : checks)
      if (!c.passed)
        return false;
    return true;
  }
  const CheckResult *find(const std::string &name) const {
    for (const auto &c : checks)
      if (c.name == name)
        return &c;
    return nullptr;
  }
};

namespace detail {

using TensorVec = std::map<std::pair<std::size_t, std::size_t>, Q>;
using Tensor3Vec = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Q>;

inline void add_to(std::map<std::size_t, Q> &v, std::size_t i, const Q &c) {
  if (c == 0)
    return;
  auto [it, ins] = v.try_emplace(i, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0)
      v.erase(it);
  }
}

template <class K> void add_to(std::map<K, Q> &v, const K &k, const Q &c) {
  if (c == 0)
    return;
  auto [it, ins] = v.try_emplace(k, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0)
      v.erase(it);
  }
}

inline std::string vec_string(const CyclicCoalgebra &c, const std::map<std::size_t, Q> &v) {
  if (v.empty())
    return "0";
  std::string out;
  for (const auto &[i, q] : v)
    append_term(out, q, c.basis[i].name);
  return out;
}

/// Shifted generator pairing P(su, sv) = (-1)^|u| <u,v>.
inline Q shifted_pair(const CyclicCoalgebra &c, std::size_t u, std::size_t v) {
  return parity_sign(c.degree(u)) * c.pair(u, v);
}

} // namespace detail

/// Residual of the generator-level d-compatibility of the cobar double bracket,
/// split by tensor slot: (left slot X (x) 1, right slot 1 (x) X), as vectors over C.
/// Both vanish iff the strict cyclicity condition holds for (u, v).
inline std::pair<std::map<std::size_t, Q>, std::map<std::size_t, Q>>
cyclicity_residual(const CyclicCoalgebra &c, std::size_t u, std::size_t v) {
  using detail::add_to;
  using detail::shifted_pair;
  std::map<std::size_t, Q> left, right;
  const int N = c.cyclic_degree + 2;
  const int gu = c.degree(u) - 1; // |su|
  const int gv = c.degree(v) - 1; // |sv|
  // {{d su, sv}} with d(su) quadratic part -sum (-1)^|u'| su' su''.
  for (const auto &t : c.coproduct[u]) {
    const Q k = -t.coeff * parity_sign(c.degree(t.left));
    const int g2 = c.degree(t.right) - 1;
    // {{g1 g2, h}} = (-1)^((|h|+N)|g2|) P(g1,h) g2 (x) 1 + P(g2,h) 1 (x) g1
    add_to(left, t.right, k * parity_sign(static_cast<long>(gv + N) * g2) * shifted_pair(c, t.left, v));
    add_to(right, t.left, k * shifted_pair(c, t.right, v));
  }
  // (-1)^(|su|+N) {{su, d sv}}
  const int s = parity_sign(gu + N);
  for (const auto &t : c.coproduct[v]) {
    const Q k = -t.coeff * parity_sign(c.degree(t.left)) * s;
    const int h1 = c.degree(t.left) - 1;
    // {{g, h1 h2}} = P(g,h1) 1 (x) h2 + (-1)^((|g|+N)|h1|) P(g,h2) h1 (x) 1
    add_to(right, t.right, k * shifted_pair(c, u, t.left));
    add_to(left, t.left, k * parity_sign(static_cast<long>(gu + N) * h1) * shifted_pair(c, u, t.right));
  }
  return {left, right};
}

/// Runs every structural check. Never throws on bad data.
inline ValidationReport validate(const CyclicCoalgebra &c) {
  using detail::add_to;
  ValidationReport rep;
  const std::size_t n = c.dim();
  auto fail = [](CheckResult &r, const std::string &msg) {
    if (r.passed) {
      r.passed = false;
      r.detail = msg;
    }
  };

  CheckResult shape{"table_shape", true, true, ""};
  if (c.coproduct.size() != n || c.differential.size() != n)
    fail(shape, "coproduct/differential tables do not match the basis size");
  for (std::size_t i = 0; i < c.coproduct.size() && i < n; ++i)
    for (const auto &t : c.coproduct[i])
      if (t.left >= n || t.right >= n)
        fail(shape, "coproduct of " + c.basis[i].name + " refers to an unknown basis element");
  for (std::size_t i = 0; i < c.differential.size() && i < n; ++i)
    for (const auto &[j, q] : c.differential[i])
      if (j >= n)
        fail(shape, "differential of " + c.basis[i].name + " refers to an unknown basis element");
  for (const auto &[ij, q] : c.pairing)
    if (ij.first >= n || ij.second >= n)
      fail(shape, "pairing refers to an unknown basis element");
  for (const auto &g : c.basis)
    if (g.weight < 1)
      fail(shape, "basis element " + g.name + " has weight < 1");
  rep.checks.push_back(shape);
  if (!shape.passed)
    return rep;

  // Coproduct homogeneity.
  CheckResult hom{"coproduct_homogeneous", true, true, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (const auto &t : c.coproduct[i]) {
      if (c.degree(t.left) + c.degree(t.right) != c.degree(i))
        fail(hom, "Delta(" + c.basis[i].name + ") contains " + c.basis[t.left].name + "(x)" +
                      c.basis[t.right].name + " of the wrong degree");
      if (c.weight(t.left) + c.weight(t.right) != c.weight(i))
        fail(hom, "Delta(" + c.basis[i].name + ") does not preserve weight");
    }
  rep.checks.push_back(hom);

  // Coassociativity: (Delta (x) 1) Delta = (1 (x) Delta) Delta.
  CheckResult coassoc{"coassociative", true, true, ""};
  for (std::size_t i = 0; i < n; ++i) {
    detail::Tensor3Vec lhs;
    for (const auto &t : c.coproduct[i]) {
      for (const auto &s : c.coproduct[t.left])
        add_to(lhs, std::make_tuple(s.left, s.right, t.right), t.coeff * s.coeff);
      for (const auto &s : c.coproduct[t.right])
        add_to(lhs, std::make_tuple(t.left, s.left, s.right), -t.coeff * s.coeff);
    }
    if (!lhs.empty()) {
      const auto &[k, q] = *lhs.begin();
      fail(coassoc, "coassociativity fails on " + c.basis[i].name + " at (" + c.basis[std::get<0>(k)].name +
                        "," + c.basis[std::get<1>(k)].name + "," + c.basis[std::get<2>(k)].name +
                        ") with residual " + to_string(q));
    }
  }
  rep.checks.push_back(coassoc);

  CheckResult ddeg{"differential_degree", true, true, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (const auto &[j, q] : c.differential[i]) {
      if (c.degree(j) != c.degree(i) - 1)
        fail(ddeg, "d(" + c.basis[i].name + ") has a term of the wrong degree");
      if (c.weight(j) != c.weight(i))
        fail(ddeg, "d(" + c.basis[i].name + ") does not preserve weight");
    }
  rep.checks.push_back(ddeg);

  CheckResult dsq{"d_squared_zero", true, true, ""};
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec dd;
    for (const auto &[j, q] : c.differential[i])
      dd = la::axpy(dd, q, c.differential[j]);
    if (!dd.empty())
      fail(dsq, "d(d(" + c.basis[i].name + ")) != 0");
  }
  rep.checks.push_back(dsq);

  // Coderivation: Delta d = (d (x) 1 + 1 (x) d) Delta.
  CheckResult coder{"coderivation", true, true, ""};
  for (std::size_t i = 0; i < n; ++i) {
    detail::TensorVec r;
    for (const auto &[j, q] : c.differential[i])
      for (const auto &t : c.coproduct[j])
        add_to(r, std::make_pair(t.left, t.right), q * t.coeff);
    for (const auto &t : c.coproduct[i]) {
      for (const auto &[j, q] : c.differential[t.left])
        add_to(r, std::make_pair(j, t.right), -t.coeff * q);
      for (const auto &[j, q] : c.differential[t.right])
        add_to(r, std::make_pair(t.left, j), -t.coeff * q * parity_sign(c.degree(t.left)));
    }
    if (!r.empty())
      fail(coder, "d is not a coderivation on " + c.basis[i].name);
  }
  rep.checks.push_back(coder);

  CheckResult pdeg{"pairing_degree", true, true, ""};
  for (const auto &[ij, q] : c.pairing)
    if (c.degree(ij.first) + c.degree(ij.second) + c.cyclic_degree != 0)
      fail(pdeg, "<" + c.basis[ij.first].name + "," + c.basis[ij.second].name +
                     "> is nonzero but |u|+|v|+n != 0");
  rep.checks.push_back(pdeg);

  CheckResult psym{"pairing_graded_symmetric", true, true, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c.pair(i, j) != parity_sign(static_cast<long>(c.degree(i)) * c.degree(j)) * c.pair(j, i))
        fail(psym, "<" + c.basis[i].name + "," + c.basis[j].name + "> != (-1)^(|u||v|) <" +
                       c.basis[j].name + "," + c.basis[i].name + ">");
  rep.checks.push_back(psym);

  CheckResult pwt{"pairing_weight_homogeneous", c.pairing.empty() || c.pairing_weight().has_value(),
                  true, ""};
  if (!pwt.passed)
    pwt.detail = "nonzero pairing entries carry different weights";
  rep.checks.push_back(pwt);

  // <du, v> + (-1)^|u| <u, dv> = 0
  CheckResult pd{"pairing_d_compatible", true, true, ""};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      Q s = 0;
      for (const auto &[j, q] : c.differential[u])
        s += q * c.pair(j, v);
      for (const auto &[j, q] : c.differential[v])
        s += parity_sign(c.degree(u)) * q * c.pair(u, j);
      if (s != 0)
        fail(pd, "<d" + c.basis[u].name + "," + c.basis[v].name + "> +- <" + c.basis[u].name + ",d" +
                     c.basis[v].name + "> = " + to_string(s));
    }
  rep.checks.push_back(pd);

  // Cyclicity. Weak: slot-collapsed sum vanishes (needed for the induced
  // bracket). Strict: each slot vanishes separately (needed for the double
  // bracket itself).
  CheckResult weak{"cyclic_weak", true, true, ""};
  CheckResult strict{"cyclic_strict", true, false, ""};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      auto [l, r] = cyclicity_residual(c, u, v);
      std::map<std::size_t, Q> sum = l;
      for (const auto &[i, q] : r)
        add_to(sum, i, q);
      const std::string where = "(" + c.basis[u].name + "," + c.basis[v].name + ")";
      if (!sum.empty())
        fail(weak, "four-term sum at " + where + " = " + detail::vec_string(c, sum));
      if (!l.empty() || !r.empty())
        fail(strict, "at " + where + ": left slot " + detail::vec_string(c, l) + ", right slot " +
                         detail::vec_string(c, r));
    }
  rep.checks.push_back(weak);
  rep.checks.push_back(strict);
  return rep;
}

/// The coalgebra C = k.a + k.b + k.s, |a| = |b| = 1, |s| = 2, Delta(s) = a(x)b - b(x)a,
/// with the pairing omega (<a,b> = 1, cyclic degree -2) or omega-tilde
/// (<a,s> = <b,s> = 1, cyclic degree -3).
enum class KxyVariant { omega, omega_tilde };

inline CyclicCoalgebra kxy_coalgebra(KxyVariant variant) {
  CyclicCoalgebra c({{"a", 1, 1}, {"b", 1, 1}, {"s", 2, 2}}, variant == KxyVariant::omega ? -2 : -3);
  c.add_coproduct(2, 0, 1, 1);
  c.add_coproduct(2, 1, 0, -1);
  if (variant == KxyVariant::omega) {
    c.set_pair(0, 1, 1);
    c.set_pair(1, 0, -1); // graded symmetry, |a||b| odd
  } else {
    c.set_pair(0, 2, 1);
    c.set_pair(2, 0, 1);
    c.set_pair(1, 2, 1);
    c.set_pair(2, 1, 1);
  }
  return c;
}

/// Checks of the algebra side: associativity, Leibniz, graded symmetry,
/// pairing degree and <a, bc> = (-1)^(|c|(|a|+|b|)) <ca, b>.
inline ValidationReport validate(const CyclicAlgebra &a) {
  ValidationReport rep;
  const std::size_t n = a.dim();
  auto fail = [](CheckResult &r, const std::string &msg) {
    if (r.passed) {
      r.passed = false;
      r.detail = msg;
    }
  };
  CheckResult hom{"product_homogeneous", true, true, ""};
  for (const auto &[ij, v] : a.multiplication)
    for (const auto &[k, q] : v)
      if (a.degree(k) != a.degree(ij.first) + a.degree(ij.second))
        fail(hom, a.basis[ij.first].name + "*" + a.basis[ij.second].name + " has a term of the wrong degree");
  rep.checks.push_back(hom);

  CheckResult assoc{"associative", true, true, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        SparseVec l = a.multiply(a.product(i, j), la::unit(k));
        SparseVec r = a.multiply(la::unit(i), a.product(j, k));
        if (la::axpy(l, -1, r) != SparseVec{})
          fail(assoc, "(" + a.basis[i].name + a.basis[j].name + ")" + a.basis[k].name + " != " +
                          a.basis[i].name + "(" + a.basis[j].name + a.basis[k].name + ")");
      }
  rep.checks.push_back(assoc);

  CheckResult leib{"leibniz", true, true, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec lhs;
      for (const auto &[k, q] : a.product(i, j))
        lhs = la::axpy(lhs, q, a.differential[k]);
      SparseVec rhs = la::axpy(a.multiply(a.differential[i], la::unit(j)), parity_sign(a.degree(i)),
                               a.multiply(la::unit(i), a.differential[j]));
      if (la::axpy(lhs, -1, rhs) != SparseVec{})
        fail(leib, "d(" + a.basis[i].name + a.basis[j].name + ") violates the Leibniz rule");
    }
  rep.checks.push_back(leib);

  CheckResult pdeg{"pairing_degree", true, true, ""};
  for (const auto &[ij, q] : a.pairing)
    if (a.degree(ij.first) + a.degree(ij.second) != a.cyclic_degree)
      fail(pdeg, "pairing entry of the wrong degree");
  rep.checks.push_back(pdeg);

  CheckResult psym{"pairing_graded_symmetric", true, true, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.pair(i, j) != parity_sign(static_cast<long>(a.degree(i)) * a.degree(j)) * a.pair(j, i))
        fail(psym, "pairing is not graded symmetric at (" + a.basis[i].name + "," + a.basis[j].name + ")");
  rep.checks.push_back(psym);

  CheckResult cyc{"cyclic_pairing", true, true, ""};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Q l = a.pair(la::unit(i), a.product(j, k));
        Q r = parity_sign(static_cast<long>(a.degree(k)) * (a.degree(i) + a.degree(j))) *
              a.pair(a.product(k, i), la::unit(j));
        if (l != r)
          fail(cyc, "<a,bc> != +-<ca,b> at (" + a.basis[i].name + "," + a.basis[j].name + "," +
                        a.basis[k].name + ")");
      }
  rep.checks.push_back(cyc);
  return rep;
}

/// Linear dual of a cyclic algebra. The basis element dual to e keeps the name,
/// weight and the number |e| (now read homologically); the coproduct is the
/// transpose of the multiplication, d is the transpose of the algebra
/// differential and the pairing is carried over along e <-> e*. The cyclic
/// degree is negated.
///
/// The pairing must be nondegenerate away from the fundamental classes (basis
/// elements of degree n, which pair with the omitted unit); otherwise
/// DegenerateForm is thrown.
inline CyclicCoalgebra dualize(const CyclicAlgebra &a) {
  const std::size_t n = a.dim();
  RatMatrix gram(n, n);
  for (const auto &[ij, q] : a.pairing)
    gram.set(ij.first, ij.second, q);
  const Subspace radical = kernel(gram);
  std::vector<SparseVec> top;
  for (std::size_t i = 0; i < n; ++i)
    if (a.degree(i) == a.cyclic_degree)
      top.push_back(la::unit(i));
  const Echelon top_span = Subspace::span(n, top).echelon();
  for (const auto &v : radical.basis)
    if (!top_span.contains(v))
      throw AlgebraError(ErrorKind::DegenerateForm,
                         "the pairing is degenerate away from the fundamental classes");

  CyclicCoalgebra c(a.basis, -a.cyclic_degree);
  for (const auto &[ij, v] : a.multiplication)
    for (const auto &[k, q] : v)
      c.add_coproduct(k, ij.first, ij.second, q);
  for (std::size_t f = 0; f < n; ++f)
    for (const auto &[e, q] : a.differential[f])
      c.add_differential(e, f, q);
  for (const auto &[ij, q] : a.pairing)
    c.set_pair(ij.first, ij.second, q);
  return c;
}

/// Inverse of dualize on the tables: multiplication = transpose of the coproduct.
inline CyclicAlgebra dualize(const CyclicCoalgebra &c) {
  CyclicAlgebra a(c.basis, -c.cyclic_degree);
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Q>> prod;
  for (std::size_t k = 0; k < c.dim(); ++k)
    for (const auto &t : c.coproduct[k])
      detail::add_to(prod[{t.left, t.right}], k, t.coeff);
  for (const auto &[ij, v] : prod)
    a.set_product(ij.first, ij.second, la::from_map(v));
  for (std::size_t e = 0; e < c.dim(); ++e)
    for (const auto &[f, q] : c.differential[e])
      a.differential[f] = la::axpy(a.differential[f], q, la::unit(e));
  a.pairing = c.pairing;
  return a;
}

/// Reduced cohomology of the 2-torus: alpha, beta in degree 1, sigma in degree 2,
/// alpha*beta = -beta*alpha = sigma, <alpha,beta> = 1, cyclic degree 2.
inline CyclicAlgebra torus_cohomology() {
  CyclicAlgebra a({{"a", 1, 1}, {"b", 1, 1}, {"s", 2, 2}}, 2);
  a.set_product(0, 1, la::unit(2));
  a.set_product(1, 0, la::scaled(la::unit(2), -1));
  a.pairing[{0, 1}] = 1;
  a.pairing[{1, 0}] = -1;
  return a;
}

} // namespace dpoisson
