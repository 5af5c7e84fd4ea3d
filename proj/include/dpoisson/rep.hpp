#pragma once

// Representation algebras of free DG algebras on matrix-entry generators,
// the universal representation, traces, and the Poisson bracket on entries
// induced by a cobar double bracket:
//
//   {g_ij, h_uv} = P(g,h) delta_uj delta_iv        ({{g,h}} = P(g,h) 1 (x) 1)
//   {p, q} = sum_{a,b} dR_a(p) {a,b} dL_b(q)
//
// where dR_a moves a to the right end and dL_b moves b to the left end.

#include "dpoisson/cobar.hpp"
#include "dpoisson/comm.hpp"
#include "dpoisson/exactla.hpp"
#include "dpoisson/natural.hpp"

#include <random>
#include <string>
#include <vector>

namespace dpoisson {

enum class RepMutation {
  none,
  drop_transpose, // {g_ij, h_uv} = P(g,h) delta_iu delta_jv
};

inline const char *rep_mutation_name(RepMutation m) {
  return m == RepMutation::drop_transpose ? "drop_transpose" : "none";
}

using RepMatrix = std::vector<std::vector<CommElement>>;

class RepAlgebra {
public:
  /// Matrix-entry algebra of `src` for V of dimension d.
  RepAlgebra(const FreeDGAlgebra &src, int d) : source_(src), d_(d) {
    if (d < 1)
      throw AlgebraError(ErrorKind::Usage, "representation dimension must be at least 1");
    std::vector<Generator> gens;
    const Alphabet &a = *src.alphabet();
    for (Letter g = 0; g < a.size(); ++g)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          gens.push_back({a[g].name + "_" + std::to_string(i + 1) + std::to_string(j + 1), a[g].degree, a[g].weight});
    rep_ = CommDGAlgebra(std::move(gens));
    for (Letter g = 0; g < a.size(); ++g) {
      const RepMatrix m = universal_rep(src.differential_of(g));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          rep_.set_differential(entry(g, i, j), m[i][j]);
    }
  }

  /// Representation algebra of a cobar construction; carries the bracket.
  RepAlgebra(const CobarAlgebra &src, int d) : RepAlgebra(src.algebra, d) { cobar_ = &src; }

  int dim() const { return d_; }
  const FreeDGAlgebra &source() const { return source_; }
  const CobarAlgebra *cobar() const { return cobar_; }
  const CommDGAlgebra &algebra() const { return rep_; }
  const AlphabetPtr &alphabet() const { return rep_.alphabet(); }

  RepMutation mutation = RepMutation::none;

  Letter entry(Letter g, int i, int j) const {
    return static_cast<Letter>((g * d_ + i) * d_ + j);
  }
  /// (source letter, i, j) of an entry generator.
  std::tuple<Letter, int, int> decode(Letter l) const {
    return {static_cast<Letter>(l / (d_ * d_)), (l / d_) % d_, l % d_};
  }

  CommElement gen(Letter g, int i, int j) const { return rep_.gen(entry(g, i, j)); }

  RepMatrix identity() const {
    RepMatrix m(d_, std::vector<CommElement>(d_, rep_.zero()));
    for (int i = 0; i < d_; ++i)
      m[i][i] = rep_.constant(1);
    return m;
  }

  RepMatrix generator_matrix(Letter g) const {
    RepMatrix m(d_, std::vector<CommElement>(d_, rep_.zero()));
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j)
        m[i][j] = gen(g, i, j);
    return m;
  }

  RepMatrix multiply(const RepMatrix &a, const RepMatrix &b) const {
    RepMatrix m(d_, std::vector<CommElement>(d_, rep_.zero()));
    for (int i = 0; i < d_; ++i)
      for (int k = 0; k < d_; ++k) {
        if (a[i][k].is_zero())
          continue;
        for (int j = 0; j < d_; ++j)
          m[i][j] += a[i][k] * b[k][j];
      }
    return m;
  }

  /// pi(e): the image of e under the universal representation.
  RepMatrix universal_rep(const Element &e) const {
    RepMatrix out(d_, std::vector<CommElement>(d_, rep_.zero()));
    for (const auto &[w, c] : e.terms()) {
      RepMatrix m = identity();
      for (Letter l : w)
        m = multiply(m, generator_matrix(l));
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
          out[i][j] += c * m[i][j];
    }
    return out;
  }

  CommElement trace(const Element &e) const {
    const RepMatrix m = universal_rep(e);
    CommElement t = rep_.zero();
    for (int i = 0; i < d_; ++i)
      t += m[i][i];
    return t;
  }

  CommElement trace(const NaturalElement &ne) const { return trace(ne.lift()); }

  CommElement differential(const CommElement &p) const { return comm_differential(rep_, p); }

private:
  FreeDGAlgebra source_;
  int d_;
  CommDGAlgebra rep_;
  const CobarAlgebra *cobar_ = nullptr;
};

namespace detail {

/// Right (to_right = true) or left partial derivative of a monomial by generator l:
/// m = sign * m' * l (or sign * l * m'), returns (coefficient, m').
inline std::pair<Q, CommMonomial> monomial_partial(const Alphabet &a, const CommMonomial &m, Letter l,
                                                   bool to_right) {
  int deg_before = 0, deg_after = 0;
  std::size_t pos = m.size();
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k].first == l)
      pos = k;
    else if (pos == m.size())
      deg_before += a[m[k].first].degree * m[k].second;
    else
      deg_after += a[m[k].first].degree * m[k].second;
  }
  if (pos == m.size())
    return {Q(0), {}};
  CommMonomial rest = m;
  const int k = rest[pos].second;
  if (k > 1)
    rest[pos].second = static_cast<std::uint16_t>(k - 1);
  else
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
  // odd generators have k = 1; even ones carry no sign
  const long dl = a[l].degree;
  const int sign = parity_sign(dl * (to_right ? deg_after : deg_before));
  return {Q(k * sign), rest};
}

} // namespace detail

/// Bracket of two generators of the representation algebra.
inline Q rep_generator_bracket(const RepAlgebra &ra, Letter p, Letter q) {
  const CobarAlgebra *c = ra.cobar();
  if (!c)
    throw AlgebraError(ErrorKind::Usage, "representation algebra has no double bracket");
  auto [g, i, j] = ra.decode(p);
  auto [h, u, v] = ra.decode(q);
  const Q &pg = c->letter_pairing[g][h];
  if (pg == 0)
    return 0;
  if (ra.mutation == RepMutation::drop_transpose)
    return (i == u && j == v) ? pg : Q(0);
  return (u == j && i == v) ? pg : Q(0);
}

inline CommElement rep_bracket(const RepAlgebra &ra, const CommElement &p, const CommElement &q) {
  const Alphabet &a = *ra.alphabet();
  CommElement out(ra.alphabet());
  CommMonomial tmp, tmp2;
  for (const auto &[mp, cp] : p.terms()) {
    for (const auto &[gp, ep] : mp) {
      auto [kp, restp] = detail::monomial_partial(a, mp, gp, true);
      for (const auto &[mq, cq] : q.terms()) {
        for (const auto &[gq, eq] : mq) {
          const Q br = rep_generator_bracket(ra, gp, gq);
          if (br == 0)
            continue;
          auto [kq, restq] = detail::monomial_partial(a, mq, gq, false);
          const int s = multiply_monomials(a, restp, restq, tmp);
          if (s != 0)
            out.add(tmp, cp * cq * kp * kq * br * s);
        }
      }
    }
  }
  return out;
}

struct RepCheck {
  bool passed = true;
  std::string detail;
};

/// Tr {a,b} = {Tr a, Tr b}
inline RepCheck check_trace_poisson(const RepAlgebra &ra, const Element &a, const Element &b) {
  const CommElement lhs = ra.trace(induced_bracket(*ra.cobar(), a, b));
  const CommElement rhs = rep_bracket(ra, ra.trace(a), ra.trace(b));
  if (lhs == rhs)
    return {};
  return {false, "(" + a.to_string() + ", " + b.to_string() + ") d=" + std::to_string(ra.dim()) +
                     ": Tr{a,b} = " + lhs.to_string() + ", {Tr a, Tr b} = " + rhs.to_string()};
}

struct RepAxiomReport {
  std::size_t samples = 0;
  std::size_t antisymmetry_failures = 0;
  std::size_t leibniz_failures = 0;
  std::size_t jacobi_failures = 0;
  std::size_t d_entry_failures = 0; // d-derivation on entry monomials (informational)
  std::size_t d_trace_failures = 0; // d-derivation on products of traces
  std::string first_failure;

  bool passed() const {
    return antisymmetry_failures == 0 && leibniz_failures == 0 && jacobi_failures == 0 && d_trace_failures == 0;
  }
};

namespace detail {

inline int comm_degree(const Alphabet &a, const CommElement &e) {
  return e.is_zero() ? 0 : monomial_degree(a, e.terms().begin()->first);
}

inline CommMonomial random_monomial(const RepAlgebra &ra, std::mt19937 &rng, int max_weight) {
  const Alphabet &a = *ra.alphabet();
  std::uniform_int_distribution<int> len(1, 3);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(a.size()) - 1);
  for (;;) {
    std::vector<Letter> seq;
    const int n = len(rng);
    int wt = 0;
    for (int k = 0; k < n; ++k) {
      Letter l = static_cast<Letter>(pick(rng));
      seq.push_back(l);
      wt += a[l].weight;
    }
    if (wt > max_weight)
      continue;
    auto [s, m] = normalize_sequence(a, seq);
    if (s != 0)
      return m;
  }
}

/// Random product of traces of random words, an element of the trace subalgebra.
inline CommElement random_trace_product(const RepAlgebra &ra, std::mt19937 &rng, int max_weight) {
  const Alphabet &src = *ra.source().alphabet();
  for (;;) {
    std::uniform_int_distribution<int> factors(1, 2);
    std::uniform_int_distribution<int> len(1, 3);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(src.size()) - 1);
    CommElement prod = ra.algebra().constant(1);
    int wt = 0;
    const int nf = factors(rng);
    for (int f = 0; f < nf; ++f) {
      Word w;
      const int n = len(rng);
      for (int k = 0; k < n; ++k)
        w.push_back(static_cast<Letter>(pick(rng)));
      wt += src.weight(w);
      prod = prod * ra.trace(Element(ra.source().alphabet(), w));
    }
    if (wt <= max_weight && !prod.is_zero())
      return prod;
  }
}

} // namespace detail

/// Graded antisymmetry, Leibniz (both slots) and Jacobi on `samples` seeded
/// random triples of entry monomials; d-derivation on entry monomials
/// (informational) and on products of traces.
inline RepAxiomReport check_rep_poisson_axioms(const RepAlgebra &ra, std::size_t samples, unsigned seed,
                                               int max_weight = 3) {
  const Alphabet &a = *ra.alphabet();
  const long N = ra.cobar()->bracket_degree;
  std::mt19937 rng(seed);
  RepAxiomReport rep;
  auto note = [&](std::size_t &counter, const std::string &what) {
    if (rep.first_failure.empty())
      rep.first_failure = what;
    ++counter;
  };
  auto br = [&](const CommElement &x, const CommElement &y) { return rep_bracket(ra, x, y); };
  auto deg = [&](const CommElement &e) { return static_cast<long>(detail::comm_degree(a, e)); };
  for (std::size_t s = 0; s < samples; ++s) {
    const CommElement x(ra.alphabet(), detail::random_monomial(ra, rng, max_weight));
    const CommElement y(ra.alphabet(), detail::random_monomial(ra, rng, max_weight));
    const CommElement z(ra.alphabet(), detail::random_monomial(ra, rng, max_weight));
    const long dx = deg(x), dy = deg(y), dz = deg(z);
    const std::string label = "(" + x.to_string() + ", " + y.to_string() + ", " + z.to_string() + ")";
    ++rep.samples;

    CommElement anti = br(x, y) + Q(parity_sign((dx + N) * (dy + N))) * br(y, x);
    if (!anti.is_zero())
      note(rep.antisymmetry_failures, "antisymmetry " + label);

    // {x, yz} = {x,y} z + (-1)^((|x|+N)|y|) y {x,z};  {xy, z} = x {y,z} + (-1)^(|y|(|z|+N)) {x,z} y
    CommElement l2 = br(x, y * z) - br(x, y) * z - Q(parity_sign((dx + N) * dy)) * (y * br(x, z));
    CommElement l1 = br(x * y, z) - x * br(y, z) - Q(parity_sign(dy * (dz + N))) * (br(x, z) * y);
    if (!l1.is_zero() || !l2.is_zero())
      note(rep.leibniz_failures, "leibniz " + label);

    // {x,{y,z}} = {{x,y},z} + (-1)^((|x|+N)(|y|+N)) {y,{x,z}}
    CommElement jac = br(x, br(y, z)) - br(br(x, y), z) - Q(parity_sign((dx + N) * (dy + N))) * br(y, br(x, z));
    if (!jac.is_zero())
      note(rep.jacobi_failures, "jacobi " + label);

    auto dcheck = [&](const CommElement &p, const CommElement &q) {
      CommElement r = ra.differential(br(p, q)) - br(ra.differential(p), q) -
                      Q(parity_sign(deg(p) + N)) * br(p, ra.differential(q));
      return r.is_zero();
    };
    if (!dcheck(x, y))
      ++rep.d_entry_failures;
    const CommElement tp = detail::random_trace_product(ra, rng, max_weight + 1);
    const CommElement tq = detail::random_trace_product(ra, rng, max_weight + 1);
    if (!dcheck(tp, tq))
      note(rep.d_trace_failures, "d-derivation on traces (" + tp.to_string() + ", " + tq.to_string() + ")");
  }
  return rep;
}

inline RatMatrix rep_differential_matrix(const RepAlgebra &ra, int degree, int weight) {
  const Alphabet &a = *ra.alphabet();
  const auto src = comm_slice_basis(a, degree, weight);
  const auto dst = comm_slice_basis(a, degree - 1, weight);
  std::vector<SparseVec> cols;
  for (const auto &m : src) {
    const CommElement dm = ra.differential(CommElement(ra.alphabet(), m));
    std::map<std::size_t, Q> v;
    for (const auto &[mm, c] : dm.terms()) {
      auto it = std::lower_bound(dst.begin(), dst.end(), mm);
      v[static_cast<std::size_t>(it - dst.begin())] = c;
    }
    cols.push_back(la::from_map(v));
  }
  return RatMatrix::from_columns(dst.size(), cols);
}

struct RepHomology {
  std::vector<CommMonomial> basis;
  HomologySlice slice;
  std::size_t dimension() const { return slice.dimension; }
};

inline RepHomology rep_homology_slice(const RepAlgebra &ra, int degree, int weight) {
  RepHomology h{comm_slice_basis(*ra.alphabet(), degree, weight), {}};
  h.slice = homology_slice(rep_differential_matrix(ra, degree + 1, weight), rep_differential_matrix(ra, degree, weight));
  return h;
}

/// True when p (homogeneous) is d of something.
inline bool is_rep_boundary(const RepAlgebra &ra, const CommElement &p) {
  if (p.is_zero())
    return true;
  const Alphabet &a = *ra.alphabet();
  const auto &m0 = p.terms().begin()->first;
  const int deg = monomial_degree(a, m0), wt = monomial_weight(a, m0);
  const auto basis = comm_slice_basis(a, deg, wt);
  std::map<std::size_t, Q> v;
  for (const auto &[m, c] : p.terms()) {
    if (monomial_degree(a, m) != deg || monomial_weight(a, m) != wt)
      throw std::invalid_argument("is_rep_boundary: inhomogeneous element");
    v[static_cast<std::size_t>(std::lower_bound(basis.begin(), basis.end(), m) - basis.begin())] = c;
  }
  return image(rep_differential_matrix(ra, deg + 1, wt)).contains(la::from_map(v));
}

} // namespace dpoisson
