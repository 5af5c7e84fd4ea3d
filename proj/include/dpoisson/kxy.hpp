#pragma once

// Helpers for the resolution R = k<x,y,t>, dt = xy - yx, of k[x,y]:
// abelianization of degree-0 classes, and the identification of degree-1
// classes with 1-forms modulo exact forms.
//
// A degree-1 cyclic word w_1 t w_2 is sent to ab(w_2 w_1) (rotate t to the
// end). Boundaries die, so this is a map on homology; a 1-form f dx + g dy
// corresponds to F = df/dy - dg/dx, normalized so that y^q dx <-> q y^(q-1) t.

#include "dpoisson/natural.hpp"

#include <map>
#include <string>
#include <utility>

namespace dpoisson {

/// Polynomial in commuting x, y: (i, j) -> coefficient of x^i y^j.
using Poly = std::map<std::pair<int, int>, Q>;

inline void poly_add(Poly &p, int i, int j, const Q &c) {
  if (c == 0)
    return;
  auto [it, ins] = p.try_emplace({i, j}, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0)
      p.erase(it);
  }
}

inline Poly poly_scaled(const Poly &p, const Q &c) {
  Poly out;
  for (const auto &[e, v] : p)
    poly_add(out, e.first, e.second, v * c);
  return out;
}

inline Poly poly_sub(Poly a, const Poly &b) {
  for (const auto &[e, v] : b)
    poly_add(a, e.first, e.second, -v);
  return a;
}

inline Poly poly_mul(const Poly &a, const Poly &b) {
  Poly out;
  for (const auto &[ea, va] : a)
    for (const auto &[eb, vb] : b)
      poly_add(out, ea.first + eb.first, ea.second + eb.second, va * vb);
  return out;
}

inline Poly d_dx(const Poly &p) {
  Poly out;
  for (const auto &[e, v] : p)
    if (e.first > 0)
      poly_add(out, e.first - 1, e.second, v * e.first);
  return out;
}

inline Poly d_dy(const Poly &p) {
  Poly out;
  for (const auto &[e, v] : p)
    if (e.second > 0)
      poly_add(out, e.first, e.second - 1, v * e.second);
  return out;
}

inline Poly monomial(int i, int j, const Q &c = 1) {
  Poly p;
  poly_add(p, i, j, c);
  return p;
}

/// {f,g} = f_x g_y - f_y g_x
inline Poly symplectic_bracket(const Poly &f, const Poly &g) {
  return poly_sub(poly_mul(d_dx(f), d_dy(g)), poly_mul(d_dy(f), d_dx(g)));
}

inline Poly drop_constant(Poly p) {
  p.erase({0, 0});
  return p;
}

inline std::string poly_to_string(const Poly &p) {
  if (p.empty())
    return "0";
  std::string out;
  for (const auto &[e, c] : p) {
    std::string m;
    auto var = [&](const char *v, int k) {
      if (k == 0)
        return;
      if (!m.empty())
        m += "*";
      m += v;
      if (k > 1)
        m += "^" + std::to_string(k);
    };
    var("x", e.first);
    var("y", e.second);
    append_term(out, c, m.empty() ? "1" : m);
  }
  return out;
}

/// Letters of R by role. Throws Usage unless the alphabet has exactly the
/// generators x, y (degree 0) and t (degree 1).
struct KxyLetters {
  Letter x, y, t;
};

inline KxyLetters kxy_letters(const Alphabet &a) {
  auto x = a.find("x"), y = a.find("y"), t = a.find("t");
  if (a.size() != 3 || !x || !y || !t || a[*x].degree != 0 || a[*y].degree != 0 || a[*t].degree != 1)
    throw AlgebraError(ErrorKind::Usage, "expected generators x, y (degree 0) and t (degree 1)");
  return {*x, *y, *t};
}

/// Abelianization of a degree-0 natural element.
inline Poly abelianize(const NaturalElement &ne) {
  const KxyLetters k = kxy_letters(*ne.alphabet());
  Poly out;
  for (const auto &[w, c] : ne.terms()) {
    int i = 0, j = 0;
    for (Letter l : w) {
      if (l == k.x)
        ++i;
      else if (l == k.y)
        ++j;
      else
        throw AlgebraError(ErrorKind::Usage, "abelianize: degree-0 words only");
    }
    poly_add(out, i, j, c);
  }
  return out;
}

/// w_1 t w_2 -> ab(w_2 w_1), on degree-1 natural elements.
inline Poly one_form_polynomial(const NaturalElement &ne) {
  const KxyLetters k = kxy_letters(*ne.alphabet());
  Poly out;
  for (const auto &[w, c] : ne.terms()) {
    int i = 0, j = 0, ts = 0;
    for (Letter l : w) {
      if (l == k.x)
        ++i;
      else if (l == k.y)
        ++j;
      else
        ++ts;
    }
    if (ts != 1)
      throw AlgebraError(ErrorKind::Usage, "one_form_polynomial: words with exactly one t only");
    poly_add(out, i, j, c); // t is the only odd letter, rotation signs are +1
  }
  return out;
}

/// F for the 1-form f dx + g dy.
inline Poly one_form_to_polynomial(const Poly &f_dx, const Poly &g_dy) { return poly_sub(d_dy(f_dx), d_dx(g_dy)); }

/// A 1-form representing F: F = x^i y^j <-> x^i y^(j+1)/(j+1) dx.
inline Poly polynomial_to_dx_form(const Poly &F) {
  Poly out;
  for (const auto &[e, c] : F)
    poly_add(out, e.first, e.second + 1, c / (e.second + 1));
  return out;
}

/// A degree-1 cycle with one_form_polynomial = F: each monomial x^i y^j
/// becomes the average of [m t] over all arrangements m of x^i y^j.
inline NaturalElement cycle_of_polynomial(const AlphabetPtr &a, const Poly &F, bool reduced = true) {
  const KxyLetters k = kxy_letters(*a);
  NaturalElement out(a, reduced);
  for (const auto &[e, c] : F) {
    Word m(static_cast<std::size_t>(e.first), k.x);
    m.insert(m.end(), static_cast<std::size_t>(e.second), k.y);
    std::sort(m.begin(), m.end());
    std::vector<Word> arrangements;
    do
      arrangements.push_back(m);
    while (std::next_permutation(m.begin(), m.end()));
    const Q share = c / static_cast<long>(arrangements.size());
    for (Word w : arrangements) {
      w.push_back(k.t);
      out.add_word(w, share);
    }
  }
  return out;
}

/// The class of x^i y^j as a degree-0 natural element.
inline NaturalElement monomial_class(const AlphabetPtr &a, int i, int j, bool reduced = true) {
  const KxyLetters k = kxy_letters(*a);
  Word w(static_cast<std::size_t>(i), k.x);
  w.insert(w.end(), static_cast<std::size_t>(j), k.y);
  NaturalElement out(a, reduced);
  out.add_word(w, 1);
  return out;
}

/// Word x^i y^j t^k... convenience: x^p as an Element.
inline Element power_word(const AlphabetPtr &a, Letter l, int p) { return Element(a, Word(static_cast<std::size_t>(p), l)); }

} // namespace dpoisson
