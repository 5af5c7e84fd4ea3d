#include "dpoisson/kxy.hpp"

#include <gtest/gtest.h>

using namespace dpoisson;

namespace {

const CobarAlgebra &omega() {
  static const CobarAlgebra alg = cobar(kxy_coalgebra(KxyVariant::omega), {"x", "y", "t"});
  return alg;
}

} // namespace

TEST(Poly, Arithmetic) {
  const Poly f = monomial(2, 1, 3); // 3x^2y
  EXPECT_EQ(d_dx(f), monomial(1, 1, 6));
  EXPECT_EQ(d_dy(f), monomial(2, 0, 3));
  EXPECT_EQ(poly_mul(monomial(1, 0), monomial(0, 1)), monomial(1, 1));
  EXPECT_TRUE(poly_sub(f, f).empty());
  EXPECT_EQ(poly_to_string(poly_sub(f, monomial(0, 0))), "-1 + 3*x^2*y");
  EXPECT_EQ(poly_to_string({}), "0");
  EXPECT_EQ(drop_constant(monomial(0, 0, 5)), Poly{});
}

TEST(Poly, SymplecticBracket) {
  EXPECT_EQ(symplectic_bracket(monomial(1, 0), monomial(0, 1)), monomial(0, 0));
  EXPECT_EQ(symplectic_bracket(monomial(2, 0), monomial(0, 2)), monomial(1, 1, 4));
  // Jacobi on a few monomials
  const std::vector<Poly> ps{monomial(2, 1), monomial(0, 3), monomial(1, 2, 2), monomial(3, 0)};
  for (const auto &a : ps)
    for (const auto &b : ps)
      for (const auto &c : ps) {
        Poly s = symplectic_bracket(a, symplectic_bracket(b, c));
        for (const auto &[e, v] : symplectic_bracket(b, symplectic_bracket(c, a)))
          poly_add(s, e.first, e.second, v);
        for (const auto &[e, v] : symplectic_bracket(c, symplectic_bracket(a, b)))
          poly_add(s, e.first, e.second, v);
        EXPECT_TRUE(s.empty());
      }
}

TEST(Kxy, Letters) {
  EXPECT_NO_THROW(kxy_letters(omega().alphabet()));
  const CobarAlgebra other = cobar(CyclicCoalgebra({{"a", 1, 1}}, 0));
  EXPECT_THROW(kxy_letters(other.alphabet()), AlgebraError);
}

TEST(Kxy, OneForms) {
  // y^q dx <-> q y^(q-1); exact forms go to 0
  for (int q = 1; q <= 4; ++q)
    EXPECT_EQ(one_form_to_polynomial(monomial(0, q), {}), monomial(0, q - 1, q));
  const Poly f = monomial(2, 3);
  EXPECT_TRUE(one_form_to_polynomial(d_dx(f), d_dy(f)).empty());
  const Poly F = poly_sub(monomial(1, 2, 3), monomial(0, 0, 2));
  EXPECT_EQ(one_form_to_polynomial(polynomial_to_dx_form(F), {}), F);
}

TEST(Kxy, Abelianize) {
  const auto a = omega().algebra.alphabet();
  NaturalElement e(a, true);
  e.add_word({0, 1, 0}, 2); // xyx
  e.add_word({1, 1}, -1);
  Poly want = monomial(2, 1, 2);
  poly_add(want, 0, 2, -1);
  EXPECT_EQ(abelianize(e), want);
}

TEST(Kxy, CycleOfPolynomial) {
  const auto a = omega().algebra.alphabet();
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j + i <= 3; ++j) {
      const NaturalElement c = cycle_of_polynomial(a, monomial(i, j, 3));
      EXPECT_TRUE(is_natural_cycle(omega().algebra, c));
      EXPECT_EQ(one_form_polynomial(c), monomial(i, j, 3));
    }
}

TEST(Kxy, IdentificationKillsBoundaries) {
  const Alphabet &al = omega().alphabet();
  for (int wt = 2; wt <= 6; ++wt)
    for (const Word &w : natural_slice_basis(al, 2, wt, true)) {
      NaturalElement c(omega().algebra.alphabet(), true);
      c.add_word(w, 1);
      const NaturalElement b = natural_differential(omega().algebra, c);
      if (!b.is_zero())
        EXPECT_TRUE(one_form_polynomial(b).empty()) << b.to_string();
    }
}

TEST(Kxy, IdentificationIsInjective) {
  // the images of a homology basis are linearly independent polynomials
  for (int wt = 2; wt <= 6; ++wt) {
    const NaturalHomology h = natural_slice_homology(omega().algebra, 1, wt, true);
    const auto reps = homology_representatives(omega().algebra, h);
    std::map<std::pair<int, int>, std::size_t> idx;
    std::vector<SparseVec> cols;
    for (const auto &r : reps) {
      std::map<std::size_t, Q> v;
      for (const auto &[e, c] : one_form_polynomial(r))
        v[idx.try_emplace(e, idx.size()).first->second] = c;
      cols.push_back(la::from_map(v));
    }
    EXPECT_EQ(rank(RatMatrix::from_columns(idx.size(), cols)), reps.size()) << wt;
  }
}

TEST(Kxy, BracketsMatchSymplectic) {
  // degree 0: ab{[m],[n]} = -{ab m, ab n}
  const auto a = omega().algebra.alphabet();
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      for (int k = 0; k <= 2; ++k)
        for (int l = 0; l <= 2; ++l) {
          if (i + j == 0 || k + l == 0)
            continue;
          const NaturalElement b =
              homology_bracket(omega(), monomial_class(a, i, j), monomial_class(a, k, l));
          EXPECT_EQ(abelianize(b), drop_constant(poly_scaled(symplectic_bracket(monomial(i, j), monomial(k, l)), -1)));
        }
}
