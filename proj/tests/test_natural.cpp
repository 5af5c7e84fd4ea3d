#include "dpoisson/natural.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dpoisson;

namespace {

CobarAlgebra kxy(KxyVariant v) { return cobar(kxy_coalgebra(v), {"x", "y", "t"}); }

Word w(const CobarAlgebra &alg, const std::string &letters) {
  Word out;
  for (char c : letters)
    out.push_back(alg.alphabet().at(std::string(1, c)));
  return out;
}

NaturalElement cls(const CobarAlgebra &alg, const std::string &letters, bool reduced = false, const Q &c = 1) {
  NaturalElement out(alg.algebra.alphabet(), reduced);
  out.add_word(w(alg, letters), c);
  return out;
}

} // namespace

TEST(Natural, Rotation) {
  const CobarAlgebra alg = kxy(KxyVariant::omega);
  EXPECT_EQ(cls(alg, "yx"), cls(alg, "xy"));
  EXPECT_TRUE(cls(alg, "tt").is_zero());
  EXPECT_FALSE(cls(alg, "").is_zero());
  EXPECT_TRUE(cls(alg, "", true).is_zero());
  // t x t y: moving "t" to the back passes an odd block of degree 1
  EXPECT_EQ(cls(alg, "txty"), cls(alg, "tytx", false, -1));
  const auto [s, cw] = canonical_rotation(alg.alphabet(), w(alg, "txtx"));
  EXPECT_EQ(s, 0);
}

TEST(Natural, GradedCommutatorsVanish) {
  const CobarAlgebra alg = kxy(KxyVariant::omega);
  const Alphabet &a = alg.alphabet();
  const auto words = words_up_to_weight(a, 4);
  for (const Word &u : words)
    for (const Word &v : words) {
      const Element eu(alg.algebra.alphabet(), u), ev(alg.algebra.alphabet(), v);
      const Element comm = eu * ev - Q(parity_sign(static_cast<long>(a.degree(u)) * a.degree(v))) * (ev * eu);
      EXPECT_TRUE(project_natural(comm, false).is_zero());
    }
}

TEST(Natural, Differential) {
  const CobarAlgebra alg = kxy(KxyVariant::omega);
  EXPECT_TRUE(natural_differential(alg.algebra, cls(alg, "t")).is_zero());
  EXPECT_TRUE(natural_differential(alg.algebra, cls(alg, "x")).is_zero());
  // d[yt] = [yxy] - [yyx] = 0 after rotation, d[xyt] = [xyxy] - [xyyx]
  EXPECT_TRUE(natural_differential(alg.algebra, cls(alg, "yt")).is_zero());
  NaturalElement expected = cls(alg, "xyxy");
  expected -= cls(alg, "xxyy");
  EXPECT_EQ(natural_differential(alg.algebra, cls(alg, "xyt")), expected);
}

TEST(Natural, Brackets) {
  const CobarAlgebra alg = kxy(KxyVariant::omega);
  EXPECT_EQ(natural_bracket(alg, cls(alg, "x"), cls(alg, "y")), cls(alg, "", false, -1));
  EXPECT_TRUE(natural_bracket(alg, cls(alg, "x"), cls(alg, "y")).is_zero() == false);
  EXPECT_TRUE(natural_bracket(alg, cls(alg, "x", true), cls(alg, "y", true)).is_zero());
  EXPECT_TRUE(natural_bracket(alg, cls(alg, "x"), cls(alg, "x")).is_zero());
  // mu{{xx,yy}} = -2xy - 2yx
  EXPECT_EQ(induced_bracket(alg, Element(alg.algebra.alphabet(), w(alg, "xx")), Element(alg.algebra.alphabet(), w(alg, "yy"))),
            Q(-2) * Element(alg.algebra.alphabet(), w(alg, "xy")) - Q(2) * Element(alg.algebra.alphabet(), w(alg, "yx")));
  EXPECT_EQ(natural_bracket(alg, cls(alg, "xx", true), cls(alg, "yy", true)), cls(alg, "xy", true, -4));
}

TEST(Natural, MonomialFormula) {
  // {x^p, y^q} = -pq [x^(p-1) y^(q-1)] on commuting representatives
  const CobarAlgebra alg = kxy(KxyVariant::omega);
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      const auto got = natural_bracket(alg, cls(alg, std::string(p, 'x')), cls(alg, std::string(q, 'y')));
      const auto want = cls(alg, std::string(p - 1, 'x') + std::string(q - 1, 'y'), false, -p * q);
      EXPECT_EQ(got, want) << p << " " << q;
    }
}

TEST(Natural, HomologyDimensions) {
  // degree 0: polynomials of weight w; degree 1: 1-forms mod exact ones
  const CobarAlgebra alg = kxy(KxyVariant::omega);
  for (int wt = 1; wt <= 6; ++wt) {
    EXPECT_EQ(natural_slice_homology(alg.algebra, 0, wt, true).dimension(), static_cast<std::size_t>(wt + 1));
    EXPECT_EQ(natural_slice_homology(alg.algebra, 1, wt, true).dimension(), static_cast<std::size_t>(std::max(wt - 1, 0)));
    EXPECT_EQ(natural_slice_homology(alg.algebra, 2, wt, true).dimension(), 0u);
  }
  EXPECT_EQ(natural_slice_homology(alg.algebra, 0, 0, false).dimension(), 1u);
  EXPECT_EQ(natural_slice_homology(alg.algebra, 0, 0, true).dimension(), 0u);
}

TEST(Natural, RepresentativesAreCycles) {
  const CobarAlgebra alg = kxy(KxyVariant::omega);
  for (int deg = 0; deg <= 2; ++deg)
    for (int wt = 1; wt <= 6; ++wt) {
      const NaturalHomology h = natural_slice_homology(alg.algebra, deg, wt, true);
      for (const auto &r : homology_representatives(alg.algebra, h)) {
        EXPECT_TRUE(is_natural_cycle(alg.algebra, r));
        EXPECT_FALSE(is_natural_boundary(alg.algebra, r));
      }
    }
}

TEST(Natural, NotACycle) {
  const CobarAlgebra alg = kxy(KxyVariant::omega);
  try {
    homology_bracket(alg, cls(alg, "xyt"), cls(alg, "x"));
    FAIL();
  } catch (const AlgebraError &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotACycle);
  }
}

TEST(Natural, BracketWellDefinedOnHomology) {
  // adding a boundary to one argument changes the bracket by a boundary
  const CobarAlgebra alg = kxy(KxyVariant::omega);
  std::mt19937 rng(7);
  for (int deg = 0; deg <= 1; ++deg)
    for (int wt = 2; wt <= 4; ++wt) {
      const NaturalHomology h = natural_slice_homology(alg.algebra, deg, wt, true);
      const auto reps = homology_representatives(alg.algebra, h);
      const auto above = natural_slice_basis(alg.alphabet(), deg + 1, wt, true);
      if (reps.empty() || above.empty())
        continue;
      const NaturalElement other = cls(alg, "xxy", true);
      for (const auto &r : reps) {
        NaturalElement c(alg.algebra.alphabet(), true);
        c.add_word(above[rng() % above.size()], Q(static_cast<long>(rng() % 5) + 1));
        NaturalElement shifted = r;
        shifted += natural_differential(alg.algebra, c);
        NaturalElement diff = homology_bracket(alg, shifted, other);
        diff -= homology_bracket(alg, r, other);
        EXPECT_TRUE(diff.is_zero() || is_natural_boundary(alg.algebra, diff));
      }
    }
}

TEST(Natural, DegreeAdditivity) {
  for (auto v : {KxyVariant::omega, KxyVariant::omega_tilde}) {
    const CobarAlgebra alg = kxy(v);
    const Alphabet &a = alg.alphabet();
    const auto classes = natural_word_classes(alg.algebra.alphabet(), 4, false);
    for (const auto &u : classes)
      for (const auto &x : classes) {
        const auto b = natural_bracket(alg, u, x);
        const int du = a.degree(u.terms().begin()->first), dx = a.degree(x.terms().begin()->first);
        for (const auto &[word, c] : b.terms())
          EXPECT_EQ(a.degree(word), du + dx + alg.bracket_degree);
      }
  }
}

TEST(Natural, LieAxioms) {
  for (auto v : {KxyVariant::omega, KxyVariant::omega_tilde})
    for (bool reduced : {false, true}) {
      const AxiomReport r = natural_axiom_suite(kxy(v), reduced, 6, 5);
      for (const auto &f : r.families)
        EXPECT_TRUE(f.passed()) << f.name << ": " << f.first_failure;
    }
}

// Under omega-tilde the derivation rule on unreduced classes breaks at pair
// weight 7, a consequence of the double bracket d-compatibility defect.
TEST(Natural, OmegaTildeDerivationWeightSeven) {
  const AxiomReport r = natural_axiom_suite(kxy(KxyVariant::omega_tilde), false, 7, 0);
  const auto *f = r.find("d_derivation");
  EXPECT_EQ(f->failed, 8u);
}
