#include "dpoisson/comm.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dpoisson;

namespace {

CommDGAlgebra make_alg() { return CommDGAlgebra({{"a", 0, 1}, {"b", 0, 1}, {"th", 1, 1}, {"et", 1, 2}}); }

CommElement random_element(const CommDGAlgebra &alg, std::mt19937 &rng) {
  std::uniform_int_distribution<int> len(0, 3), g(0, 3), c(-2, 2);
  CommElement e = alg.zero();
  for (int k = 0; k < 3; ++k) {
    CommElement m = alg.constant(Q(c(rng)));
    for (int i = len(rng); i > 0; --i)
      m = m * alg.gen(static_cast<Letter>(g(rng)));
    e += m;
  }
  return e;
}

} // namespace

TEST(Comm, OddSquareVanishes) {
  const CommDGAlgebra alg = make_alg();
  EXPECT_TRUE((alg.gen(2) * alg.gen(2)).is_zero());
  EXPECT_FALSE((alg.gen(0) * alg.gen(0)).is_zero());
}

TEST(Comm, GradedCommutativity) {
  const CommDGAlgebra alg = make_alg();
  for (Letter i = 0; i < 4; ++i)
    for (Letter j = 0; j < 4; ++j) {
      const long s = parity_sign(static_cast<long>(alg.alphabet()->operator[](i).degree) *
                                 alg.alphabet()->operator[](j).degree);
      EXPECT_EQ(alg.gen(i) * alg.gen(j), Q(s) * (alg.gen(j) * alg.gen(i)));
    }
}

TEST(Comm, AssociativeAndRenormalizeIdempotent) {
  const CommDGAlgebra alg = make_alg();
  std::mt19937 rng(9);
  for (int k = 0; k < 100; ++k) {
    const CommElement a = random_element(alg, rng), b = random_element(alg, rng), c = random_element(alg, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(renormalize(a * b), a * b);
  }
}

TEST(Comm, DifferentialIsDerivation) {
  CommDGAlgebra alg = make_alg();
  alg.set_differential(2, alg.gen(0));
  alg.set_differential(3, alg.gen(0) * alg.gen(1));
  std::mt19937 rng(2);
  for (int k = 0; k < 100; ++k) {
    const CommElement a = random_element(alg, rng), b = random_element(alg, rng);
    for (const auto &[m, c] : a.terms()) {
      const CommElement am(alg.alphabet(), m, c);
      const long s = parity_sign(monomial_degree(*alg.alphabet(), m));
      EXPECT_EQ(comm_differential(alg, am * b), comm_differential(alg, am) * b + Q(s) * (am * comm_differential(alg, b)));
    }
  }
}

TEST(Comm, SliceBasis) {
  const CommDGAlgebra alg = make_alg();
  // weight 2, degree 0: a^2, ab, b^2
  EXPECT_EQ(comm_slice_basis(*alg.alphabet(), 0, 2).size(), 3u);
  // weight 2, degree 1: a th, b th, et
  EXPECT_EQ(comm_slice_basis(*alg.alphabet(), 1, 2).size(), 3u);
  // th^2 = 0, so degree 2 weight 2 is empty
  EXPECT_TRUE(comm_slice_basis(*alg.alphabet(), 2, 2).empty());
}
