#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace hlemb;

TEST(Diamond, ArityAndTwistPowers) {
  HomLieAlgebra a = testgen::example_2_2(1, 1);
  Multi<Rat> d = diamond(a.bracket, a.bracket, a.alpha);
  EXPECT_EQ(d.arity(), 3);
  // pi <> pi is the Hom-Leibniz defect: zero for a Hom-Lie bracket seen as Leibniz
  EXPECT_TRUE(balavoine(a.bracket, a.bracket, a.alpha).is_zero());
  Multi<Rat> id = from_matrix(Matrix::identity(4));
  // f <> id with arity-1 Q is the sum of insertions of id
  EXPECT_EQ(diamond(a.bracket, id, a.alpha), Rat(2) * a.bracket);
}

TEST(Balavoine, MultiplicationSquaresToZeroIffLeibniz) {
  HomLieAlgebra a = testgen::example_2_2(1, 1);
  HomLeibnizAlgebra h = hemi_semidirect(adjoint_rep(a));
  EXPECT_TRUE(balavoine(h.bracket, h.bracket, h.alpha).is_zero());
  Multi<Rat> broken = h.bracket;
  broken.at({0, 1}, 2) += 1;
  EXPECT_FALSE(balavoine(broken, broken, h.alpha).is_zero());
}

TEST(Balavoine, GradedAntisymmetry) {
  testgen::Gen g(2);
  for (int trial = 0; trial < 20; ++trial) {
    HomLieAlgebra a = testgen::random_hom_lie(g);
    const int n = a.dim();
    for (int p = 1; p <= 2; ++p)
      for (int q = 1; q <= 2; ++q) {
        Multi<Rat> P = Multi<Rat>::uniform(p, n, n), Q = Multi<Rat>::uniform(q, n, n);
        for (auto& x : P.data()) x = g.rat();
        for (auto& x : Q.data()) x = g.rat();
        Multi<Rat> pq = balavoine(P, Q, a.alpha), qp = balavoine(Q, P, a.alpha);
        const Rat s = ((p - 1) * (q - 1)) % 2 ? 1 : -1;
        EXPECT_EQ(pq, s * qp);
      }
  }
}

TEST(DerivedBracket, ExpansionMatchesDefinition) {
  testgen::Gen g(4);
  for (int trial = 0; trial < 30; ++trial) {
    EmbeddingTensor t = testgen::random_context(g);
    for (int m = 1; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n) {
        Multi<Rat> P = testgen::random_vg_cochain(g, t, m), Q = testgen::random_vg_cochain(g, t, n);
        EXPECT_EQ(derived_bracket(t.rep, P, Q), derived_bracket_definition(t.rep, P, Q));
      }
  }
}

TEST(DerivedBracket, FullDefinitionLandsInVtoG) {
  // the definitional bracket has no components outside V^{m+n} -> g
  testgen::Gen g(6);
  for (int trial = 0; trial < 10; ++trial) {
    EmbeddingTensor t = testgen::random_context(g);
    Multi<Rat> T = from_matrix(t.T);
    Multi<Rat> full = derived_bracket_full(t.rep, T, T);
    const int n = t.rep.gdim(), m = t.rep.vdim();
    EXPECT_EQ(full, lift_to_sum(restrict_vg(full, n, m), n, m));
  }
}

TEST(DerivedBracket, AntisymmetryAndJacobi) {
  testgen::Gen g(8);
  int nontrivial = 0;
  for (int trial = 0; trial < 30; ++trial) {
    EmbeddingTensor t = testgen::random_context(g);
    for (int m = 1; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n) {
        Multi<Rat> P = testgen::random_vg_cochain(g, t, m), Q = testgen::random_vg_cochain(g, t, n);
        const Rat s = (m * n) % 2 ? 1 : -1;
        Multi<Rat> pq = derived_bracket(t.rep, P, Q);
        EXPECT_EQ(pq, s * derived_bracket(t.rep, Q, P));
        if (!pq.is_zero()) ++nontrivial;
      }
    Multi<Rat> P = testgen::random_vg_cochain(g, t, 1), Q = testgen::random_vg_cochain(g, t, 1),
               R = testgen::random_vg_cochain(g, t, 1);
    auto br = [&](const Multi<Rat>& x, const Multi<Rat>& y) { return derived_bracket(t.rep, x, y); };
    EXPECT_EQ(br(P, br(Q, R)), br(br(P, Q), R) - br(Q, br(P, R)));
  }
  EXPECT_GT(nontrivial, 20);
}

TEST(MaurerCartan, IdentityTensorSquaresToZero) {
  HomLieAlgebra a = testgen::example_2_2(1, 1);
  EmbeddingTensor t{adjoint_rep(a), Matrix::identity(4)};
  EXPECT_TRUE(testgen::mc_of(t).is_zero());
  EmbeddingTensor z{adjoint_rep(a), Matrix(4, 4)};
  EXPECT_TRUE(testgen::mc_of(z).is_zero());
}

TEST(MaurerCartan, ValidIffSquareZero) {
  testgen::Gen g(10);
  int valid = 0, invalid = 0;
  for (int trial = 0; trial < 300; ++trial) {
    EmbeddingTensor t = trial % 3 ? testgen::random_context(g) : testgen::random_valid_triple(g);
    const bool v = validate_embedding_tensor(t).ok();
    EXPECT_EQ(v, testgen::mc_of(t).is_zero());
    (v ? valid : invalid)++;
  }
  EXPECT_GT(valid, 20);
  EXPECT_GT(invalid, 20);
}

TEST(MaurerCartan, SquareIsTwiceTheDefect) {
  testgen::Gen g(12);
  int nonzero = 0;
  for (int trial = 0; trial < 240; ++trial) {
    EmbeddingTensor t = testgen::random_context(g);
    Multi<Rat> lhs = testgen::mc_of(t);
    EXPECT_EQ(lhs, testgen::twice_identity_defect(t));
    EXPECT_EQ(lhs, Rat(2) * embedding_residual(t));
    if (!lhs.is_zero()) ++nonzero;
  }
  EXPECT_GT(nonzero, 30);
}

TEST(Phi, HomomorphismOfBrackets) {
  testgen::Gen g(14);
  int nontrivial = 0;
  for (int trial = 0; trial < 30; ++trial) {
    EmbeddingTensor t = testgen::random_context(g);
    for (int m = 1; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n) {
        Multi<Rat> P = testgen::random_vg_cochain(g, t, m), Q = testgen::random_vg_cochain(g, t, n);
        Multi<Rat> lhs = phi_map(t.rep, derived_bracket(t.rep, P, Q));
        Multi<Rat> rhs = balavoine(phi_map(t.rep, P), phi_map(t.rep, Q), t.rep.beta);
        EXPECT_EQ(lhs, rhs);
        if (!lhs.is_zero()) ++nontrivial;
      }
  }
  EXPECT_GT(nontrivial, 20);
}

TEST(Phi, DegreeOneIsMinusInducedBracket) {
  testgen::Gen g(16);
  for (int trial = 0; trial < 20; ++trial) {
    EmbeddingTensor t = testgen::random_valid_triple(g);
    EXPECT_EQ(phi_map(t.rep, from_matrix(t.T)), -induced_hom_leibniz(t).bracket);
  }
}

TEST(TwistCompatible, RejectsNonCommutingMaps) {
  HomLieAlgebra a = testgen::example_2_2(1, 1);
  Matrix m(4, 4);
  m(0, 1) = 1;
  EXPECT_FALSE(twist_compatible(from_matrix(m), a.alpha, a.alpha));
  EXPECT_TRUE(twist_compatible(from_matrix(Matrix::identity(4)), a.alpha, a.alpha));
  EXPECT_TRUE(twist_compatible(a.bracket, a.alpha, a.alpha));
}
