#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symchar/table.hpp"

using namespace symchar;

TEST(Table, DftOfZ2) {
  const auto t = build_table(Modulus(2), 1);
  Eigen::Matrix2cd expected;
  expected << 1, 1, 1, -1;
  EXPECT_LT((t.s - expected).cwiseAbs().maxCoeff(), 1e-12);
  const auto u = build_unitary(t);
  EXPECT_LT((u.u - expected / std::sqrt(2.0)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(u.symmetry_residual, 1e-15);
  EXPECT_LT(u.unitarity_residual, 1e-15);

  const auto f = superclass_transform(u, Eigen::VectorXcd::Ones(2));
  EXPECT_NEAR(std::abs(f(0) - std::sqrt(2.0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(f(1)), 0, 1e-12);
  EXPECT_THROW(superclass_transform(u, Eigen::VectorXcd::Ones(3)), DimensionMismatch);
}

TEST(Table, SmallEntries) {
  const auto t = build_table(Modulus(3), 2);
  ASSERT_EQ(t.orbits.size(), 6u);
  EXPECT_LT((t.s.row(0).array() - Complex(1, 0)).abs().maxCoeff(), 1e-12);
  // X = (0,1) is row 1, Y = (1,2) is column 4
  EXPECT_NEAR(std::abs(t.s(1, 4) - Complex(-1, 0)), 0, 1e-12);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j)
      EXPECT_NEAR(std::abs(t.s(i, j) - oracle::sigma(t.orbits[i].entries(), t.orbits[j].entries(), 3)), 0, 1e-9);
}

TEST(Table, ZeroIndicatorGivesColumn) {
  const auto t = build_table(Modulus(4), 3);
  const auto u = build_unitary(t);
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(t.orbits.size()));
  f(0) = 1;
  const Eigen::VectorXcd g = superclass_transform(u, f);
  for (Eigen::Index i = 0; i < g.size(); ++i)
    EXPECT_NEAR(std::abs(g(i) - std::sqrt(double(t.sizes[i])) / std::sqrt(64.0)), 0, 1e-12);
}

TEST(Table, UnitaryResiduals) {
  for (auto [n, d] : {std::pair{3, 2}, {4, 3}, {5, 2}, {2, 4}}) {
    const auto t = build_table(Modulus(n), d);
    const auto u = build_unitary(t);
    EXPECT_LT(u.symmetry_residual, 1e-12);
    EXPECT_LT(u.unitarity_residual, 1e-10);
    EXPECT_LT(orthogonality_residual(t), 1e-10);
    // U U^* recomputed here
    const Eigen::MatrixXcd prod = u.u * u.u.adjoint();
    EXPECT_LT((prod - Eigen::MatrixXcd::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_EQ(build_table(Modulus(4), 3).orbits.size(), 20u);
}

TEST(Table, NegationConjugatesRows) {
  const auto t = build_table(Modulus(5), 2);
  const auto perm = negation_permutation(t);
  for (Eigen::Index i = 0; i < t.s.rows(); ++i) {
    EXPECT_EQ(t.orbits[perm[i]], negate_orbit(t.orbits[i]));
    EXPECT_LT((t.s.row(perm[i]) - t.s.row(i).conjugate()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Table, ThreadsAndBudget) {
  const auto a = build_table(Modulus(5), 3, kDefaultBudget, 1);
  const auto b = build_table(Modulus(5), 3, kDefaultBudget, 8);
  EXPECT_TRUE(a.s == b.s);
  EXPECT_THROW(build_table(Modulus(5), 3, 100), BudgetExceeded);
}
