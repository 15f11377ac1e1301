#pragma once

#include <vector>

#include "symchar/eval.hpp"

namespace symchar {

/// S(i, j) = sigma_{X_i}(X_j) over the lexicographic orbit order.
struct SuperTable {
  Modulus n{1};
  Eigen::Index d = 1;
  std::vector<OrbitRep> orbits;
  std::vector<std::uint64_t> sizes;
  Eigen::MatrixXcd s;
};

/// U(i, j) = S(i, j) sqrt|X_j| / (sqrt|X_i| sqrt(n^d)), with the measured
/// residuals max|U - U^T| and max|U U^* - I|.
struct UnitaryTable {
  Eigen::MatrixXcd u;
  double symmetry_residual = 0.0;
  double unitarity_residual = 0.0;
};

/// Builds the N x N table; rows are computed in parallel and the matrix does
/// not depend on the thread count. Throws BudgetExceeded when N^2 > budget.
SuperTable build_table(Modulus n, Eigen::Index d, std::uint64_t budget = kDefaultBudget, unsigned threads = 1);

UnitaryTable build_unitary(const SuperTable& table);

/// U f. Throws DimensionMismatch when f has the wrong length.
Eigen::VectorXcd superclass_transform(const UnitaryTable& unitary, const Eigen::VectorXcd& f);
Eigen::VectorXcd superclass_transform(const SuperTable& table, const Eigen::VectorXcd& f);

/// Index of negate_orbit(X_i) for every i.
std::vector<Eigen::Index> negation_permutation(const SuperTable& table);

/// max over i != i' of |sum_j |X_j| S(i,j) conj(S(i',j))| / n^d.
double orthogonality_residual(const SuperTable& table);

}  // namespace symchar
