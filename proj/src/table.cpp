#include "symchar/table.hpp"

#include <algorithm>
#include <cmath>

#include "symchar/parallel.hpp"

namespace symchar {

SuperTable build_table(Modulus n, Eigen::Index d, std::uint64_t budget, unsigned threads) {
  const std::uint64_t count = orbit_count(n.value(), d);
  std::uint64_t cells;
  if (__builtin_mul_overflow(count, count, &cells)) throw BudgetExceeded(UINT64_MAX, budget);
  if (cells > budget) throw BudgetExceeded(cells, budget);

  SuperTable table;
  table.n = n;
  table.d = d;
  table.orbits = enumerate_orbits(n, d);
  const auto size = static_cast<Eigen::Index>(table.orbits.size());
  table.sizes.reserve(table.orbits.size());
  for (const auto& rep : table.orbits) table.sizes.push_back(orbit_size(rep));
  table.s.resize(size, size);
  parallel_chunks(count, threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const SupercharacterEvaluator eval(table.orbits[i]);
      for (Eigen::Index j = 0; j < size; ++j)
        table.s(static_cast<Eigen::Index>(i), j) = eval.value(table.orbits[static_cast<std::size_t>(j)].entries());
    }
  });
  return table;
}

UnitaryTable build_unitary(const SuperTable& table) {
  const auto size = static_cast<Eigen::Index>(table.orbits.size());
  Eigen::VectorXd root_sizes(size);
  for (Eigen::Index i = 0; i < size; ++i) root_sizes(i) = std::sqrt(static_cast<double>(table.sizes[static_cast<std::size_t>(i)]));
  const double group = std::pow(static_cast<double>(table.n.value()), static_cast<double>(table.d));

  UnitaryTable out;
  out.u = (root_sizes.cwiseInverse().asDiagonal() * table.s * root_sizes.asDiagonal()) / std::sqrt(group);
  out.symmetry_residual = (out.u - out.u.transpose()).cwiseAbs().maxCoeff();
  out.unitarity_residual =
      (out.u * out.u.adjoint() - Eigen::MatrixXcd::Identity(size, size)).cwiseAbs().maxCoeff();
  return out;
}

Eigen::VectorXcd superclass_transform(const UnitaryTable& unitary, const Eigen::VectorXcd& f) {
  if (f.size() != unitary.u.cols())
    throw DimensionMismatch("transform input has length " + std::to_string(f.size()) + ", table has " +
                            std::to_string(unitary.u.cols()) + " superclasses");
  return unitary.u * f;
}

Eigen::VectorXcd superclass_transform(const SuperTable& table, const Eigen::VectorXcd& f) {
  return superclass_transform(build_unitary(table), f);
}

std::vector<Eigen::Index> negation_permutation(const SuperTable& table) {
  std::vector<Eigen::Index> out;
  out.reserve(table.orbits.size());
  for (const auto& rep : table.orbits) {
    const auto it = std::lower_bound(table.orbits.begin(), table.orbits.end(), negate_orbit(rep));
    out.push_back(static_cast<Eigen::Index>(it - table.orbits.begin()));
  }
  return out;
}

double orthogonality_residual(const SuperTable& table) {
  const auto size = static_cast<Eigen::Index>(table.orbits.size());
  Eigen::VectorXd weights(size);
  for (Eigen::Index j = 0; j < size; ++j) weights(j) = static_cast<double>(table.sizes[static_cast<std::size_t>(j)]);
  const Eigen::MatrixXcd gram = table.s * weights.asDiagonal() * table.s.adjoint();
  const double group = std::pow(static_cast<double>(table.n.value()), static_cast<double>(table.d));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index k = 0; k < size; ++k)
      if (i != k) worst = std::max(worst, std::abs(gram(i, k)) / group);
  return worst;
}

}  // namespace symchar
