#pragma once

#include <vector>

#include "symchar/eval.hpp"
#include "symchar/identities.hpp"

namespace symchar {

/// d x |X| matrix whose columns are the members of X in
/// distinct_permutations order.
struct OrbitMatrix {
  OrbitRep orbit;
  ResidueMatrix a;

  Modulus modulus() const noexcept { return orbit.modulus(); }
};

OrbitMatrix orbit_matrix(const OrbitRep& x, std::uint64_t budget = kDefaultBudget);

/// B = R A over Z/nZ with det R a unit and the last `zero_rows` rows of B zero.
struct ReductionCertificate {
  Modulus n{1};
  ResidueMatrix r;
  ResidueMatrix b;
  Residue det_r = 1;
  Eigen::Index zero_rows = 0;
  bool complete = true;  // false for the partial result carried by NoUnitPivot
};

/// Elimination stalled: the remaining rows are nonzero but hold no unit.
class NoUnitPivot : public Error {
 public:
  explicit NoUnitPivot(ReductionCertificate partial)
      : Error("NoUnitPivot", "row reduction stalled: no unit pivot in the remaining rows"), partial_(std::move(partial)) {}

  const ReductionCertificate& partial() const noexcept { return partial_; }

 private:
  ReductionCertificate partial_;
};

/// Row reduction of A using only row operations with unit pivots. Within a
/// column the pivot is the unit entry of smallest symmetric lift; columns with
/// no unit below the current pivot row are skipped. The certificate is
/// verified (R A = B, det R a unit) before it is returned.
ReductionCertificate row_reduce_mod_n(const OrbitMatrix& m);

/// Certificate for a caller-supplied R. Throws NotAUnit when det R is not a unit.
ReductionCertificate certify_reduction(const OrbitMatrix& m, const ResidueMatrix& r);

/// R A = B entrywise, gcd(det R, n) = 1, det_r matches, and the zero-row count is right.
bool verify_certificate(const OrbitMatrix& m, const ReductionCertificate& cert);

/// Exponents b_jl of the torus map g(z) = sum_l prod_j z_j^{b_jl}: the
/// nonzero rows of B lifted to (-n/2, n/2].
struct ExponentMatrix {
  Modulus n{1};
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> e;
};

ExponentMatrix torus_map(const ReductionCertificate& cert);

/// g(z) = z_1 + ... + z_{d-1} + 1/(z_1 ... z_{d-1}).
ExponentMatrix hypocycloid_exponents(Eigen::Index d, Modulus n);

/// g evaluated at every point (e(m_1/grid), ..., e(m_rows/grid)). Throws BudgetExceeded.
PointCloud sample_torus_map(const ExponentMatrix& exponents, std::int64_t grid, const ImageOptions& options = {});

/// Point on the d-cusped hypocycloid x = (d-1)cos t + cos((d-1)t), y = (d-1)sin t - sin((d-1)t).
template <typename Real>
std::complex<Real> hypocycloid_point(int d, Real theta) {
  const Real big = static_cast<Real>(d - 1);
  return {big * std::cos(theta) + std::cos(big * theta), big * std::sin(theta) - std::sin(big * theta)};
}

/// Closed polyline through theta_i = 2 pi i / samples, i = 0..samples-1.
std::vector<Complex> hypocycloid_boundary(int d, int samples);

inline constexpr int kHypocycloidSamples = 4096;

/// Point-in-polygon (winding number) against the boundary polyline, also
/// accepting points within distance tol of it. The sample count is rounded up
/// to a multiple of d so every cusp is a vertex.
bool hypocycloid_contains(Complex z, int d, double tol = 1e-9);

/// X = S_d(1, ..., 1, 1 - d): every image point must lie in the filled
/// hypocycloid. The fill ratio (distinct points / n^(d-1)) is informational.
IdentityReport hypocycloid_orbit_check(Modulus n, Eigen::Index d, const SweepOptions& options = {}, double tol = 1e-9);

}  // namespace symchar
