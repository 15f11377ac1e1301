#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "symchar/eval.hpp"

namespace symchar {

/// Outcome of one identity check. A failure always carries a witness object
/// holding the concrete orbits and both sides of the comparison.
struct IdentityReport {
  std::string name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  bool exact = true;
  bool passed = true;
  nlohmann::ordered_json witness;  // null on success
  nlohmann::ordered_json info;     // informational measurements, never pass/fail

  nlohmann::ordered_json to_json() const;
  std::string to_json_line() const;
};

struct SweepOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
};

nlohmann::ordered_json to_json(const OrbitRep& rep);
nlohmann::ordered_json to_json(const CountsVector& cv);

/// sigma_X(-Y) = conj(sigma_X(Y)) = sigma_{-X}(Y), compared as counts vectors.
IdentityReport conjugate_identity(const OrbitRep& x, const OrbitRep& y);

/// X = -X, which makes sigma_X real-valued.
bool real_valued_check(const OrbitRep& x);

/// When X = -X, confirms every counts vector over all superclasses is palindromic.
IdentityReport real_valued_report(const OrbitRep& x, const SweepOptions& options = {});

/// sigma_{X+j1}(Y+k1) = e(([Y]j + [X]k + djk)/n) sigma_X(Y) at the counts level.
IdentityReport translation_identity(const OrbitRep& x, const OrbitRep& y, std::int64_t j, std::int64_t k);

/// n / gcd(n, [X]).
std::int64_t dihedral_order(const OrbitRep& x);

/// Checks sigma_X(y + l1) = e([X]l/n) sigma_X(y) exactly for every l and every
/// superclass y, then checks that the image is closed under rotation by
/// 2pi/dihedral_order within tol.
IdentityReport dihedral_report(const OrbitRep& x, const SweepOptions& options = {}, double tol = 1e-9);

struct FullUnionResult {
  std::int64_t order = 1;
  IdentityReport report;
};

/// Symmetry order n / gcd(n, d) of the union of all images. For every pair
/// (X, Y) a solution (j, k) of [X]j + [Y]k + djk = gcd(n, d) is used as a
/// witness that e(gcd(n,d)/n) sigma_X(Y) = sigma_{X+j1}(Y+k1) lies in the
/// union; the union cloud is then checked for closure under the rotation.
FullUnionResult full_union_symmetry(Modulus n, Eigen::Index d, const SweepOptions& options = {}, double tol = 1e-9);

/// All r in [0, n) with r1 - X = X, ascending.
std::vector<Residue> spike_residues(const OrbitRep& x);
/// Smallest such r.
std::optional<Residue> spike_detect(const OrbitRep& x);

/// 2n / gcd(r, n).
std::int64_t spike_ray_count(std::int64_t n, Residue r);

/// Angular distance from z to the nearest ray arg = pi*m*gcd(r,n)/n; zero near the origin.
double ray_deviation(Complex z, std::int64_t n, Residue r, double origin_tol = 1e-9);

/// sigma_X(y) = e(r[y]/n) conj(sigma_X(y)) at the counts level, plus the ray
/// membership of the value. Throws HypothesisFailed unless r1 - X = X.
IdentityReport spike_identity(const OrbitRep& x, Residue r, const OrbitRep& y, double tol = 1e-9);

/// spike_identity over every superclass, with the ray count and per-ray
/// maximum modulus reported.
IdentityReport spike_report(const OrbitRep& x, const SweepOptions& options = {}, double tol = 1e-9);

/// For X = S_d(0,1,...,1,2): sigma_X(y) = e([y]/n)(|sum_j e(y_j/n)|^2 - d) with
/// the real factor in [-d, d^2 - d], over every superclass.
IdentityReport parity_factorization_report(Modulus n, Eigen::Index d, const SweepOptions& options = {},
                                           double tol = 1e-9);

/// Image of S_d(0,...,0,a) mod n against image of S_d(0,...,0,1) mod n/gcd(n,a).
IdentityReport walk_reduction_check(Modulus n, Eigen::Index d, std::int64_t a, const SweepOptions& options = {},
                                    double tol = 1e-9);

/// Sweeps over all orbit pairs (X, Y) of (Z/nZ)^d. Reports are ordered by
/// (X, Y[, j, k]) regardless of thread count.
std::vector<IdentityReport> sweep_conjugate(Modulus n, Eigen::Index d, const SweepOptions& options = {});
std::vector<IdentityReport> sweep_translation(Modulus n, Eigen::Index d, const SweepOptions& options = {});
std::vector<IdentityReport> sweep_constancy(Modulus n, Eigen::Index d, const SweepOptions& options = {});

}  // namespace symchar
