#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "symchar/orbits.hpp"

namespace symchar {

using Complex = std::complex<double>;

inline constexpr std::uint64_t kDefaultBudget = 5'000'000;

/// e(t/n) for t = 0..n-1.
class RootTable {
 public:
  explicit RootTable(Modulus n);

  Complex operator[](Residue t) const { return roots_[static_cast<std::size_t>(t)]; }
  std::int64_t n() const noexcept { return static_cast<std::int64_t>(roots_.size()); }

 private:
  std::vector<Complex> roots_;
};

/// Exact supercharacter value: counts[t] members x of X with x.y = t (mod n),
/// standing for sum_t counts[t] * e(t/n).
struct CountsVector {
  std::int64_t n = 1;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  /// Index map t -> -t (mod n): the counts of the complex conjugate.
  CountsVector reversed() const;
  /// Index map t -> t + offset (mod n): multiplication by e(offset/n).
  CountsVector shifted(std::int64_t offset) const;
  bool is_palindromic() const;

  friend bool operator==(const CountsVector&, const CountsVector&) = default;
};

Complex counts_to_complex(const CountsVector& cv, const RootTable& roots);
Complex counts_to_complex(const CountsVector& cv);

/// sigma_X evaluated repeatedly: holds the d x |X| matrix of orbit members
/// and the root table for X's modulus.
class SupercharacterEvaluator {
 public:
  explicit SupercharacterEvaluator(const OrbitRep& x);

  const OrbitRep& orbit() const noexcept { return orbit_; }
  const ResidueMatrix& members() const noexcept { return members_; }
  const RootTable& roots() const noexcept { return roots_; }

  CountsVector counts(const ResidueVector& y) const;
  Complex value(const ResidueVector& y) const { return counts_to_complex(counts(y), roots_); }

 private:
  OrbitRep orbit_;
  ResidueMatrix members_;
  RootTable roots_;
};

CountsVector dot_counts(const OrbitRep& x, const ResidueVector& y);
Complex supercharacter(const OrbitRep& x, const ResidueVector& y);

/// Permanent by Ryser's formula, O(2^k k^2).
template <typename Derived>
typename Derived::Scalar permanent(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = m.rows();
  if (k == 0) return Scalar(1);
  Scalar total(0);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row_sums(k);
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << k); ++subset) {
    row_sums.setZero();
    int bits = 0;
    for (Eigen::Index c = 0; c < k; ++c) {
      if (subset >> c & 1) {
        row_sums += m.col(c);
        ++bits;
      }
    }
    const Scalar term = row_sums.prod();
    total += ((k - bits) % 2 == 0) ? term : -term;
  }
  return total;
}

inline constexpr Eigen::Index kPermanentMaxDimension = 10;

/// per(e(x_j y_k / n)) / |stab(x)|, an independent route to sigma_X(y).
Complex permanent_oracle(const OrbitRep& x, const ResidueVector& y,
                         Eigen::Index max_d = kPermanentMaxDimension);

/// Counts from the sum over all d! permutations of the representative,
/// divided by the stabilizer order. Throws DimensionTooLarge above max_d.
CountsVector stabilizer_sum_counts(const OrbitRep& x, const ResidueVector& y, Eigen::Index max_d = 8);

/// True iff dot_counts(x, y) is the same integer vector for every member y of Y.
bool constancy_check(const OrbitRep& x, const OrbitRep& y);

/// Rounding key of the point dedupe rule: both coordinates rounded to 9 decimals.
struct PointKey {
  std::int64_t re;
  std::int64_t im;
  friend auto operator<=>(const PointKey&, const PointKey&) = default;
};
PointKey point_key(Complex z);

struct PointCloud {
  std::int64_t n = 1;
  Eigen::Index d = 1;
  std::optional<OrbitRep> orbit;  // absent for unions over many X
  std::vector<Complex> points;
  std::vector<CountsVector> counts;  // parallel to points when kept, else empty
};

/// Sorts by rounding key and keeps the smallest raw value per key, so the
/// result is independent of input order. `counts`, if non-empty, follows.
void dedupe(PointCloud& cloud);
std::vector<Complex> dedupe_points(std::vector<Complex> points);

struct ImageOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  bool full_group = false;  // evaluate at all n^d tuples instead of one per superclass
  bool keep_counts = false;
};

/// sigma_X((Z/nZ)^d) as a deduped cloud. Throws BudgetExceeded.
PointCloud image(const OrbitRep& x, const ImageOptions& options = {});

/// Union of the images of all sigma_X for X over every orbit of (Z/nZ)^d.
PointCloud union_image(Modulus n, Eigen::Index d, const ImageOptions& options = {});

/// Tolerance comparison of two planar point sets.
struct SetComparison {
  bool equal = true;
  std::size_t unmatched_left = 0;   // points of the left set with no partner within tol
  std::size_t unmatched_right = 0;
  std::optional<Complex> witness;
};

SetComparison compare_point_sets(const std::vector<Complex>& left, const std::vector<Complex>& right,
                                 double tol = 1e-9);

/// Compares the set with its own rotation by `angle` radians.
SetComparison rotation_closure(const std::vector<Complex>& points, double angle, double tol = 1e-9);

}  // namespace symchar
