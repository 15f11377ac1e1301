#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "symchar/error.hpp"

namespace symchar {

using Residue = std::int64_t;

using ResidueVector = Eigen::Matrix<Residue, Eigen::Dynamic, 1>;
using ResidueMatrix = Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic>;

/// The modulus n of Z/nZ. Always >= 1.
class Modulus {
 public:
  explicit Modulus(std::int64_t n) : n_(n) {
    if (n < 1) throw InvalidArgument("modulus must be >= 1, got " + std::to_string(n));
  }

  std::int64_t value() const noexcept { return n_; }

  /// Representative of a in [0, n).
  Residue reduce(std::int64_t a) const noexcept {
    const Residue r = a % n_;
    return r < 0 ? r + n_ : r;
  }

  Residue add(Residue a, Residue b) const noexcept { return reduce(a + b); }
  Residue sub(Residue a, Residue b) const noexcept { return reduce(a - b); }
  Residue neg(Residue a) const noexcept { return reduce(-a); }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(((static_cast<__int128>(a) * b) % n_ + n_) % n_);
  }

  /// Lift to the symmetric range (-n/2, n/2].
  std::int64_t lift(Residue a) const noexcept {
    const Residue r = reduce(a);
    return 2 * r > n_ ? r - n_ : r;
  }

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  std::int64_t n_;
};

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept;

/// Throws NotAUnit when gcd(a, n) != 1.
Residue mod_inverse(std::int64_t a, Modulus n);

struct PrimePower {
  std::int64_t prime;
  int exponent;
  std::int64_t value;  // prime^exponent
};

/// Trial-division factorization; empty for n = 1.
std::vector<PrimePower> factorize(std::int64_t n);

/// p-adic valuation of a residue modulo p^exponent, capped at exponent (so 0 maps to exponent).
int valuation(Residue a, const PrimePower& pp) noexcept;

/// Combine x = r_i (mod m_i) for pairwise coprime m_i.
Residue crt(const std::vector<std::pair<Residue, std::int64_t>>& congruences);

enum class SolverPath { kCrt, kBruteForce };

struct BilinearSolution {
  Residue j = 0;
  Residue k = 0;
  SolverPath path = SolverPath::kCrt;
  bool verified = false;
};

/// Solves a*j + b*k + d*j*k = gcd(n, d) (mod n).
///
/// Works one prime power of n at a time: a coefficient that is a unit modulo
/// p^l gives a closed-form solution, otherwise the common power p^mu of the
/// three coefficients is divided out and the reduced congruence has a unit
/// coefficient. The per-prime solutions are glued with CRT. The result is
/// checked before returning; a failed check falls back to brute force.
BilinearSolution solve_bilinear_congruence(std::int64_t a, std::int64_t b, std::int64_t d, Modulus n);

/// Lexicographically smallest (j, k) solving a*j + b*k + d*j*k = target (mod n), if any.
std::optional<BilinearSolution> solve_bilinear_congruence_brute(std::int64_t a, std::int64_t b,
                                                                std::int64_t d, std::int64_t target,
                                                                Modulus n);

bool satisfies_bilinear(std::int64_t a, std::int64_t b, std::int64_t d, std::int64_t target,
                        Residue j, Residue k, Modulus n) noexcept;

/// Reduces every entry into [0, n).
template <typename Derived>
ResidueMatrix reduce_mod(const Eigen::MatrixBase<Derived>& m, Modulus n) {
  return m.unaryExpr([n](Residue v) { return n.reduce(v); }).eval();
}

/// Product a*b over Z/nZ without intermediate overflow.
template <typename DerivedA, typename DerivedB>
ResidueMatrix mul_mod(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                      Modulus n) {
  if (a.cols() != b.rows()) throw DimensionMismatch("mul_mod: inner dimensions differ");
  ResidueMatrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Residue acc = 0;
      for (Eigen::Index l = 0; l < a.cols(); ++l) acc = n.add(acc, n.mul(n.reduce(a(i, l)), n.reduce(b(l, j))));
      out(i, j) = acc;
    }
  }
  return out;
}

/// Determinant over Z/nZ for any n, via Euclidean row elimination (no
/// division, so valid when n is composite).
template <typename Derived>
Residue det_mod(const Eigen::MatrixBase<Derived>& m, Modulus n) {
  if (m.rows() != m.cols()) throw DimensionMismatch("det_mod: matrix is not square");
  ResidueMatrix a = reduce_mod(m, n);
  const Eigen::Index size = a.rows();
  Residue det = n.reduce(1);
  for (Eigen::Index c = 0; c < size; ++c) {
    for (Eigen::Index r = c + 1; r < size; ++r) {
      while (a(r, c) != 0) {
        const Residue q = a(c, c) / a(r, c);
        for (Eigen::Index l = c; l < size; ++l) a(c, l) = n.sub(a(c, l), n.mul(q, a(r, l)));
        a.row(c).swap(a.row(r));
        det = n.neg(det);
      }
    }
    det = n.mul(det, a(c, c));
  }
  return det;
}

}  // namespace symchar
