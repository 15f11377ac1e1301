#pragma once

// Slow, obviously-correct reference computations. Nothing here calls into the
// library beyond the plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "symchar/eval.hpp"

namespace oracle {

using symchar::Complex;
using symchar::ResidueVector;

inline std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = std::abs(a);
  b = std::abs(b);
  for (std::int64_t g = std::max(a, b); g > 1; --g)
    if (a % g == 0 && b % g == 0) return g;
  return a == 0 && b == 0 ? 0 : (a == 0 ? b : (b == 0 ? a : 1));
}

inline Complex e(std::int64_t t, std::int64_t n) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(t, n)) / static_cast<double>(n));
}

// All of (Z/nZ)^d, odometer order.
inline std::vector<ResidueVector> all_tuples(std::int64_t n, Eigen::Index d) {
  std::vector<ResidueVector> out;
  ResidueVector v = ResidueVector::Zero(d);
  while (true) {
    out.push_back(v);
    Eigen::Index i = d - 1;
    while (i >= 0 && v(i) == n - 1) v(i--) = 0;
    if (i < 0) break;
    ++v(i);
  }
  return out;
}

inline ResidueVector sorted(ResidueVector v, std::int64_t n) {
  for (auto& x : v) x = mod(x, n);
  std::sort(v.begin(), v.end());
  return v;
}

// Members of the orbit of `rep`, by filtering the whole group.
inline std::vector<ResidueVector> members(const ResidueVector& rep, std::int64_t n) {
  const ResidueVector key = sorted(rep, n);
  std::vector<ResidueVector> out;
  for (const auto& v : all_tuples(n, rep.size()))
    if (sorted(v, n) == key) out.push_back(v);
  return out;
}

inline std::vector<std::uint64_t> counts(const ResidueVector& rep, const ResidueVector& y, std::int64_t n) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(n), 0);
  for (const auto& x : members(rep, n)) {
    std::int64_t dot = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) dot = mod(dot + x(i) * mod(y(i), n), n);
    ++c[static_cast<std::size_t>(dot)];
  }
  return c;
}

inline Complex sigma_over(const std::vector<ResidueVector>& xs, const ResidueVector& y, std::int64_t n) {
  Complex s = 0;
  for (const auto& x : xs) {
    std::int64_t dot = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) dot += x(i) * y(i);
    s += e(dot, n);
  }
  return s;
}

inline Complex sigma(const ResidueVector& rep, const ResidueVector& y, std::int64_t n) {
  return sigma_over(members(rep, n), y, n);
}

// sigma_X at every element of the group, no dedupe.
inline std::vector<Complex> full_image(const ResidueVector& rep, std::int64_t n) {
  const auto xs = members(rep, n);
  std::vector<Complex> out;
  for (const auto& y : all_tuples(n, rep.size())) out.push_back(sigma_over(xs, y, n));
  return out;
}

// Every point of a has a partner in b within tol, and the other way round.
inline bool same_sets(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol = 1e-9) {
  auto covered = [tol](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    return std::all_of(from.begin(), from.end(), [&](Complex z) {
      return std::any_of(to.begin(), to.end(), [&](Complex w) { return std::abs(z - w) <= tol; });
    });
  };
  return covered(a, b) && covered(b, a);
}

inline ResidueVector random_tuple(std::mt19937_64& rng, std::int64_t n, Eigen::Index d) {
  std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
  ResidueVector v(d);
  for (auto& x : v) x = pick(rng);
  return v;
}

inline std::uint64_t factorial(std::uint64_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

}  // namespace oracle
