#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "symchar/modring.hpp"

namespace symchar {

/// Canonical representative of an S_d-orbit in (Z/nZ)^d: the weakly
/// increasing arrangement of its entries. Construction canonicalizes, so every
/// OrbitRep in existence satisfies the invariant.
class OrbitRep {
 public:
  OrbitRep(Modulus n, const ResidueVector& entries);
  OrbitRep(Modulus n, std::initializer_list<std::int64_t> entries);

  Modulus modulus() const noexcept { return n_; }
  std::int64_t n() const noexcept { return n_.value(); }
  Eigen::Index d() const noexcept { return entries_.size(); }
  const ResidueVector& entries() const noexcept { return entries_; }
  Residue operator[](Eigen::Index i) const { return entries_(i); }

  std::string to_string() const;

  friend bool operator==(const OrbitRep& a, const OrbitRep& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }
  friend std::strong_ordering operator<=>(const OrbitRep& a, const OrbitRep& b);

 private:
  Modulus n_;
  ResidueVector entries_;
};

OrbitRep canonicalize(const ResidueVector& vec, Modulus n);

/// Occurrence count of each residue 0..n-1 among the entries; sums to d.
std::vector<std::uint64_t> multiplicities(const OrbitRep& rep);

/// |X| = d! / prod k_m!. Throws Overflow instead of wrapping.
std::uint64_t orbit_size(const OrbitRep& rep);

/// prod k_m!, so that orbit_size * stabilizer_order = d!.
std::uint64_t stabilizer_order(const OrbitRep& rep);

/// C(n + d - 1, d), the number of S_d-orbits in (Z/nZ)^d.
std::uint64_t orbit_count(std::int64_t n, std::int64_t d);

/// Checked factorial and binomial helpers.
std::uint64_t checked_factorial(std::uint64_t k);
std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k);
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);

/// The orbit at position `index` of the lexicographic enumeration.
OrbitRep unrank_orbit(Modulus n, Eigen::Index d, std::uint64_t index);

/// Lexicographic successor; returns false (leaving rep untouched) at the last orbit.
bool next_orbit(ResidueVector& entries, std::int64_t n);

/// Calls fn on every orbit with lexicographic index in [begin, end). Disjoint
/// index ranges can be consumed concurrently.
void for_each_orbit(Modulus n, Eigen::Index d, std::uint64_t begin, std::uint64_t end,
                    const std::function<void(const OrbitRep&)>& fn);

/// All C(n+d-1, d) orbits in lexicographic order.
std::vector<OrbitRep> enumerate_orbits(Modulus n, Eigen::Index d);

/// The members of the orbit, each exactly once, in lexicographic order
/// starting from the sorted representative.
std::vector<ResidueVector> distinct_permutations(const OrbitRep& rep);

/// [X] = sum of entries mod n; the same for every member of the orbit.
Residue orbit_sum(const OrbitRep& rep);

OrbitRep shift_orbit(const OrbitRep& rep, std::int64_t j);
OrbitRep negate_orbit(const OrbitRep& rep);

/// [y] for an arbitrary tuple.
inline Residue tuple_sum(const ResidueVector& y, Modulus n) { return n.reduce(y.sum()); }

}  // namespace symchar
