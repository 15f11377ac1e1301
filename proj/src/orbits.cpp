#include "symchar/orbits.hpp"

#include <algorithm>
#include <sstream>

namespace symchar {

namespace {

ResidueVector sorted_reduced(const ResidueVector& vec, Modulus n) {
  ResidueVector out = vec.unaryExpr([n](Residue v) { return n.reduce(v); });
  std::sort(out.begin(), out.end());
  return out;
}

ResidueVector from_list(std::initializer_list<std::int64_t> entries) {
  ResidueVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (auto e : entries) v(i++) = e;
  return v;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Overflow("integer overflow in orbit arithmetic");
  return out;
}

}  // namespace

OrbitRep::OrbitRep(Modulus n, const ResidueVector& entries) : n_(n), entries_(sorted_reduced(entries, n)) {
  if (entries_.size() < 1) throw InvalidArgument("orbit dimension must be >= 1");
}

OrbitRep::OrbitRep(Modulus n, std::initializer_list<std::int64_t> entries) : OrbitRep(n, from_list(entries)) {}

std::string OrbitRep::to_string() const {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < d(); ++i) os << (i ? "," : "") << entries_(i);
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const OrbitRep& a, const OrbitRep& b) {
  if (auto c = a.n() <=> b.n(); c != 0) return c;
  if (auto c = a.d() <=> b.d(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                b.entries_.end());
}

OrbitRep canonicalize(const ResidueVector& vec, Modulus n) { return OrbitRep(n, vec); }

std::vector<std::uint64_t> multiplicities(const OrbitRep& rep) {
  std::vector<std::uint64_t> k(static_cast<std::size_t>(rep.n()), 0);
  for (Residue v : rep.entries()) ++k[static_cast<std::size_t>(v)];
  return k;
}

std::uint64_t checked_factorial(std::uint64_t k) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 2; i <= k; ++i) out = checked_mul(out, i);
  return out;
}

std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // out stays an exact binomial C(n-k+i, i) after step i; the division is exact
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > UINT64_MAX) throw Overflow("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(out);
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

std::uint64_t orbit_size(const OrbitRep& rep) {
  // multinomial as a product of binomials: never larger than the final value
  std::uint64_t out = 1, placed = 0;
  Eigen::Index i = 0;
  while (i < rep.d()) {
    Eigen::Index run = 1;
    while (i + run < rep.d() && rep[i + run] == rep[i]) ++run;
    placed += static_cast<std::uint64_t>(run);
    out = checked_mul(out, checked_binomial(placed, static_cast<std::uint64_t>(run)));
    i += run;
  }
  return out;
}

std::uint64_t stabilizer_order(const OrbitRep& rep) {
  std::uint64_t out = 1;
  Eigen::Index i = 0;
  while (i < rep.d()) {
    Eigen::Index run = 1;
    while (i + run < rep.d() && rep[i + run] == rep[i]) ++run;
    out = checked_mul(out, checked_factorial(static_cast<std::uint64_t>(run)));
    i += run;
  }
  return out;
}

std::uint64_t orbit_count(std::int64_t n, std::int64_t d) {
  if (n < 1 || d < 1) throw InvalidArgument("orbit_count requires n >= 1 and d >= 1");
  return checked_binomial(static_cast<std::uint64_t>(n + d - 1), static_cast<std::uint64_t>(d));
}

OrbitRep unrank_orbit(Modulus n, Eigen::Index d, std::uint64_t index) {
  if (index >= orbit_count(n.value(), d)) throw InvalidArgument("orbit index out of range");
  ResidueVector entries(d);
  Residue lo = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto tail = static_cast<std::uint64_t>(d - i - 1);
    for (Residue v = lo;; ++v) {
      // weakly increasing tails of length `tail` over [v, n)
      const std::uint64_t block = checked_binomial(static_cast<std::uint64_t>(n.value() - v) + tail - 1, tail);
      if (index < block) {
        entries(i) = v;
        lo = v;
        break;
      }
      index -= block;
    }
  }
  return OrbitRep(n, entries);
}

bool next_orbit(ResidueVector& entries, std::int64_t n) {
  Eigen::Index i = entries.size() - 1;
  while (i >= 0 && entries(i) == n - 1) --i;
  if (i < 0) return false;
  const Residue v = entries(i) + 1;
  entries.tail(entries.size() - i).setConstant(v);
  return true;
}

void for_each_orbit(Modulus n, Eigen::Index d, std::uint64_t begin, std::uint64_t end,
                    const std::function<void(const OrbitRep&)>& fn) {
  end = std::min(end, orbit_count(n.value(), d));
  if (begin >= end) return;
  ResidueVector entries = unrank_orbit(n, d, begin).entries();
  for (std::uint64_t i = begin; i < end; ++i) {
    fn(OrbitRep(n, entries));
    next_orbit(entries, n.value());
  }
}

std::vector<OrbitRep> enumerate_orbits(Modulus n, Eigen::Index d) {
  std::vector<OrbitRep> out;
  out.reserve(orbit_count(n.value(), d));
  for_each_orbit(n, d, 0, UINT64_MAX, [&](const OrbitRep& rep) { out.push_back(rep); });
  return out;
}

std::vector<ResidueVector> distinct_permutations(const OrbitRep& rep) {
  std::vector<ResidueVector> out;
  out.reserve(orbit_size(rep));
  ResidueVector cur = rep.entries();
  // std::next_permutation steps through distinct arrangements of a multiset
  do {
    out.push_back(cur);
  } while (std::next_permutation(cur.begin(), cur.end()));
  return out;
}

Residue orbit_sum(const OrbitRep& rep) { return tuple_sum(rep.entries(), rep.modulus()); }

OrbitRep shift_orbit(const OrbitRep& rep, std::int64_t j) {
  const Modulus n = rep.modulus();
  return OrbitRep(n, rep.entries().unaryExpr([n, j](Residue v) { return n.add(v, n.reduce(j)); }));
}

OrbitRep negate_orbit(const OrbitRep& rep) {
  const Modulus n = rep.modulus();
  return OrbitRep(n, rep.entries().unaryExpr([n](Residue v) { return n.neg(v); }));
}

}  // namespace symchar
