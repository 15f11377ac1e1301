#include "symchar/modring.hpp"

#include <algorithm>
#include <cstdlib>

namespace symchar {

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Residue mod_inverse(std::int64_t a, Modulus n) {
  const Residue r = n.reduce(a);
  if (n.value() == 1) return 0;
  // extended Euclid on (r, n)
  std::int64_t old_r = r, cur_r = n.value();
  std::int64_t old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    const std::int64_t q = old_r / cur_r;
    std::int64_t t = old_r - q * cur_r;
    old_r = cur_r;
    cur_r = t;
    t = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = t;
  }
  if (old_r != 1) throw NotAUnit(a, n.value());
  return n.reduce(old_s);
}

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n < 1) throw InvalidArgument("factorize: n must be >= 1");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

int valuation(Residue a, const PrimePower& pp) noexcept {
  a %= pp.value;
  if (a < 0) a += pp.value;
  if (a == 0) return pp.exponent;
  int v = 0;
  while (a % pp.prime == 0) {
    a /= pp.prime;
    ++v;
  }
  return v;
}

Residue crt(const std::vector<std::pair<Residue, std::int64_t>>& congruences) {
  Residue x = 0;
  std::int64_t m = 1;
  for (const auto& [r, mi] : congruences) {
    // x + m*t = r (mod mi)  =>  t = (r - x) * m^{-1} (mod mi)
    const Modulus mod_i(mi);
    const Residue t = mod_i.mul(mod_i.sub(r, x), mod_inverse(m, mod_i));
    const Modulus mod_all(m * mi);
    x = mod_all.add(x, mod_all.mul(m, t));
    m *= mi;
  }
  return x;
}

bool satisfies_bilinear(std::int64_t a, std::int64_t b, std::int64_t d, std::int64_t target,
                        Residue j, Residue k, Modulus n) noexcept {
  const Residue lhs = n.add(n.add(n.mul(n.reduce(a), n.reduce(j)), n.mul(n.reduce(b), n.reduce(k))),
                            n.mul(n.mul(n.reduce(d), n.reduce(j)), n.reduce(k)));
  return lhs == n.reduce(target);
}

namespace {

// a*j + b*k + d*j*k = target (mod q), q = p^l, with at least one of a, b, d a
// unit modulo q. Returns nullopt when none of them is.
std::optional<std::pair<Residue, Residue>> solve_with_unit(Residue a, Residue b, Residue d, Residue target,
                                                           std::int64_t p, Modulus q) {
  if (a % p != 0) return std::pair{q.mul(mod_inverse(a, q), target), Residue{0}};
  if (b % p != 0) return std::pair{Residue{0}, q.mul(mod_inverse(b, q), target)};
  if (d % p != 0) {
    // a*j + k*(b + d*j) with b + d*j = 1
    const Residue j = q.mul(mod_inverse(d, q), q.sub(1, b));
    const Residue k = q.sub(target, q.mul(a, j));
    return std::pair{j, k};
  }
  return std::nullopt;
}

std::pair<Residue, Residue> solve_prime_power(Residue a, Residue b, Residue d, Residue target,
                                              const PrimePower& pp) {
  const Modulus q(pp.value);
  a = q.reduce(a);
  b = q.reduce(b);
  d = q.reduce(d);
  target = q.reduce(target);
  if (target == 0) return {0, 0};
  if (auto sol = solve_with_unit(a, b, d, target, pp.prime, q)) return *sol;

  // every coefficient is divisible by p: strip the common power p^mu
  const int mu = std::min({valuation(a, pp), valuation(b, pp), valuation(d, pp)});
  if (valuation(target, pp) < mu) throw InvalidArgument("bilinear congruence has no solution");
  std::int64_t scale = 1;
  for (int i = 0; i < mu; ++i) scale *= pp.prime;
  const PrimePower reduced{pp.prime, pp.exponent - mu, pp.value / scale};
  const Modulus qr(reduced.value);
  auto sol = solve_with_unit(a / scale, b / scale, d / scale, qr.reduce(target / scale), pp.prime, qr);
  // a solution modulo p^(l - mu) lifts unchanged
  return *sol;
}

}  // namespace

BilinearSolution solve_bilinear_congruence(std::int64_t a, std::int64_t b, std::int64_t d, Modulus n) {
  const Residue target = n.reduce(gcd(n.value(), d));
  std::vector<std::pair<Residue, std::int64_t>> js, ks;
  for (const auto& pp : factorize(n.value())) {
    const auto [j, k] = solve_prime_power(a, b, d, target, pp);
    js.emplace_back(j, pp.value);
    ks.emplace_back(k, pp.value);
  }
  BilinearSolution sol{crt(js), crt(ks), SolverPath::kCrt, false};
  sol.verified = satisfies_bilinear(a, b, d, target, sol.j, sol.k, n);
  if (!sol.verified) {
    if (auto brute = solve_bilinear_congruence_brute(a, b, d, target, n)) return *brute;
  }
  return sol;
}

std::optional<BilinearSolution> solve_bilinear_congruence_brute(std::int64_t a, std::int64_t b,
                                                                std::int64_t d, std::int64_t target,
                                                                Modulus n) {
  for (Residue j = 0; j < n.value(); ++j)
    for (Residue k = 0; k < n.value(); ++k)
      if (satisfies_bilinear(a, b, d, target, j, k, n)) return BilinearSolution{j, k, SolverPath::kBruteForce, true};
  return std::nullopt;
}

}  // namespace symchar
