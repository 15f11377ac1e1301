#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symchar/modring.hpp"

using namespace symchar;

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd(12, 5), 1);
  EXPECT_EQ(gcd(12, 6), 6);
  EXPECT_EQ(gcd(0, 7), 7);
}

TEST(Gcd, MatchesOracle) {
  for (std::int64_t a = 0; a <= 40; ++a)
    for (std::int64_t b = 0; b <= 40; ++b) EXPECT_EQ(gcd(a, b), oracle::gcd(a, b)) << a << "," << b;
}

TEST(Modulus, RejectsNonPositive) {
  EXPECT_THROW(Modulus(0), InvalidArgument);
  EXPECT_THROW(Modulus(-3), InvalidArgument);
}

TEST(Modulus, ReduceAndLift) {
  const Modulus n(7);
  EXPECT_EQ(n.reduce(-1), 6);
  EXPECT_EQ(n.reduce(15), 1);
  EXPECT_EQ(n.lift(4), -3);
  EXPECT_EQ(n.lift(3), 3);
  EXPECT_EQ(Modulus(8).lift(4), 4);  // n/2 stays positive
  EXPECT_EQ(Modulus(1'000'000'007).mul(999'999'999, 999'999'999), 64);
}

TEST(ModInverse, Examples) {
  EXPECT_EQ(mod_inverse(5, Modulus(12)), 5);
  for (std::int64_t n = 2; n < 20; ++n) EXPECT_EQ(mod_inverse(1, Modulus(n)), 1);
  EXPECT_THROW(mod_inverse(2, Modulus(4)), NotAUnit);
}

TEST(ModInverse, MatchesBruteForce) {
  for (std::int64_t n = 2; n <= 30; ++n) {
    const Modulus m(n);
    for (std::int64_t a = 0; a < n; ++a) {
      std::int64_t found = -1;
      for (std::int64_t b = 0; b < n; ++b)
        if (a * b % n == 1) found = b;
      if (found < 0) {
        EXPECT_THROW(mod_inverse(a, m), NotAUnit);
      } else {
        EXPECT_EQ(mod_inverse(a, m), found);
      }
    }
  }
}

TEST(Factorize, RebuildsN) {
  for (std::int64_t n = 1; n <= 500; ++n) {
    std::int64_t prod = 1;
    for (const auto& pp : factorize(n)) {
      std::int64_t v = 1;
      for (int e = 0; e < pp.exponent; ++e) v *= pp.prime;
      EXPECT_EQ(v, pp.value);
      prod *= pp.value;
    }
    EXPECT_EQ(prod, n);
  }
  EXPECT_TRUE(factorize(1).empty());
}

TEST(Crt, Combines) {
  const Residue x = crt({{2, 3}, {3, 5}, {2, 7}});
  EXPECT_EQ(x % 3, 2);
  EXPECT_EQ(x % 5, 3);
  EXPECT_EQ(x % 7, 2);
  EXPECT_LT(x, 105);
}

TEST(Bilinear, Examples) {
  const auto s = solve_bilinear_congruence(0, 0, 3, Modulus(9));
  EXPECT_TRUE(s.verified);
  EXPECT_EQ(3 * s.j * s.k % 9, 3);

  const auto t = solve_bilinear_congruence(7, 0, 5, Modulus(12));
  EXPECT_TRUE(t.verified);
  EXPECT_EQ(t.path, SolverPath::kCrt);
  EXPECT_EQ(t.j, 7);
  EXPECT_EQ(t.k, 0);

  for (int a = -3; a < 4; ++a) {
    const auto u = solve_bilinear_congruence(a, 2 * a, 5, Modulus(1));
    EXPECT_EQ(u.j, 0);
    EXPECT_EQ(u.k, 0);
  }
}

TEST(Bilinear, BruteForceAgreesOnSolvability) {
  for (std::int64_t n = 1; n <= 12; ++n)
    for (std::int64_t d = 1; d <= 6; ++d)
      for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b) {
          const Modulus m(n);
          const auto s = solve_bilinear_congruence(a, b, d, m);
          const auto target = gcd(n, d);
          ASSERT_TRUE(s.verified);
          EXPECT_TRUE(satisfies_bilinear(a, b, d, target, s.j, s.k, m));
          EXPECT_EQ(oracle::mod(a * s.j + b * s.k + d * s.j * s.k - target, n), 0);
          EXPECT_TRUE(solve_bilinear_congruence_brute(a, b, d, target, m).has_value());
        }
}

TEST(DetMod, CompositeModulus) {
  ResidueMatrix m(2, 2);
  m << 2, 3, 4, 1;  // det = -10
  EXPECT_EQ(det_mod(m, Modulus(12)), 2);
  EXPECT_EQ(det_mod(m, Modulus(7)), 4);
  ResidueMatrix r(3, 3);
  r << 3, 1, 0, 2, -1, 0, 1, 1, 1;
  EXPECT_EQ(det_mod(r, Modulus(47)), 42);  // -5
}

TEST(DetMod, MatchesCofactorExpansion) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 2 + trial % 29;
    ResidueMatrix m(3, 3);
    for (auto& v : m.reshaped()) v = std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
    const std::int64_t det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    EXPECT_EQ(det_mod(m, Modulus(n)), oracle::mod(det, n));
  }
}

TEST(MulMod, MatchesPlainProduct) {
  ResidueMatrix a(2, 3), b(3, 2);
  a << 1, 2, 3, 4, 5, 6;
  b << 7, 8, 9, 10, 11, 12;
  EXPECT_EQ(mul_mod(a, b, Modulus(13)), reduce_mod(ResidueMatrix(a * b), Modulus(13)));
  EXPECT_THROW(mul_mod(a, a, Modulus(13)), DimensionMismatch);
}
