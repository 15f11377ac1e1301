#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symchar/eval.hpp"

using namespace symchar;

namespace {

ResidueVector vec(std::initializer_list<Residue> v) {
  ResidueVector out(static_cast<Eigen::Index>(v.size()));
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

}  // namespace

TEST(DotCounts, Examples) {
  const OrbitRep x(Modulus(3), {0, 1});
  const CountsVector cv = dot_counts(x, vec({1, 2}));
  EXPECT_EQ(cv.counts, (std::vector<std::uint64_t>{0, 1, 1}));
  EXPECT_NEAR(std::abs(counts_to_complex(cv) - Complex(-1, 0)), 0.0, 1e-12);

  const OrbitRep big(Modulus(14), {0, 1, 1, 2});
  const CountsVector zero = dot_counts(big, ResidueVector::Zero(4));
  EXPECT_EQ(zero.counts[0], 12u);
  EXPECT_EQ(zero.total(), 12u);

  const CountsVector unit = dot_counts(OrbitRep(Modulus(9), {4}), vec({5}));
  for (std::int64_t t = 0; t < 9; ++t) EXPECT_EQ(unit.counts[static_cast<std::size_t>(t)], t == 2 ? 1u : 0u);
}

TEST(CountsToComplex, Examples) {
  EXPECT_NEAR(std::abs(counts_to_complex(CountsVector{5, {7, 0, 0, 0, 0}}) - 7.0), 0.0, 1e-12);
  CountsVector last{8, std::vector<std::uint64_t>(8, 0)};
  last.counts[7] = 1;
  EXPECT_NEAR(std::abs(counts_to_complex(last) - oracle::e(-1, 8)), 0.0, 1e-12);
}

TEST(CountsVector, ReverseAndShift) {
  const CountsVector cv{5, {1, 2, 3, 4, 5}};
  EXPECT_EQ(cv.reversed().counts, (std::vector<std::uint64_t>{1, 5, 4, 3, 2}));
  EXPECT_EQ(cv.shifted(2).counts, (std::vector<std::uint64_t>{4, 5, 1, 2, 3}));
  EXPECT_EQ(cv.shifted(-3), cv.shifted(2));
  EXPECT_FALSE(cv.is_palindromic());
  EXPECT_TRUE((CountsVector{5, {1, 2, 3, 3, 2}}).is_palindromic());
}

TEST(Supercharacter, WalkExample) {
  // X = (0,0,0,1): sum over which coordinate carries the 1
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ResidueVector y = oracle::random_tuple(rng, 5, 4);
    Complex walk = 0;
    for (Residue v : y) walk += oracle::e(v, 5);
    EXPECT_NEAR(std::abs(supercharacter(OrbitRep(Modulus(5), {0, 0, 0, 1}), y) - walk), 0.0, 1e-12);
  }
}

TEST(Supercharacter, HypocycloidSubstitution) {
  for (std::int64_t n : {7, 11, 19}) {
    for (std::int64_t d = 2; d <= 5; ++d) {
      ResidueVector base = ResidueVector::Ones(d);
      base(d - 1) = 1 - d;
      const OrbitRep x(Modulus(n), base);
      for (Residue c = 0; c < n; ++c) {
        const ResidueVector y = ResidueVector::Constant(d, c);
        const std::int64_t xi = d * c - d * c;  // [y] - d y_1
        EXPECT_NEAR(std::abs(supercharacter(x, y) - static_cast<double>(d) * oracle::e(xi, n)), 0.0, 1e-9);
      }
    }
  }
}

TEST(Supercharacter, MatchesDirectSummation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 1 + trial % 13;
    const Eigen::Index d = 1 + trial % 5;
    const ResidueVector x = oracle::random_tuple(rng, n, d);
    const ResidueVector y = oracle::random_tuple(rng, n, d);
    const OrbitRep rep(Modulus(n), x);
    EXPECT_EQ(dot_counts(rep, y).counts, oracle::counts(x, y, n));
    EXPECT_NEAR(std::abs(supercharacter(rep, y) - oracle::sigma(x, y, n)), 0.0, 1e-9);
  }
}

TEST(Permanent, Examples) {
  Eigen::Matrix2d m;
  m << 1, 2, 3, 4;
  EXPECT_DOUBLE_EQ(permanent(m), 10.0);
  EXPECT_NEAR(std::abs(permanent_oracle(OrbitRep(Modulus(3), {0, 1}), vec({1, 2})) - Complex(-1, 0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(permanent_oracle(OrbitRep(Modulus(9), {4}), vec({7})) - oracle::e(28, 9)), 0, 1e-12);
  EXPECT_THROW(permanent_oracle(OrbitRep(Modulus(3), ResidueVector::Zero(11)), ResidueVector::Zero(11)),
               DimensionTooLarge);
}

TEST(Permanent, AgreesWithSupercharacter) {
  std::mt19937_64 rng(23);
  const OrbitRep x(Modulus(14), {0, 1, 1, 2});
  for (int trial = 0; trial < 100; ++trial) {
    const ResidueVector y = oracle::random_tuple(rng, 14, 4);
    EXPECT_NEAR(std::abs(supercharacter(x, y) - permanent_oracle(x, y)), 0.0, 1e-9);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 2 + trial % 9;
    const Eigen::Index d = 1 + trial % 6;
    const OrbitRep r(Modulus(n), oracle::random_tuple(rng, n, d));
    const ResidueVector y = oracle::random_tuple(rng, n, d);
    EXPECT_NEAR(std::abs(supercharacter(r, y) - permanent_oracle(r, y)), 0.0, 1e-9);
  }
}

TEST(StabilizerSum, AgreesWithCounts) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 2 + trial % 7;
    const Eigen::Index d = 1 + trial % 5;
    const OrbitRep r(Modulus(n), oracle::random_tuple(rng, n, d));
    const ResidueVector y = oracle::random_tuple(rng, n, d);
    EXPECT_EQ(stabilizer_sum_counts(r, y), dot_counts(r, y));
  }
}

TEST(Constancy, Examples) {
  EXPECT_TRUE(constancy_check(OrbitRep(Modulus(14), {0, 1, 1, 2}), OrbitRep(Modulus(14), {0, 2, 3, 7})));
  EXPECT_TRUE(constancy_check(OrbitRep(Modulus(14), {0, 1, 1, 2}), OrbitRep(Modulus(14), {5, 5, 5, 5})));
}

TEST(Image, Examples) {
  const auto trivial = image(OrbitRep(Modulus(6), {0, 0, 0}));
  ASSERT_EQ(trivial.points.size(), 1u);
  EXPECT_NEAR(std::abs(trivial.points[0] - 1.0), 0.0, 1e-12);

  const auto pentagon = image(OrbitRep(Modulus(5), {1}));
  std::vector<Complex> roots;
  for (int t = 0; t < 5; ++t) roots.push_back(oracle::e(t, 5));
  EXPECT_EQ(pentagon.points.size(), 5u);
  EXPECT_TRUE(oracle::same_sets(pentagon.points, roots));

  const OrbitRep x(Modulus(3), {0, 1});
  EXPECT_TRUE(oracle::same_sets(image(x).points, oracle::full_image(x.entries(), 3)));
}

// superclass representatives see every value the full group does
TEST(Image, RepresentativesMatchFullGroup) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t n = 2 + trial % 6;
    const Eigen::Index d = 1 + trial % 4;
    const OrbitRep x(Modulus(n), oracle::random_tuple(rng, n, d));
    ImageOptions full;
    full.full_group = true;
    const auto reps = image(x);
    const auto all = image(x, full);
    EXPECT_TRUE(oracle::same_sets(reps.points, oracle::full_image(x.entries(), n)));
    EXPECT_EQ(reps.points, all.points);
  }
}

TEST(Image, BudgetAndThreads) {
  const OrbitRep x(Modulus(11), {0, 1, 1, 2});
  ImageOptions tiny;
  tiny.budget = 10;
  EXPECT_THROW(image(x, tiny), BudgetExceeded);
  ImageOptions many;
  many.threads = 8;
  many.keep_counts = true;
  const auto a = image(x);
  const auto b = image(x, many);
  EXPECT_EQ(a.points, b.points);
  ASSERT_EQ(b.counts.size(), b.points.size());
  for (std::size_t i = 0; i < b.points.size(); ++i)
    EXPECT_NEAR(std::abs(counts_to_complex(b.counts[i]) - b.points[i]), 0.0, 1e-12);
}

TEST(Dedupe, OrderIndependent) {
  std::vector<Complex> pts{{1, 0}, {1 + 1e-12, 0}, {0, 1}, {0.5, 0.5}, {1 - 1e-12, 0}};
  const auto a = dedupe_points(pts);
  std::reverse(pts.begin(), pts.end());
  const auto b = dedupe_points(pts);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 3u);
}

TEST(CompareSets, ToleranceAndRotation) {
  std::vector<Complex> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<Complex> nudged = square;
  nudged[2] += Complex(1e-11, 0);
  EXPECT_TRUE(compare_point_sets(square, nudged, 1e-9).equal);
  nudged[2] += Complex(1e-3, 0);
  const auto cmp = compare_point_sets(square, nudged, 1e-9);
  EXPECT_FALSE(cmp.equal);
  EXPECT_EQ(cmp.unmatched_left, 1u);
  EXPECT_EQ(cmp.unmatched_right, 1u);
  EXPECT_TRUE(rotation_closure(square, std::numbers::pi / 2).equal);
  EXPECT_FALSE(rotation_closure(square, std::numbers::pi / 3).equal);
}
