#include "symchar/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "symchar/parallel.hpp"

namespace symchar {

RootTable::RootTable(Modulus n) : roots_(static_cast<std::size_t>(n.value())) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n.value());
  for (std::int64_t t = 0; t < n.value(); ++t) {
    const double angle = step * static_cast<double>(t);
    roots_[static_cast<std::size_t>(t)] = Complex(std::cos(angle), std::sin(angle));
  }
}

std::uint64_t CountsVector::total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

CountsVector CountsVector::reversed() const {
  CountsVector out{n, std::vector<std::uint64_t>(counts.size(), 0)};
  for (std::int64_t t = 0; t < n; ++t) out.counts[static_cast<std::size_t>((n - t) % n)] = counts[static_cast<std::size_t>(t)];
  return out;
}

CountsVector CountsVector::shifted(std::int64_t offset) const {
  const Modulus mod(n);
  CountsVector out{n, std::vector<std::uint64_t>(counts.size(), 0)};
  for (std::int64_t t = 0; t < n; ++t) out.counts[static_cast<std::size_t>(mod.add(t, mod.reduce(offset)))] = counts[static_cast<std::size_t>(t)];
  return out;
}

bool CountsVector::is_palindromic() const { return reversed() == *this; }

Complex counts_to_complex(const CountsVector& cv, const RootTable& roots) {
  if (roots.n() != cv.n) throw DimensionMismatch("root table modulus differs from counts modulus");
  Complex sum(0.0, 0.0);
  for (std::int64_t t = 0; t < cv.n; ++t) {
    const auto c = cv.counts[static_cast<std::size_t>(t)];
    if (c != 0) sum += static_cast<double>(c) * roots[t];
  }
  return sum;
}

Complex counts_to_complex(const CountsVector& cv) { return counts_to_complex(cv, RootTable(Modulus(cv.n))); }

namespace {

ResidueMatrix member_matrix(const OrbitRep& x) {
  const auto perms = distinct_permutations(x);
  ResidueMatrix m(x.d(), static_cast<Eigen::Index>(perms.size()));
  for (std::size_t l = 0; l < perms.size(); ++l) m.col(static_cast<Eigen::Index>(l)) = perms[l];
  return m;
}

void require_same_shape(const OrbitRep& x, const ResidueVector& y) {
  if (y.size() != x.d())
    throw DimensionMismatch("tuple has length " + std::to_string(y.size()) + ", orbit has d = " + std::to_string(x.d()));
}

}  // namespace

SupercharacterEvaluator::SupercharacterEvaluator(const OrbitRep& x)
    : orbit_(x), members_(member_matrix(x)), roots_(x.modulus()) {}

CountsVector SupercharacterEvaluator::counts(const ResidueVector& y) const {
  require_same_shape(orbit_, y);
  const Modulus n = orbit_.modulus();
  const ResidueVector yr = y.unaryExpr([n](Residue v) { return n.reduce(v); });
  CountsVector cv{n.value(), std::vector<std::uint64_t>(static_cast<std::size_t>(n.value()), 0)};
  const Eigen::Matrix<Residue, 1, Eigen::Dynamic> dots = yr.transpose() * members_;
  for (Eigen::Index l = 0; l < dots.size(); ++l) ++cv.counts[static_cast<std::size_t>(n.reduce(dots(l)))];
  return cv;
}

CountsVector dot_counts(const OrbitRep& x, const ResidueVector& y) { return SupercharacterEvaluator(x).counts(y); }

Complex supercharacter(const OrbitRep& x, const ResidueVector& y) { return SupercharacterEvaluator(x).value(y); }

Complex permanent_oracle(const OrbitRep& x, const ResidueVector& y, Eigen::Index max_d) {
  require_same_shape(x, y);
  if (x.d() > max_d) throw DimensionTooLarge(static_cast<std::size_t>(x.d()), static_cast<std::size_t>(max_d));
  const Modulus n = x.modulus();
  const RootTable roots(n);
  Eigen::MatrixXcd m(x.d(), x.d());
  for (Eigen::Index j = 0; j < x.d(); ++j)
    for (Eigen::Index k = 0; k < x.d(); ++k) m(j, k) = roots[n.mul(x[j], n.reduce(y(k)))];
  return permanent(m) / static_cast<double>(stabilizer_order(x));
}

CountsVector stabilizer_sum_counts(const OrbitRep& x, const ResidueVector& y, Eigen::Index max_d) {
  require_same_shape(x, y);
  if (x.d() > max_d) throw DimensionTooLarge(static_cast<std::size_t>(x.d()), static_cast<std::size_t>(max_d));
  const Modulus n = x.modulus();
  std::vector<std::uint64_t> raw(static_cast<std::size_t>(n.value()), 0);
  std::vector<Eigen::Index> pi(static_cast<std::size_t>(x.d()));
  std::iota(pi.begin(), pi.end(), Eigen::Index{0});
  do {
    Residue dot = 0;
    for (Eigen::Index i = 0; i < x.d(); ++i) dot = n.add(dot, n.mul(x[pi[static_cast<std::size_t>(i)]], n.reduce(y(i))));
    ++raw[static_cast<std::size_t>(dot)];
  } while (std::next_permutation(pi.begin(), pi.end()));
  const std::uint64_t stab = stabilizer_order(x);
  CountsVector cv{n.value(), std::vector<std::uint64_t>(raw.size(), 0)};
  for (std::size_t t = 0; t < raw.size(); ++t) {
    if (raw[t] % stab != 0) throw Error("InternalError", "permutation sum not divisible by stabilizer order");
    cv.counts[t] = raw[t] / stab;
  }
  return cv;
}

bool constancy_check(const OrbitRep& x, const OrbitRep& y) {
  if (x.modulus() != y.modulus() || x.d() != y.d()) throw DimensionMismatch("constancy_check: X and Y live in different groups");
  const SupercharacterEvaluator eval(x);
  const CountsVector first = eval.counts(y.entries());
  for (const auto& member : distinct_permutations(y))
    if (eval.counts(member) != first) return false;
  return true;
}

PointKey point_key(Complex z) { return {std::llround(z.real() * 1e9), std::llround(z.imag() * 1e9)}; }

namespace {

bool raw_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

void dedupe(PointCloud& cloud) {
  const bool with_counts = !cloud.counts.empty();
  std::vector<std::size_t> order(cloud.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<PointKey> keys(cloud.points.size());
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = point_key(cloud.points[i]);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return raw_less(cloud.points[a], cloud.points[b]);
  });
  std::vector<Complex> points;
  std::vector<CountsVector> counts;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    if (pos > 0 && keys[order[pos - 1]] == keys[i]) continue;
    points.push_back(cloud.points[i]);
    if (with_counts) counts.push_back(std::move(cloud.counts[i]));
  }
  cloud.points = std::move(points);
  cloud.counts = std::move(counts);
}

std::vector<Complex> dedupe_points(std::vector<Complex> points) {
  PointCloud cloud;
  cloud.points = std::move(points);
  dedupe(cloud);
  return std::move(cloud.points);
}

namespace {

ResidueVector unrank_tuple(std::uint64_t index, std::int64_t n, Eigen::Index d) {
  ResidueVector y(d);
  for (Eigen::Index i = d - 1; i >= 0; --i) {
    y(i) = static_cast<Residue>(index % static_cast<std::uint64_t>(n));
    index /= static_cast<std::uint64_t>(n);
  }
  return y;
}

void check_budget(std::uint64_t required, std::uint64_t budget) {
  if (required > budget) throw BudgetExceeded(required, budget);
}

std::uint64_t saturating_count(const std::function<std::uint64_t()>& f) {
  try {
    return f();
  } catch (const Overflow&) {
    return UINT64_MAX;
  }
}

// Runs `visit(chunk_cloud, begin, end)` over chunks, dedupes each chunk, then
// concatenates in chunk order and dedupes again.
template <typename Visit>
PointCloud chunked_cloud(PointCloud proto, std::uint64_t count, const ImageOptions& options, Visit&& visit) {
  const unsigned chunks = chunk_count(count, options.threads);
  std::vector<PointCloud> parts(chunks, proto);
  parallel_chunks(count, options.threads, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    visit(parts[c], begin, end);
    dedupe(parts[c]);
  });
  for (auto& part : parts) {
    proto.points.insert(proto.points.end(), part.points.begin(), part.points.end());
    for (auto& cv : part.counts) proto.counts.push_back(std::move(cv));
  }
  dedupe(proto);
  return proto;
}

}  // namespace

PointCloud image(const OrbitRep& x, const ImageOptions& options) {
  const std::int64_t n = x.n();
  const Eigen::Index d = x.d();
  const std::uint64_t count =
      options.full_group ? saturating_count([&] { return checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d)); })
                         : saturating_count([&] { return orbit_count(n, d); });
  check_budget(count, options.budget);

  const SupercharacterEvaluator eval(x);
  PointCloud proto;
  proto.n = n;
  proto.d = d;
  proto.orbit = x;
  auto record = [&](PointCloud& out, const ResidueVector& y) {
    CountsVector cv = eval.counts(y);
    out.points.push_back(counts_to_complex(cv, eval.roots()));
    if (options.keep_counts) out.counts.push_back(std::move(cv));
  };
  return chunked_cloud(std::move(proto), count, options, [&](PointCloud& out, std::uint64_t begin, std::uint64_t end) {
    if (options.full_group) {
      for (std::uint64_t i = begin; i < end; ++i) record(out, unrank_tuple(i, n, d));
    } else {
      for_each_orbit(x.modulus(), d, begin, end, [&](const OrbitRep& y) { record(out, y.entries()); });
    }
  });
}

PointCloud union_image(Modulus n, Eigen::Index d, const ImageOptions& options) {
  const std::uint64_t orbits = orbit_count(n.value(), d);
  const std::uint64_t count = saturating_count([&] {
    std::uint64_t out;
    if (__builtin_mul_overflow(orbits, orbits, &out)) throw Overflow("union size");
    return out;
  });
  check_budget(count, options.budget);
  const auto reps = enumerate_orbits(n, d);
  PointCloud proto;
  proto.n = n.value();
  proto.d = d;
  return chunked_cloud(std::move(proto), orbits, options, [&](PointCloud& out, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const SupercharacterEvaluator eval(reps[i]);
      for (const auto& y : reps) {
        CountsVector cv = eval.counts(y.entries());
        out.points.push_back(counts_to_complex(cv, eval.roots()));
        if (options.keep_counts) out.counts.push_back(std::move(cv));
      }
    }
  });
}

namespace {

struct CellHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& c) const noexcept {
    return std::hash<std::int64_t>()(c.first) * 1000003u ^ std::hash<std::int64_t>()(c.second);
  }
};

class PointGrid {
 public:
  PointGrid(const std::vector<Complex>& points, double tol) : points_(points), cell_(std::max(tol, 1e-12)), tol_(tol) {
    for (std::size_t i = 0; i < points.size(); ++i) cells_[cell_of(points[i])].push_back(i);
  }

  bool has_partner(Complex z) const {
    const auto [cx, cy] = cell_of(z);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find({cx + dx, cy + dy});
        if (it == cells_.end()) continue;
        for (std::size_t i : it->second)
          if (std::abs(points_[i] - z) <= tol_) return true;
      }
    }
    return false;
  }

 private:
  std::pair<std::int64_t, std::int64_t> cell_of(Complex z) const {
    return {static_cast<std::int64_t>(std::floor(z.real() / cell_)), static_cast<std::int64_t>(std::floor(z.imag() / cell_))};
  }

  const std::vector<Complex>& points_;
  double cell_;
  double tol_;
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>, CellHash> cells_;
};

}  // namespace

SetComparison compare_point_sets(const std::vector<Complex>& left, const std::vector<Complex>& right, double tol) {
  SetComparison out;
  const PointGrid right_grid(right, tol), left_grid(left, tol);
  for (Complex z : left) {
    if (!right_grid.has_partner(z)) {
      ++out.unmatched_left;
      if (!out.witness) out.witness = z;
    }
  }
  for (Complex z : right) {
    if (!left_grid.has_partner(z)) {
      ++out.unmatched_right;
      if (!out.witness) out.witness = z;
    }
  }
  out.equal = out.unmatched_left == 0 && out.unmatched_right == 0;
  return out;
}

SetComparison rotation_closure(const std::vector<Complex>& points, double angle, double tol) {
  const Complex turn = std::polar(1.0, angle);
  std::vector<Complex> rotated;
  rotated.reserve(points.size());
  for (Complex z : points) rotated.push_back(z * turn);
  return compare_point_sets(rotated, points, tol);
}

}  // namespace symchar
