#include "symchar/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symchar/parallel.hpp"

namespace symchar {

OrbitMatrix orbit_matrix(const OrbitRep& x, std::uint64_t budget) {
  const std::uint64_t size = orbit_size(x);
  if (size > budget) throw BudgetExceeded(size, budget);
  const auto members = distinct_permutations(x);
  OrbitMatrix m{x, ResidueMatrix(x.d(), static_cast<Eigen::Index>(members.size()))};
  for (std::size_t l = 0; l < members.size(); ++l) m.a.col(static_cast<Eigen::Index>(l)) = members[l];
  return m;
}

namespace {

Eigen::Index trailing_zero_rows(const ResidueMatrix& b) {
  Eigen::Index k = 0;
  for (Eigen::Index i = b.rows() - 1; i >= 0 && (b.row(i).array() == 0).all(); --i) ++k;
  return k;
}

// row_i <- row_i - f * row_p (mod n), applied to both B and R
void eliminate(ResidueMatrix& b, ResidueMatrix& r, Eigen::Index i, Eigen::Index p, Residue f, Modulus n) {
  for (Eigen::Index c = 0; c < b.cols(); ++c) b(i, c) = n.sub(b(i, c), n.mul(f, b(p, c)));
  for (Eigen::Index c = 0; c < r.cols(); ++c) r(i, c) = n.sub(r(i, c), n.mul(f, r(p, c)));
}

}  // namespace

ReductionCertificate row_reduce_mod_n(const OrbitMatrix& m) {
  const Modulus n = m.modulus();
  const Eigen::Index d = m.a.rows();
  ReductionCertificate cert;
  cert.n = n;
  cert.b = reduce_mod(m.a, n);
  cert.r = ResidueMatrix::Identity(d, d).unaryExpr([n](Residue v) { return n.reduce(v); });
  cert.det_r = n.reduce(1);

  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < cert.b.cols() && row < d; ++c) {
    Eigen::Index best = -1;
    std::int64_t best_abs = 0;
    for (Eigen::Index i = row; i < d; ++i) {
      const Residue v = cert.b(i, c);
      if (v == 0 || gcd(v, n.value()) != 1) continue;
      const std::int64_t a = std::abs(n.lift(v));
      if (best < 0 || a < best_abs) {
        best = i;
        best_abs = a;
      }
    }
    if (best < 0) continue;
    if (best != row) {
      cert.b.row(best).swap(cert.b.row(row));
      cert.r.row(best).swap(cert.r.row(row));
      cert.det_r = n.neg(cert.det_r);
    }
    const Residue inv = mod_inverse(cert.b(row, c), n);
    cert.b.row(row) = cert.b.row(row).unaryExpr([n, inv](Residue v) { return n.mul(v, inv); }).eval();
    cert.r.row(row) = cert.r.row(row).unaryExpr([n, inv](Residue v) { return n.mul(v, inv); }).eval();
    cert.det_r = n.mul(cert.det_r, inv);
    for (Eigen::Index i = 0; i < d; ++i)
      if (i != row && cert.b(i, c) != 0) eliminate(cert.b, cert.r, i, row, cert.b(i, c), n);
    ++row;
  }

  cert.zero_rows = trailing_zero_rows(cert.b);
  if (cert.zero_rows != d - row) {
    cert.complete = false;
    throw NoUnitPivot(std::move(cert));
  }
  if (!verify_certificate(m, cert)) throw Error("InternalError", "row reduction produced an invalid certificate");
  return cert;
}

ReductionCertificate certify_reduction(const OrbitMatrix& m, const ResidueMatrix& r) {
  const Modulus n = m.modulus();
  const Eigen::Index d = m.a.rows();
  if (r.rows() != d || r.cols() != d) throw DimensionMismatch("R must be " + std::to_string(d) + "x" + std::to_string(d));
  ReductionCertificate cert;
  cert.n = n;
  cert.r = reduce_mod(r, n);
  cert.b = mul_mod(cert.r, m.a, n);
  cert.det_r = det_mod(cert.r, n);
  if (gcd(cert.det_r, n.value()) != 1) throw NotAUnit(cert.det_r, n.value());
  cert.zero_rows = trailing_zero_rows(cert.b);
  return cert;
}

bool verify_certificate(const OrbitMatrix& m, const ReductionCertificate& cert) {
  const Modulus n = cert.n;
  if (n != m.modulus() || cert.r.rows() != m.a.rows() || cert.r.cols() != m.a.rows()) return false;
  if (cert.b.rows() != m.a.rows() || cert.b.cols() != m.a.cols()) return false;
  if (mul_mod(cert.r, m.a, n) != reduce_mod(cert.b, n)) return false;
  const Residue det = det_mod(cert.r, n);
  if (det != n.reduce(cert.det_r) || gcd(det, n.value()) != 1) return false;
  return trailing_zero_rows(reduce_mod(cert.b, n)) == cert.zero_rows;
}

ExponentMatrix torus_map(const ReductionCertificate& cert) {
  const Modulus n = cert.n;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < cert.b.rows(); ++i)
    if (!(reduce_mod(cert.b.row(i), n).array() == 0).all()) keep.push_back(i);
  ExponentMatrix out{n, Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>(static_cast<Eigen::Index>(keep.size()), cert.b.cols())};
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (Eigen::Index c = 0; c < cert.b.cols(); ++c) out.e(static_cast<Eigen::Index>(i), c) = n.lift(cert.b(keep[i], c));
  return out;
}

ExponentMatrix hypocycloid_exponents(Eigen::Index d, Modulus n) {
  if (d < 2) throw InvalidArgument("hypocycloid map needs d >= 2");
  ExponentMatrix out{n, Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(d - 1, d)};
  out.e.leftCols(d - 1).setIdentity();
  out.e.col(d - 1).setConstant(-1);
  return out;
}

PointCloud sample_torus_map(const ExponentMatrix& exponents, std::int64_t grid, const ImageOptions& options) {
  if (grid < 1) throw InvalidArgument("grid must be >= 1");
  const Eigen::Index rows = exponents.e.rows();
  std::uint64_t count;
  try {
    count = checked_pow(static_cast<std::uint64_t>(grid), static_cast<std::uint64_t>(rows));
  } catch (const Overflow&) {
    throw BudgetExceeded(UINT64_MAX, options.budget);
  }
  if (count > options.budget) throw BudgetExceeded(count, options.budget);

  const Modulus g(grid);
  const RootTable roots(g);
  // exponents reduced mod grid once; each monomial is then e(<b_l, m>/grid)
  const ResidueMatrix reduced = reduce_mod(exponents.e, g);
  PointCloud proto;
  proto.n = grid;
  proto.d = rows;
  std::vector<PointCloud> parts(chunk_count(count, options.threads), proto);
  parallel_chunks(count, options.threads, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    ResidueVector point(rows);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      std::uint64_t rest = idx;
      for (Eigen::Index j = rows - 1; j >= 0; --j) {
        point(j) = static_cast<Residue>(rest % static_cast<std::uint64_t>(grid));
        rest /= static_cast<std::uint64_t>(grid);
      }
      // same summation order as counts_to_complex so equal inputs give equal doubles
      CountsVector cv{grid, std::vector<std::uint64_t>(static_cast<std::size_t>(grid), 0)};
      for (Eigen::Index l = 0; l < reduced.cols(); ++l) {
        Residue t = 0;
        for (Eigen::Index j = 0; j < rows; ++j) t = g.add(t, g.mul(reduced(j, l), point(j)));
        ++cv.counts[static_cast<std::size_t>(t)];
      }
      parts[c].points.push_back(counts_to_complex(cv, roots));
      if (options.keep_counts) parts[c].counts.push_back(std::move(cv));
    }
    dedupe(parts[c]);
  });
  for (auto& part : parts) {
    proto.points.insert(proto.points.end(), part.points.begin(), part.points.end());
    for (auto& cv : part.counts) proto.counts.push_back(std::move(cv));
  }
  dedupe(proto);
  return proto;
}

std::vector<Complex> hypocycloid_boundary(int d, int samples) {
  if (d < 2) throw InvalidArgument("hypocycloid needs d >= 2 cusps");
  if (samples < 3 * d) throw InvalidArgument("hypocycloid boundary needs at least 3d samples");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    out.push_back(hypocycloid_point(d, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples)));
  return out;
}

namespace {

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// > 0 when p is left of the line a->b
double is_left(Complex a, Complex b, Complex p) {
  return (b.real() - a.real()) * (p.imag() - a.imag()) - (p.real() - a.real()) * (b.imag() - a.imag());
}

int winding_number(Complex p, const std::vector<Complex>& poly) {
  int wn = 0;
  const std::size_t size = poly.size();
  for (std::size_t i = 0; i < size; ++i) {
    const Complex a = poly[i], b = poly[(i + 1) % size];
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && is_left(a, b, p) > 0) ++wn;
    } else if (b.imag() <= p.imag() && is_left(a, b, p) < 0) {
      --wn;
    }
  }
  return wn;
}

const std::vector<Complex>& containment_polygon(int d) {
  // cache per thread; d is small and reused across a whole image
  thread_local std::vector<std::vector<Complex>> cache;
  if (static_cast<std::size_t>(d) >= cache.size()) cache.resize(static_cast<std::size_t>(d) + 1);
  auto& poly = cache[static_cast<std::size_t>(d)];
  if (poly.empty()) {
    const int samples = d * ((kHypocycloidSamples + d - 1) / d);
    poly = hypocycloid_boundary(d, samples);
  }
  return poly;
}

}  // namespace

bool hypocycloid_contains(Complex z, int d, double tol) {
  if (d < 2) throw InvalidArgument("hypocycloid needs d >= 2 cusps");
  const double radius = std::abs(z);
  if (radius > static_cast<double>(d) + tol) return false;
  if (radius < static_cast<double>(d - 2)) return true;  // inside the inscribed circle
  const auto& poly = containment_polygon(d);
  if (winding_number(z, poly) != 0) return true;
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (segment_distance(z, poly[i], poly[(i + 1) % poly.size()]) <= tol) return true;
  return false;
}

IdentityReport hypocycloid_orbit_check(Modulus n, Eigen::Index d, const SweepOptions& options, double tol) {
  if (d < 2) throw InvalidArgument("hypocycloid check needs d >= 2");
  ResidueVector base = ResidueVector::Ones(d);
  base(d - 1) = 1 - d;
  const OrbitRep x(n, base);
  IdentityReport report;
  report.name = "hypocycloid";
  report.exact = false;
  report.params["n"] = n.value();
  report.params["d"] = d;
  report.params["X"] = to_json(x);

  ImageOptions io;
  io.budget = options.budget;
  io.threads = options.threads;
  const PointCloud cloud = image(x, io);
  std::size_t outside = 0;
  double max_radius = 0.0;
  for (Complex z : cloud.points) {
    max_radius = std::max(max_radius, std::abs(z));
    if (!hypocycloid_contains(z, static_cast<int>(d), tol)) {
      if (outside++ == 0) {
        report.passed = false;
        report.witness["point"] = {z.real(), z.imag()};
      }
    }
  }
  if (!report.passed) report.witness["outside"] = outside;
  report.info["points"] = cloud.points.size();
  report.info["max_modulus"] = max_radius;
  report.info["fill_ratio"] = static_cast<double>(cloud.points.size()) /
                              std::pow(static_cast<double>(n.value()), static_cast<double>(d - 1));
  return report;
}

}  // namespace symchar
