#include "symchar/identities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "symchar/parallel.hpp"

namespace symchar {

using nlohmann::ordered_json;

ordered_json IdentityReport::to_json() const {
  ordered_json j;
  j["identity"] = name;
  j["params"] = params;
  j["exact"] = exact;
  j["pass"] = passed;
  j["witness"] = witness;
  j["info"] = info;
  return j;
}

std::string IdentityReport::to_json_line() const { return to_json().dump(); }

ordered_json to_json(const OrbitRep& rep) {
  ordered_json arr = ordered_json::array();
  for (Residue v : rep.entries()) arr.push_back(v);
  return arr;
}

ordered_json to_json(const CountsVector& cv) { return ordered_json(cv.counts); }

namespace {

ordered_json base_params(const OrbitRep& x) {
  ordered_json p;
  p["n"] = x.n();
  p["d"] = x.d();
  p["X"] = to_json(x);
  return p;
}

ResidueVector plus_constant(const ResidueVector& y, std::int64_t k, Modulus n) {
  return y.unaryExpr([n, k](Residue v) { return n.add(v, n.reduce(k)); });
}

ResidueVector negated(const ResidueVector& y, Modulus n) {
  return y.unaryExpr([n](Residue v) { return n.neg(v); });
}

void fail(IdentityReport& report, ordered_json witness) {
  if (!report.passed) return;  // keep the first counterexample
  report.passed = false;
  report.witness = std::move(witness);
}

// Per-X evaluators shared by the sweeps, indexed in enumeration order.
struct OrbitBank {
  std::vector<OrbitRep> reps;
  std::vector<SupercharacterEvaluator> evals;
  std::map<OrbitRep, std::size_t> index;

  OrbitBank(Modulus n, Eigen::Index d) : reps(enumerate_orbits(n, d)) {
    evals.reserve(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      evals.emplace_back(reps[i]);
      index.emplace(reps[i], i);
    }
  }

  const SupercharacterEvaluator& of(const OrbitRep& rep) const { return evals[index.at(rep)]; }
};

IdentityReport conjugate_check(const SupercharacterEvaluator& ex, const SupercharacterEvaluator& eneg,
                               const OrbitRep& y) {
  const OrbitRep& x = ex.orbit();
  IdentityReport report;
  report.name = "conjugate";
  report.params = base_params(x);
  report.params["Y"] = to_json(y);
  const Modulus n = x.modulus();
  const CountsVector at_y = ex.counts(y.entries());
  const CountsVector at_neg_y = ex.counts(negated(y.entries(), n));
  const CountsVector neg_x_at_y = eneg.counts(y.entries());
  const CountsVector conj = at_y.reversed();
  if (at_neg_y != conj || neg_x_at_y != conj) {
    ordered_json w;
    w["sigma_X(-Y)"] = to_json(at_neg_y);
    w["conj sigma_X(Y)"] = to_json(conj);
    w["sigma_-X(Y)"] = to_json(neg_x_at_y);
    fail(report, std::move(w));
  }
  return report;
}

IdentityReport translation_check(const SupercharacterEvaluator& ex, const SupercharacterEvaluator& eshift,
                                 const OrbitRep& y, std::int64_t j, std::int64_t k) {
  const OrbitRep& x = ex.orbit();
  const Modulus n = x.modulus();
  IdentityReport report;
  report.name = "translation";
  report.params = base_params(x);
  report.params["Y"] = to_json(y);
  report.params["j"] = n.reduce(j);
  report.params["k"] = n.reduce(k);
  const Residue offset = n.add(n.add(n.mul(orbit_sum(y), n.reduce(j)), n.mul(orbit_sum(x), n.reduce(k))),
                               n.mul(n.mul(n.reduce(x.d()), n.reduce(j)), n.reduce(k)));
  const CountsVector lhs = eshift.counts(plus_constant(y.entries(), k, n));
  const CountsVector rhs = ex.counts(y.entries()).shifted(offset);
  report.params["offset"] = offset;
  if (lhs != rhs) {
    ordered_json w;
    w["lhs"] = to_json(lhs);
    w["rhs"] = to_json(rhs);
    fail(report, std::move(w));
  }
  return report;
}

template <typename PerX>
std::vector<IdentityReport> sweep(const OrbitBank& bank, const SweepOptions& options, PerX&& per_x) {
  const std::uint64_t count = bank.reps.size();
  std::vector<std::vector<IdentityReport>> parts(chunk_count(count, options.threads));
  parallel_chunks(count, options.threads, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) per_x(i, parts[c]);
  });
  std::vector<IdentityReport> out;
  for (auto& part : parts)
    for (auto& r : part) out.push_back(std::move(r));
  return out;
}

void require_pairs(Modulus n, Eigen::Index d, std::uint64_t factor, const SweepOptions& options) {
  const std::uint64_t count = orbit_count(n.value(), d);
  std::uint64_t total;
  if (__builtin_mul_overflow(count, count, &total) || __builtin_mul_overflow(total, factor, &total))
    throw BudgetExceeded(UINT64_MAX, options.budget);
  if (total > options.budget) throw BudgetExceeded(total, options.budget);
}

void require_superclasses(Modulus n, Eigen::Index d, std::uint64_t factor, const SweepOptions& options) {
  std::uint64_t total;
  if (__builtin_mul_overflow(orbit_count(n.value(), d), factor, &total)) throw BudgetExceeded(UINT64_MAX, options.budget);
  if (total > options.budget) throw BudgetExceeded(total, options.budget);
}

ImageOptions image_options(const SweepOptions& options) {
  ImageOptions io;
  io.budget = options.budget;
  io.threads = options.threads;
  return io;
}

}  // namespace

IdentityReport conjugate_identity(const OrbitRep& x, const OrbitRep& y) {
  if (x.modulus() != y.modulus() || x.d() != y.d()) throw DimensionMismatch("X and Y live in different groups");
  return conjugate_check(SupercharacterEvaluator(x), SupercharacterEvaluator(negate_orbit(x)), y);
}

bool real_valued_check(const OrbitRep& x) { return negate_orbit(x) == x; }

IdentityReport real_valued_report(const OrbitRep& x, const SweepOptions& options) {
  IdentityReport report;
  report.name = "real";
  report.params = base_params(x);
  report.info["self_conjugate"] = real_valued_check(x);
  if (!real_valued_check(x)) return report;
  require_superclasses(x.modulus(), x.d(), 1, options);
  const SupercharacterEvaluator eval(x);
  double max_imag = 0.0;
  for_each_orbit(x.modulus(), x.d(), 0, UINT64_MAX, [&](const OrbitRep& y) {
    const CountsVector cv = eval.counts(y.entries());
    max_imag = std::max(max_imag, std::abs(counts_to_complex(cv, eval.roots()).imag()));
    if (!cv.is_palindromic()) {
      ordered_json w;
      w["Y"] = to_json(y);
      w["counts"] = to_json(cv);
      fail(report, std::move(w));
    }
  });
  report.info["max_abs_imag"] = max_imag;
  return report;
}

IdentityReport translation_identity(const OrbitRep& x, const OrbitRep& y, std::int64_t j, std::int64_t k) {
  if (x.modulus() != y.modulus() || x.d() != y.d()) throw DimensionMismatch("X and Y live in different groups");
  return translation_check(SupercharacterEvaluator(x), SupercharacterEvaluator(shift_orbit(x, j)), y, j, k);
}

std::int64_t dihedral_order(const OrbitRep& x) { return x.n() / gcd(x.n(), orbit_sum(x)); }

IdentityReport dihedral_report(const OrbitRep& x, const SweepOptions& options, double tol) {
  const Modulus n = x.modulus();
  IdentityReport report;
  report.name = "dihedral";
  report.params = base_params(x);
  const std::int64_t order = dihedral_order(x);
  report.params["orbit_sum"] = orbit_sum(x);
  report.info["order"] = order;
  require_superclasses(n, x.d(), static_cast<std::uint64_t>(n.value()), options);

  const SupercharacterEvaluator eval(x);
  for_each_orbit(n, x.d(), 0, UINT64_MAX, [&](const OrbitRep& y) {
    const CountsVector base = eval.counts(y.entries());
    for (std::int64_t l = 1; l < n.value(); ++l) {
      const CountsVector moved = eval.counts(plus_constant(y.entries(), l, n));
      const CountsVector expected = base.shifted(n.mul(orbit_sum(x), l));
      if (moved != expected) {
        ordered_json w;
        w["Y"] = to_json(y);
        w["l"] = l;
        w["lhs"] = to_json(moved);
        w["rhs"] = to_json(expected);
        fail(report, std::move(w));
      }
    }
  });

  report.exact = false;  // the closure half is numeric
  const PointCloud cloud = image(x, image_options(options));
  const SetComparison closure = rotation_closure(cloud.points, 2.0 * std::numbers::pi / static_cast<double>(order), tol);
  report.info["points"] = cloud.points.size();
  if (!closure.equal) {
    ordered_json w;
    w["rotation_unmatched"] = closure.unmatched_left + closure.unmatched_right;
    if (closure.witness) w["point"] = {closure.witness->real(), closure.witness->imag()};
    fail(report, std::move(w));
  }
  return report;
}

FullUnionResult full_union_symmetry(Modulus n, Eigen::Index d, const SweepOptions& options, double tol) {
  require_pairs(n, d, 1, options);
  FullUnionResult result;
  const std::int64_t m = gcd(n.value(), d);
  result.order = n.value() / m;
  IdentityReport& report = result.report;
  report.name = "full-union";
  report.params["n"] = n.value();
  report.params["d"] = d;
  report.info["order"] = result.order;
  report.exact = false;

  const OrbitBank bank(n, d);
  // The congruence is solved with a = [X] paired with j, so the shift applied
  // to X is the solver's k and the shift applied to Y is the solver's j.
  auto witnesses = sweep(bank, options, [&](std::uint64_t i, std::vector<IdentityReport>& out) {
    const OrbitRep& x = bank.reps[i];
    IdentityReport local;
    for (const OrbitRep& y : bank.reps) {
      const BilinearSolution sol = solve_bilinear_congruence(orbit_sum(x), orbit_sum(y), d, n);
      const OrbitRep moved_x = shift_orbit(x, sol.k);
      const CountsVector lhs = bank.of(moved_x).counts(plus_constant(y.entries(), sol.j, n));
      const CountsVector rhs = bank.evals[i].counts(y.entries()).shifted(m);
      if (!sol.verified || lhs != rhs) {
        ordered_json w;
        w["X"] = to_json(x);
        w["Y"] = to_json(y);
        w["j"] = sol.j;
        w["k"] = sol.k;
        w["lhs"] = to_json(lhs);
        w["rhs"] = to_json(rhs);
        fail(local, std::move(w));
      }
    }
    if (!local.passed) out.push_back(std::move(local));
  });
  if (!witnesses.empty()) fail(report, witnesses.front().witness);

  const PointCloud cloud = union_image(n, d, image_options(options));
  const SetComparison closure =
      rotation_closure(cloud.points, 2.0 * std::numbers::pi / static_cast<double>(result.order), tol);
  report.info["points"] = cloud.points.size();
  if (!closure.equal) {
    ordered_json w;
    w["rotation_unmatched"] = closure.unmatched_left + closure.unmatched_right;
    if (closure.witness) w["point"] = {closure.witness->real(), closure.witness->imag()};
    fail(report, std::move(w));
  }
  return result;
}

std::vector<Residue> spike_residues(const OrbitRep& x) {
  const Modulus n = x.modulus();
  std::vector<Residue> out;
  for (Residue r = 0; r < n.value(); ++r) {
    const OrbitRep reflected(n, x.entries().unaryExpr([n, r](Residue v) { return n.sub(r, v); }));
    if (reflected == x) out.push_back(r);
  }
  return out;
}

std::optional<Residue> spike_detect(const OrbitRep& x) {
  const auto all = spike_residues(x);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::int64_t spike_ray_count(std::int64_t n, Residue r) { return 2 * n / gcd(r, n); }

double ray_deviation(Complex z, std::int64_t n, Residue r, double origin_tol) {
  if (std::abs(z) < origin_tol) return 0.0;
  const double spacing = std::numbers::pi * static_cast<double>(gcd(r, n)) / static_cast<double>(n);
  const double theta = std::arg(z);
  return std::abs(theta - std::round(theta / spacing) * spacing);
}

IdentityReport spike_identity(const OrbitRep& x, Residue r, const OrbitRep& y, double tol) {
  const auto valid = spike_residues(x);
  if (std::find(valid.begin(), valid.end(), x.modulus().reduce(r)) == valid.end())
    throw HypothesisFailed("X != r1 - X for r = " + std::to_string(r));
  const Modulus n = x.modulus();
  IdentityReport report;
  report.name = "spike";
  report.exact = false;
  report.params = base_params(x);
  report.params["r"] = n.reduce(r);
  report.params["Y"] = to_json(y);
  const SupercharacterEvaluator eval(x);
  const CountsVector cv = eval.counts(y.entries());
  const CountsVector mirrored = cv.reversed().shifted(n.mul(n.reduce(r), orbit_sum(y)));
  if (cv != mirrored) {
    ordered_json w;
    w["lhs"] = to_json(cv);
    w["rhs"] = to_json(mirrored);
    fail(report, std::move(w));
  }
  const Complex z = counts_to_complex(cv, eval.roots());
  const double dev = ray_deviation(z, n.value(), r);
  report.info["deviation"] = dev;
  if (dev > tol) {
    ordered_json w;
    w["value"] = {z.real(), z.imag()};
    w["deviation"] = dev;
    fail(report, std::move(w));
  }
  return report;
}

IdentityReport spike_report(const OrbitRep& x, const SweepOptions& options, double tol) {
  const auto r_opt = spike_detect(x);
  if (!r_opt) throw HypothesisFailed("X != r1 - X for every r");
  const Residue r = *r_opt;
  const Modulus n = x.modulus();
  require_superclasses(n, x.d(), 1, options);
  IdentityReport report;
  report.name = "spikes";
  report.exact = false;
  report.params = base_params(x);
  report.params["r"] = r;
  const std::int64_t rays = spike_ray_count(n.value(), r);
  report.info["all_r"] = spike_residues(x);
  report.info["ray_count"] = rays;
  const double spacing = std::numbers::pi * static_cast<double>(gcd(r, n.value())) / static_cast<double>(n.value());
  std::vector<double> ray_max(static_cast<std::size_t>(rays), 0.0);
  double worst = 0.0;
  const SupercharacterEvaluator eval(x);
  for_each_orbit(n, x.d(), 0, UINT64_MAX, [&](const OrbitRep& y) {
    const CountsVector cv = eval.counts(y.entries());
    const CountsVector mirrored = cv.reversed().shifted(n.mul(r, orbit_sum(y)));
    const Complex z = counts_to_complex(cv, eval.roots());
    const double dev = ray_deviation(z, n.value(), r);
    worst = std::max(worst, dev);
    if (std::abs(z) >= 1e-9) {
      auto ray = static_cast<std::int64_t>(std::llround(std::arg(z) / spacing));
      ray = ((ray % rays) + rays) % rays;
      ray_max[static_cast<std::size_t>(ray)] = std::max(ray_max[static_cast<std::size_t>(ray)], std::abs(z));
    }
    if (cv != mirrored || dev > tol) {
      ordered_json w;
      w["Y"] = to_json(y);
      w["lhs"] = to_json(cv);
      w["rhs"] = to_json(mirrored);
      w["deviation"] = dev;
      fail(report, std::move(w));
    }
  });
  report.info["max_deviation"] = worst;
  report.info["ray_max_modulus"] = ray_max;
  return report;
}

IdentityReport parity_factorization_report(Modulus n, Eigen::Index d, const SweepOptions& options, double tol) {
  if (d < 2) throw InvalidArgument("parity factorization needs d >= 2");
  ResidueVector base = ResidueVector::Ones(d);
  base(0) = 0;
  base(d - 1) = 2;
  const OrbitRep x(n, base);
  require_superclasses(n, d, 1, options);
  IdentityReport report;
  report.name = "parity";
  report.exact = false;
  report.params = base_params(x);
  const double dd = static_cast<double>(d);
  double lo = INFINITY, hi = -INFINITY, worst = 0.0;
  const SupercharacterEvaluator eval(x);
  for_each_orbit(n, d, 0, UINT64_MAX, [&](const OrbitRep& y) {
    const Complex value = eval.value(y.entries());
    Complex walk(0.0, 0.0);
    for (Residue v : y.entries()) walk += eval.roots()[v];
    const double factor = std::norm(walk) - dd;
    const Complex predicted = eval.roots()[orbit_sum(y)] * factor;
    const double err = std::abs(value - predicted);
    worst = std::max(worst, err);
    lo = std::min(lo, factor);
    hi = std::max(hi, factor);
    if (err > tol || factor < -dd - tol || factor > dd * dd - dd + tol) {
      ordered_json w;
      w["Y"] = to_json(y);
      w["value"] = {value.real(), value.imag()};
      w["predicted"] = {predicted.real(), predicted.imag()};
      w["factor"] = factor;
      fail(report, std::move(w));
    }
  });
  report.info["max_error"] = worst;
  report.info["factor_min"] = lo;
  report.info["factor_max"] = hi;
  return report;
}

IdentityReport walk_reduction_check(Modulus n, Eigen::Index d, std::int64_t a, const SweepOptions& options,
                                    double tol) {
  if (n.reduce(a) == 0) throw InvalidArgument("walk reduction needs a != 0 (mod n)");
  const std::int64_t r = n.value() / gcd(n.value(), a);
  ResidueVector wide = ResidueVector::Zero(d), narrow = ResidueVector::Zero(d);
  wide(d - 1) = n.reduce(a);
  narrow(d - 1) = 1;
  const OrbitRep x_wide(n, wide), x_narrow(Modulus(r), narrow);
  IdentityReport report;
  report.name = "walk";
  report.exact = false;
  report.params["n"] = n.value();
  report.params["d"] = d;
  report.params["a"] = n.reduce(a);
  report.params["directions"] = r;
  const PointCloud lhs = image(x_wide, image_options(options));
  const PointCloud rhs = image(x_narrow, image_options(options));
  const SetComparison cmp = compare_point_sets(lhs.points, rhs.points, tol);
  report.info["points"] = {lhs.points.size(), rhs.points.size()};
  if (!cmp.equal) {
    ordered_json w;
    w["unmatched"] = {cmp.unmatched_left, cmp.unmatched_right};
    if (cmp.witness) w["point"] = {cmp.witness->real(), cmp.witness->imag()};
    fail(report, std::move(w));
  }
  return report;
}

std::vector<IdentityReport> sweep_conjugate(Modulus n, Eigen::Index d, const SweepOptions& options) {
  require_pairs(n, d, 1, options);
  const OrbitBank bank(n, d);
  return sweep(bank, options, [&](std::uint64_t i, std::vector<IdentityReport>& out) {
    const auto& eneg = bank.of(negate_orbit(bank.reps[i]));
    for (const OrbitRep& y : bank.reps) out.push_back(conjugate_check(bank.evals[i], eneg, y));
  });
}

std::vector<IdentityReport> sweep_translation(Modulus n, Eigen::Index d, const SweepOptions& options) {
  const auto nn = static_cast<std::uint64_t>(n.value());
  require_pairs(n, d, nn * nn, options);
  const OrbitBank bank(n, d);
  return sweep(bank, options, [&](std::uint64_t i, std::vector<IdentityReport>& out) {
    for (const OrbitRep& y : bank.reps)
      for (std::int64_t j = 0; j < n.value(); ++j) {
        const auto& eshift = bank.of(shift_orbit(bank.reps[i], j));
        for (std::int64_t k = 0; k < n.value(); ++k) out.push_back(translation_check(bank.evals[i], eshift, y, j, k));
      }
  });
}

std::vector<IdentityReport> sweep_constancy(Modulus n, Eigen::Index d, const SweepOptions& options) {
  require_pairs(n, d, 1, options);
  const OrbitBank bank(n, d);
  return sweep(bank, options, [&](std::uint64_t i, std::vector<IdentityReport>& out) {
    const OrbitRep& x = bank.reps[i];
    for (const OrbitRep& y : bank.reps) {
      IdentityReport report;
      report.name = "constancy";
      report.params = base_params(x);
      report.params["Y"] = to_json(y);
      const CountsVector first = bank.evals[i].counts(y.entries());
      for (const auto& member : distinct_permutations(y)) {
        const CountsVector cv = bank.evals[i].counts(member);
        if (cv != first) {
          ordered_json w;
          w["member"] = std::vector<Residue>(member.begin(), member.end());
          w["counts"] = to_json(cv);
          w["expected"] = to_json(first);
          fail(report, std::move(w));
        }
      }
      out.push_back(std::move(report));
    }
  });
}

}  // namespace symchar
