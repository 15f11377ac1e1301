#include "symchar/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

#include "symchar/asymptotic.hpp"
#include "symchar/identities.hpp"
#include "symchar/modring.hpp"
#include "symchar/render.hpp"
#include "symchar/serialize.hpp"
#include "symchar/table.hpp"

namespace symchar::cli {

using nlohmann::ordered_json;

namespace {

struct Common {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  double tol = 1e-9;

  SweepOptions sweep() const { return {budget, threads}; }
  ImageOptions image() const {
    ImageOptions io;
    io.budget = budget;
    io.threads = threads;
    return io;
  }
};

std::string complex_text(Complex z) {
  const std::string im = format_number(z.imag());
  return format_number(z.real()) + (im.front() == '-' ? "" : "+") + im + "i";
}

std::string resolve_output(const std::string& path) {
  const char* dir = std::getenv(kOutputDirEnv);
  if (!dir || !*dir || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(dir) / path).string();
}

ResidueVector to_vector(const std::vector<std::int64_t>& v) {
  ResidueVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

OrbitRep read_orbit(std::int64_t n, const std::vector<std::int64_t>& entries, std::ostream& err) {
  if (entries.empty()) throw InvalidArgument("orbit needs at least one entry");
  const OrbitRep rep(Modulus(n), to_vector(entries));
  std::vector<std::int64_t> given(entries);
  for (auto& v : given) v = Modulus(n).reduce(v);
  if (!std::equal(given.begin(), given.end(), rep.entries().begin())) {
    ordered_json notice;
    notice["notice"] = "orbit canonicalized";
    notice["input"] = entries;
    notice["orbit"] = to_json(rep);
    err << notice.dump() << '\n';
  }
  return rep;
}

int emit_reports(const std::vector<IdentityReport>& reports, bool failures_only, std::ostream& out) {
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.passed;
    if (!failures_only || !r.passed) out << r.to_json_line() << '\n';
  }
  ordered_json summary;
  summary["summary"] = true;
  summary["checks"] = reports.size();
  summary["failures"] = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.passed; });
  out << summary.dump() << '\n';
  return all ? kSuccess : kVerificationFailure;
}

struct VerifyArgs {
  std::string identity;
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::vector<std::int64_t> x;
  std::int64_t a = 1;
  int samples = 50;
  std::uint64_t seed = 1;
  bool failures_only = false;
};

std::vector<IdentityReport> verify_permanent(const VerifyArgs& v, const Common& c) {
  const Modulus n(v.n);
  std::mt19937_64 rng(v.seed);
  std::uniform_int_distribution<Residue> pick(0, v.n - 1);
  std::vector<IdentityReport> reports;
  for (const auto& x : enumerate_orbits(n, v.d)) {
    IdentityReport r;
    r.name = "permanent";
    r.exact = false;
    r.params["n"] = v.n;
    r.params["d"] = v.d;
    r.params["X"] = to_json(x);
    r.params["samples"] = v.samples;
    const SupercharacterEvaluator eval(x);
    double worst = 0.0;
    for (int s = 0; s < v.samples; ++s) {
      ResidueVector y(v.d);
      for (auto& e : y) e = pick(rng);
      const double err = std::abs(eval.value(y) - permanent_oracle(x, y));
      worst = std::max(worst, err);
      if (err > c.tol && r.passed) {
        r.passed = false;
        r.witness["y"] = std::vector<Residue>(y.begin(), y.end());
        r.witness["error"] = err;
      }
    }
    r.info["max_error"] = worst;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<IdentityReport> verify_stabilizer(const VerifyArgs& v) {
  const Modulus n(v.n);
  const auto reps = enumerate_orbits(n, v.d);
  std::vector<IdentityReport> reports;
  for (const auto& x : reps) {
    const SupercharacterEvaluator eval(x);
    for (const auto& y : reps) {
      IdentityReport r;
      r.name = "stabilizer-sum";
      r.params["n"] = v.n;
      r.params["d"] = v.d;
      r.params["X"] = to_json(x);
      r.params["Y"] = to_json(y);
      const CountsVector lhs = eval.counts(y.entries());
      const CountsVector rhs = stabilizer_sum_counts(x, y.entries());
      if (lhs != rhs) {
        r.passed = false;
        r.witness["lhs"] = to_json(lhs);
        r.witness["rhs"] = to_json(rhs);
      }
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

// Applies `check` to the given orbit, or to every orbit of (n, d) accepted by `applies`.
template <typename Applies, typename Check>
std::vector<IdentityReport> per_orbit(const VerifyArgs& v, std::ostream& err, Applies&& applies, Check&& check) {
  std::vector<IdentityReport> reports;
  if (!v.x.empty()) {
    reports.push_back(check(read_orbit(v.n, v.x, err)));
    return reports;
  }
  for (const auto& x : enumerate_orbits(Modulus(v.n), v.d))
    if (applies(x)) reports.push_back(check(x));
  return reports;
}

int run_verify(const VerifyArgs& v, const Common& c, std::ostream& out, std::ostream& err) {
  if (v.n < 1) throw InvalidArgument("verify needs --n >= 1");
  if (v.d < 1 && v.x.empty()) throw InvalidArgument("verify needs --d >= 1");
  VerifyArgs args = v;
  if (!args.x.empty()) args.d = static_cast<std::int64_t>(args.x.size());
  const Modulus n(args.n);
  const auto always = [](const OrbitRep&) { return true; };
  std::vector<IdentityReport> reports;
  const std::string& id = args.identity;
  if (id == "conjugate") {
    reports = sweep_conjugate(n, args.d, c.sweep());
  } else if (id == "translation") {
    reports = sweep_translation(n, args.d, c.sweep());
  } else if (id == "constancy") {
    reports = sweep_constancy(n, args.d, c.sweep());
  } else if (id == "permanent") {
    reports = verify_permanent(args, c);
  } else if (id == "stabilizer") {
    reports = verify_stabilizer(args);
  } else if (id == "real") {
    reports = per_orbit(args, err, real_valued_check, [&](const OrbitRep& x) { return real_valued_report(x, c.sweep()); });
  } else if (id == "dihedral") {
    reports = per_orbit(args, err, always, [&](const OrbitRep& x) { return dihedral_report(x, c.sweep(), c.tol); });
  } else if (id == "full-union") {
    reports.push_back(full_union_symmetry(n, args.d, c.sweep(), c.tol).report);
  } else if (id == "spikes") {
    reports = per_orbit(
        args, err, [](const OrbitRep& x) { return spike_detect(x).has_value(); },
        [&](const OrbitRep& x) { return spike_report(x, c.sweep(), c.tol); });
  } else if (id == "parity") {
    reports.push_back(parity_factorization_report(n, args.d, c.sweep(), c.tol));
  } else if (id == "walk") {
    reports.push_back(walk_reduction_check(n, args.d, args.a, c.sweep(), c.tol));
  } else if (id == "hypocycloid") {
    reports.push_back(hypocycloid_orbit_check(n, args.d, c.sweep(), c.tol));
  } else if (id == "torus") {
    ResidueVector base = ResidueVector::Ones(args.d);
    base(args.d - 1) = 1 - args.d;
    const OrbitRep x(n, base);
    IdentityReport r;
    r.name = "torus";
    r.exact = false;
    r.params["n"] = args.n;
    r.params["d"] = args.d;
    r.params["X"] = to_json(x);
    const auto lhs = image(x, c.image());
    const auto rhs = sample_torus_map(hypocycloid_exponents(args.d, n), args.n, c.image());
    const auto cmp = compare_point_sets(lhs.points, rhs.points, c.tol);
    r.info["points"] = {lhs.points.size(), rhs.points.size()};
    r.info["coprime"] = gcd(args.n, args.d) == 1;
    if (!cmp.equal) {
      r.passed = false;
      r.witness["unmatched"] = {cmp.unmatched_left, cmp.unmatched_right};
    }
    reports.push_back(std::move(r));
  } else {
    throw InvalidArgument("unknown identity \"" + id + "\"");
  }
  return emit_reports(reports, args.failures_only, out);
}

std::vector<std::string> reversed(std::vector<std::string> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

int error_line(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  ordered_json e;
  e["error"] = kind;
  e["message"] = message;
  err << e.dump() << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& input, std::ostream& out, std::ostream& err) {
  // `eval n x... -- y...`: split at "--" ourselves, CLI11 would merge both lists
  std::vector<std::string> args = input;
  std::vector<std::int64_t> eval_y;
  bool eval_split = false;
  if (!args.empty() && args.front() == "eval") {
    const auto dash = std::find(args.begin(), args.end(), "--");
    if (dash != args.end()) {
      try {
        for (auto it = dash + 1; it != args.end(); ++it) eval_y.push_back(std::stoll(*it));
      } catch (const std::exception&) {
        return error_line(err, "UsageError", "eval: y entries must be integers", kUsageError);
      }
      args.erase(dash, args.end());
      eval_split = true;
    }
  }

  CLI::App app{"Symmetric supercharacters of (Z/nZ)^d", "symchar"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--budget", common.budget, "Maximum number of evaluations per job")->capture_default_str();
  app.add_option("-j,--threads", common.threads, "Worker threads")->capture_default_str();
  app.add_option("--tol", common.tol, "Numeric tolerance for geometric checks")->capture_default_str();

  std::int64_t n = 0, d = 0, a = 0, b = 0;
  std::vector<std::int64_t> x;
  std::string output, format = "csv", expect_b, r_file;
  bool full_group = false, check_unitary = false;
  double range = 0.0;
  int unit_res = 0;
  VerifyArgs verify;

  auto* orbits_cmd = app.add_subcommand("orbits", "List orbit representatives with sizes");
  orbits_cmd->add_option("n", n)->required();
  orbits_cmd->add_option("d", d)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate sigma_X(y): eval n x... -- y...");
  eval_cmd->add_option("n", n)->required();
  eval_cmd->add_option("x", x)->required();

  auto* image_cmd = app.add_subcommand("image", "Point cloud of sigma_X");
  image_cmd->add_option("n", n)->required();
  image_cmd->add_option("x", x)->required();
  image_cmd->add_flag("--full-group", full_group, "Evaluate at every group element");
  image_cmd->add_option("-o,--output", output, "Output file (default stdout)");
  image_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* render_cmd = app.add_subcommand("render", "Bitmap of sigma_X");
  render_cmd->add_option("n", n)->required();
  render_cmd->add_option("x", x)->required();
  render_cmd->add_option("--range", range)->required();
  render_cmd->add_option("--unit-res", unit_res)->required();
  render_cmd->add_option("-o,--output", output)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run an identity sweep, JSON lines out");
  verify_cmd->add_option("identity", verify.identity)
      ->required()
      ->check(CLI::IsMember({"conjugate", "translation", "constancy", "permanent", "stabilizer", "real", "dihedral",
                             "full-union", "spikes", "parity", "walk", "hypocycloid", "torus"}));
  verify_cmd->add_option("--n", verify.n)->required();
  verify_cmd->add_option("--d", verify.d);
  verify_cmd->add_option("--x", verify.x, "Restrict to one orbit");
  verify_cmd->add_option("--a", verify.a, "Step multiplier for the walk check");
  verify_cmd->add_option("--samples", verify.samples, "Random y per orbit for the permanent check");
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_flag("--failures-only", verify.failures_only);

  auto* reduce_cmd = app.add_subcommand("reduce", "Row-reduce the orbit matrix over Z/nZ");
  reduce_cmd->add_option("n", n)->required();
  reduce_cmd->add_option("x", x)->required();
  reduce_cmd->add_option("--expect-b", expect_b, "JSON file with the expected B");
  reduce_cmd->add_option("--r", r_file, "JSON file with R to certify instead of eliminating");
  reduce_cmd->add_option("-o,--output", output);

  auto* table_cmd = app.add_subcommand("table", "Supercharacter table and unitary form");
  table_cmd->add_option("n", n)->required();
  table_cmd->add_option("d", d)->required();
  table_cmd->add_flag("--check-unitary", check_unitary);
  table_cmd->add_option("-o,--output", output);

  auto* walk_cmd = app.add_subcommand("walk", "Walk-reduction check for S_d(0,...,0,a)");
  walk_cmd->add_option("n", n)->required();
  walk_cmd->add_option("d", d)->required();
  walk_cmd->add_option("a", a)->required();

  auto* solve_cmd = app.add_subcommand("solve", "Solve a*j + b*k + d*j*k = gcd(n,d) (mod n)");
  solve_cmd->add_option("a", a)->required();
  solve_cmd->add_option("b", b)->required();
  solve_cmd->add_option("d", d)->required();
  solve_cmd->add_option("n", n)->required();

  try {
    app.parse(reversed(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    return error_line(err, "UsageError", e.what(), kUsageError);
  }
  if (eval_split && !eval_cmd->parsed()) return error_line(err, "UsageError", "unexpected \"--\"", kUsageError);

  try {
    auto emit = [&](const std::string& text) {
      if (output.empty()) {
        out << text;
      } else {
        write_file(resolve_output(output), text);
      }
    };

    if (orbits_cmd->parsed()) {
      const Modulus mod(n);
      if (d < 1) throw InvalidArgument("d must be >= 1");
      const std::uint64_t count = orbit_count(n, d);
      if (count > common.budget) throw BudgetExceeded(count, common.budget);
      std::uint64_t index = 0;
      for_each_orbit(mod, d, 0, count, [&](const OrbitRep& rep) {
        ordered_json line;
        line["index"] = index++;
        line["orbit"] = to_json(rep);
        line["size"] = orbit_size(rep);
        line["stabilizer"] = stabilizer_order(rep);
        out << line.dump() << '\n';
      });
      return kSuccess;
    }

    if (eval_cmd->parsed()) {
      if (!eval_split) throw InvalidArgument("eval needs \"-- y...\"");
      const OrbitRep rep = read_orbit(n, x, err);
      const ResidueVector y = to_vector(eval_y);
      const CountsVector cv = dot_counts(rep, y);
      out << "counts " << to_json(cv).dump() << '\n';
      out << "value " << complex_text(counts_to_complex(cv)) << '\n';
      return kSuccess;
    }

    if (image_cmd->parsed()) {
      const OrbitRep rep = read_orbit(n, x, err);
      ImageOptions io = common.image();
      io.full_group = full_group;
      emit(export_points(image(rep, io), format == "json" ? PointFormat::kJson : PointFormat::kCsv));
      return kSuccess;
    }

    if (render_cmd->parsed()) {
      const OrbitRep rep = read_orbit(n, x, err);
      const BitmapSpec spec{range, unit_res};
      const GrayImage img = render_bitmap(image(rep, common.image()).points, spec, common.threads);
      write_png(img, resolve_output(output));
      return kSuccess;
    }

    if (verify_cmd->parsed()) return run_verify(verify, common, out, err);

    if (reduce_cmd->parsed()) {
      const OrbitRep rep = read_orbit(n, x, err);
      const OrbitMatrix m = orbit_matrix(rep, common.budget);
      ordered_json result;
      result["n"] = n;
      result["orbit"] = to_json(rep);
      result["A"] = matrix_to_json(m.a);
      ReductionCertificate cert;
      try {
        cert = r_file.empty() ? row_reduce_mod_n(m) : certify_reduction(m, read_matrix_file(r_file, "R"));
      } catch (const NoUnitPivot& stall) {
        result["certificate"] = to_json(stall.partial());
        result["valid"] = false;
        emit(result.dump() + "\n");
        return error_line(err, stall.kind(), stall.what(), kVerificationFailure);
      }
      const bool valid = verify_certificate(m, cert);
      result["certificate"] = to_json(cert);
      result["valid"] = valid;
      result["torus_map"] = to_json(torus_map(cert));
      bool matches = true;
      if (!expect_b.empty()) {
        const ResidueMatrix expected = read_matrix_file(expect_b, "B");
        matches = expected.rows() == cert.b.rows() && expected.cols() == cert.b.cols() &&
                  reduce_mod(expected, cert.n) == cert.b;
        result["expected_b_match"] = matches;
      }
      emit(result.dump() + "\n");
      return valid && matches ? kSuccess : kVerificationFailure;
    }

    if (table_cmd->parsed()) {
      const SuperTable table = build_table(Modulus(n), d, common.budget, common.threads);
      const UnitaryTable unitary = build_unitary(table);
      if (!output.empty() || !check_unitary) emit(to_json(table, &unitary).dump() + "\n");
      if (check_unitary) {
        ordered_json line;
        line["n"] = n;
        line["d"] = d;
        line["N"] = table.orbits.size();
        line["symmetry_residual"] = unitary.symmetry_residual;
        line["unitarity_residual"] = unitary.unitarity_residual;
        line["orthogonality_residual"] = orthogonality_residual(table);
        const bool pass = unitary.symmetry_residual <= 1e-9 && unitary.unitarity_residual <= 1e-8;
        line["pass"] = pass;
        out << line.dump() << '\n';
        return pass ? kSuccess : kVerificationFailure;
      }
      return kSuccess;
    }

    if (walk_cmd->parsed()) {
      const IdentityReport r = walk_reduction_check(Modulus(n), d, a, common.sweep(), common.tol);
      out << r.to_json_line() << '\n';
      return r.passed ? kSuccess : kVerificationFailure;
    }

    if (solve_cmd->parsed()) {
      const Modulus mod(n);
      const BilinearSolution sol = solve_bilinear_congruence(a, b, d, mod);
      ordered_json line;
      line["a"] = a;
      line["b"] = b;
      line["d"] = d;
      line["n"] = n;
      line["target"] = gcd(n, d) % n;
      line["j"] = sol.j;
      line["k"] = sol.k;
      line["path"] = sol.path == SolverPath::kCrt ? "crt" : "brute-force";
      line["verified"] = sol.verified;
      out << line.dump() << '\n';
      return sol.verified ? kSuccess : kVerificationFailure;
    }
  } catch (const BudgetExceeded& e) {
    return error_line(err, e.kind(), e.what(), kBudgetExceeded);
  } catch (const InvalidArgument& e) {
    return error_line(err, e.kind(), e.what(), kUsageError);
  } catch (const DimensionMismatch& e) {
    return error_line(err, e.kind(), e.what(), kUsageError);
  } catch (const Error& e) {
    return error_line(err, e.kind(), e.what(), kVerificationFailure);
  } catch (const std::exception& e) {
    return error_line(err, "InternalError", e.what(), kVerificationFailure);
  }
  return kUsageError;
}

}  // namespace symchar::cli
