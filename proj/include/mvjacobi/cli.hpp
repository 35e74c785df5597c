#pragma once

// Command-line front end. Exit codes:
//   0  success
//   1  a verification check or vanishing claim failed
//   2  bad input, unmet precondition, or non-integrable weight
//   3  resonance (a required operator is singular)
//   4  quadrature did not converge

#include "mvjacobi/io.hpp"
#include "mvjacobi/numeric.hpp"
#include "mvjacobi/structure.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mvjacobi::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2, resonance = 3, no_convergence = 4 };

inline constexpr int default_k_max = 6;
inline constexpr std::uint64_t default_seed = 20240601;

/// Raised for suite preconditions that the input does not meet.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// D1 + s must be invertible for s = 1..top.
inline void require_shifts(const OperatorMatrix& d1, const PolySpace& space, int top) {
  for (int s = 1; s <= top; ++s) require_invertible(d1.shifted(Rational(s)), space, shifted_name("D1", s));
}

inline void print_report(std::ostream& out, const Report& r) {
  out << "[" << r.suite << "] " << (r.all_pass() ? "pass" : "FAIL") << " (" << r.checks.size() - r.failures() << "/"
      << r.checks.size() << ")\n";
  for (const auto& c : r.checks) {
    out << "  " << (c.pass ? "ok   " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
}

inline io::json numeric_to_json(const numeric::NumericReport& r) {
  return {{"quantity", r.quantity},
          {"max_abs_entry", r.max_abs_entry},
          {"estimated_error", r.estimated_error},
          {"tolerance", r.tolerance},
          {"claim", r.claim},
          {"pass", r.pass},
          {"values", r.values}};
}

struct Options {
  std::string input, out, poly, suite = "all", side = "right", format = "text", scheme = "de";
  std::optional<int> k_max;
  std::optional<std::uint64_t> seed;
  int j = 0, k = 0, levels = 7;
  double tol = 1e-8, ode_tol = 1e-10;
  bool roundtrip = false, override_integrability = false;
};

inline int resolve_k_max(const Options& o, const io::SpecFile& f) {
  return o.k_max.value_or(f.k_max.value_or(default_k_max));
}

inline std::uint64_t resolve_seed(const Options& o, const io::SpecFile& f) {
  return o.seed.value_or(f.seed.value_or(default_seed));
}

// ---------------------------------------------------------------------------

inline int cmd_compute(const Options& o, std::ostream& out) {
  const auto file = io::parse_spec(io::read_json_file(o.input));
  const int k_max = resolve_k_max(o, file);
  const auto space = file.spec.space();
  const auto d1 = build_D(file.spec, space, 1);
  require_shifts(d1, space, 2 * k_max);
  const PolynomialFamily fam(file.spec, k_max);
  const auto doc = io::result_to_json(space, fam.polys());
  if (o.out.empty())
    out << doc.dump(2) << '\n';
  else
    io::write_json_file(o.out, doc);
  return ok;
}

inline std::vector<Report> run_suites(const io::SpecFile& file, const std::string& suite, int k_max,
                                      std::uint64_t seed) {
  const auto& spec = file.spec;
  const bool all = suite == "all";
  const auto known = {"all", "recurrence", "tilde", "scalar", "trace", "identities"};
  if (std::find(known.begin(), known.end(), suite) == known.end())
    throw PreconditionError("unknown suite '" + suite + "'");
  if (suite == "trace" && spec.n() != 1) throw PreconditionError("suite 'trace' needs n = 1 (got n = " + std::to_string(spec.n()) + ")");
  if (suite == "scalar" && spec.d() != 1) throw PreconditionError("suite 'scalar' needs d = 1 (got d = " + std::to_string(spec.d()) + ")");
  if (suite == "tilde" && spec.n() < 2) throw PreconditionError("suite 'tilde' needs n >= 2");

  const auto space = spec.space();
  const auto d1 = build_D(spec, space, 1);
  // The recurrence at k_max reaches D1 + 2k_max + 2.
  require_shifts(d1, space, 2 * k_max + 2);
  const PolynomialFamily fam(spec, k_max + 1);
  Rng rng(seed);

  std::vector<Report> reports;
  if (all || suite == "recurrence") {
    reports.push_back(verify_recurrence(fam, k_max));
    reports.push_back(verify_dominant_coefficient(fam));
  }
  if ((all && spec.n() >= 2) || suite == "tilde") reports.push_back(verify_derivative_relation(fam));
  if ((all && spec.d() == 1) || suite == "scalar") {
    const Rational a = spec.A()(0, 0), b = spec.B()(0, 0);
    reports.push_back(verify_scalar_reduction(a, b, spec.n(), k_max));
    reports.push_back(verify_scalar_eigen_identity(a, b, spec.n(), k_max, rng));
  }
  if ((all && spec.n() == 1) || suite == "trace") reports.push_back(verify_trace_legendre(fam));
  if (all || suite == "identities") {
    reports.push_back(verify_proof_identities(fam, rng, 20, std::max(k_max, 1)));
    reports.push_back(verify_completeness(fam, rng, 20));
  }
  return reports;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const auto file = io::parse_spec(io::read_json_file(o.input));
  const int k_max = resolve_k_max(o, file);
  const auto seed = resolve_seed(o, file);
  const auto reports = run_suites(file, o.suite, k_max, seed);
  bool pass = true;
  io::json doc = {{"seed", seed}, {"k_max", k_max}, {"suites", io::json::array()}};
  for (const auto& r : reports) {
    pass = pass && r.all_pass();
    doc["suites"].push_back(io::report_to_json(r));
  }
  doc["pass"] = pass;
  if (o.format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& r : reports) print_report(out, r);
    out << (pass ? "all checks passed" : "some checks FAILED") << " (seed " << seed << ", k_max " << k_max << ")\n";
  }
  if (!o.out.empty()) io::write_json_file(o.out, doc);
  return pass ? ok : check_failed;
}

inline int cmd_expand(const Options& o, std::ostream& out, std::ostream& err) {
  const auto file = io::parse_spec(io::read_json_file(o.input));
  const auto space = file.spec.space();
  const auto f = io::parse_vectorpoly(io::read_json_file(o.poly), space);
  const PolynomialFamily fam(file.spec, std::max(f.degree(), 0));
  const auto e = expand(fam, f);
  const auto doc = io::expansion_to_json(space, e);
  if (o.out.empty())
    out << doc.dump(2) << '\n';
  else
    io::write_json_file(o.out, doc);
  if (o.roundtrip) {
    if (reconstruct(fam, e) != f) {
      err << "round trip failed: sum_j P_j q_j differs from the input polynomial\n";
      return check_failed;
    }
    if (o.out.empty()) err << "round trip: exact\n";
    else out << "round trip: exact\n";
  }
  return ok;
}

inline int cmd_quadrature(const Options& o, std::ostream& out) {
  const auto file = io::parse_spec(io::read_json_file(o.input));
  if (o.j < 0 || o.k < 0) throw PreconditionError("--j and --k must be >= 0");
  const int top = std::max(o.j, o.k);
  const auto space = file.spec.space();
  require_shifts(build_D(file.spec, space, 1), space, 2 * top);
  const PolynomialFamily fam(file.spec, top);
  numeric::QuadConfig q;
  q.levels = o.levels;
  if (o.scheme == "gj") q.scheme = numeric::QuadScheme::gauss_jacobi_commutative;
  else if (o.scheme != "de") throw PreconditionError("--scheme must be 'de' or 'gj'");
  numeric::OdeConfig ode;
  ode.rel_tol = o.ode_tol;
  ode.abs_tol = std::min(ode.abs_tol, o.ode_tol);
  const auto side = o.side == "left" ? numeric::Side::left : numeric::Side::right;
  if (o.side != "left" && o.side != "right") throw PreconditionError("--side must be 'right' or 'left'");
  const auto rep = numeric::quasi_orth_integral(fam, o.j, o.k, side, o.tol, q, ode, {}, o.override_integrability);
  if (o.format == "json") {
    out << numeric_to_json(rep).dump(2) << '\n';
  } else {
    out << rep.quantity << '\n'
        << std::setprecision(6) << "  max |entry|      " << rep.max_abs_entry << '\n'
        << "  estimated error  " << rep.estimated_error << '\n';
    if (rep.claim)
      out << "  vanishing claim  " << (rep.pass ? "holds" : "FAILS") << " at tolerance " << rep.tolerance << '\n';
    else
      out << "  no vanishing claim for this index order (informational)\n";
  }
  return rep.pass ? ok : check_failed;
}

template <class F>
int guarded(F&& body, std::ostream& err) {
  try {
    return body();
  } catch (const ResonanceError& e) {
    err << "resonance: " << e.what() << '\n';
    return resonance;
  } catch (const numeric::QuadratureError& e) {
    err << "quadrature: " << e.what() << '\n';
    return no_convergence;
  } catch (const numeric::IntegrabilityError& e) {
    err << "integrability: " << e.what() << '\n';
    return usage_error;
  } catch (const io::FormatError& e) {
    err << "input: " << e.what() << '\n';
    return usage_error;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
}

}  // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-valued generalized Jacobi polynomials: exact construction and checks", "mvjacobi"};
  app.require_subcommand(1);
  detail::Options o;

  auto* compute = app.add_subcommand("compute", "Build P_0..P_K and write them as exact rationals");
  auto* verify = app.add_subcommand("verify", "Run exact verification suites");
  auto* expand = app.add_subcommand("expand", "Expand a vector polynomial in the P_j");
  auto* quad = app.add_subcommand("quadrature", "Numerically check quasi-orthogonality");

  for (auto* sc : {compute, verify, expand, quad})
    sc->add_option("--input", o.input, "Problem JSON (d, n, A, B)")->required();
  for (auto* sc : {compute, verify, expand}) sc->add_option("--out", o.out, "Output JSON file (default: stdout)");
  for (auto* sc : {compute, verify}) sc->add_option("--kmax", o.k_max, "Largest k (default: file k_max or 6)");

  verify->add_option("--suite", o.suite, "all|recurrence|tilde|scalar|trace|identities");
  verify->add_option("--seed", o.seed, "Seed for random test inputs");
  for (auto* sc : {verify, quad}) sc->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  expand->add_option("--poly", o.poly, "Vector polynomial JSON (d, n, coeffs)")->required();
  expand->add_flag("--roundtrip", o.roundtrip, "Re-synthesize and require exact equality");

  quad->add_option("--j", o.j, "Index j")->required();
  quad->add_option("--k", o.k, "Index k")->required();
  quad->add_option("--side", o.side, "right: int P_j W P_k, left: int W P_j P_k");
  quad->add_option("--tol", o.tol, "Vanishing tolerance");
  quad->add_option("--ode-tol", o.ode_tol, "Relative tolerance of the ODE solver");
  quad->add_option("--scheme", o.scheme, "de (tanh-sinh) or gj (Gauss-Jacobi, diagonal A and B only)");
  quad->add_option("--levels", o.levels, "tanh-sinh refinement levels");
  quad->add_flag("--override-integrability", o.override_integrability, "Run even if endpoint exponents are <= -1/2");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  if (compute->parsed()) return detail::guarded([&] { return detail::cmd_compute(o, out); }, err);
  if (verify->parsed()) return detail::guarded([&] { return detail::cmd_verify(o, out); }, err);
  if (expand->parsed()) return detail::guarded([&] { return detail::cmd_expand(o, out, err); }, err);
  return detail::guarded([&] { return detail::cmd_quadrature(o, out); }, err);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace mvjacobi::cli
