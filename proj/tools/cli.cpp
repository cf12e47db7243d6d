#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ndirac/io.hpp"
#include "ndirac/parallel.hpp"
#include "ndirac/random_problem.hpp"

namespace ndirac::cli {

namespace {

using json = nlohmann::json;

ComplexWindow window_from(const std::vector<double>& w) {
  if (w.size() != 4) throw DomainError("--window needs four numbers: re0 re1 im0 im1");
  return {w[0], w[1], w[2], w[3]};
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream s;
  write_csv(s, header, rows);
  return s.str();
}

// "out.csv" -> "out.json"; anything else gets ".json" appended.
std::string sidecar_path(const std::string& csv) {
  const auto dot = csv.rfind('.');
  const auto slash = csv.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return csv.substr(0, dot) + ".json";
  return csv + ".json";
}

struct Context {
  std::ostream& out;
  std::ostream& err;
};

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string problem, tag = "L1", out;
  std::vector<double> window{-10.5, 10.5, -1.0, 1.0};
  double tol = -1.0;
};

int cmd_spectrum(const SpectrumArgs& a, Context& ctx) {
  const DiracProblem P = load_problem(a.problem);
  const ProblemTag tag = problem_tag_from_string(a.tag);
  const SpectrumResult r = spectrum(P, tag, window_from(a.window), a.tol);
  std::vector<std::vector<double>> rows;
  for (const auto& e : r.eigenvalues)
    rows.push_back({e.lambda.real(), e.lambda.imag(), static_cast<double>(e.multiplicity), e.residual});
  emit(a.out, csv_text({"re", "im", "multiplicity", "residual"}, rows), ctx.out);
  if (!a.out.empty()) write_text_file(sidecar_path(a.out), to_json(r).dump(2) + "\n");
  return kOk;
}

struct WeylArgs {
  std::string problem, out;
  std::vector<double> grid;
};

int cmd_weyl(const WeylArgs& a, Context& ctx) {
  const DiracProblem P = load_problem(a.problem);
  if (a.grid.size() != 6) throw DomainError("--grid needs six numbers: re0 re1 nre im0 im1 nim");
  const int nre = static_cast<int>(a.grid[2]), nim = static_cast<int>(a.grid[5]);
  if (nre < 0 || nim < 0 || nre != a.grid[2] || nim != a.grid[5])
    throw DomainError("--grid point counts must be non-negative integers");
  std::vector<Complex> pts;
  auto axis = [](double lo, double hi, int n, int k) { return n == 1 ? lo : lo + (hi - lo) * k / (n - 1); };
  for (int i = 0; i < nim; ++i)
    for (int k = 0; k < nre; ++k) pts.emplace_back(axis(a.grid[0], a.grid[1], nre, k), axis(a.grid[3], a.grid[4], nim, i));
  const CharacteristicEvaluator ev(P);
  std::vector<std::vector<double>> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) {
    const Complex z = pts[k];
    const Complex d1 = ev(CharKind::Delta1, z);
    if (near_pole(d1, z, P.T(), P.tolerances().pole_guard)) {
      rows[k] = {z.real(), z.imag(), std::nan(""), std::nan(""), 1.0};
      return;
    }
    const Complex M = ev(CharKind::Delta2, z) * (1.0 / d1);
    rows[k] = {z.real(), z.imag(), M.real(), M.imag(), 0.0};
  });
  emit(a.out, csv_text({"re", "im", "re_M", "im_M", "pole"}, rows), ctx.out);
  return kOk;
}

struct IdentityArgs {
  std::string problem, out;
  int samples = 20;
  std::uint64_t seed = 1;
  double tol = 1e-8;
};

int cmd_identities(const IdentityArgs& a, Context& ctx) {
  const DiracProblem P = load_problem(a.problem);
  if (a.samples < 0) throw DomainError("--samples must be >= 0");
  Rng rng(a.seed);
  std::vector<Complex> lambdas;
  for (int k = 0; k < a.samples; ++k) lambdas.push_back(random_lambda(rng, -10.0, 10.0, -1.0, 1.0));
  std::vector<double> xs;
  for (int k = 0; k < 10; ++k) xs.push_back(P.T() * (k + 0.5) / 10.0);
  std::vector<IdentityReport> reps(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t k) { reps[k] = verify_identities(P, lambdas[k], xs); });
  double worst = 0.0;
  json list = json::array();
  for (const auto& r : reps) {
    worst = std::max(worst, r.max_residual());
    list.push_back(to_json(r));
  }
  const bool pass = worst <= a.tol;
  json j = {{"seed", a.seed}, {"tol", a.tol}, {"max_residual", worst}, {"pass", pass}, {"reports", list}};
  emit(a.out, j.dump(2) + "\n", ctx.out);
  return pass ? kOk : kCheckFailed;
}

struct AsymptoticArgs {
  std::string problem, formula = "Delta1", out;
  double delta = 0.3, arg = kPi / 2, x = -1.0;
  std::vector<double> radii{25, 50, 100, 200};
};

int cmd_asymptotics(const AsymptoticArgs& a, Context& ctx) {
  const DiracProblem P = load_problem(a.problem);
  const SectorRay ray(a.delta, a.arg, a.radii);
  const double x = a.x < 0.0 ? 0.5 * P.T() : a.x;
  AsymptoticReport rep;
  const std::string& f = a.formula;
  if (f == "Xk") {
    rep = check_Xk_asymptotics(P.omega(), ray, P.tolerances().ode);
  } else if (f == "Delta1" || f == "Delta11") {
    rep = check_char_asymptotics(P, ray, char_kind_from_string(f));
  } else if (f == "Phi" || f == "psi" || f == "v1") {
    const auto reps = check_weyl_solution_asymptotics(P, ray, x);
    rep = reps[f == "Phi" ? 0 : f == "psi" ? 1 : 2];
  } else if (f == "phi_truncated" || f == "v2_truncated") {
    const auto reps = check_truncated_asymptotics(P, ray, x);
    rep = reps[f == "phi_truncated" ? 0 : 1];
  } else {
    throw UnsupportedKindError("unknown formula '" + f +
                               "' (Xk, Delta1, Delta11, Phi, psi, v1, phi_truncated, v2_truncated)");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < rep.radii.size(); ++k)
    rows.push_back({rep.radii[k], rep.errors[k], k < rep.floors.size() ? rep.floors[k] : 0.0});
  emit(a.out, csv_text({"radius", "relative_error", "floor"}, rows), ctx.out);
  if (!a.out.empty()) write_text_file(sidecar_path(a.out), to_json(rep).dump(2) + "\n");
  return rep.monotone_decay ? kOk : kCheckFailed;
}

struct DataArgs {
  std::string problem, type = "two_spectra", out;
  std::vector<double> window{-20.0, 20.0, -1.0, 1.0};
  double tol = 1e-10;
  int samples = 20;
  std::uint64_t seed = 1;
};

int cmd_data(const DataArgs& a, Context& ctx) {
  const DiracProblem P = load_problem(a.problem);
  const ComplexWindow w = window_from(a.window);
  SpectralData d;
  if (a.type == "two_spectra") {
    d = make_two_spectra(P, w, a.tol);
  } else if (a.type == "weyl") {
    const double re = std::max(std::abs(w.re_min), std::abs(w.re_max));
    d = make_weyl_data(P, counterexample_samples(a.samples, a.seed, re), w, a.tol);
  } else if (a.type == "three_spectra") {
    double at = 0.0;
    if (!is_two_point_problem(P, &at))
      throw DomainError("three_spectra data needs U1 = jump only and U2 = one interior atom");
    d = make_three_spectra(P.omega(), P.U1().jump(), P.U2().atoms().front().w, at, w, a.tol, P.tolerances());
  } else {
    throw UnsupportedKindError("unknown data type '" + a.type + "' (two_spectra, weyl, three_spectra)");
  }
  emit(a.out, to_json(d).dump(2) + "\n", ctx.out);
  return kOk;
}

struct InvertArgs {
  std::string data, problem, out;
  int degree = 0;
  InversionOptions opt;
};

int cmd_invert(const InvertArgs& a, Context& ctx) {
  const SpectralData d = load_spectral_data(a.data);
  const DiracProblem tmpl = load_problem(a.problem);
  const InversionResult r = invert(d, PotentialParam::zero(tmpl.T(), a.degree), tmpl, a.opt);
  emit(a.out, to_json(r).dump(2) + "\n", ctx.out);
  return r.converged ? kOk : kCheckFailed;
}

struct CounterexampleArgs {
  std::string scenario = "example1", potential, out;
  double alpha = 0.2, alpha0 = 0.5, tol = 1e-7;
  int samples = 50;
  std::uint64_t seed = 1;
  std::vector<double> window;
};

int cmd_counterexample(const CounterexampleArgs& a, Context& ctx) {
  const Scenario s = scenario_from_string(a.scenario);
  const CounterexamplePair pair =
      s == Scenario::Example1
          ? build_example1(a.potential.empty() ? default_example1_profile() : load_problem(a.potential).omega())
          : build_example2(a.potential.empty() ? default_example2_bump() : load_problem(a.potential).omega(),
                           a.alpha, a.alpha0);
  const ComplexWindow w = a.window.empty() ? default_window(s) : window_from(a.window);
  const PairReport rep = verify_pair(pair, counterexample_samples(a.samples, a.seed), w, a.tol);
  emit(a.out, to_json(rep).dump(2) + "\n", ctx.out);
  return rep.reproduces() ? kOk : kCheckFailed;
}

struct ConditionArgs {
  std::string problem, out;
  std::vector<double> window{-10.5, 10.5, -1.0, 1.0};
  double sep = 1e-6;
};

int cmd_condition_s(const ConditionArgs& a, Context& ctx) {
  const DiracProblem P = load_problem(a.problem);
  const ConditionSResult r = check_condition_S(P, window_from(a.window), a.sep);
  json j = to_json(r);
  j["sep"] = a.sep;
  emit(a.out, j.dump(2) + "\n", ctx.out);
  return r.holds ? kOk : kCheckFailed;
}

struct HalvingArgs {
  std::string problem, other, out;
  int samples = 10;
  std::uint64_t seed = 1;
  double tol = 1e-8;
};

int cmd_halving(const HalvingArgs& a, Context& ctx) {
  const DiracProblem P = load_problem(a.problem);
  const DiracProblem Q = a.other.empty() ? P : load_problem(a.other);
  Rng rng(a.seed);
  std::vector<Complex> lambdas;
  for (int k = 0; k < a.samples; ++k) lambdas.push_back(random_lambda(rng, -10.0, 10.0, -1.0, 1.0));
  const HalvingReport r = halving_check(P, Q, lambdas, a.tol);
  emit(a.out, to_json(r).dump(2) + "\n", ctx.out);
  return r.telescoping_ok ? kOk : kCheckFailed;
}

struct EchoArgs {
  std::string problem, out;
};

int cmd_echo(const EchoArgs& a, Context& ctx) {
  emit(a.out, problem_to_toml(load_problem(a.problem)), ctx.out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral toolkit for Dirac systems with nonlocal boundary conditions", "ndirac"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = all cores)");

  Context ctx{out, err};
  std::function<int()> action;

  SpectrumArgs sp;
  auto* c_sp = app.add_subcommand("spectrum", "Eigenvalues of L0, L1, L2, L11 (or L0', L1', L2') in a window");
  c_sp->add_option("file", sp.problem, "Problem file (TOML)")->required();
  c_sp->add_option("--problem", sp.tag, "Which boundary value problem");
  c_sp->add_option("--window", sp.window, "re0 re1 im0 im1")->expected(4);
  c_sp->add_option("--tol", sp.tol, "Root residual tolerance (default from the problem file)");
  c_sp->add_option("--out", sp.out, "CSV output; a JSON sidecar is written next to it");
  c_sp->callback([&] { action = [&] { return cmd_spectrum(sp, ctx); }; });

  WeylArgs wa;
  auto* c_w = app.add_subcommand("weyl", "Weyl-type function M on a grid");
  c_w->add_option("problem", wa.problem, "Problem file (TOML)")->required();
  c_w->add_option("--grid", wa.grid, "re0 re1 nre im0 im1 nim")->expected(6)->required();
  c_w->add_option("--out", wa.out, "CSV output");
  c_w->callback([&] { action = [&] { return cmd_weyl(wa, ctx); }; });

  IdentityArgs ia;
  auto* c_i = app.add_subcommand("identities", "Residuals of the solution and characteristic-function identities");
  c_i->add_option("problem", ia.problem, "Problem file (TOML)")->required();
  c_i->add_option("--samples", ia.samples, "Number of random lambda");
  c_i->add_option("--seed", ia.seed, "Random seed");
  c_i->add_option("--tol", ia.tol, "Pass threshold for every residual");
  c_i->add_option("--out", ia.out, "JSON output");
  c_i->callback([&] { action = [&] { return cmd_identities(ia, ctx); }; });

  AsymptoticArgs aa;
  auto* c_a = app.add_subcommand("asymptotics", "Relative error against a leading-order asymptotic formula");
  c_a->add_option("problem", aa.problem, "Problem file (TOML)")->required();
  c_a->add_option("--formula", aa.formula, "Xk, Delta1, Delta11, Phi, psi, v1, phi_truncated, v2_truncated");
  c_a->add_option("--delta", aa.delta, "Sector half-opening delta");
  c_a->add_option("--arg", aa.arg, "Ray argument");
  c_a->add_option("--radii", aa.radii, "Radii along the ray");
  c_a->add_option("--x", aa.x, "Abscissa for solution formulas (default T/2)");
  c_a->add_option("--out", aa.out, "CSV output; a JSON sidecar is written next to it");
  c_a->callback([&] { action = [&] { return cmd_asymptotics(aa, ctx); }; });

  DataArgs da;
  auto* c_d = app.add_subcommand("spectral-data", "Generate spectral data (JSON) from a problem");
  c_d->add_option("problem", da.problem, "Problem file (TOML)")->required();
  c_d->add_option("--type", da.type, "two_spectra, weyl or three_spectra");
  c_d->add_option("--window", da.window, "re0 re1 im0 im1")->expected(4);
  c_d->add_option("--tol", da.tol, "Root residual tolerance");
  c_d->add_option("--samples", da.samples, "Number of M samples (weyl)");
  c_d->add_option("--seed", da.seed, "Seed for the M samples (weyl)");
  c_d->add_option("--out", da.out, "JSON output");
  c_d->callback([&] { action = [&] { return cmd_data(da, ctx); }; });

  InvertArgs inv;
  auto* c_inv = app.add_subcommand("invert", "Recover Chebyshev coefficients of p and q from spectral data");
  c_inv->add_option("data", inv.data, "Spectral data (JSON)")->required();
  c_inv->add_option("problem", inv.problem, "Problem template supplying T, forms and tolerances")->required();
  c_inv->add_option("--degree", inv.degree, "Chebyshev degree of p and q");
  c_inv->add_option("--max-iter", inv.opt.max_iter, "Levenberg-Marquardt iteration cap");
  c_inv->add_option("--target", inv.opt.target, "Stop once the misfit is below this");
  c_inv->add_option("--ridge", inv.opt.ridge, "Ridge weight on ||c||^2");
  c_inv->add_option("--out", inv.out, "JSON output");
  c_inv->callback([&] { action = [&] { return cmd_invert(inv, ctx); }; });

  CounterexampleArgs ca;
  auto* c_c = app.add_subcommand("counterexample", "Build and verify an isospectral pair");
  c_c->add_option("--scenario", ca.scenario, "example1 or example2");
  c_c->add_option("--potential", ca.potential, "Problem file whose potential is the half profile or bump");
  c_c->add_option("--alpha", ca.alpha, "example2: U2 = y1(pi - alpha)");
  c_c->add_option("--alpha0", ca.alpha0, "example2: the bump vanishes within alpha0 of both ends");
  c_c->add_option("--samples", ca.samples, "Number of comparison points");
  c_c->add_option("--seed", ca.seed, "Seed for the comparison points");
  c_c->add_option("--tol", ca.tol, "Equality tolerance");
  c_c->add_option("--window", ca.window, "re0 re1 im0 im1 for the spectra")->expected(4);
  c_c->add_option("--out", ca.out, "JSON output");
  c_c->callback([&] { action = [&] { return cmd_counterexample(ca, ctx); }; });

  ConditionArgs cs;
  auto* c_s = app.add_subcommand("condition-s", "Check that Lambda1 and the zeros of omega are disjoint");
  c_s->add_option("problem", cs.problem, "Problem file (TOML)")->required();
  c_s->add_option("--window", cs.window, "re0 re1 im0 im1")->expected(4);
  c_s->add_option("--sep", cs.sep, "Minimum separation");
  c_s->add_option("--out", cs.out, "JSON output");
  c_s->callback([&] { action = [&] { return cmd_condition_s(cs, ctx); }; });

  HalvingArgs ha;
  auto* c_h = app.add_subcommand("halving", "Truncated characteristic functions at a = T, T/2, T/4");
  c_h->add_option("problem", ha.problem, "Problem file (TOML)")->required();
  c_h->add_option("other", ha.other, "Second problem sharing U1 (default: the first)");
  c_h->add_option("--samples", ha.samples, "Number of random lambda");
  c_h->add_option("--seed", ha.seed, "Random seed");
  c_h->add_option("--tol", ha.tol, "Telescoping residual threshold");
  c_h->add_option("--out", ha.out, "JSON output");
  c_h->callback([&] { action = [&] { return cmd_halving(ha, ctx); }; });

  EchoArgs ea;
  auto* c_e = app.add_subcommand("echo", "Parse a problem file and print it back");
  c_e->add_option("problem", ea.problem, "Problem file (TOML)")->required();
  c_e->add_option("--out", ea.out, "TOML output");
  c_e->callback([&] { action = [&] { return cmd_echo(ea, ctx); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  set_max_threads(threads);
  try {
    return action();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kParseError;
  } catch (const UnsupportedKindError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kParseError;
  } catch (const DegenerateCharacteristicError& e) {
    err << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const DegenerateScenarioError& e) {
    err << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const UnsupportedAsymptoteError& e) {
    err << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace ndirac::cli
