#include "borelrig/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "borelrig/dilog.hpp"
#include "borelrig/document.hpp"
#include "borelrig/errors.hpp"
#include "borelrig/selftest.hpp"

namespace borelrig {

namespace {

struct Flags {
  std::optional<int> n;
  std::string input;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<unsigned> workers;
  std::string output;
};

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

void line(std::ostream& out, const std::string& label, const std::string& value,
          const std::string& extra = {}) {
  out << "  " << std::left << std::setw(20) << label;
  if (extra.empty()) {
    out << value << "\n";
  } else {
    out << std::setw(22) << value << extra << "\n";
  }
}

std::string in_nu3(double v) { return num(v / nu3()) + " nu3"; }

void write_output(const Flags& flags, const Json& j) {
  if (flags.output.empty()) return;
  std::ofstream out(flags.output);
  if (!out) throw InputError(flags.output + ": cannot open for writing");
  out << j.dump(2) << "\n";
}

std::string verdict(int sign) {
  if (sign > 0) return "MAXIMAL(+)";
  if (sign < 0) return "MAXIMAL(-)";
  return "not maximal";
}

Experiment load(const Flags& flags) {
  if (flags.input.empty()) throw InputError("--input is required");
  Experiment e = load_experiment(read_json_file(flags.input), flags.n);
  if (flags.samples) e.estimator.samples = *flags.samples;
  if (flags.seed) e.estimator.seed = e.trivialize.seed = *flags.seed;
  if (flags.workers) e.estimator.workers = e.trivialize.workers = *flags.workers;
  return e;
}

void describe(std::ostream& out, const Flags& flags, const Experiment& e) {
  line(out, "document", flags.input);
  line(out, "n", std::to_string(e.n));
  line(out, "presentation", e.presentation_name);
  line(out, "points", std::to_string(e.space->size()));
  std::string cocycle = e.cocycle_kind;
  if (e.partition) {
    cocycle += " (";
    for (std::size_t i = 0; i < e.partition->parts().size(); ++i) {
      cocycle += (i ? "," : "") + std::to_string(e.partition->parts()[i]);
    }
    cocycle += ")";
  }
  if (e.twisted) cocycle += ", twisted";
  if (e.conjugated) cocycle += ", conjugated";
  line(out, "cocycle", cocycle);
  line(out, "boundary", e.boundary->kind());
}

int cmd_eval_borel(const Flags& flags, std::ostream& out) {
  Quadruple<CompleteFlag> quad = [&] {
    if (!flags.input.empty()) return load_flags(read_json_file(flags.input), flags.n);
    if (!flags.n) throw InputError("eval-borel needs --input or --n");
    if (*flags.n < 1 || *flags.n > 12) throw InputError("--n must lie in 1..12");
    const auto t = regular_tetrahedron();
    const int n = *flags.n;
    return Quadruple<CompleteFlag>{veronese(t[0], n), veronese(t[1], n), veronese(t[2], n),
                                   veronese(t[3], n)};
  }();
  const int n = static_cast<int>(quad[0].dim());
  const double tol = flags.tol.value_or(1e-6);
  const auto eval = borel_evaluate(
      {AffineFlag(quad[0]), AffineFlag(quad[1]), AffineFlag(quad[2]), AffineFlag(quad[3])});
  const int sign = maximal_sign(eval.value, n, tol);
  out << "B_n evaluation\n";
  line(out, "input", flags.input.empty() ? "Veronese flags at (0, 1, e^{i pi/3}, inf)" : flags.input);
  line(out, "n", std::to_string(n));
  line(out, "B_n", num(eval.value), in_nu3(eval.value));
  line(out, "bound", num(borel_bound(n)), in_nu3(borel_bound(n)));
  line(out, "active classes", std::to_string(eval.active_classes));
  line(out, "min projection", num(eval.min_projection));
  line(out, "tolerance", num(tol));
  line(out, "verdict", verdict(sign));
  write_output(flags, {{"n", n},
                       {"value", eval.value},
                       {"bound", borel_bound(n)},
                       {"nu3", nu3()},
                       {"active_classes", eval.active_classes},
                       {"min_projection", eval.min_projection},
                       {"maximal", sign}});
  return kExitOk;
}

int cmd_invariant(const Flags& flags, std::ostream& out) {
  Experiment e = load(flags);
  if (flags.tol) e.estimator.maximal_tol = *flags.tol;
  const auto r = empirical_borel_ratio(*e.cocycle, *e.boundary, e.estimator);
  out << "Borel invariant\n";
  describe(out, flags, e);
  line(out, "samples", std::to_string(r.samples));
  line(out, "seed", std::to_string(r.seed));
  line(out, "workers", std::to_string(r.workers));
  line(out, "equivariance", num(r.equivariance_residual));
  line(out, "lambda", num(r.lambda), "beta / Vol(M)");
  line(out, "standard error", num(r.standard_error));
  line(out, "sample min", num(r.sample_min));
  line(out, "sample max", num(r.sample_max));
  line(out, "spread", num(r.sample_max - r.sample_min));
  line(out, "bound", num(r.bound), "C(n+1,3)");
  if (e.volume) {
    line(out, "Vol(M)", num(*e.volume), in_nu3(*e.volume));
    line(out, "beta", num(r.lambda * *e.volume), in_nu3(r.lambda * *e.volume));
  }
  int sign = 0;
  if (r.maximal) sign = 1;
  if (r.lambda <= -r.bound + e.estimator.maximal_tol && r.bound > 0.0) sign = -1;
  line(out, "verdict", verdict(sign));
  line(out, "heuristic", r.heuristic ? "yes (integrand varies; surrogate Haar sampling)" : "no");
  write_output(flags, report_to_json(r, e.volume));
  return kExitOk;
}

int cmd_trivialize(const Flags& flags, std::ostream& out) {
  Experiment e = load(flags);
  if (flags.tol) e.trivialize.verification_tol = *flags.tol;
  if (flags.samples) e.trivialize.certificate_samples = *flags.samples;
  const auto t = trivialize(*e.cocycle, *e.boundary, e.trivialize);
  out << "Trivialization\n";
  describe(out, flags, e);
  if (t.certificate.slices.empty()) {
    line(out, "certificate", "skipped (tabulated boundary map)");
  } else {
    line(out, "certificate", "all slices certified", "sign " + std::to_string(t.certificate.sign()));
  }
  line(out, "branch", to_string(t.branch));
  out << "  slice  alignment residual\n";
  for (std::size_t x = 0; x < t.slice_residuals.size(); ++x) {
    out << "  " << std::left << std::setw(7) << x << num(t.slice_residuals[x]) << "\n";
  }
  line(out, "residual", num(t.residual), "max over generators and points");
  line(out, "tolerance", num(e.trivialize.verification_tol));
  line(out, "verified", t.verified ? "yes" : "no");
  if (!flags.output.empty()) line(out, "f written to", flags.output);
  write_output(flags, trivialization_to_json(t, e));
  return t.verified ? kExitOk : kExitNumerical;
}

int cmd_selftest(const Flags& flags, std::ostream& out) {
  SelftestOptions opt;
  if (flags.n) opt.n_min = opt.n_max = *flags.n;
  if (flags.samples) opt.trials = *flags.samples;
  if (flags.seed) opt.seed = *flags.seed;
  if (flags.workers) opt.workers = *flags.workers;
  const auto rows = run_selftest(opt);
  out << std::left << std::setw(6) << "tag" << std::setw(38) << "check" << std::setw(4) << "n"
      << std::setw(8) << "trials" << std::setw(20) << "worst" << std::setw(10) << "tol"
      << "result\n";
  bool ok = true;
  Json j = Json::array();
  for (const auto& r : rows) {
    out << std::left << std::setw(6) << r.tag << std::setw(38) << r.name << std::setw(4) << r.n
        << std::setw(8) << r.trials << std::setw(20) << num(r.worst) << std::setw(10)
        << num(r.tolerance) << (r.passed ? "PASS" : "FAIL") << "\n";
    ok = ok && r.passed;
    j.push_back({{"tag", r.tag},
                 {"check", r.name},
                 {"n", r.n},
                 {"trials", r.trials},
                 {"worst", r.worst},
                 {"tolerance", r.tolerance},
                 {"passed", r.passed}});
  }
  write_output(flags, j);
  return ok ? kExitOk : kExitNumerical;
}

void add_common(CLI::App* cmd, Flags& flags, bool input_required) {
  auto* input = cmd->add_option("--input", flags.input, "JSON document");
  if (input_required) input->required();
  cmd->add_option("--n", flags.n, "dimension n (overrides the document)")->check(CLI::Range(1, 12));
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--workers", flags.workers, "worker threads")->check(CLI::Range(1u, 256u));
  cmd->add_option("--output", flags.output, "write a JSON report to this file");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Borel invariants and rigidity of measurable cocycles into PSL(n, C)", "borelrig"};
  app.require_subcommand(1);
  Flags flags;

  auto* eval = app.add_subcommand("eval-borel", "evaluate B_n on four flags");
  add_common(eval, flags, false);
  eval->add_option("--tol", flags.tol, "maximality tolerance (default 1e-6)");

  auto* invariant = app.add_subcommand("invariant", "estimate the Borel invariant of a cocycle");
  add_common(invariant, flags, true);
  invariant->add_option("--samples", flags.samples, "number of random tetrahedra")->check(CLI::PositiveNumber);
  invariant->add_option("--tol", flags.tol, "maximality tolerance (default 1e-6)");

  auto* triv = app.add_subcommand("trivialize", "recover f with pi_n = f(gx)^-1 sigma(g,x) f(x)");
  add_common(triv, flags, true);
  triv->add_option("--samples", flags.samples, "tetrahedra per slice for the certificate")->check(CLI::PositiveNumber);
  triv->add_option("--tol", flags.tol, "verification tolerance (default 1e-6)");

  auto* self = app.add_subcommand("selftest", "run the property suites");
  self->add_option("--n", flags.n, "single n (default 2..4)")->check(CLI::Range(2, 8));
  self->add_option("--samples", flags.samples, "trials per check")->check(CLI::PositiveNumber);
  self->add_option("--seed", flags.seed, "random seed");
  self->add_option("--workers", flags.workers, "worker threads")->check(CLI::Range(1u, 256u));
  self->add_option("--output", flags.output, "write the table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (eval->parsed()) return cmd_eval_borel(flags, out);
    if (invariant->parsed()) return cmd_invariant(flags, out);
    if (triv->parsed()) return cmd_trivialize(flags, out);
    return cmd_selftest(flags, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRefusal;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace borelrig
