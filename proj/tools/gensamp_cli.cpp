// gensamp: interpolating functions, reconstruction experiments, error bounds.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gensamp/errors.hpp"
#include "gensamp/experiment.hpp"

namespace {

using namespace gensamp;

struct Options {
  std::string prefilter = "gauss";
  double beta = 2.0;
  int order = 3;
  std::vector<double> lambdas;
  int limit_ell = 0;
  std::string weight;
  double s = 2.0;
  std::optional<double> a;
  std::uint64_t seed = 0;
  std::string window = "-5:5:1001";
  std::string out;
  std::string format = "csv";
  std::string report;
  std::string signal = "random";
  double band = 6.0;
  double smoothness = 0.5;
  int bumps = 16;
  double center = 0.0;
  double width = 1.0;
  double amplitude = 1.0;
  double tau = kTruncationBudget;
  std::vector<long> ns{100, 1000, 10000};
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--prefilter", o.prefilter, "sinc | gauss | bspline | bspline-nc")
      ->check(CLI::IsMember({"sinc", "gauss", "bspline", "bspline-nc"}));
  cmd->add_option("--beta", o.beta, "bandwidth parameter of sinc and gauss");
  cmd->add_option("--order", o.order, "B-spline order m");
  cmd->add_option("--lambda", o.lambdas, "sampling interval (repeatable)");
  cmd->add_option("--limit-ell", o.limit_ell, "use the resonance limit at lambda = 1/ell");
  cmd->add_option("--weight", o.weight, "monomial | gaussexp | sincscaled")
      ->check(CLI::IsMember({"monomial", "gaussexp", "sincscaled"}));
  cmd->add_option("--s", o.s, "weight exponent");
  cmd->add_option("--a", o.a, "gaussexp exponent (default 1/(2 beta^2))");
  cmd->add_option("--seed", o.seed, "seed of the random test signal");
  cmd->add_option("--window", o.window, "evaluation window x0:x1:n");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--signal", o.signal, "random | bump")->check(CLI::IsMember({"random", "bump"}));
  cmd->add_option("--band", o.band, "random signal band");
  cmd->add_option("--smoothness", o.smoothness, "random signal bump width");
  cmd->add_option("--bumps", o.bumps, "random signal bump count");
  cmd->add_option("--center", o.center, "bump center");
  cmd->add_option("--width", o.width, "bump width");
  cmd->add_option("--amplitude", o.amplitude, "bump amplitude");
  cmd->add_option("--tau", o.tau, "truncation budget of the reconstruction series");
}

ExperimentConfig resolve(const Options& o) {
  ExperimentConfig c;
  c.prefilter = parse_prefilter(o.prefilter, o.beta, o.order);
  c.lambdas = o.lambdas;
  if (o.limit_ell > 0) c.limit_ell = o.limit_ell;
  std::string weight = o.weight;
  if (weight.empty()) {
    if (o.prefilter == "gauss")
      weight = "gaussexp";
    else if (o.prefilter == "sinc")
      weight = "sincscaled";
    else
      weight = "monomial";
  }
  double s = o.s;
  if (weight == "sincscaled" && o.weight.empty()) s = 4.0;
  c.weight = parse_weight(weight, s, o.a, c.prefilter);
  if (o.signal == "bump")
    c.signal = GaussianBump{o.center, o.width, o.amplitude};
  else
    c.signal = RandomSpectrum{o.seed, o.band, o.smoothness, o.bumps};
  validate(c.signal);
  c.window = parse_window(o.window);
  c.tau_trunc = o.tau;
  c.seed = o.seed;
  return c;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw PreconditionError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
  std::ofstream file_;
};

double first_lambda(const ExperimentConfig& c) {
  if (c.lambdas.empty()) throw PreconditionError("--lambda is required");
  return c.lambdas.front();
}

int cmd_interp(const Options& o) {
  const ExperimentConfig c = resolve(o);
  std::vector<InterpTrace> traces;
  for (double lambda : c.lambdas) traces.push_back(interp_trace(c.prefilter, lambda, c.window));
  if (c.limit_ell) traces.push_back(interp_limit_trace(c.prefilter, *c.limit_ell, c.window));
  if (traces.empty()) throw PreconditionError("interp needs --lambda or --limit-ell");

  Output out(o.out);
  if (o.format == "json") {
    nlohmann::json j;
    j["config"] = to_json(c);
    for (const auto& t : traces)
      j["traces"].push_back({{"name", t.name},
                             {"lambda", t.lambda},
                             {"x", t.x},
                             {"phi_int", t.phi_int},
                             {"xi", t.xi},
                             {"phi_int_hat", t.phi_int_hat}});
    out.stream() << j.dump(2) << '\n';
    return 0;
  }
  auto& os = out.stream();
  os << "trace,lambda,domain,abscissa,value\n";
  for (const auto& t : traces) {
    for (std::size_t i = 0; i < t.x.size(); ++i)
      os << t.name << ',' << num(t.lambda) << ",x," << num(t.x[i]) << ',' << num(t.phi_int[i]) << '\n';
    for (std::size_t i = 0; i < t.xi.size(); ++i)
      os << t.name << ',' << num(t.lambda) << ",xi," << num(t.xi[i]) << ',' << num(t.phi_int_hat[i]) << '\n';
  }
  return 0;
}

nlohmann::json run_report(const ExperimentConfig& c, const ReconstructionRun& run) {
  const nlohmann::json b = to_json(run.bound);
  return {{"config", to_json(c)},
          {"lambda", run.lambda},
          {"m_w", b["m_w"]},
          {"series_value", b["series_value"]},
          {"bound_sq", b["bound_sq"]},
          {"critical_lambda", b["critical_lambda"]},
          {"sup_rel", run.error.sup_rel},
          {"norm", run.norm},
          {"lattice_mismatch_max", run.lattice_mismatch_max},
          {"terms_used", b["terms_used"]},
          {"remainder", b["remainder"]}};
}

int cmd_reconstruct(const Options& o) {
  const ExperimentConfig c = resolve(o);
  const double lambda = c.limit_ell ? 1.0 / *c.limit_ell : first_lambda(c);
  const ReconstructionRun run =
      run_reconstruction(c.prefilter, lambda, c.limit_ell, c.signal, c.window, c.weight, c.tau_trunc);
  const nlohmann::json report = run_report(c, run);
  if (!o.report.empty()) {
    Output r(o.report);
    r.stream() << report.dump(2) << '\n';
  }
  Output out(o.out);
  if (o.format == "json") {
    out.stream() << report.dump(2) << '\n';
    return 0;
  }
  auto& os = out.stream();
  os << "x,re_g,re_g_tilde,abs_err\n";
  for (std::size_t i = 0; i < run.xs.size(); ++i)
    os << num(run.xs[i]) << ',' << num(run.g[i].real()) << ',' << num(run.g_tilde[i].real()) << ','
       << num(run.error.per_point[i]) << '\n';
  return 0;
}

int cmd_sweep(const Options& o) {
  const ExperimentConfig c = resolve(o);
  const auto rows = run_sweep(c);
  bool all_ok = true;
  Output out(o.out);
  if (o.format == "json") {
    nlohmann::json j;
    j["config"] = to_json(c);
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
      all_ok = all_ok && r.ok;
      nlohmann::json row{{"lambda", r.lambda}, {"status", r.status}};
      if (r.ok) {
        row["sup_rel"] = r.sup_rel;
        row["bound_sqrt"] = r.bound_sqrt;
        row["critical_lambda"] = r.critical_lambda;
      }
      j["rows"].push_back(row);
    }
    out.stream() << j.dump(2) << '\n';
    return all_ok ? 0 : 1;
  }
  auto& os = out.stream();
  os << "lambda,sup_rel,bound_sqrt,critical_lambda,status\n";
  for (const auto& r : rows) {
    all_ok = all_ok && r.ok;
    std::string status = r.status;
    for (char& ch : status)
      if (ch == ',' || ch == '\n') ch = ';';
    os << num(r.lambda) << ',' << num(r.sup_rel) << ',' << num(r.bound_sqrt) << ',' << num(r.critical_lambda) << ','
       << status << '\n';
  }
  return all_ok ? 0 : 1;
}

int cmd_walter(const Options& o) {
  const auto rows = walter_rows(o.order, o.ns);
  const double centered = centered_denominator_at_pi(o.order);
  Output out(o.out);
  if (o.format == "json") {
    nlohmann::json j;
    j["order"] = o.order;
    j["centered_denominator"] = centered;
    for (const auto& r : rows)
      j["rows"].push_back({{"N", r.N}, {"partial_sum_im", r.partial_sum_imag}, {"remainder_bound", r.remainder_bound}});
    out.stream() << j.dump(2) << '\n';
    return 0;
  }
  auto& os = out.stream();
  os << "N,partial_sum_im,remainder_bound,centered_denominator\n";
  for (const auto& r : rows)
    os << r.N << ',' << num(r.partial_sum_imag) << ',' << num(r.remainder_bound) << ',' << num(centered) << '\n';
  return 0;
}

int cmd_bounds(const Options& o) {
  const ExperimentConfig c = resolve(o);
  const BoundReport r = general_bound(c.prefilter, c.weight, first_lambda(c));
  nlohmann::json j = to_json(r);
  j["config"] = to_json(c);
  Output out(o.out);
  out.stream() << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized sampling: interpolating functions, reconstruction and error bounds"};
  app.set_config("--config", "", "key = value configuration file; flags override it");
  app.require_subcommand(1);

  Options o;
  auto* interp = app.add_subcommand("interp", "interpolating function in time and frequency");
  auto* recon = app.add_subcommand("reconstruct", "filter, sample and reconstruct a test signal");
  auto* sweep = app.add_subcommand("sweep", "reconstruction error against the bound over lambda");
  auto* walter = app.add_subcommand("walter", "partial sums of the odd-order non-centered denominator");
  auto* bounds = app.add_subcommand("bounds", "error bound report");
  for (auto* cmd : {interp, recon, sweep, walter, bounds}) add_common(cmd, o);
  recon->add_option("--report", o.report, "write the JSON report to this file");
  walter->add_option("--n", o.ns, "partial-sum index (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*interp) return cmd_interp(o);
    if (*recon) return cmd_reconstruct(o);
    if (*sweep) return cmd_sweep(o);
    if (*walter) return cmd_walter(o);
    if (*bounds) return cmd_bounds(o);
  } catch (const std::exception& e) {
    std::cerr << "gensamp: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 0;
}
