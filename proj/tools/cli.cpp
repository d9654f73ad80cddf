#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gwmaj/bounds.hpp"
#include "gwmaj/budan.hpp"
#include "gwmaj/errors.hpp"
#include "gwmaj/fixed_points.hpp"
#include "gwmaj/montecarlo.hpp"
#include "gwmaj/simplex.hpp"
#include "gwmaj/uniform.hpp"

namespace gwmaj {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("not an integer: '" + std::string(s) + "'");
  return v;
}

/// "a..b", "a" or "a,b,c".
std::vector<int> parse_range(const std::string& text, int step = 1) {
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = parse_int(std::string_view(text).substr(0, dots));
    const int hi = parse_int(std::string_view(text).substr(dots + 2));
    if (lo > hi) throw UsageError("empty range '" + text + "'");
    for (int n = lo; n <= hi; n += step) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item));
  if (out.empty()) throw UsageError("empty list '" + text + "'");
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) throw UsageError("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list '" + text + "'");
  return out;
}

OffspringDistribution parse_dist(const std::string& text) {
  try {
    return OffspringDistribution::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

struct Common {
  int digits = 17;
  std::string output;
};

class Sink {
 public:
  Sink(const Common& common, std::ostream& fallback) {
    if (!common.output.empty()) {
      file_ = std::make_unique<std::ofstream>(common.output);
      if (!*file_) throw DomainError("cannot open output file " + common.output);
    }
    os_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void emit_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

struct IterateArgs {
  std::string dist = "nary:3";
  std::string p;
  double tol = kDefaultIterationTol;
  int max_steps = kDefaultMaxSteps;
};

int cmd_iterate(const IterateArgs& a, const Common& c, std::ostream& out) {
  const auto dist = parse_dist(a.dist);
  const ProbabilityVector p(parse_doubles(a.p));
  const auto traj = iterate(p, dist, a.max_steps, a.tol);
  Sink sink(c, out);
  write_trajectory_csv(*sink, traj, c.digits);
  return traj.converged ? kExitOk : kExitNotConverged;
}

int cmd_table(const std::string& even, const Common& c, std::ostream& out) {
  const auto ns = parse_range(even, 2);
  for (int n : ns)
    if (n < 2 || n % 2 != 0) throw UsageError("table needs even n >= 2");
  const auto rows = table_rows(ns);
  Sink sink(c, out);
  write_table_csv(*sink, rows, c.digits);
  return kExitOk;
}

struct SimulateArgs {
  std::string dist = "nary:3";
  std::string p;
  int height = 1;
  long long samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  int batches = 8;
  bool compare = false;
};

int cmd_simulate(const SimulateArgs& a, const Common& c, std::ostream& out) {
  SimConfig config{parse_dist(a.dist), a.height, ProbabilityVector(parse_doubles(a.p)), a.samples, a.seed, a.batches};
  const auto result = estimate(config);
  auto j = to_json(config, result);
  bool ok = true;
  if (a.compare) {
    const MajorityMap map(config.dist, config.tail_eps);
    ProbabilityVector exact = config.leaf_probs;
    for (int m = 0; m < config.height; ++m) exact = map(exact);
    std::vector<bool> within;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      within.push_back(std::abs(result.estimates[i] - exact[i]) <= result.radii[i]);
      ok = ok && within.back();
    }
    j["exact"] = std::vector<double>(exact.entries().begin(), exact.entries().end());
    j["within_radius"] = within;
    j["all_within"] = ok;
  }
  Sink sink(c, out);
  (*sink).precision(c.digits);
  emit_json(*sink, j);
  return ok ? kExitOk : kExitData;
}

nlohmann::json report_json(const FixedPointReport& r) {
  nlohmann::json j = {{"source", r.source},
                      {"alpha", r.alpha},
                      {"derivative_at_alpha", r.derivative_at_alpha},
                      {"classification", to_string(r.classification)},
                      {"certificate", to_string(r.certificate)},
                      {"fixed_points", r.fixed_points}};
  if (r.xhat) {
    j["xhat"] = *r.xhat;
    j["f_at_xhat"] = optional_json(r.f_at_xhat);
    j["a"] = r.preimages ? nlohmann::json(r.preimages->a) : nlohmann::json();
    j["b"] = r.preimages ? nlohmann::json(r.preimages->b) : nlohmann::json();
    j["derivative_at_a"] = optional_json(r.derivative_at_a);
    j["derivative_at_b"] = optional_json(r.derivative_at_b);
    j["degenerate"] = r.preimages && r.preimages->degenerate;
  }
  return j;
}

int cmd_certify(const std::string& n_range, const std::string& dist_text, const Common& c, std::ostream& out) {
  auto results = nlohmann::json::array();
  bool all = true;
  if (!dist_text.empty()) {
    const auto map = scalar_map(parse_dist(dist_text));
    const auto report = analyze(map);
    auto j = report_json(report);
    j["parity"] = to_string(map.parity);
    const bool verdict = report.certificate != BasinCertificate::None;
    j["basin"] = verdict ? "[0,1)" : "unknown";
    j["verdict"] = verdict;
    all = verdict;
    results.push_back(j);
  }
  if (!n_range.empty()) {
    for (int n : parse_range(n_range)) {
      if (n < 2) throw UsageError("certify needs n >= 2");
      const auto report = analyze(n);
      auto j = report_json(report);
      const auto gamma = gamma_monotone_certificate(n);
      j["n"] = n;
      j["gamma"] = to_json(gamma);
      const bool verdict = report.certificate != BasinCertificate::None && gamma.verdict;
      j["verdict"] = verdict;
      all = all && verdict;
      results.push_back(j);
    }
  }
  if (results.empty()) throw UsageError("certify needs --n or --dist");
  Sink sink(c, out);
  (*sink).precision(c.digits);
  emit_json(*sink, {{"results", results}, {"all_verdicts", all}});
  return all ? kExitOk : kExitData;
}

struct BoundsArgs {
  std::string n;
  std::string estim;
  std::string dpa;
};

int cmd_bounds(const BoundsArgs& a, const Common& c, std::ostream& out) {
  if (a.n.empty() && a.estim.empty() && a.dpa.empty()) throw UsageError("bounds needs --n, --estim or --dpa");
  std::vector<CheckResult> checks;
  auto append = [&](std::vector<CheckResult> more) { checks.insert(checks.end(), more.begin(), more.end()); };
  if (!a.n.empty())
    for (int n : parse_range(a.n)) append(check_xi_bounds(n));
  if (!a.estim.empty())
    for (int n : parse_range(a.estim)) append(check_alpha_envelope(n, analyze(n).alpha));
  if (!a.dpa.empty())
    for (int n : parse_range(a.dpa))
      if (n % 2 == 0) append(check_dpa_threshold(n));
  const bool ok = all_pass(checks);
  Sink sink(c, out);
  (*sink).precision(c.digits);
  emit_json(*sink, {{"checks", to_json(checks)}, {"all_pass", ok}});
  return ok ? kExitOk : kExitData;
}

struct IdentitiesArgs {
  int n_max = 60;
  int ell_max = 5;
  int recurrences = 30;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_identities(const IdentitiesArgs& a, const Common& c, std::ostream& out) {
  const auto checks = identity_suite(a.n_max, a.ell_max, a.seed);
  bool ok = all_pass(checks);
  auto recurrences = nlohmann::json::array();
  std::vector<Rational> points;
  for (int j = 1; j <= 9; ++j) points.push_back(ratio(j, 10));
  for (int n = 2; n <= a.recurrences; ++n) {
    try {
      const auto r = check_recurrences(n, points);
      recurrences.push_back({{"n", n},
                             {"strange", r.strange},
                             {"telescoped", r.telescoped},
                             {"argmin_residual", r.argmin_residual < 0 ? nlohmann::json() : nlohmann::json(r.argmin_residual)}});
    } catch (const VerificationError& e) {
      ok = false;
      recurrences.push_back({{"n", n}, {"error", e.what()}});
    }
  }
  Sink sink(c, out);
  (*sink).precision(c.digits);
  emit_json(*sink, {{"checks", to_json(checks)}, {"recurrences", recurrences}, {"all_pass", ok}});
  return ok ? kExitOk : kExitData;
}

struct PlotArgs {
  std::string fn;
  std::string geom;
  std::string f3;
  std::string coefficients;
  int grid = 200;
};

int cmd_plotdata(const PlotArgs& a, const Common& c, std::ostream& out) {
  Sink sink(c, out);
  if (!a.coefficients.empty()) {
    const auto ns = parse_range(a.coefficients);
    for (int n : ns)
      if (n < 1) throw UsageError("arity must be at least 1");
    write_polynomial_csv(*sink, ns);
    return kExitOk;
  }
  std::vector<Curve> curves;
  if (!a.fn.empty())
    for (int n : parse_range(a.fn)) {
      if (n < 1) throw UsageError("arity must be at least 1");
      curves.push_back({"f_" + std::to_string(n), [n](double t) { return eval_fn(n, t); }});
    }
  if (!a.geom.empty())
    for (double p : parse_doubles(a.geom)) {
      if (!(p > 0.0 && p < 1.0)) throw UsageError("geometric parameter must lie in (0, 1)");
      std::ostringstream name;
      name << "geom_" << p;
      curves.push_back({name.str(), [p](double t) { return geometric_f_closed(p, t); }});
    }
  if (!a.f3.empty())
    for (int n : parse_range(a.f3)) {
      if (n < 2) throw UsageError("arity must be at least 2");
      curves.push_back({"f3_" + std::to_string(n), [n](double t) { return eval_f3(n, t); }});
    }
  if (curves.empty()) throw UsageError("plotdata needs --fn, --geom, --f3 or --coefficients");
  if (a.grid < 1) throw UsageError("grid must be positive");
  write_curves_csv(*sink, curves, a.grid, c.digits);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Majority dynamics on Galton-Watson trees", "gwmaj"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--digits", common.digits, "Significant digits in numeric output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.add_option("-o,--output", common.output, "Write to this file instead of standard output");

  IterateArgs it;
  auto* iterate_cmd = app.add_subcommand("iterate", "Iterate the simplex map; trajectory as CSV");
  iterate_cmd->add_option("--dist", it.dist, "Offspring law: nary:N, geom:P or pmf:N=Q,...")->capture_default_str();
  iterate_cmd->add_option("--p", it.p, "Initial state p_0,p_1,...,p_k")->required();
  iterate_cmd->add_option("--tol", it.tol, "Max-norm stopping tolerance")->capture_default_str();
  iterate_cmd->add_option("--max-steps", it.max_steps, "Step limit")->check(CLI::NonNegativeNumber)->capture_default_str();

  std::string even;
  auto* table_cmd = app.add_subcommand("table", "Fixed-point table for even arities as CSV");
  table_cmd->add_option("--even", even, "Even arities, e.g. 4..26")->required();

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of the root law as JSON");
  simulate_cmd->add_option("--dist", sim.dist, "Offspring law")->capture_default_str();
  simulate_cmd->add_option("--p", sim.p, "Leaf law p_0,p_1,...,p_k")->required();
  simulate_cmd->add_option("--height", sim.height, "Tree height")->check(CLI::NonNegativeNumber)->capture_default_str();
  simulate_cmd->add_option("--samples", sim.samples, "Number of sampled trees")->check(CLI::PositiveNumber)->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "Random seed")->envname("GWMAJ_SEED")->capture_default_str();
  simulate_cmd->add_option("--batches", sim.batches, "Independent random streams")->check(CLI::PositiveNumber)->capture_default_str();
  simulate_cmd->add_flag("--compare", sim.compare, "Compare with the exact iterate of the simplex map");

  std::string certify_n;
  std::string certify_dist;
  auto* certify_cmd = app.add_subcommand("certify", "Fixed-point and basin certificates as JSON");
  certify_cmd->add_option("--n", certify_n, "Arities, e.g. 3..30");
  certify_cmd->add_option("--dist", certify_dist, "Offspring law");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Central binomial, Wallis and fixed-point envelope checks as JSON");
  bounds_cmd->add_option("--n", bounds.n, "Range for the central binomial and Wallis bounds");
  bounds_cmd->add_option("--estim", bounds.estim, "Range for the fixed-point envelope");
  bounds_cmd->add_option("--dpa", bounds.dpa, "Range for the derivative threshold (even n)");

  IdentitiesArgs ids;
  auto* identities_cmd = app.add_subcommand("identities", "Exact binomial identities and recurrences as JSON");
  identities_cmd->add_option("--n-max", ids.n_max, "Largest n")->check(CLI::NonNegativeNumber)->capture_default_str();
  identities_cmd->add_option("--ell-max", ids.ell_max, "Largest falling-factorial order")->check(CLI::NonNegativeNumber)->capture_default_str();
  identities_cmd->add_option("--recurrences", ids.recurrences, "Largest n for the recurrences")->capture_default_str();
  identities_cmd->add_option("--seed", ids.seed, "Seed for random rational points")->envname("GWMAJ_SEED")->capture_default_str();

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plotdata", "Curves on a grid of [0,1] as CSV");
  plot_cmd->add_option("--fn", plot.fn, "Arities of f_n, e.g. 3,4");
  plot_cmd->add_option("--geom", plot.geom, "Geometric parameters, e.g. 0.5,0.25");
  plot_cmd->add_option("--f3", plot.f3, "Arities of the three-opinion variant");
  plot_cmd->add_option("--coefficients", plot.coefficients, "Dump exact monomial coefficients of f_n instead");
  plot_cmd->add_option("--grid", plot.grid, "Number of grid intervals")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*iterate_cmd) return cmd_iterate(it, common, out);
    if (*table_cmd) return cmd_table(even, common, out);
    if (*simulate_cmd) return cmd_simulate(sim, common, out);
    if (*certify_cmd) return cmd_certify(certify_n, certify_dist, common, out);
    if (*bounds_cmd) return cmd_bounds(bounds, common, out);
    if (*identities_cmd) return cmd_identities(ids, common, out);
    if (*plot_cmd) return cmd_plotdata(plot, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << " (residual tail mass " << e.residual() << ")\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace gwmaj
