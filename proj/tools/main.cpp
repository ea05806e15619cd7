// Command-line front end: construct surface points, run the series and
// spectrum verifications, emit JSON or CSV reports.
//
// Exit codes: 0 on pass, 1 on numeric failure, 2 on usage or domain errors.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torus/series.hpp"
#include "torus/spectrum.hpp"
#include "torus/version.hpp"

using nlohmann::json;

namespace {

struct CommonOptions {
  double x1 = 3.0;
  double x2 = 3.0;
  double l_delta = 0.0;
  std::string root = "smaller";
  std::string preset;
  double cutoff = 40.0;
  double tol = 1e-6;
  int threads = 1;
  std::string format = "json";
  std::uint64_t seed = 1;
};

torus::Slope parse_slope(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
    throw std::domain_error("slope must be written p/q, e.g. 1/0 or -2/3");
  const std::int64_t p = std::stoll(text.substr(0, slash));
  const std::int64_t q = std::stoll(text.substr(slash + 1));
  return torus::normalize_slope(p, q);
}

torus::SurfacePoint resolve_point(const CommonOptions& opt) {
  if (!opt.preset.empty()) {
    if (opt.preset == "hexagonal") return torus::make_surface_point(3.0, 3.0, 0.0);
    const std::string prefix = "near-cusp:";
    if (opt.preset.rfind(prefix, 0) == 0) {
      const double eps = std::stod(opt.preset.substr(prefix.size()));
      return torus::near_cusp_point(eps, opt.l_delta);
    }
    throw std::domain_error("unknown preset: " + opt.preset);
  }
  const torus::RootChoice root =
      opt.root == "larger" ? torus::RootChoice::larger : torus::RootChoice::smaller;
  return torus::make_surface_point(opt.x1, opt.x2, opt.l_delta, root);
}

json config_json(const CommonOptions& opt) {
  return json{{"x1", opt.x1},       {"x2", opt.x2},         {"ldelta", opt.l_delta},
              {"root", opt.root},   {"preset", opt.preset}, {"cutoff", opt.cutoff},
              {"tol", opt.tol},     {"threads", opt.threads}, {"format", opt.format},
              {"seed", opt.seed}};
}

json report_json(const torus::SeriesReport& r, bool pass) {
  json j{{"value", r.value},
         {"terms_used", r.terms_used},
         {"cutoff_length", r.cutoff_length},
         {"tail_bound", std::isfinite(r.tail_bound) ? json(r.tail_bound) : json("inf")},
         {"pass", pass}};
  if (r.target) j["target"] = *r.target;
  if (r.abs_error_vs_target) j["abs_error_vs_target"] = *r.abs_error_vs_target;
  return j;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Reports are byte-identical for identical configs except for this block.
json run_block(const std::chrono::steady_clock::time_point& started) {
  const auto elapsed = std::chrono::steady_clock::now() - started;
  return json{
      {"timestamp", timestamp_utc()},
      {"timing_ms", std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()}};
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const json& report, const std::string& csv, const CommonOptions& opt) {
  if (opt.format == "csv")
    std::fputs(csv.c_str(), stdout);
  else
    std::printf("%s\n", report.dump(2).c_str());
}

int cmd_verify(const CommonOptions& opt, int random_points) {
  const auto started = std::chrono::steady_clock::now();
  std::vector<torus::SurfacePoint> points{resolve_point(opt)};

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> draw(2.3, 4.5);
  while (static_cast<int>(points.size()) < 1 + random_points) {
    const double x1 = draw(rng), x2 = draw(rng);
    try {
      points.push_back(torus::make_surface_point(x1, x2, opt.l_delta));
    } catch (const std::domain_error&) {
      // inadmissible draw (negative discriminant); resample
    }
  }

  bool all_pass = true;
  json results = json::array();
  std::string csv =
      "identity,x1,x2,value,target,abs_error_vs_target,terms_used,tail_bound,pass\n";
  for (const auto& pt : points) {
    const auto add = [&](const char* name, const torus::SeriesReport& r) {
      const bool pass = *r.abs_error_vs_target < opt.tol;
      all_pass = all_pass && pass;
      json jr = report_json(r, pass);
      jr["identity"] = name;
      jr["point"] = {{"x1", pt.seed.traces[0]}, {"x2", pt.seed.traces[1]},
                     {"x3", pt.seed.traces[2]}, {"ldelta", pt.boundary_length}};
      results.push_back(jr);
      csv += std::string(name) + "," + fmt17(pt.seed.traces[0]) + "," +
             fmt17(pt.seed.traces[1]) + "," + fmt17(r.value) + "," + fmt17(*r.target) + "," +
             fmt17(*r.abs_error_vs_target) + "," + std::to_string(r.terms_used) + "," +
             fmt17(r.tail_bound) + "," + (pass ? "true" : "false") + "\n";
    };
    add("arctan", torus::arctan_sum(pt, opt.cutoff, opt.threads));
    if (std::abs(pt.kappa) < 1e-15) add("mcshane", torus::mcshane_sum(pt, opt.cutoff, opt.threads));
  }

  json report{{"command", "verify"},   {"config", config_json(opt)},
              {"results", results},    {"pass", all_pass},
              {"versions", {{"torus", torus::kVersion}}}, {"run", run_block(started)}};
  emit(report, csv, opt);
  return all_pass ? 0 : 1;
}

int cmd_spectrum(const CommonOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  const torus::SurfacePoint pt = resolve_point(opt);
  auto records = torus::enumerate_geodesics(pt, opt.cutoff, opt.threads);
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::pair(a.length, a.slope) < std::pair(b.length, b.slope);
  });
  const auto summary =
      torus::counting_function(pt, {opt.cutoff / 2.0, opt.cutoff}, opt.threads);
  const auto collar = torus::collar_check(pt, std::min(opt.cutoff, 15.0));
  const auto product = torus::product_lower_bound_check(pt, std::min(opt.cutoff, 15.0));
  const bool pass = collar.empty() && product.empty();

  std::string csv = "slope_p,slope_q,trace,length\n";
  json jrecords = json::array();
  for (const auto& r : records) {
    csv += std::to_string(r.slope.p) + "," + std::to_string(r.slope.q) + "," + fmt17(r.trace) +
           "," + fmt17(r.length) + "\n";
    jrecords.push_back({{"slope_p", r.slope.p},
                        {"slope_q", r.slope.q},
                        {"trace", r.trace},
                        {"length", r.length}});
  }
  json counts = json::array();
  for (const auto& [t, n] : summary.counts) counts.push_back({{"t", t}, {"count", n}});
  json report{{"command", "spectrum"},
              {"config", config_json(opt)},
              {"result",
               {{"systole_length", summary.systole_length},
                {"systole_slope_p", summary.systole_slope.p},
                {"systole_slope_q", summary.systole_slope.q},
                {"counts", counts},
                {"growth_ratio", summary.growth_ratio},
                {"collar_violations", collar.size()},
                {"product_lower_bound_violations", product.size()},
                {"records", jrecords}}},
              {"pass", pass},
              {"versions", {{"torus", torus::kVersion}}},
              {"run", run_block(started)}};
  emit(report, csv, opt);
  return pass ? 0 : 1;
}

int cmd_twist_orbit(const CommonOptions& opt, const std::string& gamma_text,
                    const std::string& gamma_prime_text, std::int64_t window) {
  const auto started = std::chrono::steady_clock::now();
  const torus::SurfacePoint pt = resolve_point(opt);
  const torus::Slope gamma = parse_slope(gamma_text);
  const torus::Slope gamma_prime = parse_slope(gamma_prime_text);
  const auto orbit = torus::twist_orbit(pt, gamma, gamma_prime);
  const auto sum = torus::telescoping_sum(pt, gamma, gamma_prime, window);
  const auto wolpert = torus::wolpert_derivative_check(pt, gamma, gamma_prime);
  const bool pass = *sum.abs_error_vs_target < opt.tol;

  json report{{"command", "twist-orbit"},
              {"config", config_json(opt)},
              {"result",
               {{"gamma", gamma_text},
                {"gamma_prime", gamma_prime_text},
                {"window", window},
                {"perp", orbit.perp},
                {"theta", orbit.theta},
                {"gamma_length", orbit.gamma.length},
                {"wolpert_analytic", wolpert.analytic},
                {"wolpert_finite_diff", wolpert.finite_diff},
                {"telescoping", report_json(sum, pass)}}},
              {"pass", pass},
              {"versions", {{"torus", torus::kVersion}}},
              {"run", run_block(started)}};
  std::string csv = "value,target,abs_error_vs_target,terms_used,tail_bound,pass\n" +
                    fmt17(sum.value) + "," + fmt17(*sum.target) + "," +
                    fmt17(*sum.abs_error_vs_target) + "," + std::to_string(sum.terms_used) +
                    "," + fmt17(sum.tail_bound) + "," + (pass ? "true" : "false") + "\n";
  emit(report, csv, opt);
  return pass ? 0 : 1;
}

int cmd_degenerate(const CommonOptions& opt, double epsilon, const std::string& fname) {
  const auto started = std::chrono::steady_clock::now();
  const auto f = torus::scalar_function_preset(fname, opt.l_delta);
  const auto deg = torus::degeneration_limit(opt.l_delta, epsilon, f);
  const double orbit_err = std::abs(deg.orbit_sech_sum - deg.orbit_sech_target);
  const bool pass = orbit_err < opt.tol;

  json report{{"command", "degenerate"},
              {"config", config_json(opt)},
              {"result",
               {{"f", fname},
                {"epsilon", epsilon},
                {"systole_term", deg.systole_term},
                {"orbit_sum", deg.orbit_sum},
                {"orbit_sech_sum", deg.orbit_sech_sum},
                {"orbit_sech_target", deg.orbit_sech_target},
                {"orbit_abs_error", orbit_err},
                {"series", report_json(deg.report, pass)}}},
              {"pass", pass},
              {"versions", {{"torus", torus::kVersion}}},
              {"run", run_block(started)}};
  std::string csv =
      "epsilon,f,systole_term,orbit_sum,orbit_sech_sum,orbit_sech_target,value,target,pass\n" +
      fmt17(epsilon) + "," + fname + "," + fmt17(deg.systole_term) + "," + fmt17(deg.orbit_sum) +
      "," + fmt17(deg.orbit_sech_sum) + "," + fmt17(deg.orbit_sech_target) + "," +
      fmt17(deg.report.value) + "," + fmt17(*deg.report.target) + "," +
      (pass ? "true" : "false") + "\n";
  emit(report, csv, opt);
  return pass ? 0 : 1;
}

int cmd_variation(const CommonOptions& opt, const std::string& mu_text) {
  const auto started = std::chrono::steady_clock::now();
  const torus::SurfacePoint pt = resolve_point(opt);
  const torus::Slope mu = parse_slope(mu_text);
  const auto var = torus::variation_sum(pt, mu, opt.cutoff);
  const bool pass = std::abs(var.signed_sum.value) < opt.tol;

  json report{{"command", "variation"},
              {"config", config_json(opt)},
              {"result",
               {{"mu", mu_text},
                {"signed_sum", report_json(var.signed_sum, pass)},
                {"abs_sum", var.abs_sum}}},
              {"pass", pass},
              {"versions", {{"torus", torus::kVersion}}},
              {"run", run_block(started)}};
  std::string csv = "value,abs_sum,terms_used,tail_bound,pass\n" + fmt17(var.signed_sum.value) +
                    "," + fmt17(var.abs_sum) + "," + std::to_string(var.signed_sum.terms_used) +
                    "," + fmt17(var.signed_sum.tail_bound) + "," + (pass ? "true" : "false") +
                    "\n";
  emit(report, csv, opt);
  return pass ? 0 : 1;
}

void add_point_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--x1", opt.x1, "trace of the (1,0) basis curve (> 2)");
  cmd->add_option("--x2", opt.x2, "trace of the (0,1) basis curve (> 2)");
  cmd->add_option("--ldelta", opt.l_delta, "boundary geodesic length (0 = cusp)");
  cmd->add_option("--root", opt.root, "third-trace root: smaller|larger")
      ->check(CLI::IsMember({"smaller", "larger"}));
  cmd->add_option("--preset", opt.preset, "point preset: hexagonal | near-cusp:EPS");
  cmd->add_option("--tol", opt.tol, "pass/fail tolerance")->envname("TORUS_TOL");
  cmd->add_option("--threads", opt.threads, "enumeration worker threads")
      ->envname("TORUS_THREADS");
  cmd->add_option("--format", opt.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple closed geodesics and length series on the one-holed torus"};
  app.require_subcommand(1);

  CommonOptions opt;
  int random_points = 0;
  std::string gamma_text = "1/1", gamma_prime_text = "1/0", mu_text = "0/1";
  std::int64_t window = 25;
  double epsilon = 0.01;
  std::string fname = "sech-linear";

  auto* verify = app.add_subcommand("verify", "check the 3pi/2 and McShane identities");
  add_point_options(verify, opt);
  verify->add_option("--cutoff", opt.cutoff, "length cutoff for the partial sum");
  verify->add_option("--random-points", random_points,
                     "also verify at this many seeded random points");
  verify->add_option("--seed", opt.seed, "seed for the random-point suite");

  auto* spectrum = app.add_subcommand("spectrum", "simple length spectrum and checks");
  add_point_options(spectrum, opt);
  spectrum->add_option("--cutoff", opt.cutoff, "length cutoff");

  auto* twist = app.add_subcommand("twist-orbit", "Dehn twist orbit and telescoped angle sum");
  add_point_options(twist, opt);
  twist->add_option("--gamma", gamma_text, "twisting curve, as p/q");
  twist->add_option("--gamma-prime", gamma_prime_text, "orbit seed curve, as p/q");
  twist->add_option("--n", window, "half-window: sum n in [-N, N)");

  auto* degenerate = app.add_subcommand("degenerate", "near-cusp limit of sech series");
  add_point_options(degenerate, opt);
  degenerate->add_option("--epsilon", epsilon, "target systole length");
  degenerate->add_option("--f", fname, "scalar function preset: arctan|sech-linear|mcshane");

  auto* variation = app.add_subcommand("variation", "twist variation of the angle series");
  add_point_options(variation, opt);
  variation->add_option("--cutoff", opt.cutoff, "cutoff on l_alpha + l_beta");
  variation->add_option("--mu", mu_text, "twisting curve for t(mu), as p/q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // The near-cusp orbit sum converges like epsilon^2, so the degenerate
  // command uses a looser default tolerance than the identity checks.
  if (degenerate->parsed() && degenerate->get_option("--tol")->count() == 0 &&
      std::getenv("TORUS_TOL") == nullptr)
    opt.tol = 1e-2;

  try {
    if (verify->parsed()) return cmd_verify(opt, random_points);
    if (spectrum->parsed()) return cmd_spectrum(opt);
    if (twist->parsed()) return cmd_twist_orbit(opt, gamma_text, gamma_prime_text, window);
    if (degenerate->parsed()) return cmd_degenerate(opt, epsilon, fname);
    if (variation->parsed()) return cmd_variation(opt, mu_text);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
