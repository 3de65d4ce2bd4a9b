// One PASS/FAIL line per acceptance criterion. Exit status 0 only if all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/asymptotics.hpp"
#include "orlicz/cli.hpp"
#include "orlicz/distortion.hpp"
#include "orlicz/fractal_lab.hpp"
#include "orlicz/hausdorff_net.hpp"
#include "orlicz/io.hpp"
#include "orlicz/suites.hpp"

using namespace orlicz;
namespace fs = std::filesystem;

namespace tol {
constexpr double kaufman_rel = 0.02;
constexpr double kaufman_seconds = 5;
constexpr double ex2_spread = 0.1;
constexpr double ex2_seconds = 10;
constexpr double ex3_spread = 0.15;
constexpr double ex3_seconds = 10;
constexpr double ex4_spread = 0.1;
constexpr double ex4_seconds = 5;
constexpr double slope_rel = 0.01;
constexpr std::size_t key_pairs = 10'000;
constexpr double key_rel = 1e-8;
constexpr std::size_t theta_points = 1'000;
constexpr double theta_tol = 1e-3;
constexpr std::size_t net_instances = 100;
constexpr double net_seconds = 30;
constexpr double cantor_target = 1.0;
constexpr double cantor_rel = 0.10;
constexpr double cantor_seconds = 20;
constexpr double norm_ratio = 3.0;
constexpr double norm_slack = 1e-3;
constexpr double norm_seconds = 60;
constexpr double energy_factor = 3.0;
constexpr double energy_seconds = 300;
}  // namespace tol

namespace {

// Energy preset: q = 5, ν = 1, δ = 1.5 give σ = 0.4 and μ = 2 + δσ = 2.6.
RandomMapSpec energy_preset() {
  RandomMapSpec s;
  s.n = 2;
  s.q = 5.0;
  s.nu = 1.0;
  s.delta = 1.5;
  s.mu = 2.0 + s.delta * s.sigma();
  s.levels = 5;
  s.seed = 1;
  return s;
}
constexpr std::size_t kEnergySamples = 1000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  if (!o.pass) ++failures;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", secs);
  std::printf("%s [%2d] %s: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(),
              buf);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double fitted_slope(const DistortionBundle& b, double r_lo, double r_hi, int samples = 121) {
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (double x : linspace(std::log(r_lo), std::log(r_hi), samples)) {
    X.push_back({1.0, x});
    y.push_back(b.log_psi(x));
  }
  return least_squares(X, y)[1];
}

Outcome crosscheck_case(const YoungFunction& A, const LogPowerForm& A_form, const GaugeFunction& phi,
                        const LogPowerForm& phi_form, int n, const LogPowerForm& expected,
                        double limit) {
  DistortionBundle b(A, phi, n);
  const LogPowerForm f = distort_form(A_form, phi_form, n);
  const bool form_ok = std::abs(f.a - expected.a) < 1e-12 && std::abs(f.b - expected.b) < 1e-12 &&
                       std::abs(f.c - expected.c) < 1e-12;
  const Crosscheck cc = crosscheck(b, f);
  return {form_ok && cc.spread < limit,
          "form " + f.describe() + ", spread " + fmt(cc.spread) + " < " + fmt(limit)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  report(1, "Kaufman exponent (n,p,alpha)=(2,4,1)", tol::kaufman_seconds, [] {
    DistortionBundle b(YoungFunction::power(4.0), GaugeFunction::power(1.0, 2), 2);
    const double s = fitted_slope(b, 1e-9, 1e-3);
    const double rel = std::abs(s / (4.0 / 3.0) - 1.0);
    return Outcome{rel <= tol::kaufman_rel, "slope " + fmt(s) + ", relative error " + fmt(rel)};
  });

  report(2, "t^2 log^2 with r: psi ~ r^2 log(1/r)", tol::ex2_seconds, [] {
    return crosscheck_case(YoungFunction::power_log(2.0, 2.0), LogPowerForm::young(2.0, 2.0),
                           GaugeFunction::power(1.0, 2), LogPowerForm::gauge(1.0, 0.0), 2,
                           LogPowerForm::gauge(2.0, 1.0), tol::ex2_spread);
  });

  report(3, "exp(t) with r: psi ~ r log(1/r)^-1", tol::ex3_seconds, [] {
    return crosscheck_case(YoungFunction::exponential(1.0), LogPowerForm::young_exp(1.0),
                           GaugeFunction::power(1.0, 2), LogPowerForm::gauge(1.0, 0.0), 2,
                           LogPowerForm::gauge(1.0, -1.0), tol::ex3_spread);
  });

  report(4, "t^4 with log(1/r)^-1: psi ~ phi", tol::ex4_seconds, [] {
    DistortionBundle b(YoungFunction::power(4.0), GaugeFunction::log_power(-1.0, 2), 2);
    // grid head: the deepest half of the tabulated range in log r
    const double lo = std::max(b.psi_curve()->x_min(), Grid{}.lo);
    std::vector<double> d;
    for (double x : linspace(lo, lo / 2.0, 201)) d.push_back(b.log_psi(x) - b.phi().log_value(x));
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= d.size();
    double spread = 0.0;
    for (double v : d) spread = std::max(spread, std::abs(v - mean));
    const auto st = classify_stability(*b.psi_curve(), *b.binv_curve());
    return Outcome{spread < tol::ex4_spread && st.verdict == Stability::stable,
                   "spread " + fmt(spread) + " over log r in [" + fmt(lo) + ", " + fmt(lo / 2) +
                       "], regime " + to_string(st.verdict)};
  });

  const auto corpus = build_corpus(default_instances());
  SuiteOptions opt;
  opt.slope_tol = tol::slope_rel;
  opt.key_pairs = tol::key_pairs;
  opt.key_tol = tol::key_rel;
  opt.theta_points = tol::theta_points;
  opt.theta_tol = tol::theta_tol;
  opt.net_instances = tol::net_instances;

  report(5, "phi = r^n gives psi = r^n", 0, [&] {
    auto r = slope_identity_suite(corpus, opt);
    return Outcome{r.passed() && r.checks >= 5,
                   std::to_string(r.checks) + " families, worst relative slope error " + fmt(r.worst)};
  });

  report(6, "key inequality", 0, [&] {
    auto r = key_inequality_suite(corpus, opt);
    return Outcome{r.passed() && r.failures == 0,
                   std::to_string(r.checks) + " pairs, " + std::to_string(r.failures) +
                       " violations, largest relative gap " + fmt(r.worst)};
  });

  report(7, "scaling-function laws and dichotomy", 0, [&] {
    auto laws = theta_law_suite(corpus, opt);
    auto dich = dichotomy_suite(corpus, opt);
    return Outcome{laws.passed() && dich.passed(),
                   std::to_string(laws.checks) + " law checks, worst " + fmt(laws.worst) + " (tol " +
                       fmt(tol::theta_tol) + "); dichotomy " + std::to_string(dich.checks) +
                       " checks, " + std::to_string(dich.failures) + " failures"};
  });

  report(8, "net measure DP exactness and sandwiches", tol::net_seconds, [&] {
    auto r = net_measure_suite(opt);
    std::string d = std::to_string(r.checks) + " checks, " + std::to_string(r.failures) + " failures";
    for (auto& [k, v] : r.metrics) d += ", " + k + " " + fmt(v);
    return Outcome{r.passed(), d};
  });

  report(9, "Cantor critical log exponent (nu=1, J=5)", tol::cantor_seconds, [] {
    CantorSet c = build_cantor({2, 1.0, 5, 1});
    std::vector<CubeSet> levels;
    for (int j = 1; j <= c.depth(); ++j) levels.push_back(c.level_set(j));
    GaugeFamily fam = [](double theta, double r) { return std::pow(std::log(1.0 / r), -theta); };
    auto fit = dimension_fit(levels, fam, 0.05, 5.0);
    const double rel = std::abs(fit.critical / tol::cantor_target - 1.0);
    return Outcome{!fit.degenerate && rel <= tol::cantor_rel,
                   "critical exponent " + fmt(fit.critical) + ", relative error " + fmt(rel)};
  });

  report(10, "bump norm scaling j=1..4", tol::norm_seconds, [] {
    RandomMapSpec s;  // defaults: n = 2, q = 2, nu = 1
    RandomMap map(s);
    double lo = kInf, hi = 0.0;
    bool aggregate_ok = true;
    std::string agg;
    for (int j = 1; j <= 4; ++j) {
      LevelNorm ln = gradient_norm_estimate(map, j);
      lo = std::min(lo, ln.scaled);
      hi = std::max(hi, ln.scaled);
      aggregate_ok = aggregate_ok && ln.disjoint <= ln.disjoint_bound * (1.0 + tol::norm_slack);
      agg += (j > 1 ? "," : "") + fmt(ln.disjoint / ln.disjoint_bound);
    }
    return Outcome{hi / lo <= tol::norm_ratio && aggregate_ok,
                   "q=2: scaled-norm spread " + fmt(hi / lo) + " <= " + fmt(tol::norm_ratio) +
                       ", aggregate/bound " + agg};
  });

  report(11, "energy series shape (q=5, mu=2+delta*sigma)", tol::energy_seconds, [] {
    const RandomMapSpec s = energy_preset();
    EnergyReport er = energy_integral_mc(s, kEnergySamples);
    RandomMap map(s);
    const double sigma = s.sigma(), mu = s.mu, b = er.b;
    GaugeFn probe = [sigma, mu, b](double r) {
      return std::pow(r, sigma) * std::pow(std::log2(b + 1.0 / r), mu);
    };
    ImageSums im = image_cover_sums(map, probe, 4);
    std::string sums;
    for (const auto& l : im.levels) sums += (sums.empty() ? "" : ",") + fmt(l.sum);
    return Outcome{er.law_spread <= tol::energy_factor && im.trend == Trend::increasing,
                   "contribution/law spread " + fmt(er.law_spread) + " <= " + fmt(tol::energy_factor) +
                       ", image sums " + sums + " (" + to_string(im.trend) + ")"};
  });

  report(12, "fractal determinism", 0, [] {
    const fs::path root = fs::temp_directory_path() / "orlicz_acceptance_fractal";
    fs::remove_all(root);
    fs::create_directories(root / "a");
    fs::create_directories(root / "b");
    const RandomMapSpec s = energy_preset();
    std::ofstream(root / "preset.json")
        << "{\"n\": " << s.n << ", \"q\": " << s.q << ", \"nu\": " << s.nu << ", \"delta\": " << s.delta
        << ", \"mu\": " << format_number(s.mu) << ", \"levels\": " << s.levels
        << ", \"samples_per_pair\": " << kEnergySamples << "}\n";
    std::ostringstream sink;
    for (const char* sub : {"a", "b"}) {
      RunConfig cfg;
      cfg.command = "fractal";
      cfg.config_path = (root / "preset.json").string();
      cfg.out_dir = (root / sub).string();
      cfg.seed = 7;
      if (run(cfg, sink, sink) != kExitOk) return Outcome{false, "fractal run failed: " + sink.str()};
    }
    std::size_t files = 0, same = 0;
    for (const auto& e : fs::directory_iterator(root / "a")) {
      if (e.path().extension() != ".csv") continue;
      ++files;
      if (slurp(e.path()) == slurp(root / "b" / e.path().filename())) ++same;
    }
    return Outcome{files >= 4 && same == files,
                   std::to_string(same) + "/" + std::to_string(files) + " CSV files byte-identical"};
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
