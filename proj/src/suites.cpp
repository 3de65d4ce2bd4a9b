#include "orlicz/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/hausdorff_net.hpp"

namespace orlicz {

std::vector<std::pair<std::string, YoungFunction>> young_corpus(int n) {
  (void)n;
  return {
      {"t^4", YoungFunction::power(4.0)},
      {"t^3", YoungFunction::power(3.0)},
      {"t^2 log^2", YoungFunction::power_log(2.0, 2.0)},
      {"t^3 log", YoungFunction::power_log(3.0, 1.0)},
      {"t^2 exp(t)", YoungFunction::exponential(1.0, 2.0)},
  };
}

std::vector<InstanceSpec> default_instances() {
  std::vector<InstanceSpec> out;
  const int n = 2;
  for (auto& [name, A] : young_corpus(n))
    out.push_back({name + " / r^2", A, GaugeFunction::power(n, n), n, std::nullopt});
  out.push_back({"t^4 / r", YoungFunction::power(4.0), GaugeFunction::power(1.0, n), n,
                 Stability::vanishing});
  out.push_back({"t^2 log^2 / r", YoungFunction::power_log(2.0, 2.0), GaugeFunction::power(1.0, n),
                 n, Stability::vanishing});
  out.push_back({"t^2 exp(t) / r", YoungFunction::exponential(1.0, 2.0),
                 GaugeFunction::power(1.0, n), n, Stability::stable});
  out.push_back({"t^4 / log^-1", YoungFunction::power(4.0), GaugeFunction::log_power(-1.0, n), n,
                 Stability::stable});
  return out;
}

std::vector<CorpusEntry> build_corpus(const std::vector<InstanceSpec>& specs) {
  std::vector<std::shared_ptr<const DistortionBundle>> bundles(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    bundles[i] = std::make_shared<DistortionBundle>(specs[i].A, specs[i].phi, specs[i].n);
  });
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < specs.size(); ++i) out.push_back({specs[i], bundles[i]});
  return out;
}

namespace {

void finish(SuiteResult& r) {
  if (r.failures > 0) r.verdict = Truth::no;
  else if (r.checks == 0) r.verdict = Truth::inconclusive;
  else r.verdict = Truth::yes;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng);
}

void note_failure(SuiteResult& r, const std::string& what) {
  ++r.failures;
  if (r.detail.size() < 400) r.detail += (r.detail.empty() ? "" : "; ") + what;
}

}  // namespace

SuiteResult slope_identity_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "slope_identity";
  r.measure = "max relative deviation of the fitted psi exponent from n";
  r.tolerance = opt.slope_tol;
  for (const auto& e : corpus) {
    const auto& phi = e.spec.phi;
    if (phi.family() != "power" || phi.param("alpha") != e.spec.n) continue;
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (double x : linspace(std::log(1e-9), std::log(1e-3), 64)) {
      X.push_back({1.0, x});
      y.push_back(e.bundle->log_psi(x));
    }
    double slope = least_squares(X, y)[1];
    double dev = std::abs(slope / e.spec.n - 1.0);
    ++r.checks;
    r.worst = std::max(r.worst, dev);
    r.metrics.emplace_back(e.spec.name, slope);
    if (dev > opt.slope_tol) note_failure(r, e.spec.name + " slope " + std::to_string(slope));
  }
  finish(r);
  return r;
}

SuiteResult key_inequality_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "key_inequality";
  r.measure = "max relative gap psi(st)/(phi(t) + t^n B(s)) - 1";
  r.tolerance = opt.key_tol;
  r.worst = -kInf;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& e = corpus[i];
    std::mt19937_64 rng(opt.seed * 1'000'003 + i);
    std::uniform_real_distribution<double> us(-20.0, 20.0), ut(-25.0, 5.0);
    std::size_t bad = 0;
    double worst = -kInf;
    for (std::size_t k = 0; k < opt.key_pairs; ++k) {
      double s = std::exp(us(rng)), t = std::exp(ut(rng));
      Gap g = key_inequality_gap(*e.bundle, s, t);
      ++r.checks;
      worst = std::max(worst, g.relative);
      if (!(g.relative <= opt.key_tol)) ++bad;
    }
    r.worst = std::max(r.worst, worst);
    r.metrics.emplace_back(e.spec.name, worst);
    if (bad > 0) {
      r.failures += bad - 1;
      note_failure(r, e.spec.name + ": " + std::to_string(bad) + " violations");
    }
  }
  finish(r);
  return r;
}

SuiteResult bundle_invariant_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "bundle_invariants";
  r.measure = "minimum decades spanned by J";
  r.worst = kInf;
  for (const auto& e : corpus) {
    BundleInvariants inv = check_invariants(*e.bundle, static_cast<unsigned>(opt.seed));
    ++r.checks;
    r.worst = std::min(r.worst, inv.J_decades);
    if (!inv.all()) {
      std::string what = e.spec.name + ":";
      if (!inv.J_increasing) what += " J";
      if (!inv.psi_increasing) what += " psi";
      if (!inv.psi_ratio_nonincreasing) what += " psi/r^n";
      if (!inv.psi_delta2) what += " delta2";
      if (!inv.Jr_inverse_monotone) what += " J_r";
      note_failure(r, what);
    }
  }
  finish(r);
  return r;
}

namespace {

struct ThetaCase {
  const char* label;
  bool use_psi;
  ThetaRegime regime;
};

constexpr ThetaCase kThetaCases[] = {
    {"psi@0", true, ThetaRegime::zero},
    {"psi@all", true, ThetaRegime::global},
    {"Binv@inf", false, ThetaRegime::infinity},
    {"Binv@all", false, ThetaRegime::global},
};

}  // namespace

SuiteResult theta_law_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "theta_laws";
  r.measure = "max violation in log units over the three laws";
  r.tolerance = opt.theta_tol;
  const double tol = opt.theta_tol;
  std::vector<SuiteResult> parts(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    const auto& e = corpus[i];
    SuiteResult& p = parts[i];
    std::mt19937_64 rng(opt.seed * 7'919 + i);
    for (const auto& c : kThetaCases) {
      const LogCurve& h = c.use_psi ? *e.bundle->psi_curve() : *e.bundle->binv_curve();
      const double gamma = c.use_psi ? e.spec.n : 1.0;
      std::size_t fails[3] = {0, 0, 0};
      for (std::size_t k = 0; k < opt.theta_points; ++k) {
        double Lr = log_uniform(rng, 1e-2, 1e2), Ls = log_uniform(rng, 1e-2, 1e2);
        try {
          double up = std::log(theta_value(h, std::exp(Lr), c.regime));
          double lo = std::log(theta_lower(h, std::exp(Lr), c.regime).value);
          double prod = std::log(theta_value(h, std::exp(Lr + Ls), c.regime));
          double ts = std::log(theta_value(h, std::exp(Ls), c.regime));
          double inv = std::log(theta_value(h, std::exp(-Lr), c.regime));
          const double bmin = std::min(0.0, gamma * Lr), bmax = std::max(0.0, gamma * Lr);
          double v30 = std::max({bmin - up, up - bmax, bmin - lo, lo - bmax, 0.0});
          double v32 = std::max(0.0, prod - up - ts);
          double v33 = std::abs(lo + inv);
          p.checks += 3;
          double v[3] = {v30, v32, v33};
          for (int q = 0; q < 3; ++q) {
            p.worst = std::max(p.worst, v[q]);
            if (!(v[q] <= tol)) ++fails[q];
          }
        } catch (const InputError&) {
          ++p.skipped;
        }
      }
      const char* law[3] = {"bounds", "submultiplicative", "reciprocal"};
      for (int q = 0; q < 3; ++q)
        if (fails[q] > 0) {
          p.failures += fails[q] - 1;
          note_failure(p, e.spec.name + " " + c.label + " " + law[q] + ": " +
                              std::to_string(fails[q]));
        }
    }
  });
  for (std::size_t i = 0; i < parts.size(); ++i) {
    r.checks += parts[i].checks;
    r.failures += parts[i].failures;
    r.skipped += parts[i].skipped;
    r.worst = std::max(r.worst, parts[i].worst);
    r.metrics.emplace_back(corpus[i].spec.name, parts[i].worst);
    if (!parts[i].detail.empty()) r.detail += (r.detail.empty() ? "" : "; ") + parts[i].detail;
  }
  finish(r);
  return r;
}

SuiteResult dichotomy_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "dichotomy";
  r.measure = "max violation of the classified behaviour in log units";
  r.tolerance = opt.theta_tol;
  const double tol = opt.theta_tol;
  for (const auto& e : corpus) {
    for (bool use_psi : {true, false}) {
      const LogCurve& h = use_psi ? *e.bundle->psi_curve() : *e.bundle->binv_curve();
      ThetaRegime regime = use_psi ? ThetaRegime::zero : ThetaRegime::infinity;
      std::string label = e.spec.name + (use_psi ? " psi@0" : " Binv@inf");
      ThetaTrend trend = theta_trend(h, regime);
      ++r.checks;
      if (trend == ThetaTrend::inconclusive) {
        note_failure(r, label + " inconclusive");
        continue;
      }
      double half = std::log(theta_value(h, 0.5, regime));
      double worst = 0.0;
      for (int k = 1; k <= 10; ++k) {
        double v = std::log(theta_value(h, std::ldexp(1.0, -k), regime));
        if (trend == ThetaTrend::decaying) worst = std::max(worst, v - k * half);
        else worst = std::max(worst, std::abs(v));
      }
      if (trend == ThetaTrend::decaying) {
        // the limit at 0 must be 0: far below Θ(1/2)
        double deep = std::log(theta_value(h, 1e-12, regime));
        if (!(deep < half - 1.0)) worst = std::max(worst, deep - half + 1.0);
      }
      r.worst = std::max(r.worst, worst);
      if (worst > tol) note_failure(r, label + " " + to_string(trend) + " inconsistent");
    }
    if (e.spec.expected) {
      StabilityReport s = classify_stability(*e.bundle->psi_curve(), *e.bundle->binv_curve());
      ++r.checks;
      r.metrics.emplace_back(e.spec.name + " stable", s.verdict == Stability::stable ? 1.0 : 0.0);
      if (s.verdict != *e.spec.expected)
        note_failure(r, e.spec.name + " classified " + to_string(s.verdict));
    }
  }
  finish(r);
  return r;
}

SuiteResult conjugate_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "conjugate_duality";
  r.measure = "max relative error of the equality case and of the biconjugate";
  r.tolerance = opt.conjugate_tol;
  std::set<std::string> seen;
  std::vector<const YoungFunction*> fams;
  for (const auto& e : corpus) {
    std::ostringstream key;
    key << e.spec.A.family();
    for (auto& [k, v] : e.spec.A.params()) key << ' ' << k << '=' << v;
    if (seen.insert(key.str()).second) fams.push_back(&e.spec.A);
  }
  std::vector<SuiteResult> parts(fams.size());
  parallel_for(fams.size(), [&](std::size_t i) {
    const YoungFunction& A = *fams[i];
    SuiteResult& p = parts[i];
    YoungFunction At = conjugate(A);
    YoungFunction Att = conjugate(At);
    std::mt19937_64 rng(opt.seed * 104'729 + i);
    std::uniform_real_distribution<double> ux(-8.0, 8.0);
    std::size_t young_bad = 0, eq_bad = 0, bi_bad = 0;
    for (std::size_t k = 0; k < opt.young_pairs; ++k) {
      double ls = ux(rng), lt = ux(rng);
      try {
        // s t ≤ A(s) + Ã(t)
        double right = log_sum_exp({A.log_value(ls), At.log_value(lt)});
        ++p.checks;
        if (ls + lt > right + 1e-9) ++young_bad;
        // equality at t = A'(s), where the tables reach
        double la = A.log_value(ls);
        const double slope = A.log_slope(ls);
        double lt_eq = la - ls + std::log(slope);
        if (lt_eq > At.curve()->x_max() || ls > Att.curve()->x_max()) {
          ++p.skipped;
          continue;
        }
        double expected = la + std::log(slope - 1.0);  // s A'(s) − A(s)
        double err = std::abs(std::expm1(At.log_value(lt_eq) - expected));
        ++p.checks;
        p.worst = std::max(p.worst, err);
        if (!(err <= opt.conjugate_tol)) ++eq_bad;
        double bi = std::abs(std::expm1(Att.log_value(ls) - la));
        ++p.checks;
        p.worst = std::max(p.worst, bi);
        if (!(bi <= opt.conjugate_tol)) ++bi_bad;
      } catch (const RangeError&) {
        ++p.skipped;
      }
    }
    std::string name = A.family();
    for (auto& [k, v] : A.params()) name += " " + k + "=" + std::to_string(v);
    if (young_bad) note_failure(p, name + " young " + std::to_string(young_bad));
    if (eq_bad) note_failure(p, name + " equality " + std::to_string(eq_bad));
    if (bi_bad) note_failure(p, name + " biconjugate " + std::to_string(bi_bad));
    p.metrics.emplace_back(name, p.worst);
  });
  for (auto& p : parts) {
    r.checks += p.checks;
    r.failures += p.failures;
    r.skipped += p.skipped;
    r.worst = std::max(r.worst, p.worst);
    r.metrics.insert(r.metrics.end(), p.metrics.begin(), p.metrics.end());
    if (!p.detail.empty()) r.detail += (r.detail.empty() ? "" : "; ") + p.detail;
  }
  finish(r);
  return r;
}

SuiteResult gauge_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt) {
  (void)opt;
  SuiteResult r;
  r.name = "gauge_normalization";
  r.measure = "max log deviation of the renormalized gauge";
  r.tolerance = 1e-6;
  for (const auto& e : corpus) {
    const GaugeFunction& phi = e.spec.phi;
    GaugeFunction again = normalize_gauge(phi);
    const int n = phi.dim();
    double dev = 0.0, ratio_up = 0.0, doubling = 0.0;
    for (double x : linspace(-140.0, 10.0, 601)) {
      dev = std::max(dev, std::abs(again.log_value(x) - phi.log_value(x)));
      ratio_up = std::max(ratio_up, phi.log_slope(x) - n);
      doubling = std::max(doubling, phi.log_value(x + std::log(2.0)) - phi.log_value(x) -
                                        n * std::log(2.0));
    }
    r.checks += 3;
    r.worst = std::max(r.worst, dev);
    if (dev > r.tolerance) note_failure(r, e.spec.name + " not idempotent");
    if (ratio_up > 1e-9) note_failure(r, e.spec.name + " phi/r^n increases");
    if (doubling > 1e-9) note_failure(r, e.spec.name + " doubling");
  }
  finish(r);
  return r;
}

namespace {

GaugeFunction random_gauge(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (rng() % 4) {
    case 0: return GaugeFunction::power(0.3 + (n - 0.3) * u(rng), n);
    case 1: {
      // slope ≈ α − β/log(1/r) stays positive for β < α
      double alpha = 0.3 + (n - 0.6) * u(rng);
      return GaugeFunction::power_log(alpha, -2.0 + (2.0 + 0.9 * alpha) * u(rng), n);
    }
    case 2: return GaugeFunction::log_power(-3.0 + 2.7 * u(rng), n);
    default: {
      // r^n with a wobble in φ/r^n on the scales of the cube sets, so φ° differs from φ
      double freq = 0.5 + u(rng), phase = 6.0 * u(rng);
      double amp = 0.5 * n / (freq + 1.0) * u(rng);
      std::vector<double> xs = linspace(-160.0, 10.0, 3401), ys;
      for (double x : xs) {
        double env = std::exp(-0.5 * ((x + 2.0) / 2.0) * ((x + 2.0) / 2.0));
        ys.push_back(n * x + amp * std::sin(freq * x + phase) * env);
      }
      return GaugeFunction::table(xs, ys, n);
    }
  }
}

CubeSet random_cubes(int dim, int bottom, std::mt19937_64& rng) {
  std::vector<DyadicCube> cubes;
  const int count = 1 + static_cast<int>(rng() % 12);
  for (int k = 0; k < count; ++k) {
    int level = (rng() % 4 == 0) ? static_cast<int>(rng() % (bottom + 1)) : bottom;
    DyadicCube c{level, {}};
    for (int i = 0; i < dim; ++i)
      c.coords.push_back(static_cast<std::int64_t>(rng() % (std::uint64_t{1} << level)));
    cubes.push_back(std::move(c));
  }
  return CubeSet::antichain(dim, std::move(cubes));
}

}  // namespace

SuiteResult net_measure_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "net_measure";
  r.measure = "max measured sandwich constant";
  std::mt19937_64 rng(opt.seed * 6'700'417 + 3);
  std::size_t mismatches = 0, unresolved = 0, uncertified = 0, lower_bad = 0, norm_bad = 0;
  double min_ratio = kInf;
  for (std::size_t k = 0; k < opt.net_instances; ++k) {
    const int dim = 1 + static_cast<int>(rng() % 2);
    const int bottom = 1 + static_cast<int>(rng() % 4);
    CubeSet E = random_cubes(dim, bottom, rng);
    while (E.finest_level() == 0) E = random_cubes(dim, bottom, rng);
    GaugeFunction phi = random_gauge(dim, rng);
    const int top = static_cast<int>(rng() % E.finest_level());
    const double sigma = top == 0 && rng() % 2 ? kInf : std::sqrt(double(dim)) * std::ldexp(1.0, -top);
    const double c_n = opt.c_n > 0 ? opt.c_n : default_cn(dim);

    GaugeFn f = [&phi](double d) { return phi(d); };
    NetMeasure dp = net_premeasure(E, f, sigma);
    auto ex = exhaustive_premeasure(E, f, sigma);
    ++r.checks;
    if (!ex) ++unresolved;
    else if (*ex != dp.value) ++mismatches;

    SandwichReport s = sandwich_check(E, phi, sigma, c_n);
    r.checks += 2;
    if (!s.lower_holds) ++lower_bad;
    if (!s.certified) ++uncertified;
    r.worst = std::max(r.worst, s.measured_constant);

    NormalizationSandwich ns = normalization_sandwich(E, phi, sigma);
    ++r.checks;
    if (!ns.holds) ++norm_bad;
    min_ratio = std::min(min_ratio, ns.ratio);
  }
  r.tolerance = opt.c_n > 0 ? opt.c_n : default_cn(2);
  r.skipped = unresolved;
  r.metrics = {{"dp_mismatches", double(mismatches)},
               {"exhaustive_over_budget", double(unresolved)},
               {"max_sandwich_constant", r.worst},
               {"min_normalization_ratio", min_ratio}};
  if (mismatches) note_failure(r, std::to_string(mismatches) + " DP/exhaustive mismatches");
  if (lower_bad) note_failure(r, std::to_string(lower_bad) + " lower sandwich violations");
  if (uncertified) note_failure(r, std::to_string(uncertified) + " sandwiches not certified");
  if (norm_bad) note_failure(r, std::to_string(norm_bad) + " normalization sandwich violations");
  finish(r);
  if (r.verdict == Truth::yes && unresolved) r.verdict = Truth::inconclusive;
  return r;
}

std::vector<SuiteResult> run_all_suites(const std::vector<CorpusEntry>& corpus,
                                        const SuiteOptions& opt) {
  return {slope_identity_suite(corpus, opt), key_inequality_suite(corpus, opt),
          bundle_invariant_suite(corpus, opt), theta_law_suite(corpus, opt),
          dichotomy_suite(corpus, opt),        conjugate_suite(corpus, opt),
          gauge_suite(corpus, opt),            net_measure_suite(opt)};
}

}  // namespace orlicz
