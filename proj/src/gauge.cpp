#include "orlicz/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr double kExactLog = 1e-8;

std::vector<double> sample_points(const LogCurve& c, const Grid& g) {
  if (auto t = dynamic_cast<const HermiteTable*>(&c)) return t->xs();
  double lo, hi;
  effective_range(c, g, lo, hi);
  std::vector<double> xs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double x = g.at(i);
    if (x >= lo - 1e-12 && x <= hi + 1e-12) xs.push_back(x);
  }
  return xs;
}

SlopeFit head_fit(const LogCurve& c, const Grid& g) {
  double lo, hi;
  effective_range(c, g, lo, hi);
  double whi = lo <= -4.0 ? lo / 2 : std::min(hi, lo + 1.0);
  return fit_slope(c, lo, whi);
}

ConditionReport head_verdict(const LogCurve& c, int n, bool want_infinite,
                             const GaugeCheckOptions& opt) {
  SlopeFit f = head_fit(c, opt.grid);
  ConditionReport rep;
  // log(φ/r^n) ≈ (a − n) x + b log|x| as x → −∞
  rep.exponent = f.a - n;
  rep.log_exponent = f.b;
  double a = rep.exponent, b = rep.log_exponent;
  if (a < -opt.eps_exponent) {
    rep.verdict = Truth::yes;
  } else if (a > opt.eps_exponent) {
    rep.verdict = Truth::no;
  } else if (b > opt.eps_log) {
    rep.verdict = Truth::yes;
  } else if (b < -opt.eps_log) {
    rep.verdict = Truth::no;
  } else if (std::abs(b) < kExactLog) {
    // ratio tends to a positive constant
    rep.verdict = want_infinite ? Truth::no : Truth::yes;
  } else {
    rep.verdict = Truth::inconclusive;
  }
  std::ostringstream os;
  os << "head window log r in [" << f.window_lo << ", " << f.window_hi
     << "]: log-slope of phi ~ " << f.a << " + " << f.b << "/log r";
  rep.diagnostic = os.str();
  return rep;
}

void check_increasing(const LogCurve& c, const Grid& g, const std::string& family) {
  for (double x : sample_points(c, g)) {
    double y = c.log_value(x), k = c.log_slope(x);
    if (!std::isfinite(y) || !std::isfinite(k) || k < 0) {
      std::ostringstream os;
      os << family << ": gauge not finite and increasing near r = e^" << x;
      throw InputError(os.str());
    }
  }
}

CurvePtr normalized_curve(const CurvePtr& raw, int n, const Grid& g, bool& changed) {
  auto xs = sample_points(*raw, g);
  double max_slope = -kInf;
  for (double x : xs) max_slope = std::max(max_slope, raw->log_slope(x));
  if (max_slope <= n + 1e-12) {
    changed = false;
    return raw;
  }
  changed = true;
  const std::size_t m = xs.size();
  std::vector<double> z(m), y(m), mz(m);
  double run = kInf;
  for (std::size_t i = 0; i < m; ++i) {
    double zi = raw->log_value(xs[i]) - n * xs[i];
    if (zi < run) {
      run = zi;
      mz[i] = raw->log_slope(xs[i]) - n;
    } else {
      mz[i] = 0.0;
    }
    z[i] = run;
  }
  limit_monotone(xs, z, mz);
  std::vector<double> s(m);
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = z[i] + n * xs[i];
    s[i] = mz[i] + n;
  }
  return std::make_shared<HermiteTable>(std::move(xs), std::move(y), std::move(s));
}

}  // namespace

GaugeFunction GaugeFunction::from_curve(CurvePtr raw, int n, std::string family,
                                        std::vector<std::pair<std::string, double>> params,
                                        const Grid& grid) {
  if (!raw) throw InputError("null gauge curve");
  if (n < 1) throw InputError("dimension must be >= 1");
  check_increasing(*raw, grid, family);
  GaugeCheckOptions o;
  o.grid = grid;
  auto rep = head_verdict(*raw, n, false, o);
  if (rep.verdict == Truth::no)
    throw InputError(family + ": liminf phi(r)/r^n = 0 at r -> 0, the measure vanishes (" +
                     rep.diagnostic + ")");
  GaugeFunction g;
  g.raw_ = raw;
  g.n_ = n;
  g.family_ = std::move(family);
  g.params_ = std::move(params);
  g.curve_ = normalized_curve(raw, n, grid, g.changed_);
  return g;
}

GaugeFunction GaugeFunction::power(double alpha, int n) {
  if (!(alpha > 0)) throw InputError("power gauge needs alpha > 0");
  return from_curve(std::make_shared<PowerCurve>(alpha), n, "power", {{"alpha", alpha}});
}

GaugeFunction GaugeFunction::power_log(double alpha, double beta, int n) {
  if (alpha < 0 || (alpha == 0 && !(beta < 0)))
    throw InputError("powerlog gauge needs alpha > 0, or alpha = 0 with beta < 0");
  return from_curve(std::make_shared<GaugePowerLogCurve>(alpha, beta), n, "powerlog",
                    {{"alpha", alpha}, {"beta", beta}});
}

GaugeFunction GaugeFunction::log_power(double beta, int n) {
  if (!(beta < 0)) throw InputError("logpower gauge needs beta < 0");
  return from_curve(std::make_shared<GaugePowerLogCurve>(0.0, beta), n, "logpower",
                    {{"beta", beta}});
}

GaugeFunction GaugeFunction::table(std::vector<double> log_r, std::vector<double> log_phi,
                                   int n) {
  return from_curve(HermiteTable::from_data(std::move(log_r), std::move(log_phi)), n, "table");
}

double GaugeFunction::operator()(double r) const {
  if (r < 0) throw InputError("gauge evaluated at negative r");
  if (r == 0) return 0.0;
  return std::exp(curve_->log_value(std::log(r)));
}

double GaugeFunction::raw_value(double r) const {
  if (r <= 0) return 0.0;
  return std::exp(raw_->log_value(std::log(r)));
}

double GaugeFunction::param(const std::string& name, double fallback) const {
  for (const auto& [k, v] : params_)
    if (k == name) return v;
  return fallback;
}

GaugeFunction normalize_gauge(const GaugeFunction& phi, const Grid& grid) {
  GaugeFunction g = phi;
  bool changed = false;
  g.curve_ = normalized_curve(phi.curve_, phi.n_, grid, changed);
  return g;
}

ConditionReport check_gauge(const GaugeFunction& phi, GaugeCondition which,
                            const GaugeCheckOptions& opt) {
  const LogCurve& c = *phi.raw();
  const int n = phi.dim();
  switch (which) {
    case GaugeCondition::nontrivial:
      return head_verdict(c, n, false, opt);
    case GaugeCondition::not_lebesgue:
      return head_verdict(c, n, true, opt);
    case GaugeCondition::ratio_nonincreasing: {
      ConditionReport rep;
      double worst = -kInf, at = 0.0;
      for (double x : sample_points(c, opt.grid)) {
        double k = c.log_slope(x);
        if (k > worst) {
          worst = k;
          at = x;
        }
      }
      rep.exponent = worst - n;
      rep.verdict = worst <= n + 1e-9 ? Truth::yes : Truth::no;
      std::ostringstream os;
      os << "max log-slope " << worst << " at log r = " << at << " (n = " << n << ")";
      rep.diagnostic = os.str();
      return rep;
    }
  }
  return {};
}

GaugeFunction scale_gauge(const GaugeFunction& phi, double k) {
  if (!(k > 0)) throw InputError("scale factor must be positive");
  GaugeFunction g = phi;
  double dx = std::log(k);
  if (dx == 0.0) return g;
  g.raw_ = std::make_shared<ShiftedCurve>(phi.raw_, dx, 0.0);
  g.curve_ = std::make_shared<ShiftedCurve>(phi.curve_, dx, 0.0);
  g.params_.emplace_back("scale", k);
  return g;
}

}  // namespace orlicz
