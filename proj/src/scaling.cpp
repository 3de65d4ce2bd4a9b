#include "orlicz/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

double LogPowerForm::log_value(double x) const {
  if (regime == FormRegime::near_zero) {
    double l = -x;
    double v = a * x;
    if (b != 0.0) v += b * std::log(l);
    if (c != 0.0) v += c * std::log(std::log(l));
    return v;
  }
  if (exponential) return std::exp(gamma * x);
  double v = a * x;
  if (b != 0.0) v += b * std::log(x);
  if (c != 0.0) v += c * std::log(std::log(x));
  return v;
}

std::string LogPowerForm::describe() const {
  std::ostringstream os;
  if (regime == FormRegime::near_zero) {
    os << "r^" << a;
    if (b != 0.0) os << " (log 1/r)^" << b;
    if (c != 0.0) os << " (log log 1/r)^" << c;
  } else if (exponential) {
    os << "exp(t^" << gamma << ")";
  } else {
    os << "t^" << a;
    if (b != 0.0) os << " (log t)^" << b;
    if (c != 0.0) os << " (log log t)^" << c;
  }
  return os.str();
}

MonotoneMap::MonotoneMap(CurvePtr curve, std::string name, Validity valid, const Grid& grid)
    : curve_(std::move(curve)), name_(std::move(name)), valid_(valid) {
  if (!curve_) throw InputError("null curve");
  hint_ = inverse_table(*curve_, grid);
}

MonotoneMap MonotoneMap::from_young(const YoungFunction& A, std::string name) {
  return MonotoneMap(A.curve(), std::move(name));
}

MonotoneMap MonotoneMap::inverse_of(const YoungFunction& B, std::string name) {
  return MonotoneMap(inverse_table(*B.curve(), Grid{}), std::move(name));
}

double MonotoneMap::operator()(double t) const {
  if (t < 0) throw InputError(name_ + ": negative argument");
  if (t == 0) return 0.0;
  return std::exp(curve_->log_value(std::log(t)));
}

double MonotoneMap::log_inverse(double Y) const { return solve_log(*curve_, Y, {}, hint_.get()); }

double MonotoneMap::inverse(double y) const {
  if (y < 0) throw InputError(name_ + ": inverse of a negative value");
  if (y == 0) return 0.0;
  return std::exp(log_inverse(std::log(y)));
}

namespace {

const double kLn2 = std::numbers::ln2;

struct LimitLaw {
  bool ok = false;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double residual = kInf;  // max |slope − law| on the fit window
  // slope law: a + b/x + c/x² + d log|x|/x²
  double slope(double x) const { return a + b / x + (c + d * std::log(std::abs(x))) / (x * x); }
  // log h(rt)/h(t) predicted at x = log t for L = log r
  double ratio(double x, double L) const {
    return a * L + b * (std::log(std::abs(x + L)) - std::log(std::abs(x))) + primitive(x + L) -
           primitive(x);
  }
  double primitive(double x) const {
    // ∫ (c + d log|x|)/x² dx
    return -(c + d * (std::log(std::abs(x)) + 1.0)) / x;
  }
};

// Fits the slope law on [lo, hi] (|x| ≥ 2 throughout); with `slowly_varying`
// the constant term is pinned to 0.
LimitLaw fit_law(const LogCurve& h, double lo, double hi, bool slowly_varying) {
  LimitLaw law;
  if (!(hi - lo > 1.0) || (lo < 0 && hi > 0) || std::min(std::abs(lo), std::abs(hi)) < 2.0)
    return law;
  std::vector<std::vector<double>> X;
  std::vector<double> xs = linspace(lo, hi, 128), y;
  for (double x : xs) {
    std::vector<double> row{1.0 / x, 1.0 / (x * x), std::log(std::abs(x)) / (x * x)};
    if (!slowly_varying) row.insert(row.begin(), 1.0);
    X.push_back(std::move(row));
    y.push_back(h.log_slope(x));
  }
  auto beta = least_squares(X, y);
  law.ok = true;
  std::size_t k = 0;
  law.a = slowly_varying ? 0.0 : beta[k++];
  law.b = beta[k++];
  law.c = beta[k++];
  law.d = beta[k++];
  law.residual = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    law.residual = std::max(law.residual, std::abs(y[i] - law.slope(xs[i])));
  return law;
}

double log_ratio(const LogCurve& h, double x, double L) {
  double v = h.log_value(x + L) - h.log_value(x);
  if (!std::isfinite(v)) throw InputError("theta: h is not positive and finite where sampled");
  return v;
}

// One-sided limit (zero: sign = -1, infinity: sign = +1).
ThetaResult one_sided(const LogCurve& h, double L, int sign, bool upper, const ThetaOptions& opt) {
  double xlo, xhi;
  effective_range(h, opt.grid, xlo, xhi);
  ThetaResult res;
  for (int k = (opt.depth + 1) / 2; k <= opt.depth; ++k) {
    double x = sign * k * kLn2;
    if (x < xlo || x > xhi || x + L < xlo || x + L > xhi) continue;
    res.log_t.push_back(x);
    res.log_ratio.push_back(log_ratio(h, x, L));
  }
  if (res.log_t.empty())
    throw InputError("theta: curve is not sampled deep enough for this regime and r");
  auto it = upper ? std::max_element(res.log_ratio.begin(), res.log_ratio.end())
                  : std::min_element(res.log_ratio.begin(), res.log_ratio.end());
  std::size_t i = static_cast<std::size_t>(it - res.log_ratio.begin());
  res.raw = std::exp(*it);
  res.location = res.log_t[i];
  res.value = res.raw;

  // fit window: from the shallowest sample to twice the sampling depth
  double xs = sign * ((opt.depth + 1) / 2) * kLn2;
  double xd = sign * 2 * opt.depth * kLn2;
  double wlo = sign < 0 ? std::max(xlo, xd) : xs;
  double whi = sign < 0 ? xs : std::min(xhi, xd);
  auto misfit = [&](const LimitLaw& law) {
    double m = 0.0;
    for (std::size_t j = 0; j < res.log_t.size(); ++j)
      m = std::max(m, std::abs(res.log_ratio[j] - law.ratio(res.log_t[j], L)));
    return m;
  };
  LimitLaw law = fit_law(h, wlo, whi, false);
  if (law.ok) {
    // index 0 wins whenever it explains the slopes; an increasing h
    // cannot have a negative index
    LimitLaw zero = fit_law(h, wlo, whi, true);
    bool increasing = true;
    for (double x : linspace(wlo, whi, 32)) increasing = increasing && h.log_slope(x) >= 0;
    if (zero.residual <= opt.slope_tol) law = zero;
    else if (increasing && law.a < 0) law.ok = false;
    res.residual = law.residual;
    res.residual_zero = zero.residual;
    if (law.ok && law.residual <= opt.slope_tol) {
      res.extrapolated = true;
      res.exponent = law.a;
      res.value = std::exp(law.a * L);
    }
    res.misfit = misfit(law);
  }
  return res;
}

ThetaResult global_extreme(const LogCurve& h, double L, bool upper, const ThetaOptions& opt) {
  double xlo, xhi;
  effective_range(h, opt.grid, xlo, xhi);
  ThetaResult res;
  const double pick = upper ? 1.0 : -1.0;
  for (int k = -opt.depth; k <= opt.depth; ++k) {
    double x = k * kLn2;
    if (x < xlo || x > xhi || x + L < xlo || x + L > xhi) continue;
    res.log_t.push_back(x);
    res.log_ratio.push_back(log_ratio(h, x, L));
  }
  if (res.log_t.empty()) throw InputError("theta: no admissible t for this r");
  std::size_t best = 0;
  for (std::size_t j = 1; j < res.log_ratio.size(); ++j)
    if (pick * res.log_ratio[j] > pick * res.log_ratio[best]) best = j;
  double bx = res.log_t[best], bv = res.log_ratio[best];
  // golden-section refinement between the neighbouring samples
  double a = best > 0 ? res.log_t[best - 1] : bx;
  double b = best + 1 < res.log_t.size() ? res.log_t[best + 1] : bx;
  if (b > a) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    auto F = [&](double x) { return pick * log_ratio(h, x, L); };
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = F(c), fd = F(d);
    for (int it = 0; it < 80 && b - a > 1e-10; ++it) {
      if (fc > fd) {
        b = d; d = c; fd = fc; c = b - g * (b - a); fc = F(c);
      } else {
        a = c; c = d; fc = fd; d = a + g * (b - a); fd = F(d);
      }
    }
    double xm = 0.5 * (a + b), vm = log_ratio(h, xm, L);
    if (pick * vm > pick * bv) {
      bx = xm;
      bv = vm;
    }
  }
  res.raw = std::exp(bv);
  res.location = bx;
  double v = bv;
  for (int sign : {-1, 1}) {
    try {
      ThetaResult end = one_sided(h, L, sign, upper, opt);
      double ev = std::log(end.value);
      if (pick * ev > pick * v) {
        v = ev;
        res.extrapolated = end.extrapolated;
        res.exponent = end.exponent;
        res.location = sign * kInf;
      }
    } catch (const InputError&) {
      // that end is not sampled for this r
    }
  }
  res.value = std::exp(v);
  return res;
}

ThetaResult theta_impl(const LogCurve& h, double r, ThetaRegime regime, bool upper,
                       const ThetaOptions& opt) {
  if (!(r > 0) || !std::isfinite(r)) throw InputError("theta: r must be positive and finite");
  double L = std::log(r);
  switch (regime) {
    case ThetaRegime::zero: return one_sided(h, L, -1, upper, opt);
    case ThetaRegime::infinity: return one_sided(h, L, 1, upper, opt);
    case ThetaRegime::global: return global_extreme(h, L, upper, opt);
  }
  return {};
}

}  // namespace

ThetaResult theta(const LogCurve& h, double r, ThetaRegime regime, const ThetaOptions& opt) {
  return theta_impl(h, r, regime, true, opt);
}

ThetaResult theta_lower(const LogCurve& h, double r, ThetaRegime regime,
                        const ThetaOptions& opt) {
  return theta_impl(h, r, regime, false, opt);
}

double theta_right(const LogCurve& h, double r, ThetaRegime regime, const ThetaOptions& opt) {
  return theta(h, r * (1.0 + opt.eps_right), regime, opt).value;
}

double xi(const LogCurve& psi, const LogCurve& b_inv, double r, const ThetaOptions& opt) {
  if (!(r > 0)) throw InputError("xi: r must be positive");
  double inner = theta(b_inv, 1.0 / r, ThetaRegime::global, opt).value;
  return r * theta_right(psi, inner, ThetaRegime::global, opt);
}

const char* to_string(ThetaTrend t) {
  switch (t) {
    case ThetaTrend::decaying: return "decaying";
    case ThetaTrend::identically_one: return "identically_one";
    default: return "inconclusive";
  }
}

ThetaTrend theta_trend(const LogCurve& h, ThetaRegime regime, const ThetaOptions& opt) {
  double v = theta(h, 0.5, regime, opt).value;
  if (v <= 1.0 - 1e-3) return ThetaTrend::decaying;
  if (v >= 1.0 - 1e-6) return ThetaTrend::identically_one;
  return ThetaTrend::inconclusive;
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::vanishing: return "vanishing";
    case Stability::stable: return "stable";
    default: return "inconclusive";
  }
}

StabilityReport classify_stability(const LogCurve& psi, const LogCurve& b_inv,
                                   const ThetaOptions& opt) {
  StabilityReport rep;
  rep.psi_half = theta(psi, 0.5, ThetaRegime::zero, opt).value;
  rep.binv_half = theta(b_inv, 0.5, ThetaRegime::infinity, opt).value;
  rep.psi_zero = theta_trend(psi, ThetaRegime::zero, opt);
  rep.binv_inf = theta_trend(b_inv, ThetaRegime::infinity, opt);
  if (rep.psi_zero == ThetaTrend::decaying && rep.binv_inf == ThetaTrend::decaying)
    rep.verdict = Stability::vanishing;
  else if (rep.psi_zero == ThetaTrend::identically_one ||
           rep.binv_inf == ThetaTrend::identically_one)
    rep.verdict = Stability::stable;
  else
    rep.verdict = Stability::inconclusive;
  return rep;
}

}  // namespace orlicz
