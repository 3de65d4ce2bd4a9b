#include "orlicz/convex_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr double kSearchLimit = 5000.0;

// log A'(τ) at τ = e^x
double log_derivative(const LogCurve& c, double x) {
  return std::log(c.log_slope(x)) + c.log_value(x) - x;
}

void search_range(const LogCurve& c, double& lo, double& hi) {
  if (c.is_table()) {
    lo = c.x_min();
    hi = c.x_max();
  } else {
    lo = std::max(-kSearchLimit, c.x_min());
    hi = std::min(kSearchLimit, c.x_max());
  }
}

void validate(const LogCurve& c, const Grid& g, const std::string& family) {
  std::vector<double> xs;
  if (auto t = dynamic_cast<const HermiteTable*>(&c)) {
    xs = t->xs();
  } else {
    double lo, hi;
    effective_range(c, g, lo, hi);
    for (double x = lo; x <= hi + 1e-12; x += std::max(g.step, 0.25)) xs.push_back(x);
  }
  double prev_d = -kInf;
  for (double x : xs) {
    double y = c.log_value(x);
    double k = c.log_slope(x);
    if (!std::isfinite(y) || !std::isfinite(k)) {
      std::ostringstream os;
      os << family << ": value not finite at t = e^" << x
         << " (infinite-valued Young functions are not supported)";
      throw InputError(os.str());
    }
    if (k < 1.0 - 1e-7) {
      std::ostringstream os;
      os << family << ": A(t)/t decreases near t = e^" << x << " (log-slope " << k << ")";
      throw InputError(os.str());
    }
    double d = std::log(k) + y - x;
    if (d < prev_d - 1e-7) {
      std::ostringstream os;
      os << family << ": not convex near t = e^" << x;
      throw InputError(os.str());
    }
    prev_d = d;
  }
}

}  // namespace

YoungFunction YoungFunction::from_curve(CurvePtr curve, std::string family,
                                        std::vector<std::pair<std::string, double>> params,
                                        const Grid& grid) {
  if (!curve) throw InputError("null curve");
  validate(*curve, grid, family);
  YoungFunction A;
  A.curve_ = std::move(curve);
  A.family_ = std::move(family);
  A.params_ = std::move(params);
  return A;
}

YoungFunction YoungFunction::power(double p, double coef) {
  if (!(p > 1.0)) throw InputError("power family needs p > 1");
  if (!(coef > 0.0)) throw InputError("power family needs a positive coefficient");
  return from_curve(std::make_shared<PowerCurve>(p, std::log(coef)), "power",
                    {{"p", p}, {"coef", coef}});
}

YoungFunction YoungFunction::power_log(double p, double q, double shift) {
  if (!(p > 1.0)) throw InputError("powerlog family needs p > 1");
  return from_curve(std::make_shared<PowerLogCurve>(p, q, shift), "powerlog",
                    {{"p", p}, {"q", q}, {"shift", shift}});
}

YoungFunction YoungFunction::exponential(double gamma, double head) {
  if (!(head >= 1.0)) throw InputError("exp family needs head >= 1");
  return from_curve(std::make_shared<ExpCurve>(gamma, head), "exp",
                    {{"gamma", gamma}, {"head", head}});
}

YoungFunction YoungFunction::table(std::vector<double> log_t, std::vector<double> log_a) {
  return from_curve(HermiteTable::from_data(std::move(log_t), std::move(log_a)), "table");
}

double YoungFunction::operator()(double t) const {
  if (t < 0) throw InputError("Young function evaluated at negative t");
  if (t == 0) return 0.0;
  return std::exp(curve_->log_value(std::log(t)));
}

double YoungFunction::domain_floor() const {
  return curve_->is_table() ? std::exp(curve_->x_min()) : 0.0;
}

double YoungFunction::domain_ceil() const {
  return curve_->x_max() == kInf ? kInf : std::exp(curve_->x_max());
}

double YoungFunction::param(const std::string& name, double fallback) const {
  for (const auto& [k, v] : params_)
    if (k == name) return v;
  return fallback;
}

namespace {

// Legendre transform at target X = log t: returns (Y, slope) of Ã.
std::pair<double, double> legendre_point(const LogCurve& c, double X, double lo, double hi) {
  auto D = [&c](double x) { return log_derivative(c, x); };
  double dlo = D(lo), dhi = D(hi);
  if (!(dlo <= X && X <= dhi))
    throw RangeError("conjugate: supremum not bracketed inside the domain of A",
                     std::exp(dlo), std::exp(dhi));
  BisectionOptions o;
  o.rtol = 0.0;
  o.atol = 1e-14;
  double x = bisect(D, X, lo, hi, o);
  double y = c.log_value(x);
  double k = c.log_slope(x);
  if (!(k > 1.0)) throw RangeError("conjugate: A is linear near the maximiser", 0.0, 0.0);
  // value of τt − A(τ) at τ = e^x; second-order accurate in the residual of x.
  double e = x + X - y;
  double Y = y + std::log(std::expm1(e));
  return {Y, k / (k - 1.0)};
}

}  // namespace

YoungFunction conjugate(const YoungFunction& A, const Grid& grid) {
  const LogCurve& c = *A.curve();
  double lo, hi;
  search_range(c, lo, hi);
  double Xlo = log_derivative(c, lo), Xhi = log_derivative(c, hi);
  std::vector<double> X;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double xi = grid.at(i);
    if (xi >= Xlo && xi <= Xhi) X.push_back(xi);
  }
  if (X.size() < 2) {
    // grid outside the attainable range: fall back to a uniform grid over it
    if (c.is_table()) {
      std::size_t n = std::max<std::size_t>(
          2, static_cast<std::size_t>(std::ceil((Xhi - Xlo) / grid.step)) + 1);
      X = linspace(Xlo, Xhi, n);
    } else {
      throw RangeError("conjugate: requested grid does not meet the attainable range",
                       std::exp(Xlo), std::exp(Xhi));
    }
  }
  std::vector<double> Y(X.size()), K(X.size());
  parallel_for(X.size(), [&](std::size_t i) {
    auto [y, k] = legendre_point(c, X[i], lo, hi);
    Y[i] = y;
    K[i] = k;
  });
  auto table = std::make_shared<HermiteTable>(std::move(X), std::move(Y), std::move(K));
  return YoungFunction::from_curve(table, "conjugate(" + A.family() + ")", {}, grid);
}

double conjugate_value(const YoungFunction& A, double t) {
  if (t < 0) throw InputError("conjugate evaluated at negative t");
  if (t == 0) return 0.0;
  double lo, hi;
  search_range(*A.curve(), lo, hi);
  return std::exp(legendre_point(*A.curve(), std::log(t), lo, hi).first);
}

double inverse(const LogCurve& F, double y, const BisectionOptions& opt) {
  if (y < 0 || !std::isfinite(y)) throw RangeError("inverse: y must be finite and >= 0", 0, kInf);
  if (y == 0) return 0.0;
  double lo, hi;
  search_range(F, lo, hi);
  double flo = std::exp(F.log_value(lo)), fhi = std::exp(F.log_value(hi));
  if (y < flo || y > fhi) throw RangeError("inverse: y outside attainable range", flo, fhi);
  auto f = [&F](double x) { return std::exp(F.log_value(x)); };
  // bisection on log t, with the value-space stopping rule
  double tol = opt.rtol * y + opt.atol;
  double a = lo, b = hi;
  double x = 0.5 * (a + b);
  for (int it = 0; it < opt.max_iter; ++it) {
    x = 0.5 * (a + b);
    double fx = f(x);
    if (std::abs(fx - y) <= tol) return std::exp(x);
    if (fx < y) a = x; else b = x;
    if (!(b - a > 0)) break;
  }
  // bracket is log-space, so a cap of max_iter halvings from ±5000 may end early
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    x = 0.5 * (a + b);
    double fx = f(x);
    if (std::abs(fx - y) <= tol) return std::exp(x);
    if (fx < y) a = x; else b = x;
  }
  return std::exp(0.5 * (a + b));
}

double inverse(const YoungFunction& F, double y, const BisectionOptions& opt) {
  return inverse(*F.curve(), y, opt);
}

IndexEstimate matuszewska_index(const YoungFunction& A, IndexRegime regime,
                                const IndexOptions& opt) {
  const LogCurve& c = *A.curve();
  double lo, hi;
  effective_range(c, opt.grid, lo, hi);
  const double L = opt.max_power * std::log(2.0);
  double w_hi = hi - L;
  if (w_hi <= lo) throw InputError("matuszewska_index: domain too short for the λ grid");
  double w_lo = regime == IndexRegime::global ? lo : std::max(lo, std::max(1.0, w_hi - 30.0));
  if (w_lo >= w_hi) w_lo = std::max(lo, w_hi - 1.0);
  IndexEstimate est;
  est.cap = opt.cap;
  std::size_t steps = static_cast<std::size_t>(std::ceil((w_hi - w_lo) / 0.25)) + 1;
  auto xs = linspace(w_lo, w_hi, steps);
  for (int k = 1; k <= opt.max_power; ++k) {
    double ll = k * std::log(2.0);
    double m = kInf;
    for (double x : xs) m = std::min(m, c.log_value(x + ll) - c.log_value(x));
    est.lambdas.push_back(std::ldexp(1.0, k));
    est.sequence.push_back(m / ll);
  }
  est.value = est.sequence.back();
  est.above_cap = est.value > opt.cap;
  double prev = est.sequence[est.sequence.size() - 2];
  est.converged = !est.above_cap &&
                  std::abs(est.value - prev) <= opt.rel_spread * std::max(1e-12, std::abs(est.value));
  return est;
}

const char* to_string(Truth t) {
  switch (t) {
    case Truth::yes: return "true";
    case Truth::no: return "false";
    default: return "inconclusive";
  }
}

SlopeFit fit_slope(const LogCurve& c, double lo, double hi, int samples) {
  SlopeFit f;
  f.window_lo = lo;
  f.window_hi = hi;
  auto xs = linspace(lo, hi, static_cast<std::size_t>(samples));
  bool use_log = (lo >= 2.0) || (hi <= -2.0);
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (double x : xs) {
    if (use_log) X.push_back({1.0, 1.0 / x});
    else X.push_back({1.0});
    y.push_back(c.log_slope(x));
  }
  auto b = least_squares(X, y);
  f.a = b[0];
  f.b = use_log ? b[1] : 0.0;
  return f;
}

namespace {

Truth decide(double a, double b, double eps_a, double eps_b, bool negative_a_is_yes,
             double b_critical, bool b_below_is_yes) {
  if (a < -eps_a) return negative_a_is_yes ? Truth::yes : Truth::no;
  if (a > eps_a) return negative_a_is_yes ? Truth::no : Truth::yes;
  if (b < b_critical - eps_b) return b_below_is_yes ? Truth::yes : Truth::no;
  if (b > b_critical + eps_b) return b_below_is_yes ? Truth::no : Truth::yes;
  return Truth::inconclusive;
}

}  // namespace

ConditionReport check_condition(const YoungFunction& A, int n, Condition which,
                                const ConditionOptions& opt) {
  if (n < 1) throw InputError("dimension must be >= 1");
  const LogCurve& c = *A.curve();
  double lo, hi;
  effective_range(c, opt.grid, lo, hi);
  ConditionReport rep;
  std::ostringstream os;
  if (which == Condition::positivity_0inf) {
    bool ok = true;
    for (double x = lo; x <= hi; x += 0.25) {
      double y = c.log_value(x);
      if (!std::isfinite(y)) ok = false;
    }
    rep.verdict = ok ? Truth::yes : Truth::no;
    os << "sampled log A on [" << lo << ", " << hi << "]";
    rep.diagnostic = os.str();
    return rep;
  }
  const bool tail = which == Condition::embedding_at_infinity;
  double wlo, whi;
  if (tail) {
    wlo = hi >= 4.0 ? hi / 2 : hi - 1.0;
    whi = hi;
  } else {
    wlo = lo;
    whi = lo <= -4.0 ? lo / 2 : lo + 1.0;
  }
  SlopeFit f = fit_slope(c, wlo, whi);
  if (n >= 2) {
    // integrand in d(log t): exp(G), G' = (n − k)/(n − 1), k ≈ a + b/x
    rep.exponent = (n - f.a) / (n - 1.0);
    rep.log_exponent = -f.b / (n - 1.0);
    if (tail) {
      rep.verdict = decide(rep.exponent, rep.log_exponent, opt.eps_exponent, opt.eps_log,
                           true, -1.0, true);
    } else {
      rep.verdict = decide(rep.exponent, rep.log_exponent, opt.eps_exponent, opt.eps_log,
                           true, -1.0, false);
    }
  } else {
    // log(A(t)/t) ≈ (a − 1) x + b log|x|
    rep.exponent = f.a - 1.0;
    rep.log_exponent = f.b;
    if (tail) {
      rep.verdict = decide(rep.exponent, rep.log_exponent, opt.eps_exponent, opt.eps_log,
                           false, 0.0, false);
    } else {
      rep.verdict = decide(rep.exponent, rep.log_exponent, opt.eps_exponent, opt.eps_log,
                           false, 0.0, true);
    }
  }
  os << (tail ? "tail" : "head") << " window log t in [" << wlo << ", " << whi
     << "]: log-slope of A ~ " << f.a << " + " << f.b << "/log t; integrand exponent "
     << rep.exponent << ", log exponent " << rep.log_exponent;
  rep.diagnostic = os.str();
  return rep;
}

double modular(const FieldSample& f, const YoungFunction& A, double lambda) {
  std::vector<double> terms;
  terms.reserve(f.values.size());
  double ll = std::log(lambda);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i] <= 0) continue;
    terms.push_back(std::log(f.weights[i]) + A.log_value(std::log(f.values[i]) - ll));
  }
  if (terms.empty()) return 0.0;
  return std::exp(log_sum_exp(terms));
}

double luxemburg_norm(const FieldSample& f, const YoungFunction& A, double tol) {
  if (f.weights.size() != f.values.size()) throw InputError("field: weights/values mismatch");
  double vmax = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!std::isfinite(f.values[i]) || f.values[i] < 0)
      throw InputError("field values must be finite and nonnegative");
    if (!(f.weights[i] > 0) || !std::isfinite(f.weights[i]))
      throw InputError("field weights must be positive and finite");
    vmax = std::max(vmax, f.values[i]);
  }
  if (vmax == 0) return 0.0;
  auto M = [&](double u) { return modular(f, A, std::exp(u)); };
  double hi = std::log(vmax), lo = hi;
  while (M(hi) > 1.0) hi += 1.0;
  while (M(lo) <= 1.0) lo -= 1.0;
  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double m = M(mid);
    if (m <= 1.0) {
      hi = mid;
      if (m >= 1.0 - tol) break;
    } else {
      lo = mid;
    }
  }
  return std::exp(hi);
}

}  // namespace orlicz
