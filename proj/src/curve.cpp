#include "orlicz/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orlicz/errors.hpp"

namespace orlicz {

std::size_t Grid::size() const {
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
}

double Grid::at(std::size_t i) const { return lo + step * static_cast<double>(i); }

double TailModel::value(double x) const {
  double y = y0 + a * (x - x0);
  if (b != 0.0) y += b * (std::log(std::abs(x)) - std::log(std::abs(x0)));
  return y;
}

double TailModel::slope(double x) const { return b != 0.0 ? a + b / x : a; }

namespace {

// Fits slope = a + b/x through two knots on the same side of the origin.
TailModel fit_tail(double xe, double ye, double me, double xp, double mp) {
  TailModel t{xe, ye, me, 0.0};
  bool same_side = (xe > 0 && xp > 0) || (xe < 0 && xp < 0);
  if (same_side && std::abs(xe) >= 2.0 && std::abs(xp) >= 2.0 &&
      std::abs(1.0 / xe - 1.0 / xp) > 1e-12) {
    double b = (me - mp) / (1.0 / xe - 1.0 / xp);
    if (std::abs(b) <= 50.0) {
      t.b = b;
      t.a = me - b / xe;
    }
  }
  return t;
}

}  // namespace

HermiteTable::HermiteTable(std::vector<double> x, std::vector<double> y,
                           std::vector<double> m)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(m)) {
  if (x_.size() < 2 || y_.size() != x_.size() || m_.size() != x_.size())
    throw InputError("table needs at least two knots with matching values and slopes");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]) || !std::isfinite(m_[i]))
      throw InputError("table knot " + std::to_string(i) + " is not finite");
    if (i > 0 && !(x_[i] > x_[i - 1]))
      throw InputError("table abscissae must be strictly increasing (knot " +
                       std::to_string(i) + ")");
  }
  const std::size_t n = x_.size();
  h_ = (x_.back() - x_.front()) / static_cast<double>(n - 1);
  uniform_ = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((x_[i] - x_[i - 1]) - h_) > 1e-9 * std::max(1.0, std::abs(h_))) {
      uniform_ = false;
      break;
    }
  }
  std::size_t k = std::min<std::size_t>(40, n - 1);
  right_ = fit_tail(x_[n - 1], y_[n - 1], m_[n - 1], x_[n - 1 - k], m_[n - 1 - k]);
  left_ = fit_tail(x_[0], y_[0], m_[0], x_[k], m_[k]);
}

std::shared_ptr<HermiteTable> HermiteTable::from_data(std::vector<double> x,
                                                      std::vector<double> y) {
  auto m = pchip_slopes(x, y);
  return std::make_shared<HermiteTable>(std::move(x), std::move(y), std::move(m));
}

std::size_t HermiteTable::locate(double x) const {
  const std::size_t n = x_.size();
  std::size_t i;
  if (uniform_) {
    double f = (x - x_.front()) / h_;
    i = f <= 0 ? 0 : static_cast<std::size_t>(f);
    if (i > n - 2) i = n - 2;
    // guard against rounding at knot boundaries
    while (i > 0 && x < x_[i]) --i;
    while (i < n - 2 && x >= x_[i + 1]) ++i;
  } else {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i > n - 2) i = n - 2;
  }
  return i;
}

double HermiteTable::log_value(double x) const {
  if (x < x_.front()) return left_.value(x);
  if (x > x_.back()) return right_.value(x);
  std::size_t i = locate(x);
  double h = x_[i + 1] - x_[i];
  double t = (x - x_[i]) / h;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * m_[i] +
         (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * m_[i + 1];
}

double HermiteTable::log_slope(double x) const {
  if (x < x_.front()) return left_.slope(x);
  if (x > x_.back()) return right_.slope(x);
  std::size_t i = locate(x);
  double h = x_[i + 1] - x_[i];
  double t = (x - x_[i]) / h;
  double t2 = t * t;
  return ((6 * t2 - 6 * t) * y_[i] + (-6 * t2 + 6 * t) * y_[i + 1]) / h +
         (3 * t2 - 4 * t + 1) * m_[i] + (3 * t2 - 2 * t) * m_[i + 1];
}

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0);
  if (n < 2) return m;
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    m[0] = m[1] = d[0];
    return m;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (d[k - 1] * d[k] <= 0) {
      m[k] = 0.0;
    } else {
      double w1 = 2 * h[k] + h[k - 1];
      double w2 = h[k] + 2 * h[k - 1];
      m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
    }
  }
  auto edge = [](double h0, double h1, double d0, double d1) {
    double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0) return 0.0;
    if (d0 * d1 <= 0 && std::abs(s) > std::abs(3 * d0)) return 3 * d0;
    return s;
  };
  m[0] = edge(h[0], h[1], d[0], d[1]);
  m[n - 1] = edge(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return m;
}

void limit_monotone(const std::vector<double>& x, const std::vector<double>& z,
                    std::vector<double>& m) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double delta = (z[i + 1] - z[i]) / (x[i + 1] - x[i]);
    if (delta == 0.0) {
      m[i] = 0.0;
      m[i + 1] = 0.0;
      continue;
    }
    if (m[i] / delta < 0) m[i] = 0.0;
    if (m[i + 1] / delta < 0) m[i + 1] = 0.0;
    double a = m[i] / delta, b = m[i + 1] / delta;
    double r = a * a + b * b;
    if (r > 9.0) {
      double tau = 3.0 / std::sqrt(r);
      m[i] = tau * a * delta;
      m[i + 1] = tau * b * delta;
    }
  }
}

PowerLogCurve::PowerLogCurve(double p, double q, double shift)
    : p_(p), q_(q), shift_(shift), log_shift_(std::log(shift)) {
  if (!(shift > 1.0)) throw InputError("power-log shift must exceed 1");
}

namespace {
// log(s + e^x) without overflow
double log_shift_plus_exp(double x, double log_s) {
  return x > log_s ? x + std::log1p(std::exp(log_s - x)) : log_s + std::log1p(std::exp(x - log_s));
}
}  // namespace

double PowerLogCurve::log_value(double x) const {
  return p_ * x + q_ * std::log(log_shift_plus_exp(x, log_shift_));
}

double PowerLogCurve::log_slope(double x) const {
  double frac = 1.0 / (1.0 + std::exp(log_shift_ - x));  // t / (shift + t)
  return p_ + q_ * frac / log_shift_plus_exp(x, log_shift_);
}

ExpCurve::ExpCurve(double gamma, double head) : g_(gamma), h_(head) {
  if (!(gamma > 0)) throw InputError("exponential family needs gamma > 0");
  x_cap_ = std::log(1e8) / gamma;
}

double ExpCurve::log_value(double x) const { return h_ * x + std::exp(g_ * x); }

double ExpCurve::log_slope(double x) const { return h_ + g_ * std::exp(g_ * x); }

double GaugePowerLogCurve::log_value(double x) const {
  // L = log(e + e^{-x})
  double L = log_shift_plus_exp(-x, 1.0);
  return a_ * x + b_ * std::log(L);
}

double GaugePowerLogCurve::log_slope(double x) const {
  double L = log_shift_plus_exp(-x, 1.0);
  return a_ - b_ / ((1.0 + std::exp(1.0 + x)) * L);
}

void effective_range(const LogCurve& c, const Grid& g, double& lo, double& hi) {
  if (c.is_table()) {
    lo = c.x_min();
    hi = c.x_max();
  } else {
    lo = std::max(g.lo, c.x_min());
    hi = std::min(g.hi, c.x_max());
  }
}

std::shared_ptr<HermiteTable> tabulate(const LogCurve& c, const Grid& g) {
  double lo, hi;
  effective_range(c, g, lo, hi);
  std::vector<double> x, y, m;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double xi = g.at(i);
    if (xi < lo - 1e-12 || xi > hi + 1e-12) continue;
    x.push_back(xi);
    y.push_back(c.log_value(xi));
    m.push_back(c.log_slope(xi));
  }
  return std::make_shared<HermiteTable>(std::move(x), std::move(y), std::move(m));
}

double solve_log(const LogCurve& c, double Y, const BisectionOptions& opt,
                 const LogCurve* hint) {
  auto f = [&c](double x) { return c.log_value(x); };
  double guess = hint ? hint->log_value(Y) : 0.0;
  if (!std::isfinite(guess)) guess = 0.0;
  double lo = guess - 1e-3, hi = guess + 1e-3;
  double min_x = c.is_table() ? -1e5 : std::max(-1e5, c.x_min());
  double max_x = c.is_table() ? 1e5 : std::min(1e5, c.x_max());
  lo = std::clamp(lo, min_x, max_x);
  hi = std::clamp(hi, min_x, max_x);
  if (!expand_bracket(f, Y, lo, hi, min_x, max_x))
    throw RangeError("log value outside attainable range", f(min_x), f(max_x));
  BisectionOptions o = opt;
  o.atol = opt.rtol;  // in log space a relative tolerance is absolute
  o.rtol = 0.0;
  return bisect(f, Y, lo, hi, o);
}

std::shared_ptr<HermiteTable> inverse_table(const LogCurve& c, const Grid& g) {
  std::shared_ptr<const HermiteTable> t;
  if (auto p = dynamic_cast<const HermiteTable*>(&c)) {
    t = std::shared_ptr<const HermiteTable>(std::shared_ptr<const HermiteTable>{}, p);
  } else {
    t = tabulate(c, g);
  }
  std::vector<double> x, y, m;
  const auto& xs = t->xs();
  const auto& ys = t->ys();
  const auto& ms = t->slopes();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(ms[i] > 0)) throw InputError("inverse of a non-increasing curve");
    if (!x.empty() && !(ys[i] > x.back())) continue;
    x.push_back(ys[i]);
    y.push_back(xs[i]);
    m.push_back(1.0 / ms[i]);
  }
  return std::make_shared<HermiteTable>(std::move(x), std::move(y), std::move(m));
}

}  // namespace orlicz
