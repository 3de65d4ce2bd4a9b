#include "orlicz/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

std::string fmt(const char* what, double v) {
  std::ostringstream os;
  os << what << " = " << v;
  return os.str();
}

}  // namespace

LogPowerForm distort_form(const LogPowerForm& A_form, const LogPowerForm& phi_form, int n) {
  if (n < 1) throw InputError("dimension must be >= 1");
  if (A_form.regime != FormRegime::near_infinity)
    throw InputError("distort_form: the Young function form must be a near-infinity form");
  if (phi_form.regime != FormRegime::near_zero || phi_form.c != 0.0)
    throw InputError("distort_form: the gauge form must be r^a (log 1/r)^b near zero");
  const double al = phi_form.a, be = phi_form.b;
  const bool low = al >= 0 && al < n && (al > 0 || be < 0);
  const bool top = al == n && be >= 0;
  if (!low && !top)
    throw DomainError("distort_form: no closed form for the gauge exponents (" + fmt("alpha", al) +
                      ", " + fmt("beta", be) + ")");
  LogPowerForm out = LogPowerForm::gauge(n, 0.0);
  if (top && be == 0) {
    out.note = "alpha = n, beta = 0";
    return out;
  }
  if (A_form.exponential) {
    const double g = A_form.gamma;
    if (!(g > 0)) throw DomainError("distort_form: exponential family needs gamma > 0");
    if (low) {
      out = LogPowerForm::gauge(al, be - al / g);
      out.note = "exponential, 0 <= alpha < n";
    } else {
      out = LogPowerForm::gauge(n, be, -n / g);
      out.note = "exponential, alpha = n, beta > 0";
    }
    return out;
  }
  const double p = A_form.a, q = A_form.b;
  if (p > n) {
    if (low) {
      const double d = p + al - n;
      out = LogPowerForm::gauge(al * p / d, al * (q - be) / d + be);
      out.note = "power p > n, 0 <= alpha < n";
      if (al == 0 && q != 0)
        out.note += "; flagged: alpha = 0 with q != 0, the log power of A drops out";
    } else {
      out = LogPowerForm::gauge(n, be * (p - n) / p, q * n / p);
      out.note = "power p > n, alpha = n, beta > 0";
    }
    return out;
  }
  if (p == n && q > n - 1) {
    if (al == 0) {
      out = LogPowerForm::gauge(n * be / (be + (n - 1) - q), 0.0);
      out.note = "critical p = n, alpha = 0";
    } else if (low) {
      out = LogPowerForm::gauge(n, q - (n - 1));
      out.note = "critical p = n, 0 < alpha < n";
    } else {
      out = LogPowerForm::gauge(n, 0.0, q - (n - 1));
      out.note = "critical p = n, alpha = n, beta > 0";
    }
    return out;
  }
  throw DomainError("distort_form: Young function outside every case table (" + fmt("p", p) +
                    ", " + fmt("q", q) + ", n = " + std::to_string(n) + ")");
}

ExponentFit fit_exponents(const std::vector<std::pair<double, double>>& samples,
                          bool with_loglog) {
  if (samples.size() < 20) throw InputError("fit_exponents: needs at least 20 samples");
  double lo = kInf, hi = -kInf;
  for (auto [r, v] : samples) {
    if (!(r > 0 && r < 1)) throw InputError("fit_exponents: samples must have 0 < r < 1");
    if (!(v > 0) || !std::isfinite(v)) throw InputError("fit_exponents: values must be positive");
    if (with_loglog && !(r < std::exp(-std::exp(1.0))))
      throw InputError("fit_exponents: log log log 1/r needs r < exp(-e)");
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  if (std::log10(hi / lo) < 4.0 - 1e-9)
    throw InputError("fit_exponents: samples span fewer than 4 decades (ill-conditioned)");
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (auto [r, v] : samples) {
    double l = std::log(1.0 / r);
    std::vector<double> row{1.0, std::log(r), std::log(l)};
    if (with_loglog) row.push_back(std::log(std::log(l)));
    X.push_back(std::move(row));
    y.push_back(std::log(v));
  }
  ExponentFit f;
  auto beta = least_squares(X, y, &f.residual);
  f.intercept = beta[0];
  f.form = LogPowerForm::gauge(beta[1], beta[2], with_loglog ? beta[3] : 0.0);
  return f;
}

Crosscheck crosscheck(const DistortionBundle& b, const LogPowerForm& form,
                      const CrosscheckOptions& opt) {
  if (!(opt.r_lo > 0 && opt.r_hi < 1 && opt.r_lo < opt.r_hi) || opt.samples < 2)
    throw InputError("crosscheck: invalid window");
  // ψ below its first knot is a tail extrapolation, not data
  if (std::log(opt.r_lo) < b.psi_curve()->x_min())
    throw RangeError("crosscheck: window starts below the tabulated range of psi",
                     std::exp(b.psi_curve()->x_min()), 1.0);
  Crosscheck c;
  c.log_r = linspace(std::log(opt.r_lo), std::log(opt.r_hi), static_cast<std::size_t>(opt.samples));
  c.log_ratio.resize(c.log_r.size());
  parallel_for(c.log_r.size(), [&](std::size_t i) {
    c.log_ratio[i] = b.log_psi(c.log_r[i]) - form.log_value(c.log_r[i]);
  });
  double s = 0.0;
  for (double v : c.log_ratio) s += v;
  c.mean = s / static_cast<double>(c.log_ratio.size());
  for (double v : c.log_ratio) c.spread = std::max(c.spread, std::abs(v - c.mean));
  return c;
}

}  // namespace orlicz
