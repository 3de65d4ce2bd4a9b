#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orlicz/convex_calculus.hpp"
#include "orlicz/curve.hpp"

namespace orlicz {

/// Gauge φ: increasing, continuous, φ(0) = 0, in dimension n.
/// Stored twice: the raw function and the normalization
/// φ°(r) = r^n inf_{0<t≤r} φ(t)/t^n, which is what evaluation uses.
class GaugeFunction {
 public:
  static GaugeFunction power(double alpha, int n);
  /// r^α (log(e + 1/r))^β
  static GaugeFunction power_log(double alpha, double beta, int n);
  /// (log(e + 1/r))^β, β < 0
  static GaugeFunction log_power(double beta, int n);
  static GaugeFunction table(std::vector<double> log_r, std::vector<double> log_phi, int n);
  static GaugeFunction from_curve(CurvePtr raw, int n, std::string family,
                                  std::vector<std::pair<std::string, double>> params = {},
                                  const Grid& grid = {});

  double operator()(double r) const;
  double log_value(double x) const { return curve_->log_value(x); }
  double log_slope(double x) const { return curve_->log_slope(x); }
  double raw_value(double r) const;

  int dim() const { return n_; }
  const CurvePtr& curve() const { return curve_; }
  const CurvePtr& raw() const { return raw_; }
  /// False when the raw gauge already had φ(r)/r^n non-increasing.
  bool was_normalized() const { return changed_; }
  const std::string& family() const { return family_; }
  const std::vector<std::pair<std::string, double>>& params() const { return params_; }
  double param(const std::string& name, double fallback = 0.0) const;

 private:
  friend GaugeFunction scale_gauge(const GaugeFunction&, double);
  friend GaugeFunction normalize_gauge(const GaugeFunction&, const Grid&);
  GaugeFunction() = default;
  CurvePtr raw_, curve_;
  int n_ = 1;
  bool changed_ = false;
  std::string family_;
  std::vector<std::pair<std::string, double>> params_;
};

/// φ° computed from the raw gauge as a running minimum of log φ − n log r
/// (construction already applies this; exposed for the idempotence check).
GaugeFunction normalize_gauge(const GaugeFunction& phi, const Grid& grid = {});

enum class GaugeCondition { nontrivial, ratio_nonincreasing, not_lebesgue };

struct GaugeCheckOptions {
  Grid grid;
  double eps_exponent = 1e-5;
  double eps_log = 0.02;
};

/// nontrivial:          liminf_{r→0} φ(r)/r^n > 0
/// ratio_nonincreasing: φ(r)/r^n non-increasing (sampled on the raw gauge)
/// not_lebesgue:        φ(r)/r^n → ∞ as r → 0
ConditionReport check_gauge(const GaugeFunction& phi, GaugeCondition which,
                            const GaugeCheckOptions& opt = {});

/// φ_k(t) = φ(k t)
GaugeFunction scale_gauge(const GaugeFunction& phi, double k);

}  // namespace orlicz
