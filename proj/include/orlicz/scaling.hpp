#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlicz/convex_calculus.hpp"
#include "orlicz/curve.hpp"
#include "orlicz/log_power_form.hpp"

namespace orlicz {

/// Increasing positive function on (0, ∞) held in log-log form, with an
/// inverse by bracketed bisection (seeded from a swapped-axes table).
class MonotoneMap {
 public:
  enum class Validity { near_zero, near_infinity, everywhere };

  MonotoneMap(CurvePtr curve, std::string name, Validity valid = Validity::everywhere,
              const Grid& grid = {});
  static MonotoneMap from_young(const YoungFunction& A, std::string name);
  /// B⁻¹ as a map.
  static MonotoneMap inverse_of(const YoungFunction& B, std::string name);

  double operator()(double t) const;
  double inverse(double y) const;
  double log_value(double x) const { return curve_->log_value(x); }
  double log_slope(double x) const { return curve_->log_slope(x); }
  double log_inverse(double Y) const;

  const CurvePtr& curve() const { return curve_; }
  const std::string& name() const { return name_; }
  Validity validity() const { return valid_; }
  std::optional<LogPowerForm> form;

 private:
  CurvePtr curve_;
  std::shared_ptr<HermiteTable> hint_;
  std::string name_;
  Validity valid_;
};

enum class ThetaRegime { zero, infinity, global };

struct ThetaOptions {
  int depth = 60;                 ///< t ∈ {2^{-k}} (or 2^{k}), k up to depth
  double eps_right = 1e-6;        ///< Θ(x⁺) evaluated at x(1 + eps_right)
  double slope_tol = 1e-4;        ///< max log-slope residual accepted for the limit law
  Grid grid;
};

struct ThetaResult {
  double value = 0.0;             ///< reported Θ (limit model when accepted, else raw)
  double raw = 0.0;               ///< extreme of the sampled ratios
  double location = 0.0;          ///< log t of the extreme
  bool extrapolated = false;      ///< value comes from the fitted limit law r^a
  double exponent = 0.0;          ///< fitted a of the limit law (when extrapolated)
  double misfit = kInf;           ///< max |sampled ratio − law| in log units
  double residual = kInf;         ///< max log-slope residual of the limit law
  double residual_zero = kInf;    ///< same with the index pinned to 0
  std::vector<double> log_t;      ///< sampled log t
  std::vector<double> log_ratio;  ///< log h(rt)/h(t) at those t
};

/// Θ(r) = limsup h(rt)/h(t) at 0 or ∞, or sup over t > 0 (global).
ThetaResult theta(const LogCurve& h, double r, ThetaRegime regime, const ThetaOptions& opt = {});
/// Θ_*(r): liminf / inf version.
ThetaResult theta_lower(const LogCurve& h, double r, ThetaRegime regime,
                        const ThetaOptions& opt = {});

inline double theta_value(const LogCurve& h, double r, ThetaRegime regime,
                          const ThetaOptions& opt = {}) {
  return theta(h, r, regime, opt).value;
}

/// Θ(x⁺)
double theta_right(const LogCurve& h, double r, ThetaRegime regime, const ThetaOptions& opt = {});

/// Ξ(r) = r Θ_ψ(Θ_{B⁻¹}(1/r)⁺), both global.
double xi(const LogCurve& psi, const LogCurve& b_inv, double r, const ThetaOptions& opt = {});

enum class ThetaTrend { decaying, identically_one, inconclusive };
const char* to_string(ThetaTrend t);

/// Dichotomy: Θ(r) → 0 as r → 0, or Θ ≡ 1 on (0, 1]; decided from Θ(1/2).
ThetaTrend theta_trend(const LogCurve& h, ThetaRegime regime, const ThetaOptions& opt = {});

enum class Stability { vanishing, stable, inconclusive };
const char* to_string(Stability s);

struct StabilityReport {
  Stability verdict = Stability::inconclusive;
  ThetaTrend psi_zero = ThetaTrend::inconclusive;   ///< Θ⁰_ψ
  ThetaTrend binv_inf = ThetaTrend::inconclusive;   ///< Θ^∞_{B⁻¹}
  double psi_half = 0.0;
  double binv_half = 0.0;
};

StabilityReport classify_stability(const LogCurve& psi, const LogCurve& b_inv,
                                   const ThetaOptions& opt = {});

}  // namespace orlicz
