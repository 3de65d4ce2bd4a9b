#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/curve.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

/// Young function A: convex, A(0) = 0, A(t)/t non-decreasing, finite.
/// Closed forms:
///   power     c t^p
///   powerlog  t^p (log(shift + t))^q
///   exp       t^h exp(t^γ)   (equivalent to exp(t^γ) - 1 near infinity)
///   table     log-log knots with PCHIP slopes
class YoungFunction {
 public:
  static YoungFunction power(double p, double coef = 1.0);
  static YoungFunction power_log(double p, double q, double shift = 2.718281828459045);
  static YoungFunction exponential(double gamma, double head = 2.0);
  static YoungFunction table(std::vector<double> log_t, std::vector<double> log_a);
  /// Wraps an arbitrary curve; validation samples `grid` (or the knots of a table).
  static YoungFunction from_curve(CurvePtr curve, std::string family,
                                  std::vector<std::pair<std::string, double>> params = {},
                                  const Grid& grid = {});

  double operator()(double t) const;
  double log_value(double x) const { return curve_->log_value(x); }
  double log_slope(double x) const { return curve_->log_slope(x); }
  /// Smallest / largest t backed by the representation (0 / inf for closed forms).
  double domain_floor() const;
  double domain_ceil() const;

  const CurvePtr& curve() const { return curve_; }
  const std::string& family() const { return family_; }
  const std::vector<std::pair<std::string, double>>& params() const { return params_; }
  double param(const std::string& name, double fallback = 0.0) const;

 private:
  YoungFunction() = default;
  CurvePtr curve_;
  std::string family_;
  std::vector<std::pair<std::string, double>> params_;
};

/// Ã(t) = sup_τ (τt − A(τ)) tabulated on `grid` (restricted to the attainable range).
YoungFunction conjugate(const YoungFunction& A, const Grid& grid = {});

/// Ã(t) at a single point; RangeError if the maximiser is outside A's domain.
double conjugate_value(const YoungFunction& A, double t);

/// t with |F(t) − y| ≤ rtol·y + atol by bisection on log t.
double inverse(const YoungFunction& F, double y, const BisectionOptions& opt = {});
double inverse(const LogCurve& F, double y, const BisectionOptions& opt = {});

enum class IndexRegime { infinity, global };

struct IndexEstimate {
  double value = 0.0;
  std::vector<double> lambdas;
  std::vector<double> sequence;
  bool converged = false;
  bool above_cap = false;
  double cap = 0.0;
};

struct IndexOptions {
  int max_power = 20;    ///< λ = 2, 4, ..., 2^max_power
  double cap = 1e3;
  double rel_spread = 1e-2;
  Grid grid;
};

IndexEstimate matuszewska_index(const YoungFunction& A, IndexRegime regime,
                                const IndexOptions& opt = {});

enum class Truth { yes, no, inconclusive };
const char* to_string(Truth t);

/// Local law of a log-slope near one end of the grid: slope ≈ a + b/x.
struct SlopeFit {
  double a = 0.0;
  double b = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Fits slope = a + b/x on [lo, hi] (b = 0 when the window straddles |x| < 2).
SlopeFit fit_slope(const LogCurve& c, double lo, double hi, int samples = 64);

struct ConditionReport {
  Truth verdict = Truth::inconclusive;
  double exponent = 0.0;      ///< fitted power of the integrand (in d log t), critical 0
  double log_exponent = 0.0;  ///< fitted power of log t in the integrand, critical -1
  std::string diagnostic;
};

enum class Condition { embedding_at_infinity, divergence_at_zero, positivity_0inf };

struct ConditionOptions {
  Grid grid;
  double eps_exponent = 1e-5;
  double eps_log = 0.02;
};

/// embedding_at_infinity: ∫^∞ (t/A)^{1/(n−1)} dt < ∞   (n = 1: t/A(t) → 0 at ∞)
/// divergence_at_zero:    ∫_0 (t/A)^{1/(n−1)} dt = ∞   (n = 1: A(t)/t → 0 at 0)
/// positivity_0inf:       0 < A < ∞ on the sampled range
ConditionReport check_condition(const YoungFunction& A, int n, Condition which,
                                const ConditionOptions& opt = {});

struct FieldSample {
  std::size_t dim = 0;
  std::vector<double> coords;   ///< dim entries per point (may be empty)
  std::vector<double> weights;  ///< cell volumes
  std::vector<double> values;   ///< |∇u| magnitudes
  void add(double weight, double value) {
    weights.push_back(weight);
    values.push_back(value);
  }
};

/// Σ w_i A(v_i / λ)
double modular(const FieldSample& f, const YoungFunction& A, double lambda);

/// inf{λ : Σ w_i A(v_i/λ) ≤ 1}; the modular at the result lies in [1 − tol, 1].
double luxemburg_norm(const FieldSample& f, const YoungFunction& A, double tol = 1e-10);

}  // namespace orlicz
