#pragma once

#include <memory>
#include <vector>

#include "orlicz/numeric.hpp"

namespace orlicz {

/// A positive function f on (0, ∞) seen in log-log coordinates:
/// x = log t, y(x) = log f(e^x), slope = dy/dx.
class LogCurve {
 public:
  virtual ~LogCurve() = default;
  virtual double log_value(double x) const = 0;
  virtual double log_slope(double x) const = 0;
  /// Range where values are backed by data or a closed form (±inf if unlimited).
  virtual double x_min() const { return -kInf; }
  virtual double x_max() const { return kInf; }
  virtual bool is_table() const { return false; }
};

using CurvePtr = std::shared_ptr<const LogCurve>;

/// Log grid used when a closed form has to be tabulated.
struct Grid {
  double lo = -150.0;
  double hi = 150.0;
  double step = 0.05;
  std::size_t size() const;
  double at(std::size_t i) const;
};

/// y = y0 + a (x - x0) + b (log|x| - log|x0|): a power-log law t^a |log t|^b.
struct TailModel {
  double x0 = 0.0;
  double y0 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double value(double x) const;
  double slope(double x) const;
};

/// Cubic Hermite interpolation of (x, y, dy/dx) knots, power-log tails outside.
class HermiteTable final : public LogCurve {
 public:
  HermiteTable(std::vector<double> x, std::vector<double> y, std::vector<double> m);

  /// Knots with shape-preserving (PCHIP) slopes estimated from the data.
  static std::shared_ptr<HermiteTable> from_data(std::vector<double> x,
                                                 std::vector<double> y);

  double log_value(double x) const override;
  double log_slope(double x) const override;
  double x_min() const override { return x_.front(); }
  double x_max() const override { return x_.back(); }
  bool is_table() const override { return true; }

  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }
  const std::vector<double>& slopes() const { return m_; }
  const TailModel& left_tail() const { return left_; }
  const TailModel& right_tail() const { return right_; }

 private:
  std::size_t locate(double x) const;
  std::vector<double> x_, y_, m_;
  bool uniform_ = false;
  double h_ = 0.0;
  TailModel left_, right_;
};

/// PCHIP slopes (Fritsch-Butland weighted harmonic mean).
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y);

/// Fritsch-Carlson limiter: adjusts slopes m so the Hermite interpolant of z is monotone.
void limit_monotone(const std::vector<double>& x, const std::vector<double>& z,
                    std::vector<double>& m);

/// c t^p
class PowerCurve final : public LogCurve {
 public:
  PowerCurve(double p, double log_coef = 0.0) : p_(p), c_(log_coef) {}
  double log_value(double x) const override { return c_ + p_ * x; }
  double log_slope(double) const override { return p_; }

 private:
  double p_, c_;
};

/// t^p (log(shift + t))^q, shift > 1.
class PowerLogCurve final : public LogCurve {
 public:
  PowerLogCurve(double p, double q, double shift);
  double log_value(double x) const override;
  double log_slope(double x) const override;

 private:
  double p_, q_, shift_, log_shift_;
};

/// t^h exp(t^γ)
class ExpCurve final : public LogCurve {
 public:
  ExpCurve(double gamma, double head);
  double log_value(double x) const override;
  double log_slope(double x) const override;
  double x_max() const override { return x_cap_; }

 private:
  double g_, h_, x_cap_;
};

/// r^α (log(e + 1/r))^β
class GaugePowerLogCurve final : public LogCurve {
 public:
  GaugePowerLogCurve(double alpha, double beta) : a_(alpha), b_(beta) {}
  double log_value(double x) const override;
  double log_slope(double x) const override;

 private:
  double a_, b_;
};

/// y(x) = base(x + dx) + dy, i.e. t ↦ e^{dy} f(e^{dx} t).
class ShiftedCurve final : public LogCurve {
 public:
  ShiftedCurve(CurvePtr base, double dx, double dy) : base_(std::move(base)), dx_(dx), dy_(dy) {}
  double log_value(double x) const override { return base_->log_value(x + dx_) + dy_; }
  double log_slope(double x) const override { return base_->log_slope(x + dx_); }
  double x_min() const override { return base_->x_min() - dx_; }
  double x_max() const override { return base_->x_max() - dx_; }
  bool is_table() const override { return base_->is_table(); }

 private:
  CurvePtr base_;
  double dx_, dy_;
};

/// Range where a curve is evaluated when it must be sampled: its own knot
/// range for tables, the grid intersected with the closed-form domain otherwise.
void effective_range(const LogCurve& c, const Grid& g, double& lo, double& hi);

/// Tabulate a curve on the grid points inside its effective range.
std::shared_ptr<HermiteTable> tabulate(const LogCurve& c, const Grid& g);

/// Solve c.log_value(x) = Y for x. The curve must be increasing.
/// If `hint` is given (an approximate inverse), the bracket starts there.
double solve_log(const LogCurve& c, double Y, const BisectionOptions& opt = {},
                 const LogCurve* hint = nullptr);

/// Inverse function as a table (swapped axes); tabulates closed forms first.
std::shared_ptr<HermiteTable> inverse_table(const LogCurve& c, const Grid& g);

}  // namespace orlicz
