#pragma once

#include <string>

namespace orlicz {

enum class FormRegime { near_zero, near_infinity };

/// near zero:     r^a (log 1/r)^b (log log 1/r)^c
/// near infinity: t^a (log t)^b (log log t)^c, or exp(t^γ) when `exponential`
struct LogPowerForm {
  FormRegime regime = FormRegime::near_zero;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  bool exponential = false;
  double gamma = 0.0;
  std::string note;

  static LogPowerForm gauge(double a, double b, double c = 0.0) {
    return {FormRegime::near_zero, a, b, c, false, 0.0, {}};
  }
  static LogPowerForm young(double p, double q) {
    return {FormRegime::near_infinity, p, q, 0.0, false, 0.0, {}};
  }
  static LogPowerForm young_exp(double gamma) {
    return {FormRegime::near_infinity, 0.0, 0.0, 0.0, true, gamma, {}};
  }

  /// log of the form at x = log r (or log t); needs |x| large enough for the logs.
  double log_value(double x) const;
  std::string describe() const;
};

}  // namespace orlicz
