#pragma once

#include <cmath>
#include <functional>

namespace oracle {

// Golden-section maximisation of a unimodal function on [lo, hi].
inline double maximise(const std::function<double(double)>& f, double lo, double hi,
                       int iters = 200) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    }
  }
  return std::max(fc, fd);
}

// sup_τ (τ t − c τ^p) in closed form.
inline double power_conjugate(double c, double p, double t) {
  const double tau = std::pow(t / (c * p), 1.0 / (p - 1.0));
  return tau * t - c * std::pow(tau, p);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
