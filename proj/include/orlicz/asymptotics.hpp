#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orlicz/distortion.hpp"
#include "orlicz/log_power_form.hpp"

namespace orlicz {

/// Closed-form ψ for A ~ t^p (log t)^q (or exp(t^γ)) near ∞ and
/// φ ~ r^α (log 1/r)^β near 0. Throws DomainError outside every case table.
/// The output note names the case; the α = 0, β < 0, q ≠ 0 power case is flagged.
LogPowerForm distort_form(const LogPowerForm& A_form, const LogPowerForm& phi_form, int n);

struct ExponentFit {
  LogPowerForm form;
  double intercept = 0.0;  ///< log of the multiplicative constant
  double residual = 0.0;   ///< rms of log residuals
};

/// Least squares of log v on (1, log r, log log 1/r [, log log log 1/r]).
/// Needs ≥ 20 samples with 0 < r < 1 spanning ≥ 4 decades.
ExponentFit fit_exponents(const std::vector<std::pair<double, double>>& samples,
                          bool with_loglog = false);

struct CrosscheckOptions {
  double r_lo = 1e-9;
  double r_hi = 1e-6;
  int samples = 121;
};

struct Crosscheck {
  double spread = 0.0;  ///< max |log(ψ/form) − mean|
  double mean = 0.0;
  std::vector<double> log_r;
  std::vector<double> log_ratio;
};

/// RangeError when r_lo lies below the tabulated range of ψ.
Crosscheck crosscheck(const DistortionBundle& b, const LogPowerForm& form,
                      const CrosscheckOptions& opt = {});

}  // namespace orlicz
