#pragma once

#include <memory>
#include <string>

#include "orlicz/convex_calculus.hpp"
#include "orlicz/gauge.hpp"
#include "orlicz/scaling.hpp"

namespace orlicz {

/// J(s) = s B⁻¹(φ(s)/s^n), ψ = φ∘J⁻¹, and the scaled family J_r.
/// Tables for J, J⁻¹, ψ are built once; exact values bisect on J itself.
class DistortionBundle {
 public:
  DistortionBundle(const YoungFunction& A, const GaugeFunction& phi, int n, const Grid& grid = {});
  /// Same pipeline with a caller-supplied B (e.g. B replaced by A).
  DistortionBundle(const YoungFunction& A, const YoungFunction& B, const GaugeFunction& phi, int n,
                   const Grid& grid = {});

  const YoungFunction& A() const { return A_; }
  const YoungFunction& B() const { return B_; }
  const GaugeFunction& phi() const { return phi_; }
  int dim() const { return n_; }

  /// Tabulated curves in log-log form.
  const CurvePtr& J_curve() const { return J_; }
  const CurvePtr& Jinv_curve() const { return Jinv_; }
  const CurvePtr& psi_curve() const { return psi_; }
  const CurvePtr& binv_curve() const { return binv_; }
  const CurvePtr& exact_J() const { return J_exact_; }

  double log_binv(double Y) const;
  double log_J(double x) const;
  double log_Jinv(double X) const;
  double log_psi(double X) const;

  double J(double s) const;
  double J_inverse(double y) const;
  double psi(double r) const;
  double B_value(double s) const;
  /// J_r(s) = s B⁻¹(r φ(s)/s^n)
  double J_r(double r, double s) const;
  double J_r_inverse(double r, double y) const;

 private:
  void build(const Grid& grid);
  YoungFunction A_, B_;
  GaugeFunction phi_;
  int n_;
  std::shared_ptr<HermiteTable> binv_tab_;
  CurvePtr binv_, J_exact_, J_, Jinv_, psi_;
};

struct BundleInvariants {
  bool J_increasing = false;
  bool psi_increasing = false;
  bool psi_ratio_nonincreasing = false;  ///< ψ(r)/r^n
  bool psi_delta2 = false;               ///< ψ(kr) ≤ max{1,k^n} ψ(r)
  bool Jr_inverse_monotone = false;      ///< r ↦ J_r⁻¹(s) non-increasing
  double J_decades = 0.0;                ///< log10 J(tail) − log10 J(head)
  bool all() const {
    return J_increasing && psi_increasing && psi_ratio_nonincreasing && psi_delta2 &&
           Jr_inverse_monotone;
  }
};

BundleInvariants check_invariants(const DistortionBundle& b, unsigned seed = 7);

struct Gap {
  double absolute = 0.0;  ///< left − right
  double relative = 0.0;  ///< left/right − 1
};

/// ψ(st) − φ(t) − t^n B(s)
Gap key_inequality_gap(const DistortionBundle& b, double s, double t);
/// φ(J_r⁻¹(st)) − φ(t) − t^n B(s)/r
Gap key_inequality_gap_r(const DistortionBundle& b, double r, double s, double t);

struct BoundReport {
  double value = 0.0;
  double constant = 0.0;      ///< c (or the leading factor of the bound)
  double theta_factor = 0.0;  ///< Θ evaluated at κ‖∇u‖⁺
  double kappa = 1.0;
  double c_n = 0.0;
  Stability regime = Stability::inconclusive;
  std::string note;
};

double default_cn(int n);

/// H^ψ(u(E)) ≤ c Θ⁰_ψ(κ‖∇u‖⁺) H^φ(E), c = c_n lim_{r→0} Θ⁰_ψ(Θ^∞_{B⁻¹}(r)).
BoundReport measure_bound(const DistortionBundle& b, double grad_norm, double h_phi, double kappa,
                          double c_n);

/// H^ψ_∞(u(E)) ≤ 2κ Θ_ψ(κ‖∇u‖⁺) Ξ(c_n H^φ_∞(E)/κ)
BoundReport content_bound(const DistortionBundle& b, double grad_norm, double h_phi_inf,
                          double kappa, double c_n);

/// 2 c_n p^{α/(α+p−n)} ((p−1)/(n'−p'))^{α(p−1)/(α+p−n)}
double kaufman_constant(int n, double p, double alpha, double c_n);

/// H^n_∞(u(E)) ≤ 2κ^{n+1} ‖∇u‖^n Φ_B(L^n(E) n^{n/2}/κ)
double lebesgue_image_bound(const YoungFunction& B, int n, double grad_norm, double lebesgue,
                            double kappa);

}  // namespace orlicz
