#include "orlicz/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/sobolev_conjugate.hpp"

namespace orlicz {

namespace {

BisectionOptions tight() {
  BisectionOptions o;
  o.rtol = 1e-14;
  o.atol = 0.0;
  o.max_iter = 300;
  return o;
}

// log J_r at x = log s, evaluated through an exact inversion of B
class ExactJ final : public LogCurve {
 public:
  ExactJ(CurvePtr B, std::shared_ptr<HermiteTable> binv, CurvePtr phi, int n, double log_r,
         double lo, double hi)
      : B_(std::move(B)), binv_(std::move(binv)), phi_(std::move(phi)), n_(n), lr_(log_r),
        lo_(lo), hi_(hi) {}

  double inner(double x) const { return lr_ + phi_->log_value(x) - n_ * x; }
  double binv(double Y) const { return solve_log(*B_, Y, tight(), binv_.get()); }
  double log_value(double x) const override { return x + binv(inner(x)); }
  double log_slope(double x) const override {
    double b = binv(inner(x));
    return 1.0 + (phi_->log_slope(x) - n_) / B_->log_slope(b);
  }
  double x_min() const override { return lo_; }
  double x_max() const override { return hi_; }
  bool is_table() const override { return true; }

 private:
  CurvePtr B_;
  std::shared_ptr<HermiteTable> binv_;
  CurvePtr phi_;
  int n_;
  double lr_, lo_, hi_;
};

}  // namespace

DistortionBundle::DistortionBundle(const YoungFunction& A, const GaugeFunction& phi, int n,
                                   const Grid& grid)
    : A_(A), B_(sobolev_conjugate(A, n, grid)), phi_(phi), n_(n) {
  build(grid);
}

DistortionBundle::DistortionBundle(const YoungFunction& A, const YoungFunction& B,
                                   const GaugeFunction& phi, int n, const Grid& grid)
    : A_(A), B_(B), phi_(phi), n_(n) {
  build(grid);
}

void DistortionBundle::build(const Grid& grid) {
  if (phi_.dim() != n_) throw InputError("gauge dimension does not match n");
  binv_tab_ = inverse_table(*B_.curve(), grid);
  binv_ = binv_tab_;
  const LogCurve& ph = *phi_.curve();
  double plo, phi_hi;
  effective_range(ph, grid, plo, phi_hi);
  double ylo = -kInf, yhi = kInf;
  if (B_.curve()->is_table()) {
    ylo = B_.log_value(B_.curve()->x_min());
    yhi = B_.log_value(B_.curve()->x_max());
  }
  std::vector<double> xs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double x = grid.at(i);
    if (x < plo || x > phi_hi) continue;
    double Y = ph.log_value(x) - n_ * x;
    if (Y < ylo || Y > yhi) continue;
    xs.push_back(x);
  }
  if (xs.size() < 8) throw DomainError("J: the gauge and B share too little range");
  auto ej = std::make_shared<ExactJ>(B_.curve(), binv_tab_, phi_.curve(), n_, 0.0, xs.front(),
                                     xs.back());
  J_exact_ = ej;
  std::vector<double> lj(xs.size()), kj(xs.size()), yp(xs.size()), kp(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    lj[i] = ej->log_value(xs[i]);
    kj[i] = ej->log_slope(xs[i]);
    yp[i] = ph.log_value(xs[i]);
    kp[i] = ph.log_slope(xs[i]);
  });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(kj[i] > 0) || (i > 0 && !(lj[i] > lj[i - 1]))) {
      std::ostringstream os;
      os << "J is not increasing near s = e^" << xs[i];
      throw DomainError(os.str());
    }
  }
  std::vector<double> ikj(xs.size()), kpsi(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ikj[i] = 1.0 / kj[i];
    kpsi[i] = kp[i] / kj[i];
  }
  J_ = std::make_shared<HermiteTable>(xs, lj, kj);
  Jinv_ = std::make_shared<HermiteTable>(lj, xs, std::move(ikj));
  psi_ = std::make_shared<HermiteTable>(std::move(lj), std::move(yp), std::move(kpsi));
}

double DistortionBundle::log_binv(double Y) const {
  return solve_log(*B_.curve(), Y, tight(), binv_tab_.get());
}

double DistortionBundle::log_J(double x) const { return J_exact_->log_value(x); }

double DistortionBundle::log_Jinv(double X) const {
  return solve_log(*J_exact_, X, tight(), Jinv_.get());
}

double DistortionBundle::log_psi(double X) const {
  return phi_.log_value(log_Jinv(X));
}

double DistortionBundle::J(double s) const {
  if (s < 0) throw InputError("J: negative argument");
  return s == 0 ? 0.0 : std::exp(log_J(std::log(s)));
}

double DistortionBundle::J_inverse(double y) const {
  if (y < 0) throw InputError("J inverse: negative argument");
  return y == 0 ? 0.0 : std::exp(log_Jinv(std::log(y)));
}

double DistortionBundle::psi(double r) const {
  if (r < 0) throw InputError("psi: negative argument");
  return r == 0 ? 0.0 : std::exp(log_psi(std::log(r)));
}

double DistortionBundle::B_value(double s) const { return B_(s); }

double DistortionBundle::J_r(double r, double s) const {
  if (!(r > 0)) throw InputError("J_r: r must be positive");
  if (s == 0) return 0.0;
  double x = std::log(s);
  double Y = std::log(r) + phi_.log_value(x) - n_ * x;
  return std::exp(x + log_binv(Y));
}

double DistortionBundle::J_r_inverse(double r, double y) const {
  if (!(r > 0)) throw InputError("J_r: r must be positive");
  if (y == 0) return 0.0;
  ExactJ jr(B_.curve(), binv_tab_, phi_.curve(), n_, std::log(r), J_exact_->x_min(),
            J_exact_->x_max());
  return std::exp(solve_log(jr, std::log(y), tight(), Jinv_.get()));
}

BundleInvariants check_invariants(const DistortionBundle& b, unsigned seed) {
  BundleInvariants inv;
  auto J = std::dynamic_pointer_cast<const HermiteTable>(b.J_curve());
  auto P = std::dynamic_pointer_cast<const HermiteTable>(b.psi_curve());
  const int n = b.dim();
  inv.J_increasing = true;
  for (std::size_t i = 0; i < J->xs().size(); ++i) {
    if (!(J->slopes()[i] > 0) || (i > 0 && !(J->ys()[i] > J->ys()[i - 1])))
      inv.J_increasing = false;
  }
  inv.J_decades = (J->ys().back() - J->ys().front()) / std::log(10.0);
  inv.psi_increasing = true;
  inv.psi_ratio_nonincreasing = true;
  for (std::size_t i = 0; i < P->xs().size(); ++i) {
    if (P->slopes()[i] < 0 || (i > 0 && P->ys()[i] < P->ys()[i - 1])) inv.psi_increasing = false;
    if (P->slopes()[i] > n + 1e-8) inv.psi_ratio_nonincreasing = false;
  }
  std::mt19937_64 rng(seed);
  const double lo = P->x_min() + 7.0, hi = P->x_max() - 7.0;
  std::uniform_real_distribution<double> ux(lo, hi), uk(-6.9, 6.9);
  inv.psi_delta2 = true;
  for (int i = 0; i < 1000; ++i) {
    double x = ux(rng), lk = uk(rng);
    double lhs = P->log_value(x + lk) - P->log_value(x);
    if (lhs > std::max(0.0, n * lk) + 1e-9) inv.psi_delta2 = false;
  }
  inv.Jr_inverse_monotone = true;
  std::uniform_real_distribution<double> us(J->ys().front() + 10.0, J->ys().back() - 10.0),
      ur(-5.0, 5.0);
  for (int i = 0; i < 40; ++i) {
    double s = std::exp(us(rng));
    double r1 = std::exp(ur(rng)), r2 = std::exp(ur(rng));
    if (r1 > r2) std::swap(r1, r2);
    if (b.J_r_inverse(r2, s) > b.J_r_inverse(r1, s) * (1 + 1e-10)) inv.Jr_inverse_monotone = false;
  }
  return inv;
}

namespace {

Gap make_gap(double log_left, double log_a, double log_b) {
  double log_right = log_sum_exp({log_a, log_b});
  Gap g;
  g.relative = std::expm1(log_left - log_right);
  g.absolute = std::exp(log_left) - std::exp(log_right);
  return g;
}

}  // namespace

Gap key_inequality_gap(const DistortionBundle& b, double s, double t) {
  if (!(s > 0) || !(t > 0)) return Gap{};
  double ls = std::log(s), lt = std::log(t);
  return make_gap(b.log_psi(ls + lt), b.phi().log_value(lt), b.dim() * lt + b.B().log_value(ls));
}

Gap key_inequality_gap_r(const DistortionBundle& b, double r, double s, double t) {
  if (!(s > 0) || !(t > 0)) return Gap{};
  double ls = std::log(s), lt = std::log(t);
  double left = b.phi().log_value(std::log(b.J_r_inverse(r, s * t)));
  return make_gap(left, b.phi().log_value(lt), b.dim() * lt + b.B().log_value(ls) - std::log(r));
}

double default_cn(int n) { return std::pow(6.0, n); }

namespace {

// Θ(x⁺) with x = 0 read as the limit r → 0⁺
double theta_plus(const LogCurve& h, double x, ThetaRegime regime) {
  if (x > 0) return theta_right(h, x, regime);
  ThetaResult t = theta(h, 1e-6, regime);
  if (t.extrapolated) return t.exponent > 1e-9 ? 0.0 : 1.0;
  return t.value;
}

}  // namespace

BoundReport measure_bound(const DistortionBundle& b, double grad_norm, double h_phi, double kappa,
                          double c_n) {
  if (grad_norm < 0 || h_phi < 0 || !(kappa > 0) || !(c_n > 0))
    throw InputError("measure_bound: invalid arguments");
  BoundReport rep;
  rep.kappa = kappa;
  rep.c_n = c_n;
  auto st = classify_stability(*b.psi_curve(), *b.binv_curve());
  rep.regime = st.verdict;
  if (st.verdict == Stability::vanishing) {
    rep.note = "vanishing regime: H^psi(u(E)) = 0 whenever H^phi(E) is finite";
    return rep;
  }
  double inner = theta(*b.binv_curve(), 1e-12, ThetaRegime::infinity).value;
  rep.constant = c_n * theta(*b.psi_curve(), inner, ThetaRegime::zero).value;
  rep.theta_factor = theta_plus(*b.psi_curve(), kappa * grad_norm, ThetaRegime::zero);
  rep.value = rep.constant * rep.theta_factor * h_phi;
  if (st.verdict == Stability::inconclusive)
    rep.note = "stability classification inconclusive; stable-regime bound reported";
  return rep;
}

BoundReport content_bound(const DistortionBundle& b, double grad_norm, double h_phi_inf,
                          double kappa, double c_n) {
  if (grad_norm < 0 || h_phi_inf < 0 || !(kappa > 0) || !(c_n > 0))
    throw InputError("content_bound: invalid arguments");
  BoundReport rep;
  rep.kappa = kappa;
  rep.c_n = c_n;
  rep.constant = 2 * kappa;
  if (h_phi_inf == 0) {
    rep.note = "H^phi_inf(E) = 0";
    return rep;
  }
  rep.theta_factor = theta_plus(*b.psi_curve(), kappa * grad_norm, ThetaRegime::global);
  double x = xi(*b.psi_curve(), *b.binv_curve(), c_n * h_phi_inf / kappa);
  rep.value = rep.constant * rep.theta_factor * x;
  return rep;
}

double kaufman_constant(int n, double p, double alpha, double c_n) {
  if (n < 2) throw DomainError("kaufman_constant: needs n >= 2");
  if (!(p > n)) throw DomainError("kaufman_constant: needs p > n");
  if (!(alpha > 0 && alpha <= n)) throw DomainError("kaufman_constant: needs 0 < alpha <= n");
  double np = n / (n - 1.0), pp = p / (p - 1.0);
  double d = alpha + p - n;
  return 2 * c_n * std::pow(p, alpha / d) * std::pow((p - 1) / (np - pp), alpha * (p - 1) / d);
}

double lebesgue_image_bound(const YoungFunction& B, int n, double grad_norm, double lebesgue,
                            double kappa) {
  if (grad_norm < 0 || lebesgue < 0 || !(kappa > 0))
    throw InputError("lebesgue_image_bound: invalid arguments");
  if (lebesgue == 0 || grad_norm == 0) return 0.0;
  double r = lebesgue * std::pow(n, n / 2.0) / kappa;
  return 2 * std::pow(kappa, n + 1) * std::pow(grad_norm, n) * phi_B(B, n, r);
}

}  // namespace orlicz
