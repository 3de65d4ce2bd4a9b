#include "orlicz/sobolev_conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

void require_conditions(const YoungFunction& A, int n) {
  for (Condition c : {Condition::embedding_at_infinity, Condition::divergence_at_zero}) {
    auto rep = check_condition(A, n, c);
    if (rep.verdict != Truth::yes) {
      std::ostringstream os;
      os << "sobolev_conjugate: " << A.family() << " fails "
         << (c == Condition::embedding_at_infinity ? "the embedding condition at infinity"
                                            : "the divergence condition at zero")
         << " for n = " << n << " (" << to_string(rep.verdict) << "; " << rep.diagnostic
         << ")";
      throw InputError(os.str());
    }
  }
}

}  // namespace

YoungFunction sobolev_dual(const YoungFunction& A, int n, const Grid& grid) {
  if (n < 2) throw InputError("sobolev_dual needs n >= 2");
  require_conditions(A, n);
  const double np = n / (n - 1.0);
  YoungFunction At = conjugate(A, grid);
  auto tab = std::dynamic_pointer_cast<const HermiteTable>(At.curve());
  const auto& xs = tab->xs();
  // Beyond the table the integrand follows the fitted tail; a tail exponent
  // within 1e-2 of n' is taken as exactly critical so the log term decides
  // (the two-point fit biases a by O(log x / x) when A carries a log factor).
  TailModel tail = tab->right_tail();
  if (std::abs(tail.a - np) < 1e-2) {
    tail.a = np;
    if (!(tail.b < -1.0))
      throw ConvergenceError("sobolev_dual: tail of the conjugate is not integrable against t^{-n'}");
  } else if (tail.a > np) {
    throw ConvergenceError("sobolev_dual: conjugate grows faster than t^{n'} beyond the grid");
  }
  const double xend = tab->x_max();
  std::vector<double> Y(xs.size()), K(xs.size());
  std::vector<int> bad(xs.size(), 0);
  parallel_for(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    const double y0 = tab->log_value(x);
    auto f = [&](double u) {
      double e;
      if (x + u <= xend) {
        e = tab->log_value(x + u) - y0 - np * u;
      } else {
        // grouped so the linear parts cancel exactly for large u
        e = (tail.y0 - y0) + (tail.a - np) * u + tail.a * (x - xend);
        if (tail.b != 0.0) e += tail.b * (std::log(x + u) - std::log(xend));
      }
      return std::isfinite(e) ? std::exp(e) : 0.0;
    };
    // pieces split where t crosses 1 and where the table ends
    double b1 = std::max(0.0, -x);
    double b2 = std::max(b1, xend - x);
    double I = 0.0, err_total = 0.0;
    for (auto [a, b] : {std::pair{0.0, b1}, std::pair{b1, b2}}) {
      if (b <= a) continue;
      double err = 0.0;
      I += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-11, &err);
      err_total += err;
    }
    static thread_local boost::math::quadrature::exp_sinh<double> half_line;
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    auto g = [&](double v) { return f(b2 + v); };
    I += half_line.integrate(g, 1e-11, &err, &l1, &levels);
    err_total += err;
    if (!std::isfinite(I) || !(I > 0) || err_total > 1e-7 * I) bad[i] = 1;
    Y[i] = y0 + std::log(I);
    K[i] = np - 1.0 / I;
  });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (bad[i]) {
      std::ostringstream os;
      os << "sobolev_dual: tail integral did not converge at t = e^" << xs[i];
      throw ConvergenceError(os.str());
    }
  }
  auto curve = std::make_shared<HermiteTable>(xs, std::move(Y), std::move(K));
  return YoungFunction::from_curve(curve, "sobolev_dual(" + A.family() + ")", {{"n", n}}, grid);
}

YoungFunction sobolev_conjugate(const YoungFunction& A, int n, const Grid& grid) {
  if (n < 1) throw InputError("dimension must be >= 1");
  if (n == 1) return A;
  YoungFunction Bt = sobolev_dual(A, n, grid);
  YoungFunction B = conjugate(Bt, grid);
  return YoungFunction::from_curve(B.curve(), "sobolev(" + A.family() + ")", {{"n", n}}, grid);
}

EquivalenceReport compare_sobolev(const YoungFunction& A, const YoungFunction& B) {
  EquivalenceReport rep;
  Grid g;
  double blo, bhi;
  effective_range(*B.curve(), g, blo, bhi);
  double ylo = B.log_value(blo), yhi = B.log_value(bhi);
  rep.tail_hi = yhi;
  rep.tail_lo = yhi > 8.0 ? yhi / 2 : yhi - 4.0;
  auto Ainv = inverse_table(*A.curve(), g);
  auto Binv = inverse_table(*B.curve(), g);
  double lo_ratio = kInf, hi_ratio = -kInf;
  for (double Y : linspace(rep.tail_lo, rep.tail_hi, 200)) {
    double xa = solve_log(*A.curve(), Y, {}, Ainv.get());
    double xb = solve_log(*B.curve(), Y, {}, Binv.get());
    lo_ratio = std::min(lo_ratio, xb - xa);
    hi_ratio = std::max(hi_ratio, xb - xa);
  }
  rep.c1 = std::exp(lo_ratio);
  rep.c2 = std::exp(hi_ratio);
  double dom = -kInf;
  double alo, ahi;
  effective_range(*A.curve(), g, alo, ahi);
  double ya_lo = A.log_value(alo), ya_hi = A.log_value(ahi);
  for (double x : linspace(blo, bhi, 600)) {
    double Y = B.log_value(x);
    if (Y < ya_lo || Y > ya_hi) continue;
    dom = std::max(dom, solve_log(*A.curve(), Y, {}, Ainv.get()) - x);
  }
  rep.domination = std::exp(dom);
  std::ostringstream os;
  os << "ratio B^-1/A^-1 on log y in [" << rep.tail_lo << ", " << rep.tail_hi << "]; B range log y in ["
     << ylo << ", " << yhi << "]";
  rep.note = os.str();
  return rep;
}

double phi_B(const YoungFunction& B, int n, double r) {
  if (r < 0) throw InputError("phi_B: r must be >= 0");
  if (r == 0) return 0.0;
  double Y = -std::log(r);
  double x = solve_log(*B.curve(), Y);
  return std::exp(std::log(r) + n * x);
}

}  // namespace orlicz
