#include <doctest.h>

#include <cmath>

#include "orlicz/curve.hpp"
#include "orlicz/scaling.hpp"

using namespace orlicz;

TEST_SUITE("scaling") {
  TEST_CASE("Θ of a pure power is the power itself") {
    PowerCurve h(2.5);
    for (auto reg : {ThetaRegime::zero, ThetaRegime::infinity, ThetaRegime::global})
      for (double r : {1e-3, 0.5, 3.0, 1e4}) {
        CHECK(theta_value(h, r, reg) == doctest::Approx(std::pow(r, 2.5)).epsilon(1e-8));
        CHECK(theta_lower(h, r, reg).value == doctest::Approx(std::pow(r, 2.5)).epsilon(1e-8));
      }
  }

  TEST_CASE("Θ at zero of r^a log^b recovers the leading power") {
    // h(rt)/h(t) = r^a (1 + log r / log t)^b → r^a as t → 0.
    GaugePowerLogCurve h(2.0, 3.0);
    for (double r : {0.1, 0.5, 4.0})
      CHECK(theta_value(h, r, ThetaRegime::zero) == doctest::Approx(r * r).epsilon(1e-3));
  }

  TEST_CASE("Θ_*(r) = 1/Θ(1/r)") {
    PowerLogCurve h(2.0, 1.0, std::exp(1.0));
    for (double r : {0.2, 3.0}) {
      const double a = theta_lower(h, r, ThetaRegime::global).value;
      const double b = 1.0 / theta_value(h, 1.0 / r, ThetaRegime::global);
      CHECK(a == doctest::Approx(b).epsilon(1e-6));
    }
  }

  TEST_CASE("dichotomy on simple curves") {
    CHECK(theta_trend(PowerCurve(2.0), ThetaRegime::zero) == ThetaTrend::decaying);
    // (log 1/r)^{-1}: Θ⁰ ≡ 1
    GaugePowerLogCurve lg(0.0, -1.0);
    CHECK(theta_trend(lg, ThetaRegime::zero) == ThetaTrend::identically_one);
  }

  TEST_CASE("monotone map inverse") {
    auto A = YoungFunction::power_log(3.0, 2.0);
    auto m = MonotoneMap::from_young(A, "A");
    for (double t : {1e-4, 1.0, 1e6}) CHECK(m.inverse(m(t)) == doctest::Approx(t).epsilon(1e-7));
  }

  TEST_CASE("log-power form values") {
    auto f = LogPowerForm::gauge(2.0, 1.0, -1.0);
    const double x = std::log(1e-5), l = -x;
    CHECK(f.log_value(x) == doctest::Approx(2.0 * x + std::log(l) - std::log(std::log(l))));
    CHECK(f.describe() == "r^2 (log 1/r)^1 (log log 1/r)^-1");
  }
}
