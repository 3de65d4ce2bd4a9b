#include <doctest.h>

#include <cmath>
#include <random>

#include "orlicz/asymptotics.hpp"
#include "orlicz/distortion.hpp"
#include "orlicz/errors.hpp"

using namespace orlicz;

TEST_SUITE("distortion") {
  TEST_CASE("power pair: ψ has exponent αp/(p+α−n)") {
    // J(s) = s B⁻¹(s^{α−n}) with B ~ t^p gives J ~ s^{(p+α−n)/p}.
    for (auto [n, p, alpha] : {std::tuple{2, 4.0, 1.0}, std::tuple{2, 3.0, 1.5}, std::tuple{3, 6.0, 2.0}}) {
      DistortionBundle b(YoungFunction::power(p), GaugeFunction::power(alpha, n), n);
      const double expect = alpha * p / (p + alpha - n);
      const double x1 = std::log(1e-9), x2 = std::log(1e-3);
      const double slope = (b.log_psi(x2) - b.log_psi(x1)) / (x2 - x1);
      CHECK(slope == doctest::Approx(expect).epsilon(1e-3));
    }
  }

  TEST_CASE("J and its inverse agree") {
    DistortionBundle b(YoungFunction::power_log(3.0, 1.0), GaugeFunction::power(1.0, 2), 2);
    for (double s : {1e-8, 1e-4, 0.3}) CHECK(b.J_inverse(b.J(s)) == doctest::Approx(s).epsilon(1e-6));
    for (double r : {1e-7, 1e-2}) CHECK(b.psi(r) == doctest::Approx(b.phi()(b.J_inverse(r))).epsilon(1e-6));
  }

  TEST_CASE("key inequality on random pairs") {
    DistortionBundle b(YoungFunction::power(4.0), GaugeFunction::power(1.0, 2), 2);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-12.0, 4.0);
    for (int i = 0; i < 2000; ++i) {
      const double s = std::exp(U(rng)), t = std::exp(U(rng) / 2.0 - 4.0);
      CHECK(key_inequality_gap(b, s, t).relative <= 1e-8);
      CHECK(key_inequality_gap_r(b, 0.5, s, t).relative <= 1e-8);
    }
  }

  TEST_CASE("invariants of the bundle") {
    DistortionBundle b(YoungFunction::power_log(2.0, 2.0), GaugeFunction::power(1.0, 2), 2);
    auto inv = check_invariants(b);
    CHECK(inv.all());
  }

  TEST_CASE("Kaufman constant formula") {
    const double np = 2.0, pp = 4.0 / 3.0;
    const double expect = 2 * 36.0 * std::pow(4.0, 1.0 / 3.0) * std::pow(3.0 / (np - pp), 1.0);
    CHECK(kaufman_constant(2, 4.0, 1.0, 36.0) == doctest::Approx(expect));
    CHECK_THROWS_AS(kaufman_constant(2, 2.0, 1.0, 36.0), DomainError);
    CHECK(default_cn(2) == 36.0);
  }

  TEST_CASE("measure bound reports a regime") {
    DistortionBundle b(YoungFunction::power(4.0), GaugeFunction::power(1.0, 2), 2);
    auto br = measure_bound(b, 1.0, 1.0, 1.0, default_cn(2));
    CHECK(br.regime == Stability::vanishing);
  }
}

TEST_SUITE("asymptotics") {
  TEST_CASE("closed form for powers above n") {
    auto f = distort_form(LogPowerForm::young(4.0, 0.0), LogPowerForm::gauge(1.0, 0.0), 2);
    CHECK(f.a == doctest::Approx(4.0 / 3.0));
    CHECK(f.b == doctest::Approx(0.0));
  }

  TEST_CASE("fit recovers synthetic exponents") {
    std::vector<std::pair<double, double>> s;
    for (double x = std::log(1e-12); x < std::log(1e-4); x += 0.2) {
      const double r = std::exp(x), l = -x;
      s.emplace_back(r, 3.0 * std::pow(r, 1.7) * std::pow(l, -0.6) * std::pow(std::log(l), 0.9));
    }
    auto fit = fit_exponents(s, true);
    CHECK(fit.form.a == doctest::Approx(1.7).epsilon(1e-8));
    CHECK(fit.form.b == doctest::Approx(-0.6).epsilon(1e-6));
    CHECK(fit.form.c == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-6));
  }

  TEST_CASE("crosscheck of the Kaufman pair") {
    DistortionBundle b(YoungFunction::power(4.0), GaugeFunction::power(1.0, 2), 2);
    auto f = distort_form(LogPowerForm::young(4.0, 0.0), LogPowerForm::gauge(1.0, 0.0), 2);
    CHECK(crosscheck(b, f).spread < 1e-3);
  }

  TEST_CASE("forms outside the case tables are refused") {
    CHECK_THROWS_AS(distort_form(LogPowerForm::young(1.5, 0.0), LogPowerForm::gauge(1.0, 0.0), 2),
                    DomainError);
    CHECK_THROWS_AS(fit_exponents({{0.5, 1.0}}), InputError);
  }
}
