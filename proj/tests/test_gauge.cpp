#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/gauge.hpp"

using namespace orlicz;

namespace {

// r^n inf_{t ≤ r} φ(t)/t^n by brute force on a fine log grid below r.
double normalized_oracle(const std::function<double(double)>& phi, int n, double r) {
  double m = phi(r) / std::pow(r, n);
  for (double x = std::log(r); x > std::log(r) - 60.0; x -= 1e-3) {
    const double t = std::exp(x);
    m = std::min(m, phi(t) / std::pow(t, n));
  }
  return std::pow(r, n) * m;
}

}  // namespace

TEST_SUITE("gauge") {
  TEST_CASE("powers below the dimension are already normalized") {
    auto g = GaugeFunction::power(1.5, 2);
    CHECK_FALSE(g.was_normalized());
    for (double r : {1e-6, 0.01, 0.5}) CHECK(g(r) == doctest::Approx(std::pow(r, 1.5)).epsilon(1e-9));
    CHECK(g(0.0) == 0.0);
  }

  TEST_CASE("gauges with vanishing measure are rejected") {
    CHECK_THROWS_AS(GaugeFunction::power(3.0, 2), InputError);
    CHECK_THROWS_AS(GaugeFunction::log_power(1.0, 2), InputError);
    CHECK_THROWS_AS(GaugeFunction::power(-1.0, 2), InputError);
  }

  TEST_CASE("normalization of a wobbling table against the running minimum") {
    std::vector<double> lr, lp;
    for (double x = -12.0; x <= 0.0; x += 0.02) {
      lr.push_back(x);
      lp.push_back(1.0 * x + 0.2 * std::sin(3.0 * x));
    }
    auto g = GaugeFunction::table(lr, lp, 1);
    CHECK(g.was_normalized());
    auto raw = [](double r) { return r * std::exp(0.2 * std::sin(3.0 * std::log(r))); };
    for (double r : {1e-4, 3e-3, 0.05, 0.4}) CHECK(g(r) == doctest::Approx(normalized_oracle(raw, 1, r)).epsilon(2e-3));
  }

  TEST_CASE("normalization is idempotent and φ°/r^n is non-increasing") {
    auto g = GaugeFunction::power_log(2.0, 1.5, 2);
    auto h = normalize_gauge(g);
    double prev = kInf;
    for (double x = -40.0; x <= 0.0; x += 0.1) {
      CHECK(h.log_value(x) == doctest::Approx(g.log_value(x)).epsilon(1e-9));
      const double ratio = g.log_value(x) - 2.0 * x;
      CHECK(ratio <= prev + 1e-9);
      prev = ratio;
    }
  }

  TEST_CASE("gauge conditions") {
    auto g = GaugeFunction::power_log(2.0, 1.0, 2);
    CHECK(check_gauge(g, GaugeCondition::nontrivial).verdict == Truth::yes);
    CHECK(check_gauge(g, GaugeCondition::not_lebesgue).verdict == Truth::yes);
    auto leb = GaugeFunction::power(2.0, 2);
    CHECK(check_gauge(leb, GaugeCondition::not_lebesgue).verdict == Truth::no);
    CHECK(check_gauge(leb, GaugeCondition::ratio_nonincreasing).verdict == Truth::yes);
  }

  TEST_CASE("scaled gauge is φ(k t)") {
    auto g = GaugeFunction::power_log(1.0, -1.0, 2);
    auto s = scale_gauge(g, 4.0);
    for (double r : {1e-5, 1e-3, 0.1}) CHECK(s(r) == doctest::Approx(g(4.0 * r)).epsilon(1e-9));
  }
}
