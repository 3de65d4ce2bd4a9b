#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "orlicz/curve.hpp"
#include "orlicz/numeric.hpp"

using namespace orlicz;

TEST_SUITE("numeric") {
  TEST_CASE("bisection stays in its bracket and hits the target") {
    auto f = [](double x) { return x * x * x; };
    const double x = bisect(f, 8.0, 0.0, 10.0);
    CHECK(x == doctest::Approx(2.0).epsilon(1e-8));
    const double edge = bisect(f, 0.0, 0.0, 10.0);
    CHECK(edge >= 0.0);
    CHECK(edge <= 1e-3);
  }

  TEST_CASE("bracket expansion around a far root") {
    auto f = [](double x) { return x; };
    double lo = 0.0, hi = 1.0;
    REQUIRE(expand_bracket(f, 50.0, lo, hi, -1e3, 1e3));
    CHECK(lo <= 50.0);
    CHECK(hi >= 50.0);
    double lo2 = 0.0, hi2 = 1.0;
    CHECK_FALSE(expand_bracket(f, 5e3, lo2, hi2, -1e3, 1e3));
  }

  TEST_CASE("log_sum_exp survives huge arguments") {
    CHECK(log_sum_exp({1000.0, 1000.0}) == doctest::Approx(1000.0 + std::log(2.0)));
    CHECK(log_sum_exp({-1e4, 0.0}) == doctest::Approx(0.0));
  }

  TEST_CASE("Gauss-Legendre is exact for polynomials up to degree 2m-1") {
    for (int m : {2, 5, 16}) {
      const GaussRule& g = gauss_legendre(m);
      REQUIRE(g.nodes.size() == static_cast<std::size_t>(m));
      for (int k = 0; k <= 2 * m - 1; ++k) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
        const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
        CHECK(s == doctest::Approx(exact).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("least squares recovers an exact linear model") {
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (int i = 0; i < 20; ++i) {
      const double u = i * 0.3, v = std::sin(i);
      X.push_back({1.0, u, v});
      y.push_back(2.0 - 0.5 * u + 3.0 * v);
    }
    double rms = 1.0;
    auto b = least_squares(X, y, &rms);
    CHECK(b[0] == doctest::Approx(2.0));
    CHECK(b[1] == doctest::Approx(-0.5));
    CHECK(b[2] == doctest::Approx(3.0));
    CHECK(rms < 1e-10);
  }

  TEST_CASE("parallel_for visits each index once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }

  TEST_CASE("thread count follows the environment variable") {
    ::setenv("ORLICZ_DISTORT_THREADS", "3", 1);
    CHECK(worker_threads() == 3u);
    ::unsetenv("ORLICZ_DISTORT_THREADS");
    CHECK(worker_threads() >= 1u);
  }

  TEST_CASE("linspace endpoints") {
    auto v = linspace(-1.0, 1.0, 5);
    REQUIRE(v.size() == 5);
    CHECK(v.front() == -1.0);
    CHECK(v.back() == 1.0);
    CHECK(v[2] == doctest::Approx(0.0));
  }
}

TEST_SUITE("curve") {
  TEST_CASE("Hermite table reproduces a straight line and extends it") {
    std::vector<double> x, y;
    for (int i = 0; i <= 40; ++i) {
      x.push_back(-2.0 + 0.1 * i);
      y.push_back(1.5 * x.back() - 0.25);
    }
    auto t = HermiteTable::from_data(x, y);
    for (double q : {-1.93, 0.0, 1.234, 5.0, -9.0}) {
      CHECK(t->log_value(q) == doctest::Approx(1.5 * q - 0.25).epsilon(1e-12));
      CHECK(t->log_slope(q) == doctest::Approx(1.5).epsilon(1e-9));
    }
  }

  TEST_CASE("PCHIP slopes keep monotone data monotone") {
    std::vector<double> x{0, 1, 2, 3, 4, 5}, y{0, 0.1, 0.1, 3, 3.01, 10};
    auto t = HermiteTable::from_data(x, y);
    double prev = -1.0;
    for (double q = 0.0; q <= 5.0; q += 0.01) {
      const double v = t->log_value(q);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }

  TEST_CASE("closed-form curves match direct evaluation") {
    PowerLogCurve pl(2.0, 3.0, std::exp(1.0));
    ExpCurve ex(1.5, 2.0);
    GaugePowerLogCurve g(1.0, -2.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
      const double x = U(rng), t = std::exp(x);
      CHECK(pl.log_value(x) ==
            doctest::Approx(std::log(t * t * std::pow(std::log(std::exp(1.0) + t), 3.0))));
      CHECK(ex.log_value(x) == doctest::Approx(2.0 * x + std::pow(t, 1.5)));
      CHECK(g.log_value(x) ==
            doctest::Approx(x - 2.0 * std::log(std::log(std::exp(1.0) + 1.0 / t))));
      // slope oracle: central difference
      const double h = 1e-5;
      CHECK(pl.log_slope(x) ==
            doctest::Approx((pl.log_value(x + h) - pl.log_value(x - h)) / (2 * h)).epsilon(1e-6));
      CHECK(g.log_slope(x) ==
            doctest::Approx((g.log_value(x + h) - g.log_value(x - h)) / (2 * h)).epsilon(1e-6));
    }
  }

  TEST_CASE("tabulated inverse undoes the curve") {
    PowerLogCurve pl(3.0, 1.0, std::exp(1.0));
    Grid g{-20.0, 20.0, 0.05};
    auto inv = inverse_table(pl, g);
    for (double x : {-10.0, -1.0, 0.3, 7.0, 15.0}) {
      CHECK(inv->log_value(pl.log_value(x)) == doctest::Approx(x).epsilon(1e-6));
      CHECK(solve_log(pl, pl.log_value(x)) == doctest::Approx(x).epsilon(1e-7));
    }
  }

  TEST_CASE("shifted curve is t -> e^dy f(e^dx t)") {
    auto base = std::make_shared<PowerCurve>(2.0);
    ShiftedCurve s(base, 1.0, 0.5);
    CHECK(s.log_value(0.3) == doctest::Approx(2.0 * 1.3 + 0.5));
  }
}
