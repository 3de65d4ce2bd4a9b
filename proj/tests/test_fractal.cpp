#include <doctest.h>

#include <cmath>
#include <random>

#include "orlicz/errors.hpp"
#include "orlicz/fractal_lab.hpp"
#include "orlicz/sobolev_conjugate.hpp"

using namespace orlicz;

TEST_SUITE("fractal_lab") {
  TEST_CASE("cube counts and nesting") {
    CHECK(cantor_count(1.0, 3) == 8);
    CHECK(cantor_count(0.5, 3) == 2);
    CantorSet c = build_cantor({2, 1.0, 4, 9});
    REQUIRE(c.depth() == 4);
    for (int j = 1; j <= 4; ++j) {
      CHECK(c.family(j).size() == cantor_count(1.0, j));
      for (const auto& q : c.family(j)) CHECK(q.level == (1 << j));
    }
    for (int j = 2; j <= 4; ++j)
      for (std::size_t i = 0; i < c.family(j).size(); ++i)
        CHECK(c.family(j - 1)[c.parent[j - 1][i]].contains(c.family(j)[i]));
    CHECK_THROWS_AS(build_cantor({2, -1.0, 3, 1}), InputError);
  }

  TEST_CASE("bump profile and its gradient") {
    const std::vector<double> centre{0.5, 0.5};
    const int j = 3;
    const double inner = std::ldexp(1.0, -(1 << j)) / 2, outer = std::ldexp(1.0, -(1 << (j - 1))) / 2;
    double x[2] = {0.5, 0.5};
    CHECK(eta_bump(j, centre, x) == 1.0);
    x[0] = 0.5 + outer * 1.01;
    CHECK(eta_bump(j, centre, x) == 0.0);
    const double rho = std::sqrt(inner * outer), h = rho * 1e-6;
    double a[2] = {0.5 + rho - h, 0.5}, b[2] = {0.5 + rho + h, 0.5};
    const double fd = (eta_bump(j, centre, b) - eta_bump(j, centre, a)) / (2 * h);
    CHECK(eta_gradient(j, rho) == doctest::Approx(std::abs(fd)).epsilon(1e-6));
  }

  TEST_CASE("parameter preconditions") {
    RandomMapSpec s;
    s.q = 5.0;
    s.mu = 2.6;
    CHECK(s.sigma() == doctest::Approx(0.4));
    CHECK_NOTHROW(s.validate());
    s.delta = 0.9;
    CHECK_THROWS_AS(s.validate(), InputError);
  }

  TEST_CASE("shift keeps the energy gauge increasing") {
    for (auto [sigma, mu] : {std::pair{0.4, 2.6}, std::pair{1.0, 3.5}}) {
      const double b = increasing_shift(sigma, mu);
      double prev = 0.0;
      for (double x = -60.0; x < 3.0; x += 0.01) {
        const double r = std::exp(x);
        const double v = std::pow(r, sigma) * std::pow(std::log2(b + 1.0 / r), mu);
        CHECK(v > prev);
        prev = v;
      }
    }
  }

  TEST_CASE("seeds are reproducible and decorrelated") {
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
      auto v = sample_ball(3, rng);
      CHECK(std::hypot(v[0], v[1], v[2]) <= 1.0);
    }
  }

  TEST_CASE("construction invariants and energy bookkeeping") {
    RandomMapSpec s;
    s.q = 5.0;
    s.mu = 2.6;
    s.levels = 4;
    RandomMap map(s);
    auto inv = check_construction(map, 300);
    CHECK(inv.nesting);
    CHECK(inv.counts);
    CHECK(inv.overlap_bounded);
    CHECK(inv.coefficient_bound);
    CHECK(inv.truncation_gap <= inv.truncation_bound);

    auto e1 = energy_integral_mc(s, 50), e2 = energy_integral_mc(s, 50);
    double mass = e1.separated.mass + e1.truncated.mass;
    for (const auto& l : e1.levels) mass += l.mass;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e1.total == e2.total);
  }

  TEST_CASE("Morrey-type inequality for a linear map") {
    auto A = YoungFunction::power(4.0);
    auto B = sobolev_conjugate(A, 2);
    auto s = morrey_linear(2, {2.0, 0.5, -1.0, 3.0});
    CHECK(s.cube_diameter == doctest::Approx(std::sqrt(2.0)));
    for (double lambda : {0.5, 1.0, 4.0}) CHECK(morrey_residual(s, A, B, 2, lambda, 1.0) <= 0.0);
  }
}
