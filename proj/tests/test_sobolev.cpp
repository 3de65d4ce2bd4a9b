#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/sobolev_conjugate.hpp"

using namespace orlicz;

TEST_SUITE("sobolev_conjugate") {
  TEST_CASE("B for a power above the dimension") {
    // Ã = k s^{p'}, so B̃ = k/(n'−p') t^{p'} and B is the conjugate of that power.
    for (auto [n, p] : {std::pair{2, 4.0}, std::pair{3, 5.0}, std::pair{2, 3.0}}) {
      const double pp = p / (p - 1.0), np = n / (n - 1.0);
      const double k = oracle::power_conjugate(1.0, p, 1.0);
      const double c = k / (np - pp);
      auto A = YoungFunction::power(p);
      auto Bt = sobolev_dual(A, n);
      auto B = sobolev_conjugate(A, n);
      for (double t : {1e-3, 0.5, 2.0, 80.0, 1e5}) {
        CHECK(oracle::rel(Bt(t), c * std::pow(t, pp)) < 1e-4);
        CHECK(oracle::rel(B(t), oracle::power_conjugate(c, pp, t)) < 1e-4);
      }
    }
  }

  TEST_CASE("B equals A on the line") {
    auto A = YoungFunction::power_log(2.0, 1.0);
    auto B = sobolev_conjugate(A, 1);
    for (double t : {0.01, 1.0, 100.0}) CHECK(B(t) == doctest::Approx(A(t)));
  }

  TEST_CASE("Young functions without the embedding are rejected") {
    CHECK_THROWS_AS(sobolev_conjugate(YoungFunction::power(2.0), 2), InputError);
    CHECK_THROWS_AS(sobolev_conjugate(YoungFunction::power(1.5), 2), InputError);
  }

  TEST_CASE("B is equivalent to A near infinity for powers above n") {
    auto A = YoungFunction::power(4.0);
    auto B = sobolev_conjugate(A, 2);
    auto eq = compare_sobolev(A, B);
    CHECK(eq.c1 > 0.0);
    CHECK(eq.c2 / eq.c1 < 1.01);
  }

  TEST_CASE("Φ_B(r) = r B⁻¹(1/r)^n") {
    auto A = YoungFunction::power(4.0);
    auto B = sobolev_conjugate(A, 2);
    CHECK(phi_B(B, 2, 0.0) == 0.0);
    for (double r : {1e-6, 1e-2, 1.0}) {
      const double y = inverse(B, 1.0 / r);
      CHECK(phi_B(B, 2, r) == doctest::Approx(r * y * y).epsilon(1e-6));
    }
  }

  TEST_CASE("t^2 log^q has a finite B in the plane for q > 1") {
    for (double q : {2.0, 3.0}) CHECK_NOTHROW(sobolev_conjugate(YoungFunction::power_log(2.0, q), 2));
  }
}
