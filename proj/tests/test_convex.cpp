#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orlicz/convex_calculus.hpp"
#include "orlicz/errors.hpp"

using namespace orlicz;

TEST_SUITE("convex_calculus") {
  TEST_CASE("constructors reject non-Young input") {
    CHECK_THROWS_AS(YoungFunction::power(0.5), InputError);
    CHECK_THROWS_AS(YoungFunction::exponential(-1.0), InputError);
    CHECK_THROWS_AS(YoungFunction::power(1.0), InputError);
    CHECK_NOTHROW(YoungFunction::power(1.01));
  }

  TEST_CASE("evaluation of the closed forms") {
    auto A = YoungFunction::power(3.0, 2.0);
    CHECK(A(2.0) == doctest::Approx(16.0));
    auto L = YoungFunction::power_log(2.0, 1.0);
    CHECK(L(3.0) == doctest::Approx(9.0 * std::log(std::exp(1.0) + 3.0)));
    auto E = YoungFunction::exponential(1.0);
    CHECK(E(1.5) == doctest::Approx(2.25 * std::exp(1.5)));
  }

  TEST_CASE("conjugate of a power against the closed form") {
    for (double p : {1.5, 2.0, 4.0}) {
      auto A = YoungFunction::power(p, 0.7);
      auto C = conjugate(A);
      for (double t : {1e-3, 0.2, 1.0, 17.0, 1e4}) {
        CHECK(oracle::rel(C(t), oracle::power_conjugate(0.7, p, t)) < 1e-6);
        CHECK(oracle::rel(conjugate_value(A, t), oracle::power_conjugate(0.7, p, t)) < 1e-8);
      }
    }
  }

  TEST_CASE("conjugate of t^2 log(e+t) against direct maximisation") {
    auto A = YoungFunction::power_log(2.0, 1.0);
    auto C = conjugate(A);
    for (double t : {0.5, 3.0, 40.0, 900.0}) {
      const double direct = oracle::maximise([&](double tau) { return tau * t - A(tau); }, 0.0, t);
      CHECK(oracle::rel(C(t), direct) < 1e-5);
    }
  }

  TEST_CASE("inverse is a right inverse") {
    auto A = YoungFunction::exponential(2.0);
    for (double y : {1e-6, 0.3, 5.0, 1e20}) CHECK(oracle::rel(A(inverse(A, y)), y) < 1e-7);
  }

  TEST_CASE("Matuszewska index of powers") {
    auto A = YoungFunction::power(3.0);
    auto inf = matuszewska_index(A, IndexRegime::infinity);
    CHECK(inf.value == doctest::Approx(3.0).epsilon(1e-6));
    auto E = YoungFunction::exponential(1.0);
    auto e = matuszewska_index(E, IndexRegime::infinity);
    CHECK((e.above_cap || e.value > 100.0));
  }

  TEST_CASE("embedding and divergence conditions") {
    // ∫^∞ (t/A)^{1/(n-1)} dt with n = 2: finite for t^4 and t^2 log^2, infinite for t^2.
    CHECK(check_condition(YoungFunction::power(4.0), 2, Condition::embedding_at_infinity).verdict == Truth::yes);
    CHECK(check_condition(YoungFunction::power_log(2.0, 2.0), 2, Condition::embedding_at_infinity).verdict ==
          Truth::yes);
    CHECK(check_condition(YoungFunction::power(2.0), 2, Condition::embedding_at_infinity).verdict == Truth::no);
    CHECK(check_condition(YoungFunction::power_log(2.0, 0.5), 2, Condition::embedding_at_infinity).verdict ==
          Truth::no);
    // q = 1 is the borderline ∫ dt/(t log t); no verdict is forced there.
    CHECK(check_condition(YoungFunction::power_log(2.0, 1.0), 2, Condition::embedding_at_infinity).verdict !=
          Truth::yes);
    // ∫_0 (t/A) dt = ∞ for t^4 near 0.
    CHECK(check_condition(YoungFunction::power(4.0), 2, Condition::divergence_at_zero).verdict == Truth::yes);
    CHECK(check_condition(YoungFunction::power(1.5), 2, Condition::divergence_at_zero).verdict == Truth::no);
  }

  TEST_CASE("Luxemburg norm of a power modular") {
    // Σ w (v/λ)^p = 1  ⇔  λ = (Σ w v^p)^{1/p}
    auto A = YoungFunction::power(3.0);
    FieldSample f;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.1, 4.0);
    double s = 0.0;
    for (int i = 0; i < 30; ++i) {
      const double w = U(rng) / 30.0, v = U(rng);
      f.add(w, v);
      s += w * v * v * v;
    }
    const double lam = luxemburg_norm(f, A);
    CHECK(lam == doctest::Approx(std::cbrt(s)).epsilon(1e-9));
    CHECK(modular(f, A, lam) <= 1.0 + 1e-12);
  }

  TEST_CASE("Young's inequality on random pairs") {
    auto A = YoungFunction::power_log(3.0, 1.0);
    auto C = conjugate(A);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-6.0, 6.0);
    for (int i = 0; i < 500; ++i) {
      const double s = std::exp(U(rng)), t = std::exp(U(rng));
      CHECK(s * t <= (A(s) + C(t)) * (1 + 1e-9));
    }
  }
}
