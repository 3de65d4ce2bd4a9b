#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/hausdorff_net.hpp"

using namespace orlicz;

namespace {

// Every dyadic cube of levels 0..bottom in [0,1]^dim.
std::vector<DyadicCube> all_cubes(int dim, int bottom) {
  std::vector<DyadicCube> out;
  for (int l = 0; l <= bottom; ++l) {
    const std::int64_t m = std::int64_t{1} << l;
    std::int64_t total = 1;
    for (int k = 0; k < dim; ++k) total *= m;
    for (std::int64_t i = 0; i < total; ++i) {
      DyadicCube c{l, {}};
      std::int64_t v = i;
      for (int k = 0; k < dim; ++k) {
        c.coords.push_back(v % m);
        v /= m;
      }
      out.push_back(c);
    }
  }
  return out;
}

// Minimum of Σ φ(diam) over every subset of dyadic cubes whose union contains E.
double brute_force_cover(const CubeSet& E, const GaugeFn& phi) {
  const int dim = E.dim(), bottom = E.finest_level();
  auto cubes = all_cubes(dim, bottom);
  std::vector<DyadicCube> cells;  // E refined to the bottom level
  for (const auto& c : all_cubes(dim, bottom))
    if (c.level == bottom)
      for (const auto& e : E.cubes())
        if (e.contains(c)) cells.push_back(c);
  const std::size_t m = cubes.size();
  REQUIRE(m < 24);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    double cost = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) cost += phi(cubes[i].diameter());
    if (cost >= best) continue;
    bool ok = true;
    for (const auto& cell : cells) {
      bool hit = false;
      for (std::size_t i = 0; i < m && !hit; ++i) hit = (mask >> i & 1u) && cubes[i].contains(cell);
      if (!hit) {
        ok = false;
        break;
      }
    }
    if (ok) best = cost;
  }
  return best;
}

}  // namespace

TEST_SUITE("hausdorff_net") {
  TEST_CASE("dyadic cube geometry") {
    DyadicCube c{3, {5, 2}};
    CHECK(c.side() == 0.125);
    CHECK(c.diameter() == doctest::Approx(0.125 * std::sqrt(2.0)));
    CHECK(c.ancestor(1) == DyadicCube{1, {1, 0}});
    CHECK(DyadicCube{1, {1, 0}}.contains(c));
    CHECK(c.adjacent_or_equal(DyadicCube{3, {6, 3}}));
    CHECK_FALSE(c.adjacent_or_equal(DyadicCube{3, {7, 2}}));
  }

  TEST_CASE("cube sets must be antichains") {
    CHECK_THROWS_AS(CubeSet(1, {{1, {0}}, {2, {0}}}), InputError);
    auto a = CubeSet::antichain(1, {{1, {0}}, {2, {0}}, {2, {0}}});
    CHECK(a.size() == 1);
    auto p = CubeSet::from_points(2, {0.1, 0.1, 0.12, 0.13, 0.9, 0.9}, 2);
    CHECK(p.size() == 2);
  }

  TEST_CASE("net premeasure equals brute-force minimum over all covers") {
    std::mt19937_64 rng(17);
    const std::vector<GaugeFn> gauges = {
        [](double r) { return std::pow(r, 0.5); },
        [](double r) { return r; },
        [](double r) { return std::pow(r, 1.7); },
        [](double r) { return r * r * (1.0 + 0.3 * std::sin(40.0 * r)); },
    };
    for (int trial = 0; trial < 40; ++trial) {
      const int dim = trial % 2 ? 1 : 2;
      const int bottom = dim == 1 ? 3 : 2;
      std::vector<DyadicCube> cubes;
      for (const auto& c : all_cubes(dim, bottom))
        if (c.level == bottom && rng() % 3 == 0) cubes.push_back(c);
      if (cubes.empty()) cubes.push_back(all_cubes(dim, bottom).back());
      CubeSet E(dim, cubes);
      const GaugeFn& phi = gauges[trial % gauges.size()];
      const double oracle = brute_force_cover(E, phi);
      auto nm = net_premeasure(E, phi, kInf);
      CHECK(nm.value == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(cover_cost(nm.cover, dim, phi) == nm.value);
      auto ex = exhaustive_premeasure(E, phi, kInf);
      REQUIRE(ex.has_value());
      CHECK(*ex == nm.value);
    }
  }

  TEST_CASE("σ restricts the coarsest level") {
    CHECK(top_level_for(1, kInf) == 0);
    CHECK(top_level_for(1, 0.25) == 2);
    CHECK(top_level_for(2, 0.25) == 3);
    CubeSet E(1, {{3, {0}}, {3, {7}}});
    GaugeFn phi = [](double r) { return std::sqrt(r); };
    auto nm = net_premeasure(E, phi, 0.25);
    for (const auto& piece : nm.cover) CHECK(piece.cube.level >= 2);
    CHECK_THROWS_AS(net_premeasure(E, phi, 0.01), RangeError);
  }

  TEST_CASE("sandwich and normalization checks on a gauge below n") {
    CubeSet E(2, {{3, {1, 1}}, {3, {6, 2}}, {4, {15, 15}}});
    auto phi = GaugeFunction::power_log(1.5, 1.0, 2);
    auto s = sandwich_check(E, phi, kInf, 36.0);
    CHECK(s.lower_holds);
    CHECK(s.certified);
    auto ns = normalization_sandwich(E, phi, kInf);
    CHECK(ns.holds);
  }

  TEST_CASE("dimension of a four-corner Cantor set") {
    // Level j keeps 2^j intervals of length 4^{-j}; with φ_θ = r^θ the level sums are
    // 2^{j(1−2θ)}, so the slope changes sign at θ = 1/2.
    std::vector<CubeSet> levels;
    std::vector<std::int64_t> cur{0};
    for (int j = 1; j <= 6; ++j) {
      std::vector<std::int64_t> next;
      for (auto c : cur) {
        next.push_back(4 * c);
        next.push_back(4 * c + 3);
      }
      cur = next;
      std::vector<DyadicCube> cubes;
      for (auto c : cur) cubes.push_back({2 * j, {c}});
      levels.emplace_back(1, cubes);
    }
    GaugeFamily fam = [](double theta, double r) { return std::pow(r, theta); };
    auto fit = dimension_fit(levels, fam, 0.05, 2.0);
    CHECK(fit.critical == doctest::Approx(0.5).epsilon(1e-5));
    CHECK_FALSE(fit.degenerate);
  }
}
