#include "orlicz/hausdorff_net.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr int kMaxLevel = 62;

double diameter_at(int dim, int level) {
  return std::sqrt(static_cast<double>(dim)) * std::ldexp(1.0, -level);
}

DyadicCube child(const DyadicCube& q, std::uint64_t which) {
  DyadicCube c{q.level + 1, q.coords};
  for (std::size_t i = 0; i < c.coords.size(); ++i)
    c.coords[i] = 2 * c.coords[i] + static_cast<std::int64_t>((which >> i) & 1u);
  return c;
}

/// Node of the search: a cube and the E-cubes inside it, or a cube inside E.
struct Node {
  DyadicCube cube;
  bool full = false;
  std::vector<const DyadicCube*> inside;
};

/// Children of a node that meet E.
std::vector<Node> split(const Node& nd) {
  std::vector<Node> out;
  const std::uint64_t count = std::uint64_t{1} << nd.cube.dim();
  if (nd.full) {
    for (std::uint64_t w = 0; w < count; ++w) out.push_back({child(nd.cube, w), true, {}});
    return out;
  }
  std::map<std::uint64_t, Node> by_child;
  const int lvl = nd.cube.level + 1;
  for (const DyadicCube* e : nd.inside) {
    DyadicCube a = e->ancestor(lvl);
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < a.coords.size(); ++i)
      w |= static_cast<std::uint64_t>(a.coords[i] & 1) << i;
    auto [it, fresh] = by_child.try_emplace(w);
    if (fresh) it->second.cube = std::move(a);
    if (e->level == lvl)
      it->second.full = true;
    else
      it->second.inside.push_back(e);
  }
  for (auto& [w, c] : by_child) {
    if (c.full) c.inside.clear();
    out.push_back(std::move(c));
  }
  return out;
}

struct Solved {
  double cost = 0.0;
  std::vector<CoverPiece> cover;
};

struct Solver {
  int dim;
  int top;
  int bottom;
  const GaugeFn& phi;
  std::vector<double> full_cost;  // by level
  std::vector<int> full_depth;

  void prepare() {
    full_cost.assign(bottom + 1, 0.0);
    full_depth.assign(bottom + 1, 0);
    const double fan = std::ldexp(1.0, dim);
    for (int l = bottom; l >= top; --l) {
      full_cost[l] = phi(diameter_at(dim, l));
      if (l < bottom && fan * full_cost[l + 1] < full_cost[l]) {
        full_cost[l] = fan * full_cost[l + 1];
        full_depth[l] = full_depth[l + 1] + 1;
      }
    }
  }

  Solved solve(const Node& nd) const {
    const int l = nd.cube.level;
    if (nd.full && l >= top) return {full_cost[l], {{nd.cube, full_depth[l]}}};
    Solved sum;
    for (const Node& c : split(nd)) {
      Solved s = solve(c);
      sum.cost += s.cost;
      sum.cover.insert(sum.cover.end(), s.cover.begin(), s.cover.end());
    }
    if (l >= top) {
      double own = phi(diameter_at(dim, l));
      if (own <= sum.cost) return {own, {{nd.cube, 0}}};
    }
    return sum;
  }
};

Node root_node(const CubeSet& E) {
  Node root{DyadicCube{0, std::vector<std::int64_t>(E.dim(), 0)}, false, {}};
  for (const auto& c : E.cubes()) root.inside.push_back(&c);
  if (E.size() == 1 && E.cubes()[0].level == 0) root.full = true;
  return root;
}

}  // namespace

double DyadicCube::side() const { return std::ldexp(1.0, -level); }

double DyadicCube::diameter() const { return diameter_at(static_cast<int>(dim()), level); }

DyadicCube DyadicCube::ancestor(int lvl) const {
  if (lvl > level) throw InputError("ancestor level is finer than the cube");
  DyadicCube a{lvl, coords};
  for (auto& c : a.coords) c >>= (level - lvl);
  return a;
}

bool DyadicCube::contains(const DyadicCube& other) const {
  return other.dim() == dim() && other.level >= level && other.ancestor(level) == *this;
}

bool DyadicCube::adjacent_or_equal(const DyadicCube& other) const {
  if (other.level != level || other.dim() != dim()) return false;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (std::abs(coords[i] - other.coords[i]) > 1) return false;
  return true;
}

std::vector<double> DyadicCube::center() const {
  std::vector<double> c(coords.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = std::ldexp(static_cast<double>(coords[i]) + 0.5, -level);
  return c;
}

CubeSet::CubeSet(int dim, std::vector<DyadicCube> cubes) : dim_(dim), cubes_(std::move(cubes)) {
  if (dim < 1 || dim > 16) throw InputError("cube set dimension must be in [1, 16]");
  std::sort(cubes_.begin(), cubes_.end());
  std::set<DyadicCube> seen;
  for (const auto& c : cubes_) {
    if (static_cast<int>(c.dim()) != dim) throw InputError("cube dimension mismatch");
    if (c.level < 0 || c.level > kMaxLevel) throw InputError("cube level out of range");
    const std::int64_t n = std::int64_t{1} << c.level;
    for (auto k : c.coords)
      if (k < 0 || k >= n) throw InputError("cube outside the unit cube");
    for (int l = 0; l <= c.level; ++l)
      if (seen.count(c.ancestor(l)))
        throw InputError("cube set is not an antichain (duplicate or nested cubes)");
    seen.insert(c);
  }
  // A coarser cube listed after a finer one inside it is caught here.
  for (const auto& c : cubes_)
    for (int l = 0; l < c.level; ++l)
      if (seen.count(c.ancestor(l)))
        throw InputError("cube set is not an antichain (duplicate or nested cubes)");
}

CubeSet CubeSet::antichain(int dim, std::vector<DyadicCube> cubes) {
  std::set<DyadicCube> all(cubes.begin(), cubes.end());
  std::vector<DyadicCube> kept;
  for (const auto& c : all) {
    bool covered = false;
    for (int l = 0; l < c.level && !covered; ++l) covered = all.count(c.ancestor(l)) > 0;
    if (!covered) kept.push_back(c);
  }
  return CubeSet(dim, std::move(kept));
}

CubeSet CubeSet::from_points(int dim, const std::vector<double>& coords, int level) {
  if (dim < 1) throw InputError("dimension must be positive");
  if (coords.size() % static_cast<std::size_t>(dim) != 0)
    throw InputError("point coordinates are not a multiple of the dimension");
  if (level < 0 || level > kMaxLevel) throw InputError("resolution level out of range");
  const double scale = std::ldexp(1.0, level);
  const std::int64_t top = (std::int64_t{1} << level) - 1;
  std::vector<DyadicCube> cubes;
  for (std::size_t p = 0; p < coords.size(); p += static_cast<std::size_t>(dim)) {
    DyadicCube c{level, {}};
    for (int i = 0; i < dim; ++i) {
      double x = coords[p + static_cast<std::size_t>(i)];
      if (!(x >= 0.0 && x <= 1.0)) throw InputError("point outside the unit cube");
      c.coords.push_back(std::min(top, static_cast<std::int64_t>(std::floor(x * scale))));
    }
    cubes.push_back(std::move(c));
  }
  return antichain(dim, std::move(cubes));
}

int CubeSet::finest_level() const {
  int l = 0;
  for (const auto& c : cubes_) l = std::max(l, c.level);
  return l;
}

int CubeSet::coarsest_level() const {
  int l = kMaxLevel;
  for (const auto& c : cubes_) l = std::min(l, c.level);
  return cubes_.empty() ? 0 : l;
}

int top_level_for(int dim, double sigma) {
  if (!(sigma > 0)) throw InputError("sigma must be positive");
  if (std::isinf(sigma)) return 0;
  int l = 0;
  while (diameter_at(dim, l) > sigma * (1 + 1e-12)) {
    if (++l > kMaxLevel) break;
  }
  return l;
}

double cover_cost(const std::vector<CoverPiece>& cover, int dim, const GaugeFn& phi) {
  std::map<double, long double> groups;
  for (const auto& p : cover) {
    double v = phi(diameter_at(dim, p.cube.level + p.depth));
    groups[v] += std::ldexp(1.0L, dim * p.depth);
  }
  long double s = 0.0L;
  for (auto [v, count] : groups) s += count * static_cast<long double>(v);
  return static_cast<double>(s);
}

NetMeasure net_premeasure(const CubeSet& E, const GaugeFn& phi, double sigma) {
  NetMeasure m;
  m.top_level = top_level_for(E.dim(), sigma);
  m.bottom_level = E.finest_level();
  if (E.empty()) return m;
  if (m.top_level > m.bottom_level)
    throw RangeError("sigma is below the resolution of the cube set", diameter_at(E.dim(), m.bottom_level),
                     kInf);
  Solver s{E.dim(), m.top_level, m.bottom_level, phi, {}, {}};
  s.prepare();
  Solved r = s.solve(root_node(E));
  std::sort(r.cover.begin(), r.cover.end(),
            [](const CoverPiece& a, const CoverPiece& b) { return a.cube < b.cube; });
  m.cover = std::move(r.cover);
  m.value = cover_cost(m.cover, E.dim(), phi);
  return m;
}

NetMeasure net_premeasure(const CubeSet& E, const GaugeFunction& phi, double sigma) {
  return net_premeasure(E, GaugeFn([&phi](double r) { return phi(r); }), sigma);
}

std::optional<double> exhaustive_premeasure(const CubeSet& E, const GaugeFn& phi, double sigma,
                                            std::size_t node_budget) {
  if (E.empty()) return 0.0;
  const int dim = E.dim();
  const int top = top_level_for(dim, sigma);
  const int bottom = E.finest_level();
  if (top > bottom)
    throw RangeError("sigma is below the resolution of the cube set", diameter_at(dim, bottom), kInf);

  // Mandatory splits above the top level.
  std::vector<Node> frontier{root_node(E)};
  for (int l = 0; l < top; ++l) {
    std::vector<Node> next;
    for (const Node& nd : frontier)
      for (Node& c : split(nd)) next.push_back(std::move(c));
    frontier = std::move(next);
  }
  // Any piece meeting a node costs at least φ(d_bottom); a piece of level ℓ covers at
  // most 2^{n(bottom−ℓ)} bottom-level atoms, so each atom costs at least `per_atom`.
  const double floor_cost = phi(diameter_at(dim, bottom));
  double per_atom = kInf;
  for (int l = top; l <= bottom; ++l)
    per_atom = std::min(per_atom, std::ldexp(phi(diameter_at(dim, l)), -dim * (bottom - l)));
  auto lower_bound = [&](const std::vector<Node>& open) {
    double lb = 0.0;
    for (const Node& nd : open) {
      double atoms = 0.0;
      if (nd.full) atoms = std::ldexp(1.0, dim * (bottom - nd.cube.level));
      for (const DyadicCube* e : nd.inside) atoms += std::ldexp(1.0, dim * (bottom - e->level));
      lb += std::max(floor_cost, atoms * per_atom);
    }
    return lb;
  };

  std::size_t visited = 0;
  bool exhausted = false;
  double best = kInf;       // canonical cost of the best cover
  double best_run = kInf;   // running sum of the same cover, for pruning
  std::vector<CoverPiece> chosen;

  std::function<void(std::vector<Node>&, double)> explore = [&](std::vector<Node>& open,
                                                                double partial) {
    if (exhausted) return;
    if (++visited > node_budget) {
      exhausted = true;
      return;
    }
    if (open.empty()) {
      double c = cover_cost(chosen, dim, phi);
      if (c < best) best = c;
      best_run = std::min(best_run, partial);
      return;
    }
    if (partial + lower_bound(open) > best_run * (1 + 1e-9)) return;
    Node nd = std::move(open.back());
    open.pop_back();

    chosen.push_back({nd.cube, 0});
    explore(open, partial + phi(nd.cube.diameter()));
    chosen.pop_back();

    if (nd.cube.level < bottom) {
      auto kids = split(nd);
      const std::size_t mark = open.size();
      for (auto& k : kids) open.push_back(std::move(k));
      explore(open, partial);
      open.resize(mark);
    }
    open.push_back(std::move(nd));
  };
  explore(frontier, 0.0);
  if (exhausted) return std::nullopt;
  return best;
}

SandwichReport sandwich_check(const CubeSet& E, const GaugeFunction& phi, double sigma,
                              double c_n) {
  SandwichReport r;
  r.sigma = sigma;
  r.c_n = c_n;
  const int n = E.dim();
  const int bottom = E.finest_level();
  const int k0 = std::isinf(sigma) ? 0 : std::max(0, static_cast<int>(std::floor(-std::log2(sigma))));
  double rho = 0.0;
  for (int k = k0; k <= bottom + 64; ++k)
    rho = std::max(rho, phi(diameter_at(n, k)) / phi(std::ldexp(1.0, -k - 1)));
  r.enlarge = std::ldexp(rho, n);
  const double grow = 2 * std::sqrt(static_cast<double>(n));
  r.lambda_sigma = net_premeasure(E, phi, sigma).value;
  r.lambda_half = net_premeasure(E, phi, sigma / 2).value;
  r.h_lower = net_premeasure(E, phi, grow * sigma).value / r.enlarge;
  r.h_lower_half = net_premeasure(E, phi, grow * sigma / 2).value / r.enlarge;
  r.measured_constant = r.h_lower_half > 0 ? r.lambda_sigma / r.h_lower_half : 0.0;
  r.lower_holds = r.h_lower <= r.lambda_sigma * (1 + 1e-12);
  r.certified = r.lambda_sigma <= c_n * r.h_lower_half * (1 + 1e-12);
  return r;
}

NormalizationSandwich normalization_sandwich(const CubeSet& E, const GaugeFunction& phi,
                                             double sigma) {
  const int n = E.dim();
  NormalizationSandwich s;
  s.raw = net_premeasure(E, GaugeFn([&phi](double r) { return phi.raw_value(r); }), sigma).value;
  // cheapest way to cover a cube of diameter d by its descendants of one generation
  GaugeFn split = [&phi, n](double d) {
    double best = phi.raw_value(d);
    for (int k = 1; k <= 64; ++k)
      best = std::min(best, std::ldexp(phi.raw_value(std::ldexp(d, -k)), n * k));
    return best;
  };
  s.raw_split = net_premeasure(E, split, sigma).value;
  s.normalized = net_premeasure(E, phi, sigma).value;
  s.ratio = s.raw_split > 0 ? s.normalized / s.raw_split : 1.0;
  // φ° is a tabulated running minimum; it matches φ only to interpolation accuracy
  const double slack = 1e-3;
  s.holds = s.normalized <= std::min(s.raw, s.raw_split) * (1 + slack) &&
            s.normalized >= std::ldexp(s.raw_split, -n) * (1 - slack);
  return s;
}

std::vector<double> level_sums(const std::vector<CubeSet>& levels, const GaugeFamily& phi,
                               double theta) {
  std::vector<double> out;
  for (const auto& E : levels) {
    long double s = 0.0L;
    for (const auto& c : E.cubes()) s += phi(theta, c.diameter());
    out.push_back(static_cast<double>(s));
  }
  return out;
}

namespace {

double log_sum_slope(const std::vector<double>& sums) {
  const double m = static_cast<double>(sums.size());
  double sj = 0, sy = 0, sjj = 0, sjy = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    double j = static_cast<double>(i + 1), y = std::log(sums[i]);
    sj += j;
    sy += y;
    sjj += j * j;
    sjy += j * y;
  }
  return (m * sjy - sj * sy) / (m * sjj - sj * sj);
}

}  // namespace

DimensionFit dimension_fit(const std::vector<CubeSet>& levels, const GaugeFamily& phi, double lo,
                           double hi, double tol) {
  if (levels.size() < 4) throw InputError("dimension_fit needs at least 4 levels");
  if (!(lo < hi)) throw InputError("dimension_fit needs lo < hi");
  DimensionFit f;
  for (std::size_t i = 0; i < levels.size(); ++i) f.levels.push_back(static_cast<int>(i + 1));
  bool all_empty = true, any_empty = false;
  for (const auto& E : levels) {
    all_empty = all_empty && E.empty();
    any_empty = any_empty || E.empty();
  }
  if (all_empty) {
    f.degenerate = true;
    f.level_sums.assign(levels.size(), 0.0);
    f.note = "every level is empty";
    return f;
  }
  if (any_empty) throw InputError("dimension_fit: some but not all levels are empty");

  auto slope = [&](double th) { return log_sum_slope(level_sums(levels, phi, th)); };
  double s_lo = slope(lo), s_hi = slope(hi);
  if (!(s_lo > 0 && s_hi < 0))
    throw DomainError("dimension_fit: level sums do not change trend inside [lo, hi]");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (slope(mid) > 0 ? lo : hi) = mid;
  }
  f.critical = 0.5 * (lo + hi);
  f.level_sums = level_sums(levels, phi, f.critical);
  bool up = true, down = true;
  for (std::size_t i = 1; i < f.level_sums.size(); ++i) {
    up = up && f.level_sums[i] >= f.level_sums[i - 1];
    down = down && f.level_sums[i] <= f.level_sums[i - 1];
  }
  f.monotone = up || down;
  if (!f.monotone) f.note = "level sums are not monotone at the critical parameter";
  return f;
}

}  // namespace orlicz
