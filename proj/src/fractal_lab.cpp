#include "orlicz/fractal_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr int kMaxDyadic = 62;

/// Nodes (log ρ) and weights of a composite Gauss-Legendre rule on [a, b].
void composite_rule(double a, double b, double panel, int order, std::vector<double>& x,
                    std::vector<double>& w) {
  const auto& g = gauss_legendre(order);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      x.push_back(lo + 0.5 * h * (g.nodes[i] + 1.0));
      w.push_back(0.5 * h * g.weights[i]);
    }
  }
}

/// Radial field |∇η_j| on the annulus of η_j: weight = n 2^n ρ^n d(log ρ).
FieldSample radial_field(int n, int j, int order) {
  const double r1 = std::ldexp(1.0, -(1 << j) - 1);
  const double r2 = std::ldexp(1.0, -(1 << (j - 1)) - 1);
  std::vector<double> s, w;
  composite_rule(std::log(r1), std::log(r2), 0.5, order, s, w);
  FieldSample f;
  f.dim = static_cast<std::size_t>(n);
  const double surface = n * std::ldexp(1.0, n);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double rho = std::exp(s[i]);
    f.add(surface * std::pow(rho, n) * w[i], eta_gradient(j, rho));
  }
  return f;
}

double sup_distance(const std::vector<double>& c, const double* x, std::size_t* axis = nullptr) {
  double m = -1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double d = std::abs(x[i] - c[i]);
    if (d > m) {
      m = d;
      if (axis) *axis = i;
    }
  }
  return m;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

int separation_level(const CantorSet& c, int a, int b) {
  for (int j = c.depth(); j >= 1; --j) {
    const auto& fam = c.family(j);
    if (fam[static_cast<std::size_t>(c.ancestor(a, j))].adjacent_or_equal(
            fam[static_cast<std::size_t>(c.ancestor(b, j))]))
      return j;
  }
  return 0;
}

std::vector<double> point_in(const DyadicCube& q, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(q.dim());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = std::ldexp(static_cast<double>(q.coords[i]) + u(rng), -q.level);
  return x;
}

}  // namespace

std::size_t cantor_count(double nu, int j) {
  return static_cast<std::size_t>(std::floor(std::exp2(j * nu) * (1 + 1e-12)));
}

CubeSet CantorSet::level_set(int j) const { return CubeSet(spec.n, family(j)); }

int CantorSet::ancestor(int leaf, int j) const {
  int idx = leaf;
  for (int l = depth(); l > j; --l) idx = parent[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(idx)];
  return idx;
}

CantorSet build_cantor(const CantorSpec& spec) {
  if (spec.n < 1 || spec.n > 8) throw InputError("cantor: n must be in [1, 8]");
  if (!(spec.nu > 0)) throw InputError("cantor: nu must be positive");
  if (spec.levels < 1) throw InputError("cantor: levels must be >= 1");
  if ((1 << std::min(spec.levels, 30)) > kMaxDyadic || spec.levels > 5)
    throw InputError("cantor: side 2^{-2^J} does not fit 62-bit coordinates (J <= 5)");
  if (spec.n * (1 << (spec.levels - 1)) > kMaxDyadic)
    throw InputError("cantor: n * 2^{J-1} exceeds 62 bits of child positions");
  CantorSet c;
  c.spec = spec;
  std::mt19937_64 rng(derive_seed(spec.seed, 0xCA27));
  std::vector<DyadicCube> parents{DyadicCube{0, std::vector<std::int64_t>(spec.n, 0)}};
  for (int j = 1; j <= spec.levels; ++j) {
    const std::size_t total = cantor_count(spec.nu, j);
    if (total > 1'000'000) throw InputError("cantor: too many cubes at the deepest level");
    const int lc = 1 << j;
    const int lp = parents.front().level;
    const int shift = lc - lp;
    const unsigned __int128 m = static_cast<unsigned __int128>(1) << shift;
    unsigned __int128 slots = 1;
    for (int i = 0; i < spec.n; ++i) slots *= m;
    const std::size_t np = parents.size();
    if (total < np) throw InputError("cantor: cube counts must not decrease");
    const std::size_t base = total / np, extra = total % np;
    std::vector<DyadicCube> fam;
    std::vector<int> par;
    for (std::size_t p = 0; p < np; ++p) {
      const std::size_t k = base + ((p + 1) * extra / np - p * extra / np);
      if (static_cast<unsigned __int128>(k) > slots)
        throw InputError("cantor: parent cube cannot hold its children");
      c.max_children = std::max(c.max_children, static_cast<int>(k));
      const std::size_t first = fam.size();
      for (std::size_t s = 0; s < k; ++s) {
        const unsigned __int128 lo = slots * s / k, hi = slots * (s + 1) / k;
        const unsigned __int128 span = hi - lo;
        DyadicCube q;
        // Siblings touching each other are redrawn a bounded number of times.
        for (int attempt = 0; attempt < 64; ++attempt) {
          unsigned __int128 r = (static_cast<unsigned __int128>(rng()) << 64) | rng();
          unsigned __int128 idx = lo + r % span;
          q = DyadicCube{lc, std::vector<std::int64_t>(spec.n)};
          for (int i = spec.n - 1; i >= 0; --i) {
            auto off = static_cast<std::int64_t>(idx % m);
            idx /= m;
            q.coords[static_cast<std::size_t>(i)] =
                (parents[p].coords[static_cast<std::size_t>(i)] << shift) + off;
          }
          bool touching = false;
          for (std::size_t o = first; o < fam.size() && !touching; ++o)
            touching = fam[o].adjacent_or_equal(q);
          if (!touching) break;
        }
        fam.push_back(std::move(q));
        par.push_back(j == 1 ? -1 : static_cast<int>(p));
      }
    }
    c.families.push_back(fam);
    c.parent.push_back(par);
    parents = std::move(fam);
  }
  for (int j = 1; j <= c.depth(); ++j) {
    const auto& fam = c.family(j);
    const double support = std::ldexp(1.0, -(1 << (j - 1)));
    std::vector<std::vector<double>> centers;
    for (const auto& q : fam) centers.push_back(q.center());
    for (std::size_t a = 0; a < fam.size(); ++a) {
      int count = 0;
      for (std::size_t b = 0; b < fam.size(); ++b)
        if (sup_distance(centers[a], centers[b].data()) < support) ++count;
      c.max_overlap = std::max(c.max_overlap, count);
    }
  }
  return c;
}

double eta_bump(int j, const std::vector<double>& center, const double* x) {
  const double t = 2.0 * sup_distance(center, x);
  const double inner = std::ldexp(1.0, -(1 << j));
  const double outer = std::ldexp(1.0, -(1 << (j - 1)));
  if (t <= inner) return 1.0;
  if (t >= outer) return 0.0;
  const double h = std::ldexp(1.0, j - 1);
  return (-h + std::log2(1.0 / t)) / h;
}

double eta_gradient(int j, double rho) {
  const double t = 2.0 * rho;
  if (t <= std::ldexp(1.0, -(1 << j)) || t >= std::ldexp(1.0, -(1 << (j - 1)))) return 0.0;
  return 1.0 / (std::ldexp(1.0, j - 1) * std::numbers::ln2 * rho);
}

double RandomMapSpec::coefficient(int j) const {
  return std::pow(static_cast<double>(j), -delta) * std::exp2(-j * nu / sigma());
}

std::pair<double, double> RandomMapSpec::admissible_delta() const {
  return {1.0, (mu - 1.0) / sigma()};
}

void RandomMapSpec::validate() const {
  if (n < 2) throw InputError("random map: n must be >= 2");
  if (!(q > n - 1)) throw InputError("random map: q must exceed n - 1");
  if (!(nu > 0)) throw InputError("random map: nu must be positive");
  if (levels < 2) throw InputError("random map: truncation level must be >= 2");
  auto [lo, hi] = admissible_delta();
  if (!(delta > lo && delta < hi))
    throw InputError("random map: delta must lie in the admissible interval (" +
                     std::to_string(lo) + ", " + std::to_string(hi) +
                     ") so that delta > 1 and 1 + delta*sigma < mu");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<double> sample_ball(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& x : v) {
      x = g(rng);
      s += x * x;
    }
  } while (s == 0.0);
  const double r = std::pow(u(rng), 1.0 / n) / std::sqrt(s);
  for (auto& x : v) x *= r;
  return v;
}

RandomMap::RandomMap(const RandomMapSpec& spec) : spec_(spec) {
  spec_.validate();
  cantor_ = build_cantor(spec_.cantor());
  std::mt19937_64 rng(derive_seed(spec_.seed, 0x71));
  for (int j = 1; j <= cantor_.depth(); ++j) {
    std::vector<std::vector<double>> xs, cs;
    for (const auto& q : cantor_.family(j)) {
      xs.push_back(sample_ball(spec_.n, rng));
      cs.push_back(q.center());
    }
    xi_.push_back(std::move(xs));
    centers_.push_back(std::move(cs));
  }
}

std::vector<double> RandomMap::level_part(int j, const double* x) const {
  std::vector<double> u(static_cast<std::size_t>(spec_.n), 0.0);
  const auto& cs = centers_.at(static_cast<std::size_t>(j - 1));
  for (std::size_t q = 0; q < cs.size(); ++q) {
    const double e = eta_bump(j, cs[q], x);
    if (e == 0.0) continue;
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += e * xi_[static_cast<std::size_t>(j - 1)][q][i];
  }
  const double c = spec_.coefficient(j);
  for (auto& v : u) v *= c;
  return u;
}

std::vector<double> RandomMap::operator()(const double* x) const {
  std::vector<double> u(static_cast<std::size_t>(spec_.n), 0.0);
  for (int j = 1; j <= cantor_.depth(); ++j) {
    auto p = level_part(j, x);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += p[i];
  }
  return u;
}

std::vector<double> RandomMap::coefficients(const double* x, const double* y) const {
  std::vector<double> a;
  for (int j = 1; j <= cantor_.depth(); ++j) {
    const double c = spec_.coefficient(j);
    for (const auto& ctr : centers_[static_cast<std::size_t>(j - 1)])
      a.push_back(c * (eta_bump(j, ctr, x) - eta_bump(j, ctr, y)));
  }
  return a;
}

YoungFunction construction_young(int n, double q) {
  return YoungFunction::power_log(n, q, 2.0);
}

double single_bump_norm(int n, double q, int j, int radial_nodes) {
  if (j < 1) throw InputError("bump level must be >= 1");
  return luxemburg_norm(radial_field(n, j, radial_nodes), construction_young(n, q));
}

LevelNorm gradient_norm_estimate(const RandomMap& map, int j, int radial_nodes) {
  const auto& sp = map.spec();
  const int n = sp.n;
  if (j < 1 || j > map.cantor().depth()) throw InputError("level outside the construction");
  const YoungFunction A = construction_young(n, sp.q);
  LevelNorm r;
  r.j = j;
  const auto& fam = map.cantor().family(j);
  r.count = fam.size();
  FieldSample single = radial_field(n, j, radial_nodes);
  r.single = luxemburg_norm(single, A);
  r.scaled = r.single / std::exp2(j * (sp.q - n + 1) / n);
  FieldSample copies = single;
  for (auto& w : copies.weights) w *= static_cast<double>(r.count);
  r.disjoint = luxemburg_norm(copies, A);
  r.disjoint_bound = std::pow(static_cast<double>(r.count), 1.0 / n) * r.single;

  std::vector<std::vector<double>> centers;
  for (const auto& q : fam) centers.push_back(q.center());
  const double support = std::ldexp(1.0, -(1 << (j - 1)));
  const double r1 = std::ldexp(1.0, -(1 << j) - 1), r2 = 0.5 * support;
  // Greedy colouring of the overlap graph.
  std::vector<int> colour(fam.size(), -1);
  for (std::size_t a = 0; a < fam.size(); ++a) {
    std::vector<bool> used(fam.size() + 1, false);
    for (std::size_t b = 0; b < a; ++b)
      if (sup_distance(centers[a], centers[b].data()) < support)
        used[static_cast<std::size_t>(colour[b])] = true;
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    colour[a] = c;
    r.colours = std::max(r.colours, c + 1);
  }

  // ∫ A(|Σ ξ_Q ⊗ ∇η_Q|/λ) split over annuli, each point weighted by 1/#annuli containing it.
  std::vector<double> ls, lw;
  composite_rule(std::log(r1), std::log(r2), 0.5, radial_nodes, ls, lw);
  const auto& g = gauss_legendre(radial_nodes);
  std::vector<std::vector<double>> face_pts;  // n-1 coordinates
  std::vector<double> face_w;
  {
    std::vector<std::size_t> idx(static_cast<std::size_t>(n - 1), 0);
    const std::size_t per = g.nodes.size();
    std::size_t total = 1;
    for (int i = 0; i < n - 1; ++i) total *= per;
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t k = t;
      std::vector<double> p;
      double w = 1.0;
      for (int i = 0; i < n - 1; ++i) {
        p.push_back(g.nodes[k % per]);
        w *= g.weights[k % per];
        k /= per;
      }
      face_pts.push_back(std::move(p));
      face_w.push_back(w);
    }
  }
  std::vector<FieldSample> parts(fam.size());
  parallel_for(fam.size(), [&](std::size_t qi) {
    FieldSample& f = parts[qi];
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> M(static_cast<std::size_t>(n * n));
    for (int axis = 0; axis < n; ++axis)
      for (int sign = -1; sign <= 1; sign += 2)
        for (std::size_t fp = 0; fp < face_pts.size(); ++fp)
          for (std::size_t ri = 0; ri < ls.size(); ++ri) {
            const double rho = std::exp(ls[ri]);
            for (int i = 0, k = 0; i < n; ++i) {
              double w = (i == axis) ? sign : face_pts[fp][static_cast<std::size_t>(k++)];
              x[static_cast<std::size_t>(i)] = centers[qi][static_cast<std::size_t>(i)] + rho * w;
            }
            std::fill(M.begin(), M.end(), 0.0);
            int count = 0;
            for (std::size_t o = 0; o < fam.size(); ++o) {
              std::size_t ax = 0;
              const double d = sup_distance(centers[o], x.data(), &ax);
              if (d <= r1 || d >= r2) continue;
              ++count;
              const double gr = eta_gradient(j, d);
              const double sg = x[ax] > centers[o][ax] ? -1.0 : 1.0;
              const auto& xi = map.xi(j, o);
              for (int a = 0; a < n; ++a)
                M[static_cast<std::size_t>(a * n) + ax] += xi[static_cast<std::size_t>(a)] * sg * gr;
            }
            if (count == 0) continue;
            f.add(std::pow(rho, n) * lw[ri] * face_w[fp] / count, norm2(M));
          }
  });
  FieldSample all;
  all.dim = static_cast<std::size_t>(n);
  for (const auto& p : parts) {
    all.weights.insert(all.weights.end(), p.weights.begin(), p.weights.end());
    all.values.insert(all.values.end(), p.values.begin(), p.values.end());
  }
  r.overlapping = luxemburg_norm(all, A);
  r.level_norm = sp.coefficient(j) * r.overlapping;
  return r;
}

double increasing_shift(double sigma, double mu) {
  if (!(sigma > 0)) throw InputError("increasing_shift: sigma must be positive");
  // d/dr log φ ≥ 0  ⇔  σ (b + u) ln(b + u) ≥ μ u  for u = 1/r > 0.
  auto ok = [&](double b) {
    for (double lu = -10; lu <= 60; lu += 0.01) {
      const double u = std::exp(lu);
      if (sigma * (b + u) * std::log(b + u) < mu * u) return false;
    }
    return true;
  };
  double lo = 1.0, hi = 2.0;
  if (ok(lo)) return 1.05 * lo;
  while (!ok(hi)) hi *= 2;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return 1.05 * hi;
}

EnergyReport energy_integral_mc(const RandomMapSpec& spec, std::size_t samples_per_pair) {
  spec.validate();
  if (samples_per_pair < 2) throw InputError("energy: need at least 2 samples per pair");
  EnergyReport rep;
  rep.sigma = spec.sigma();
  rep.b = increasing_shift(rep.sigma, spec.mu);
  const RandomMap shape(spec);  // only the geometry is used; ξ is resampled per draw
  const CantorSet& c = shape.cantor();
  const int J = c.depth();
  const auto& leaves = c.family(J);
  const std::size_t N = leaves.size();
  const double pair_mass = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  const double ln2 = std::numbers::ln2;
  auto phi = [&](double r) {
    return std::pow(r, rep.sigma) * std::pow(std::log(rep.b + 1.0 / r) / ln2, spec.mu);
  };

  struct PairStats {
    int level = 0;
    double mean = 0.0;
    double var_mean = 0.0;
    std::size_t used = 0;
    std::size_t zeros = 0;
  };
  std::vector<PairStats> stats(N * N);
  parallel_for(N * N, [&](std::size_t p) {
    const int a = static_cast<int>(p / N), b = static_cast<int>(p % N);
    PairStats& st = stats[p];
    st.level = separation_level(c, a, b);
    std::mt19937_64 rng(derive_seed(spec.seed, 0xE0000000ULL + p));
    double s = 0.0, s2 = 0.0;
    std::vector<double> diff(static_cast<std::size_t>(spec.n));
    for (std::size_t k = 0; k < samples_per_pair; ++k) {
      auto x = point_in(leaves[static_cast<std::size_t>(a)], rng);
      auto y = point_in(leaves[static_cast<std::size_t>(b)], rng);
      auto coef = shape.coefficients(x.data(), y.data());
      std::fill(diff.begin(), diff.end(), 0.0);
      for (double aq : coef) {
        if (aq == 0.0) continue;
        auto xi = sample_ball(spec.n, rng);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] += aq * xi[i];
      }
      const double r = norm2(diff);
      if (r == 0.0) {
        ++st.zeros;
        continue;
      }
      const double v = 1.0 / phi(r);
      s += v;
      s2 += v * v;
      ++st.used;
    }
    if (st.used > 0) {
      const double m = static_cast<double>(st.used);
      st.mean = s / m;
      st.var_mean = st.used > 1 ? std::max(0.0, (s2 - s * s / m) / (m - 1)) / m : 0.0;
    }
  });

  const int top = std::max(0, J - 2);
  std::vector<LevelEnergy> lv(static_cast<std::size_t>(top + 1));
  std::vector<double> var(lv.size(), 0.0);
  LevelEnergy trunc;
  double var_trunc = 0.0;
  for (const auto& st : stats) {
    rep.zero_draws += st.zeros;
    LevelEnergy& e = st.level > top ? trunc : lv[static_cast<std::size_t>(st.level)];
    double& v = st.level > top ? var_trunc : var[static_cast<std::size_t>(st.level)];
    e.mass += pair_mass;
    e.contribution += pair_mass * st.mean;
    e.samples += st.used;
    v += pair_mass * pair_mass * st.var_mean;
  }
  const double expo = spec.delta * rep.sigma - spec.mu;
  auto finish = [](LevelEnergy& e, double v) {
    e.mean = e.mass > 0 ? e.contribution / e.mass : 0.0;
    e.ci_half = 1.96 * std::sqrt(v);
  };
  double lo = kInf, hi = 0.0;
  for (int j = 0; j <= top; ++j) {
    LevelEnergy& e = lv[static_cast<std::size_t>(j)];
    e.j = j;
    finish(e, var[static_cast<std::size_t>(j)]);
    rep.total += e.contribution;
    if (j == 0) continue;
    e.law = std::pow(static_cast<double>(j), expo);
    if (e.mass > 0) {
      lo = std::min(lo, e.contribution / e.law);
      hi = std::max(hi, e.contribution / e.law);
    }
    rep.levels.push_back(e);
  }
  rep.separated = lv[0];
  trunc.j = top + 1;
  finish(trunc, var_trunc);
  rep.truncated = trunc;
  rep.total += trunc.contribution;
  rep.law_spread = lo > 0 && std::isfinite(lo) ? hi / lo : kInf;
  return rep;
}

const char* to_string(Trend t) {
  switch (t) {
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    default: return "mixed";
  }
}

std::vector<std::vector<double>> leaf_samples(const CantorSet& c, int per_axis) {
  if (per_axis < 1) throw InputError("per_axis must be >= 1");
  std::vector<std::vector<double>> pts;
  const int n = c.spec.n;
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(per_axis);
  for (const auto& q : c.family(c.depth())) {
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t k = t;
      std::vector<double> x(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const double off = (static_cast<double>(k % per_axis) + 0.5) / per_axis;
        k /= static_cast<std::size_t>(per_axis);
        x[static_cast<std::size_t>(i)] =
            std::ldexp(static_cast<double>(q.coords[static_cast<std::size_t>(i)]) + off, -q.level);
      }
      pts.push_back(std::move(x));
    }
  }
  return pts;
}

ImageSums image_cover_sums(const RandomMap& map, const GaugeFn& probe, int max_level,
                           int per_axis) {
  const CantorSet& c = map.cantor();
  if (max_level < 1 || max_level > c.depth()) throw InputError("image sums: level outside the construction");
  auto pts = leaf_samples(c, per_axis);
  const std::size_t per_leaf = pts.size() / c.family(c.depth()).size();
  std::vector<std::vector<double>> img(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { img[i] = map(pts[i].data()); });
  ImageSums out;
  for (int j = 1; j <= max_level; ++j) {
    const auto& fam = c.family(j);
    std::vector<std::vector<std::size_t>> members(fam.size());
    for (std::size_t leaf = 0; leaf < c.family(c.depth()).size(); ++leaf) {
      const auto q = static_cast<std::size_t>(c.ancestor(static_cast<int>(leaf), j));
      for (std::size_t k = 0; k < per_leaf; ++k) members[q].push_back(leaf * per_leaf + k);
    }
    ImageLevel lvl;
    lvl.j = j;
    lvl.count = fam.size();
    long double sum = 0.0L;
    double dsum = 0.0;
    for (const auto& mem : members) {
      double d = 0.0;
      for (std::size_t a = 0; a < mem.size(); ++a)
        for (std::size_t b = a + 1; b < mem.size(); ++b) {
          double s = 0.0;
          for (std::size_t i = 0; i < img[mem[a]].size(); ++i) {
            const double t = img[mem[a]][i] - img[mem[b]][i];
            s += t * t;
          }
          d = std::max(d, s);
        }
      d = std::sqrt(d);
      dsum += d;
      sum += d > 0 ? probe(d) : 0.0;
    }
    lvl.mean_diameter = dsum / static_cast<double>(fam.size());
    lvl.sum = static_cast<double>(sum);
    out.levels.push_back(lvl);
  }
  bool up = out.levels.size() > 1, down = out.levels.size() > 1;
  for (std::size_t i = 1; i < out.levels.size(); ++i) {
    up = up && out.levels[i].sum > out.levels[i - 1].sum;
    down = down && out.levels[i].sum < out.levels[i - 1].sum;
  }
  out.trend = up ? Trend::increasing : down ? Trend::decreasing : Trend::mixed;
  return out;
}

InvariantReport check_construction(const RandomMap& map, std::size_t pairs) {
  const CantorSet& c = map.cantor();
  const auto& sp = map.spec();
  const int J = c.depth();
  InvariantReport r;
  r.nesting = true;
  r.counts = true;
  for (int j = 1; j <= J; ++j) {
    const auto& fam = c.family(j);
    r.counts = r.counts && fam.size() == cantor_count(sp.nu, j);
    if (j == 1) continue;
    for (std::size_t q = 0; q < fam.size(); ++q) {
      const auto& par = c.family(j - 1)[static_cast<std::size_t>(c.parent[static_cast<std::size_t>(j - 1)][q])];
      r.nesting = r.nesting && par.contains(fam[q]);
    }
  }
  r.overlap_bounded = c.max_overlap <= static_cast<int>(std::pow(3.0, sp.n)) * c.max_children;

  const auto& leaves = c.family(J);
  std::mt19937_64 rng(derive_seed(sp.seed, 0xC0EF));
  std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
  r.coefficient_bound = true;
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t a = pick(rng), b = pick(rng);
    const int j = separation_level(c, static_cast<int>(a), static_cast<int>(b));
    if (j + 2 > J) continue;
    auto x = point_in(leaves[a], rng);
    auto y = point_in(leaves[b], rng);
    double m = 0.0;
    for (double v : map.coefficients(x.data(), y.data())) m = std::max(m, std::abs(v));
    ++r.pairs_checked;
    if (m < sp.coefficient(j + 2) * (1 - 1e-12)) r.coefficient_bound = false;
  }

  for (int j = 1; j <= J; ++j) {
    const double rho1 = std::ldexp(1.0, -(1 << j) - 1);
    r.lipschitz += sp.coefficient(j) * c.max_overlap / (std::ldexp(1.0, j - 1) * std::numbers::ln2 * rho1);
  }
  for (const auto& x : leaf_samples(c, 2)) r.truncation_gap = std::max(r.truncation_gap, norm2(map.level_part(J, x.data())));
  r.truncation_bound = sp.coefficient(J) * c.max_overlap;
  return r;
}

double morrey_residual(const MorreySample& s, const YoungFunction& A, const YoungFunction& B,
                       int n, double lambda, double kappa) {
  if (!(lambda > 0) || !(kappa > 0)) throw InputError("morrey: lambda and kappa must be positive");
  double left = 0.0;
  if (s.image_diameter > 0) {
    const double t = s.image_diameter / (kappa * lambda * s.cube_diameter);
    left = std::pow(s.cube_diameter, n) / kappa * B(t);
  }
  return left - modular(s.gradient, A, lambda);
}

MorreySample morrey_linear(int n, const std::vector<double>& matrix) {
  if (n < 1 || matrix.size() != static_cast<std::size_t>(n * n))
    throw InputError("morrey_linear: matrix must be n x n");
  MorreySample s;
  s.cube_diameter = std::sqrt(static_cast<double>(n));
  // Vertex differences of the unit cube are the vectors in {-1, 0, 1}^n.
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t k = t;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) {
      x = static_cast<double>(k % 3) - 1.0;
      k /= 3;
    }
    std::vector<double> mv(static_cast<std::size_t>(n), 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        mv[static_cast<std::size_t>(a)] += matrix[static_cast<std::size_t>(a * n + b)] * v[static_cast<std::size_t>(b)];
    s.image_diameter = std::max(s.image_diameter, norm2(mv));
  }
  s.gradient.dim = static_cast<std::size_t>(n);
  s.gradient.add(1.0, norm2(matrix));
  return s;
}

MorreySample morrey_bump(int n, int j, int radial_nodes) {
  if (j < 1) throw InputError("bump level must be >= 1");
  MorreySample s;
  s.cube_diameter = std::sqrt(static_cast<double>(n)) * std::ldexp(1.0, -(1 << (j - 1)));
  s.image_diameter = 1.0;
  s.gradient = radial_field(n, j, radial_nodes);
  return s;
}

}  // namespace orlicz
