#include "orlicz/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "orlicz/asymptotics.hpp"
#include "orlicz/distortion.hpp"
#include "orlicz/fractal_lab.hpp"
#include "orlicz/hausdorff_net.hpp"
#include "orlicz/io.hpp"
#include "orlicz/suites.hpp"

namespace orlicz {

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"distort", "examples", "netmeasure", "fractal", "verify"};
  return c;
}

namespace {

namespace fs = std::filesystem;

struct Context {
  const RunConfig& cfg;
  std::optional<JsonDoc> doc;
  std::string hash;
  std::uint64_t seed = 1;
  std::ostream& out;

  std::string header() const {
    return "# orlicz-distort " + cfg.command + " config_hash=" + hash +
           " seed=" + std::to_string(seed) + "\n";
  }
  fs::path path(const std::string& name) const { return fs::path(cfg.out_dir) / name; }
  double c_n(int n) const { return cfg.c_n ? *cfg.c_n : default_cn(n); }
};

using Row = std::vector<std::string>;

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

void write_csv(const Context& ctx, const std::string& name, const Row& columns,
               const std::vector<Row>& rows) {
  std::ofstream f(ctx.path(name), std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + ctx.path(name).string());
  f << ctx.header();
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << r[i];
    f << '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  ctx.out << "wrote " << ctx.path(name).string() << " (" << rows.size() << " rows)\n";
}

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

void write_sidecar(const Context& ctx, const std::string& name, Json body) {
  Json j;
  j["tool"] = "orlicz-distort";
  j["command"] = ctx.cfg.command;
  j["config_hash"] = ctx.hash;
  j["seed"] = ctx.seed;
  j["kappa"] = ctx.cfg.kappa;
  j["c_n"] = ctx.cfg.c_n ? Json(*ctx.cfg.c_n) : Json("default 6^n");
  if (ctx.cfg.tol) j["tol"] = *ctx.cfg.tol;
  j["config"] = ctx.doc ? ctx.doc->root() : Json(nullptr);
  for (auto& [k, v] : body.items()) j[k] = v;
  std::ofstream f(ctx.path(name), std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + ctx.path(name).string());
  f << j.dump(2) << '\n';
}

std::optional<LogPowerForm> young_form(const YoungFunction& A) {
  if (A.family() == "power") return LogPowerForm::young(A.param("p"), 0.0);
  if (A.family() == "powerlog") return LogPowerForm::young(A.param("p"), A.param("q"));
  if (A.family() == "exp") return LogPowerForm::young_exp(A.param("gamma"));
  return std::nullopt;
}

std::optional<LogPowerForm> gauge_form(const GaugeFunction& phi) {
  if (phi.family() == "power") return LogPowerForm::gauge(phi.param("alpha"), 0.0);
  if (phi.family() == "powerlog") return LogPowerForm::gauge(phi.param("alpha"), phi.param("beta"));
  if (phi.family() == "logpower") return LogPowerForm::gauge(0.0, phi.param("beta"));
  return std::nullopt;
}

Json form_json(const LogPowerForm& f) {
  Json j;
  j["a"] = f.a;
  j["b"] = f.b;
  j["c"] = f.c;
  j["describe"] = f.describe();
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

// ---------------------------------------------------------------- distort

int cmd_distort(Context& ctx) {
  if (!ctx.doc) throw InputError("distort needs --config");
  const JsonDoc& d = *ctx.doc;
  const int n = d.integer("/n");
  if (n < 1) d.fail("/n", "dimension must be positive");
  YoungFunction A = parse_young(d, "/young");
  GaugeFunction phi = parse_gauge(d, "/gauge", n);
  const double r_min = d.number_or("/r_min", 1e-9), r_max = d.number_or("/r_max", 1e-3);
  const int samples = d.integer_or("/samples", 121);
  if (!(r_min > 0 && r_min < r_max)) d.fail("/r_min", "need 0 < r_min < r_max");
  if (samples < 2) d.fail("/samples", "need at least 2 samples");

  std::optional<DistortionBundle> b;
  try {
    b.emplace(A, phi, n);
  } catch (const InputError& e) {
    d.fail("/young", e.what());
  }
  std::optional<LogPowerForm> form;
  auto fa = young_form(A), fp = gauge_form(phi);
  if (fa && fp) {
    try {
      form = distort_form(*fa, *fp, n);
    } catch (const DomainError&) {
    }
  }

  std::vector<Row> rows;
  std::vector<std::pair<double, double>> pts;
  for (double x : linspace(std::log(r_min), std::log(r_max), static_cast<std::size_t>(samples))) {
    const double r = std::exp(x);
    const double lpsi = b->log_psi(x);
    pts.emplace_back(r, std::exp(lpsi));
    Row row{num(r), num(std::exp(lpsi)), num(b->J_inverse(r)), num(phi(r)),
            num(std::exp(lpsi - phi.log_value(x)))};
    if (form) row.push_back(num(lpsi - form->log_value(x)));
    rows.push_back(std::move(row));
  }
  Row cols{"r", "psi", "J_inverse", "phi", "psi_over_phi"};
  if (form) cols.push_back("log_psi_over_form");
  write_csv(ctx, "distort.csv", cols, rows);

  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (auto& [r, v] : pts) {
    X.push_back({1.0, std::log(r)});
    y.push_back(std::log(v));
  }
  double rms = 0.0;
  const double slope = least_squares(X, y, &rms)[1];

  Json body;
  body["young"] = {{"family", A.family()}};
  for (auto& [k, v] : A.params()) body["young"][k] = v;
  body["gauge"] = {{"family", phi.family()}, {"normalized", phi.was_normalized()}};
  for (auto& [k, v] : phi.params()) body["gauge"][k] = v;
  body["n"] = n;
  body["fitted_slope"] = slope;
  body["fit_rms"] = rms;
  if (form) {
    body["closed_form"] = form_json(*form);
    try {
      Crosscheck cc = crosscheck(*b, *form);
      body["crosscheck_spread"] = cc.spread;
    } catch (const std::exception& e) {
      body["crosscheck_error"] = e.what();
    }
  }
  StabilityReport st = classify_stability(*b->psi_curve(), *b->binv_curve());
  body["stability"] = to_string(st.verdict);
  body["theta_psi_half"] = st.psi_half;
  body["theta_binv_half"] = st.binv_half;
  BoundReport br = measure_bound(*b, 1.0, 1.0, ctx.cfg.kappa, ctx.c_n(n));
  body["bound_constant"] = json_number(br.constant);
  body["bound_theta_factor"] = json_number(br.theta_factor);
  if (!br.note.empty()) body["bound_note"] = br.note;
  write_sidecar(ctx, "distort.json", body);

  ctx.out << "fitted slope " << format_number(slope) << ", regime " << to_string(st.verdict)
          << "\n";
  return st.verdict == Stability::inconclusive ? kExitInconclusive : kExitOk;
}

// ---------------------------------------------------------------- examples

struct LatticeRow {
  std::string example;
  int n;
  LogPowerForm A;
  double alpha, beta;
};

std::vector<LatticeRow> default_lattice() {
  std::vector<LatticeRow> rows;
  for (int n : {2, 3}) {
    const double dn = n;
    std::vector<std::pair<double, double>> phis = {{1.0, 0.0}, {dn - 0.5, 0.0}, {0.0, -1.0},
                                                   {dn, 1.0}};
    for (auto [p, q] : std::vector<std::pair<double, double>>{{dn + 1, 0}, {dn + 2, 0}, {dn + 1, 1}})
      for (auto [a, b] : phis) rows.push_back({"power_above_n", n, LogPowerForm::young(p, q), a, b});
    for (double q : {dn, dn + 1})
      for (auto [a, b] : phis) rows.push_back({"borderline_power", n, LogPowerForm::young(dn, q), a, b});
    for (double g : {1.0, 2.0})
      for (auto [a, b] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {dn, 1.0}})
        rows.push_back({"exponential", n, LogPowerForm::young_exp(g), a, b});
  }
  return rows;
}

YoungFunction young_from_form(const LogPowerForm& f, int n) {
  if (f.exponential) return YoungFunction::exponential(f.gamma, std::max(2.0, double(n)));
  if (f.b == 0.0) return YoungFunction::power(f.a);
  return YoungFunction::power_log(f.a, f.b);
}

GaugeFunction gauge_from(double alpha, double beta, int n) {
  if (alpha == 0.0) return GaugeFunction::log_power(beta, n);
  if (beta == 0.0) return GaugeFunction::power(alpha, n);
  return GaugeFunction::power_log(alpha, beta, n);
}

int cmd_examples(Context& ctx) {
  std::vector<LatticeRow> lattice;
  if (ctx.doc && ctx.doc->has("/rows")) {
    const JsonDoc& d = *ctx.doc;
    const Json& arr = d.at("/rows");
    if (!arr.is_array()) d.fail("/rows", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = "/rows/" + std::to_string(i);
      LatticeRow r{d.string_or(p + "/example", "custom"), d.integer(p + "/n"), {}, 0.0, 0.0};
      if (d.has(p + "/gamma")) r.A = LogPowerForm::young_exp(d.number(p + "/gamma"));
      else r.A = LogPowerForm::young(d.number(p + "/p"), d.number_or(p + "/q", 0.0));
      r.alpha = d.number(p + "/alpha");
      r.beta = d.number_or(p + "/beta", 0.0);
      lattice.push_back(r);
    }
  } else {
    lattice = default_lattice();
  }
  const double tol = ctx.cfg.tol ? *ctx.cfg.tol : 0.1;

  struct Result {
    Row row;
    bool matched = true;
    bool checked = false;
  };
  std::vector<Result> results(lattice.size());
  parallel_for(lattice.size(), [&](std::size_t i) {
    const LatticeRow& L = lattice[i];
    Result& res = results[i];
    Row& row = res.row;
    row = {L.example, num(L.n),
           num(L.A.exponential ? 0.0 : L.A.a), num(L.A.exponential ? 0.0 : L.A.b),
           num(L.A.exponential ? L.A.gamma : 0.0), num(L.alpha), num(L.beta)};
    LogPowerForm f;
    try {
      f = distort_form(L.A, LogPowerForm::gauge(L.alpha, L.beta), L.n);
    } catch (const DomainError& e) {
      for (int k = 0; k < 3; ++k) row.push_back("nan");
      row.insert(row.end(), {"none", std::string("no closed form"), "nan", "nan"});
      return;
    }
    row.insert(row.end(), {num(f.a), num(f.b), num(f.c), "\"" + f.describe() + "\"",
                           "\"" + f.note + "\""});
    try {
      DistortionBundle b(young_from_form(L.A, L.n), gauge_from(L.alpha, L.beta, L.n), L.n);
      Crosscheck cc = crosscheck(b, f);
      res.checked = true;
      res.matched = cc.spread < tol;
      row.insert(row.end(), {num(cc.spread), res.matched ? "1" : "0"});
    } catch (const RangeError&) {
      row.insert(row.end(), {"nan", "out_of_range"});
    } catch (const std::exception&) {
      row.insert(row.end(), {"nan", "nan"});
    }
  });
  std::vector<Row> rows;
  std::size_t checked = 0, matched = 0;
  for (auto& r : results) {
    rows.push_back(r.row);
    checked += r.checked;
    matched += r.checked && r.matched;
  }
  write_csv(ctx, "examples.csv",
            {"example", "n", "p", "q", "gamma", "alpha", "beta", "psi_a", "psi_b", "psi_c",
             "psi_form", "note", "crosscheck_spread", "matches"},
            rows);
  Json body;
  body["rows"] = rows.size();
  body["numerically_checked"] = checked;
  body["matching"] = matched;
  body["match_tolerance"] = tol;
  write_sidecar(ctx, "examples.json", body);
  ctx.out << matched << "/" << checked << " closed forms confirmed numerically\n";
  return kExitOk;
}

// ---------------------------------------------------------------- netmeasure

int cmd_netmeasure(Context& ctx) {
  if (!ctx.doc) throw InputError("netmeasure needs --config");
  const JsonDoc& d = *ctx.doc;
  const int dim = d.integer("/dim");
  if (dim < 1) d.fail("/dim", "dimension must be positive");
  GaugeFunction phi = parse_gauge(d, "/gauge", dim);
  CubeSet E;
  if (d.has("/cubes")) {
    E = parse_cubes(d, "/cubes", dim);
  } else if (d.has("/points")) {
    const std::string rel = d.string_or("/points", "");
    fs::path p = fs::path(rel).is_absolute() ? fs::path(rel)
                                             : fs::path(d.source()).parent_path() / rel;
    const int level = d.integer("/level");
    try {
      E = CubeSet::from_points(dim, load_point_csv(p.string(), dim), level);
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      d.fail("/points", e.what());
    }
  } else {
    d.fail("", "expected \"cubes\" or \"points\"");
  }
  std::vector<double> sigmas;
  if (d.has("/sigmas")) {
    const Json& s = d.at("/sigmas");
    if (!s.is_array()) d.fail("/sigmas", "expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) sigmas.push_back(d.number("/sigmas/" + std::to_string(i)));
  } else {
    sigmas.push_back(kInf);
  }
  const bool exhaustive = d.has("/exhaustive") && d.at("/exhaustive").is_boolean() &&
                          d.at("/exhaustive").get<bool>();
  const double c_n = ctx.c_n(dim);

  std::vector<Row> rows;
  Json covers = Json::array();
  bool all_certified = true;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const double sigma = sigmas[i];
    NetMeasure m;
    try {
      m = net_premeasure(E, phi, sigma);
    } catch (const RangeError& e) {
      d.fail("/sigmas/" + std::to_string(i), e.what());
    }
    Row row{num(sigma), num(m.top_level), num(m.bottom_level), num(m.value), num(m.cover.size())};
    bool fine_enough = E.empty() || top_level_for(dim, sigma / 2) <= E.finest_level();
    if (fine_enough && !E.empty()) {
      SandwichReport s = sandwich_check(E, phi, sigma, c_n);
      all_certified = all_certified && s.certified;
      row.insert(row.end(), {num(s.lambda_half), num(s.h_lower), num(s.h_lower_half),
                             num(s.enlarge), num(s.measured_constant), s.certified ? "1" : "0"});
    } else {
      row.insert(row.end(), {"nan", "nan", "nan", "nan", "nan", "nan"});
    }
    NormalizationSandwich ns = normalization_sandwich(E, phi, sigma);
    row.insert(row.end(), {num(ns.raw), num(ns.raw_split), num(ns.ratio), ns.holds ? "1" : "0"});
    if (exhaustive) {
      auto ex = exhaustive_premeasure(E, GaugeFn([&phi](double r) { return phi(r); }), sigma);
      row.push_back(ex ? num(*ex) : "nan");
    }
    rows.push_back(std::move(row));
    Json cv = Json::array();
    for (const auto& p : m.cover)
      cv.push_back({{"level", p.cube.level}, {"coords", p.cube.coords}, {"depth", p.depth}});
    covers.push_back({{"sigma", json_number(sigma)}, {"cover", cv}});
  }
  Row cols{"sigma", "top_level", "bottom_level", "lambda", "pieces", "lambda_half", "h_lower",
           "h_lower_half", "enlarge", "measured_constant", "certified", "raw_lambda",
           "raw_split_lambda", "normalization_ratio", "normalization_holds"};
  if (exhaustive) cols.push_back("exhaustive");
  write_csv(ctx, "netmeasure.csv", cols, rows);
  Json body;
  body["dim"] = dim;
  body["cubes"] = E.size();
  body["c_n"] = c_n;
  body["covers"] = covers;
  write_sidecar(ctx, "netmeasure.json", body);
  return all_certified ? kExitOk : kExitInconclusive;
}

// ---------------------------------------------------------------- fractal

int cmd_fractal(Context& ctx) {
  RandomMapSpec sp;
  std::size_t samples = 1000;
  int per_axis = 3, image_levels = 4, norm_levels = 4;
  std::size_t pairs = 2000;
  double fit_lo = 0.05, fit_hi = 5.0;
  if (ctx.doc) {
    const JsonDoc& d = *ctx.doc;
    sp.n = d.integer_or("/n", sp.n);
    sp.q = d.number_or("/q", sp.q);
    sp.nu = d.number_or("/nu", sp.nu);
    sp.delta = d.number_or("/delta", sp.delta);
    sp.mu = d.number_or("/mu", sp.mu);
    sp.levels = d.integer_or("/levels", sp.levels);
    if (d.has("/seed")) sp.seed = static_cast<std::uint64_t>(d.number("/seed"));
    samples = static_cast<std::size_t>(d.integer_or("/samples_per_pair", int(samples)));
    per_axis = d.integer_or("/per_axis", per_axis);
    image_levels = d.integer_or("/image_levels", image_levels);
    norm_levels = d.integer_or("/norm_levels", norm_levels);
    pairs = static_cast<std::size_t>(d.integer_or("/invariant_pairs", int(pairs)));
    fit_lo = d.number_or("/dimension_lo", fit_lo);
    fit_hi = d.number_or("/dimension_hi", fit_hi);
    try {
      sp.validate();
    } catch (const InputError& e) {
      d.fail("", e.what());
    }
  }
  if (ctx.cfg.seed) sp.seed = *ctx.cfg.seed;
  ctx.seed = sp.seed;
  sp.validate();
  image_levels = std::min(image_levels, sp.levels);
  norm_levels = std::min(norm_levels, sp.levels);

  RandomMap map(sp);
  const CantorSet& c = map.cantor();

  std::vector<Row> lv;
  for (int j = 1; j <= norm_levels; ++j) {
    LevelNorm ln = gradient_norm_estimate(map, j);
    lv.push_back({num(j), num(ln.count), num(std::ldexp(1.0, -(1 << j))), num(sp.coefficient(j)),
                  num(ln.single), num(ln.scaled), num(ln.disjoint), num(ln.disjoint_bound),
                  num(ln.colours), num(ln.overlapping), num(ln.level_norm)});
  }
  write_csv(ctx, "fractal_levels.csv",
            {"j", "count", "side", "coefficient", "single_norm", "scaled_norm", "disjoint_norm",
             "disjoint_bound", "colours", "overlapping_norm", "level_norm"},
            lv);

  EnergyReport er = energy_integral_mc(sp, samples);
  std::vector<Row> en;
  auto energy_row = [&](const std::string& label, const LevelEnergy& e) {
    en.push_back({label, num(e.j), num(e.mass), num(e.mean), num(e.contribution), num(e.ci_half),
                  num(e.law), e.law > 0 ? num(e.contribution / e.law) : "nan", num(e.samples)});
  };
  for (const auto& e : er.levels) energy_row("level", e);
  energy_row("separated", er.separated);
  energy_row("truncated", er.truncated);
  write_csv(ctx, "fractal_energy.csv",
            {"kind", "j", "mass", "mean", "contribution", "ci_half", "law", "ratio", "samples"}, en);

  const double sigma = sp.sigma(), mu = sp.mu, b = er.b;
  GaugeFn probe = [sigma, mu, b](double r) {
    return std::pow(r, sigma) * std::pow(std::log2(b + 1.0 / r), mu);
  };
  ImageSums is = image_cover_sums(map, probe, image_levels, per_axis);
  std::vector<Row> im;
  for (const auto& l : is.levels)
    im.push_back({num(l.j), num(l.count), num(l.mean_diameter), num(l.sum)});
  write_csv(ctx, "fractal_images.csv", {"j", "count", "mean_diameter", "probe_sum"}, im);

  std::vector<CubeSet> levels;
  for (int j = 1; j <= c.depth(); ++j) levels.push_back(c.level_set(j));
  Json dim_json;
  if (levels.size() >= 4) {
    GaugeFamily fam = [](double theta, double r) { return std::pow(std::log(1.0 / r), -theta); };
    DimensionFit df = dimension_fit(levels, fam, fit_lo, fit_hi);
    std::vector<Row> dr;
    for (std::size_t i = 0; i < df.levels.size(); ++i)
      dr.push_back({num(df.levels[i]), num(df.level_sums[i])});
    write_csv(ctx, "fractal_dimension.csv", {"j", "level_sum"}, dr);
    dim_json = {{"critical_log_exponent", df.critical}, {"degenerate", df.degenerate},
                {"monotone", df.monotone}, {"note", df.note}};
  }

  InvariantReport inv = check_construction(map, pairs);
  Json body;
  body["spec"] = {{"n", sp.n},         {"q", sp.q},           {"nu", sp.nu},
                  {"delta", sp.delta}, {"mu", sp.mu},         {"levels", sp.levels},
                  {"sigma", sigma},    {"samples_per_pair", samples}};
  body["admissible_delta"] = {sp.admissible_delta().first, sp.admissible_delta().second};
  body["cantor"] = {{"max_children", c.max_children}, {"max_overlap", c.max_overlap}};
  body["energy"] = {{"shift_b", b},
                    {"total", er.total},
                    {"law_spread", er.law_spread},
                    {"zero_draws", er.zero_draws}};
  body["image_trend"] = to_string(is.trend);
  body["dimension"] = dim_json;
  body["invariants"] = {{"nesting", inv.nesting},
                        {"counts", inv.counts},
                        {"overlap_bounded", inv.overlap_bounded},
                        {"coefficient_bound", inv.coefficient_bound},
                        {"pairs_checked", inv.pairs_checked},
                        {"lipschitz", inv.lipschitz},
                        {"truncation_gap", inv.truncation_gap},
                        {"truncation_bound", inv.truncation_bound}};
  write_sidecar(ctx, "fractal.json", body);
  const bool ok = inv.nesting && inv.counts && inv.overlap_bounded && inv.coefficient_bound;
  ctx.out << "energy law spread " << format_number(er.law_spread) << ", image trend "
          << to_string(is.trend) << ", invariants " << (ok ? "ok" : "FAILED") << "\n";
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- verify

std::optional<Stability> parse_stability(const JsonDoc& d, const std::string& p) {
  if (!d.has(p)) return std::nullopt;
  const std::string s = d.string_or(p, "");
  if (s == "stable") return Stability::stable;
  if (s == "vanishing") return Stability::vanishing;
  d.fail(p, "expected \"stable\" or \"vanishing\"");
}

int cmd_verify(Context& ctx) {
  SuiteOptions opt;
  opt.seed = ctx.seed;
  if (ctx.cfg.tol) opt.theta_tol = *ctx.cfg.tol;
  if (ctx.cfg.c_n) opt.c_n = *ctx.cfg.c_n;
  std::vector<InstanceSpec> specs = default_instances();
  if (ctx.doc) {
    const JsonDoc& d = *ctx.doc;
    opt.key_pairs = static_cast<std::size_t>(d.integer_or("/key_pairs", int(opt.key_pairs)));
    opt.theta_points = static_cast<std::size_t>(d.integer_or("/theta_points", int(opt.theta_points)));
    opt.net_instances = static_cast<std::size_t>(d.integer_or("/net_instances", int(opt.net_instances)));
    if (d.has("/instances")) {
      const Json& arr = d.at("/instances");
      if (!arr.is_array()) d.fail("/instances", "expected an array");
      specs.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = "/instances/" + std::to_string(i);
        const int n = d.integer(p + "/n");
        specs.push_back({d.string_or(p + "/name", "instance " + std::to_string(i)),
                         parse_young(d, p + "/young"), parse_gauge(d, p + "/gauge", n), n,
                         parse_stability(d, p + "/expected")});
      }
    }
  }
  std::vector<CorpusEntry> corpus;
  try {
    corpus = build_corpus(specs);
  } catch (const InputError& e) {
    if (ctx.doc) ctx.doc->fail("/instances", e.what());
    throw;
  }
  std::vector<SuiteResult> results = run_all_suites(corpus, opt);

  Json suites = Json::array();
  std::vector<Row> rows;
  bool failed = false, inconclusive = false;
  for (const auto& r : results) {
    failed = failed || r.verdict == Truth::no;
    inconclusive = inconclusive || r.verdict == Truth::inconclusive;
    const char* v = r.verdict == Truth::yes ? "pass" : r.verdict == Truth::no ? "fail" : "inconclusive";
    Json m = Json::object();
    for (auto& [k, val] : r.metrics) m[k] = json_number(val);
    suites.push_back({{"suite", r.name},
                      {"verdict", v},
                      {"checks", r.checks},
                      {"failures", r.failures},
                      {"skipped", r.skipped},
                      {"worst", json_number(r.worst)},
                      {"tolerance", r.tolerance},
                      {"measure", r.measure},
                      {"detail", r.detail},
                      {"metrics", m}});
    rows.push_back({r.name, v, num(r.checks), num(r.failures), num(r.skipped), num(r.worst),
                    num(r.tolerance)});
    ctx.out << (r.verdict == Truth::yes ? "PASS " : r.verdict == Truth::no ? "FAIL " : "INCONCLUSIVE ")
            << r.name << " (" << r.checks << " checks, worst " << format_number(r.worst) << ")"
            << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
  }
  write_csv(ctx, "verify.csv",
            {"suite", "verdict", "checks", "failures", "skipped", "worst", "tolerance"}, rows);
  Json body;
  body["instances"] = Json::array();
  for (const auto& s : specs) body["instances"].push_back(s.name);
  body["suites"] = suites;
  body["all_pass"] = !failed && !inconclusive;
  write_sidecar(ctx, "verify.json", body);
  return failed ? kExitFailure : inconclusive ? kExitInconclusive : kExitOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end())
      throw InputError("unknown command '" + cfg.command + "'");
    if (!(cfg.kappa > 0)) throw InputError("--kappa must be positive");
    if (cfg.c_n && !(*cfg.c_n > 0)) throw InputError("--cn must be positive");
    if (cfg.tol && !(*cfg.tol > 0)) throw InputError("--tol must be positive");
    Context ctx{cfg, std::nullopt, {}, cfg.seed.value_or(1), out};
    std::uint64_t h = fnv1a64("");
    if (!cfg.config_path.empty()) {
      if (!fs::exists(cfg.config_path)) throw InputError(cfg.config_path + ": no such file");
      ctx.doc = JsonDoc::load(cfg.config_path);
      h = fnv1a64(ctx.doc->text());
    }
    std::ostringstream flags;
    flags << "kappa=" << format_number(cfg.kappa)
          << ";cn=" << (cfg.c_n ? format_number(*cfg.c_n) : "default")
          << ";tol=" << (cfg.tol ? format_number(*cfg.tol) : "default");
    ctx.hash = hex64(fnv1a64(flags.str(), h));
    fs::create_directories(cfg.out_dir);

    if (cfg.command == "distort") return cmd_distort(ctx);
    if (cfg.command == "examples") return cmd_examples(ctx);
    if (cfg.command == "netmeasure") return cmd_netmeasure(ctx);
    if (cfg.command == "fractal") return cmd_fractal(ctx);
    return cmd_verify(ctx);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Distortion of Orlicz-Sobolev maps on Hausdorff measures"};
  app.require_subcommand(1);
  RunConfig cfg;
  double cn = 0.0, tol = 0.0;
  std::uint64_t seed = 0;
  const char* help[] = {
      "psi = phi o J^-1 for one (A, phi) pair; samples CSV plus fitted exponents",
      "closed-form distortion table over a parameter lattice, cross-checked numerically",
      "dyadic net premeasure of a cube set, with the sandwich bounds",
      "Cantor construction, gradient norms, energy series and image sums",
      "invariant suites; pass/fail JSON",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands().size(); ++i) {
    CLI::App* s = app.add_subcommand(commands()[i], help[i]);
    s->add_option("--config", cfg.config_path, "JSON configuration file");
    s->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    s->add_option("--seed", seed, "master seed (u64)");
    s->add_option("--kappa", cfg.kappa, "kappa in the gradient bound")->capture_default_str();
    s->add_option("--cn", cn, "covering constant c_n (default 6^n)");
    s->add_option("--tol", tol, "tolerance override");
    subs.push_back(s);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitMalformed;
  }
  for (CLI::App* s : subs) {
    if (!s->parsed()) continue;
    cfg.command = s->get_name();
    if (s->count("--seed")) cfg.seed = seed;
    if (s->count("--cn")) cfg.c_n = cn;
    if (s->count("--tol")) cfg.tol = tol;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace orlicz
