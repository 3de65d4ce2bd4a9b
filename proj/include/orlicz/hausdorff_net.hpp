#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/gauge.hpp"

namespace orlicz {

/// 2^{-level} ([0,1]^n + coords)
struct DyadicCube {
  int level = 0;
  std::vector<std::int64_t> coords;

  std::size_t dim() const { return coords.size(); }
  double side() const;
  double diameter() const;
  DyadicCube ancestor(int lvl) const;
  bool contains(const DyadicCube& other) const;
  /// Closed cubes of the same level touching (or equal).
  bool adjacent_or_equal(const DyadicCube& other) const;
  std::vector<double> center() const;

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
  friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

/// Finite antichain of dyadic cubes inside [0,1]^n.
class CubeSet {
 public:
  CubeSet() = default;
  /// Throws InputError unless the cubes form an antichain inside [0,1]^n.
  CubeSet(int dim, std::vector<DyadicCube> cubes);
  /// Drops duplicates and cubes contained in other cubes first.
  static CubeSet antichain(int dim, std::vector<DyadicCube> cubes);
  /// Snaps points of [0,1]^n (row-major, dim coordinates each) to cubes of `level`.
  static CubeSet from_points(int dim, const std::vector<double>& coords, int level);

  int dim() const { return dim_; }
  const std::vector<DyadicCube>& cubes() const { return cubes_; }
  bool empty() const { return cubes_.empty(); }
  std::size_t size() const { return cubes_.size(); }
  int finest_level() const;
  int coarsest_level() const;

 private:
  int dim_ = 1;
  std::vector<DyadicCube> cubes_;  // sorted
};

using GaugeFn = std::function<double(double)>;

/// `cube` together with all its dyadic descendants `depth` levels down.
struct CoverPiece {
  DyadicCube cube;
  int depth = 0;
};

struct NetMeasure {
  double value = 0.0;
  std::vector<CoverPiece> cover;
  int top_level = 0;     ///< coarsest level allowed by σ
  int bottom_level = 0;  ///< finest level of E
};

/// Smallest level whose cube diameter is ≤ σ (0 for σ = ∞).
int top_level_for(int dim, double sigma);

/// Σ φ(d) over a cover, summed in a fixed order (ascending terms, long double).
double cover_cost(const std::vector<CoverPiece>& cover, int dim, const GaugeFn& phi);

/// Exact Λ^φ_σ(E) over dyadic covers by cubes of levels [top_level_for(σ), finest level of E].
/// The value is cover_cost of the returned witness. RangeError if σ is below E's resolution.
NetMeasure net_premeasure(const CubeSet& E, const GaugeFn& phi, double sigma);
NetMeasure net_premeasure(const CubeSet& E, const GaugeFunction& phi, double sigma);

/// Branch-and-bound enumeration of every dyadic cover from the same cube family;
/// minimum of cover_cost. Empty when more than `node_budget` search nodes are needed.
std::optional<double> exhaustive_premeasure(const CubeSet& E, const GaugeFn& phi, double sigma,
                                            std::size_t node_budget = 5'000'000);

struct SandwichReport {
  double sigma = 0.0;
  double lambda_sigma = 0.0;  ///< Λ_σ, also an upper bound for H_σ
  double lambda_half = 0.0;   ///< Λ_{σ/2}
  double h_lower = 0.0;       ///< lower bound for H_σ
  double h_lower_half = 0.0;  ///< lower bound for H_{σ/2}
  double enlarge = 0.0;       ///< 2^n sup_k φ(√n 2^{-k})/φ(2^{-k-1}) used in the lower bounds
  double c_n = 0.0;
  double measured_constant = 0.0;  ///< Λ_σ / h_lower_half
  bool lower_holds = false;        ///< h_lower ≤ Λ_σ
  bool certified = false;          ///< Λ_σ ≤ c_n h_lower_half
};

/// H_σ ≤ Λ_σ ≤ c_n H_{σ/2}. H is bracketed: any set of diameter d ≤ σ lies in at most
/// 2^n dyadic cubes of side in [d, 2d), so H_σ ≥ Λ_{2√n σ}/enlarge.
SandwichReport sandwich_check(const CubeSet& E, const GaugeFunction& phi, double sigma,
                              double c_n);

struct NormalizationSandwich {
  double raw = 0.0;         ///< Λ with the raw gauge
  double raw_split = 0.0;   ///< same, pieces may be split up to 64 levels below E
  double normalized = 0.0;  ///< Λ with φ°
  double ratio = 0.0;       ///< normalized / raw_split
  /// 2^{-n} raw_split ≤ normalized ≤ min(raw, raw_split), up to a relative 1e-3
  bool holds = false;
};

NormalizationSandwich normalization_sandwich(const CubeSet& E, const GaugeFunction& phi,
                                             double sigma);

/// Gauge family φ_θ(r); larger θ must mean a smaller gauge near 0.
using GaugeFamily = std::function<double(double theta, double r)>;

struct DimensionFit {
  double critical = 0.0;
  bool degenerate = false;  ///< every level empty
  bool monotone = true;     ///< level sums monotone in j at the critical parameter
  std::vector<int> levels;
  std::vector<double> level_sums;  ///< at the critical parameter
  std::string note;
};

/// Σ_{Q ∈ E_j} φ_θ(d(Q)) for each level set.
std::vector<double> level_sums(const std::vector<CubeSet>& levels, const GaugeFamily& phi,
                               double theta);

/// Parameter where the regression slope of log level sums against j changes sign,
/// by bisection on [lo, hi]. Needs ≥ 4 levels.
DimensionFit dimension_fit(const std::vector<CubeSet>& levels, const GaugeFamily& phi, double lo,
                           double hi, double tol = 1e-6);

}  // namespace orlicz
