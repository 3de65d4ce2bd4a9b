#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/convex_calculus.hpp"
#include "orlicz/hausdorff_net.hpp"

namespace orlicz {

/// Nested cube families A_1 ⊃ ... ⊃ A_J: #A_j = floor(2^{jν}), side 2^{-2^j}
/// (dyadic level 2^j), children placed stratified inside their parent.
struct CantorSpec {
  int n = 2;
  double nu = 1.0;
  int levels = 5;
  std::uint64_t seed = 1;
};

std::size_t cantor_count(double nu, int j);

struct CantorSet {
  CantorSpec spec;
  std::vector<std::vector<DyadicCube>> families;  ///< families[j-1] = A_j
  std::vector<std::vector<int>> parent;           ///< index into A_{j-1}; -1 on A_1
  int max_children = 0;  ///< measured bound on children per parent
  int max_overlap = 0;   ///< measured max #{Q ∈ A_j : supp η_Q meets supp η_Q̃}

  int depth() const { return static_cast<int>(families.size()); }
  const std::vector<DyadicCube>& family(int j) const { return families.at(j - 1); }
  CubeSet level_set(int j) const;
  /// Index of the level-j ancestor of leaf `leaf` (a cube of A_J).
  int ancestor(int leaf, int j) const;
};

/// InputError for ν ≤ 0, n < 1, or levels whose side 2^{-2^J} does not fit 62 bits.
CantorSet build_cantor(const CantorSpec& spec);

/// η_j centred at `center`: 1 on the cube of side 2^{-2^j}, 0 outside the cube of side
/// 2^{-2^{j-1}}, (log₂ 1/(2|x|∞) − 2^{j-1})/2^{j-1} in between.
double eta_bump(int j, const std::vector<double>& center, const double* x);
/// |∇η_j| at sup-distance ρ from the centre.
double eta_gradient(int j, double rho);

/// Parameters of u_ξ = Σ_j j^{-δ} 2^{-jν/σ} Σ_{Q ∈ A_j} η_Q ξ_Q with σ = nν/(q − n + 1 + ν).
struct RandomMapSpec {
  int n = 2;
  double q = 2.0;
  double nu = 1.0;
  double delta = 1.5;
  double mu = 3.5;  ///< target gauge exponent r^σ log^μ
  int levels = 5;
  std::uint64_t seed = 1;

  double sigma() const { return n * nu / (q - n + 1 + nu); }
  double coefficient(int j) const;
  /// Open interval of δ with δ > 1 and 1 + δσ < μ (empty when hi ≤ lo).
  std::pair<double, double> admissible_delta() const;
  /// InputError naming the violated precondition.
  void validate() const;
  CantorSpec cantor() const { return {n, nu, levels, seed}; }
};

/// The truncated random map with its ξ drawn from its seed.
class RandomMap {
 public:
  explicit RandomMap(const RandomMapSpec& spec);

  const RandomMapSpec& spec() const { return spec_; }
  const CantorSet& cantor() const { return cantor_; }
  const std::vector<double>& xi(int j, std::size_t q) const { return xi_.at(j - 1).at(q); }

  std::vector<double> operator()(const double* x) const;
  /// Level-j part u_{ξ,j}(x).
  std::vector<double> level_part(int j, const double* x) const;
  /// a_Q(x, y) for every cube, ordered level by level.
  std::vector<double> coefficients(const double* x, const double* y) const;

 private:
  RandomMapSpec spec_;
  CantorSet cantor_;
  std::vector<std::vector<std::vector<double>>> xi_;
  std::vector<std::vector<std::vector<double>>> centers_;
};

/// Uniform sample of the Euclidean unit ball (normalized Gaussian, radius U^{1/n}).
std::vector<double> sample_ball(int n, std::mt19937_64& rng);

/// 64-bit mixer used to derive per-task seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// A(t) = t^n log^q(2 + t)
YoungFunction construction_young(int n, double q);

struct LevelNorm {
  int j = 0;
  std::size_t count = 0;       ///< #A_j
  double single = 0.0;         ///< ‖∇η_j‖
  double scaled = 0.0;         ///< single / 2^{j(q−n+1)/n}
  double disjoint = 0.0;       ///< norm of #A_j disjoint translates
  double disjoint_bound = 0.0; ///< #A_j^{1/n} single
  int colours = 0;             ///< colours of the support-overlap graph
  double overlapping = 0.0;    ///< norm of Σ_Q ξ_Q ⊗ ∇η_Q by quadrature
  double level_norm = 0.0;     ///< j^{-δ} 2^{-jν/σ} overlapping
};

/// Luxemburg norms for level j by radial Gauss-Legendre quadrature.
LevelNorm gradient_norm_estimate(const RandomMap& map, int j, int radial_nodes = 16);
/// Single-bump norm only (no map needed).
double single_bump_norm(int n, double q, int j, int radial_nodes = 16);

struct LevelEnergy {
  int j = 0;
  double mass = 0.0;          ///< μ⊗μ mass of pairs with separation level j
  double mean = 0.0;          ///< E[1/φ(|u(x) − u(y)|)] over those pairs
  double contribution = 0.0;  ///< mass · mean
  double ci_half = 0.0;       ///< 95% half width of the contribution
  double law = 0.0;           ///< j^{δσ − μ}
  std::size_t samples = 0;
};

struct EnergyReport {
  double b = 0.0;  ///< shift in φ(r) = r^σ log₂^μ(b + 1/r)
  double sigma = 0.0;
  std::vector<LevelEnergy> levels;  ///< separation levels 1..J−2
  LevelEnergy separated;            ///< pairs not adjacent even at level 1
  LevelEnergy truncated;            ///< separation level ≥ J−1 (no guarantee)
  double total = 0.0;
  std::size_t zero_draws = 0;       ///< u(x) = u(y) draws, excluded
  double law_spread = 0.0;          ///< max/min of contribution/law over levels
};

/// Smallest b (times 1.05) keeping r^σ log^μ(b + 1/r) increasing.
double increasing_shift(double sigma, double mu);

/// Monte Carlo of E_ξ ∫∫ dμ dμ / φ(|u(x) − u(y)|) with μ uniform on the leaf cubes.
/// Pair masses are enumerated exactly; positions and ξ are sampled per pair.
EnergyReport energy_integral_mc(const RandomMapSpec& spec, std::size_t samples_per_pair);

struct ImageLevel {
  int j = 0;
  std::size_t count = 0;
  double mean_diameter = 0.0;
  double sum = 0.0;
};

enum class Trend { increasing, decreasing, mixed };
const char* to_string(Trend t);

struct ImageSums {
  std::vector<ImageLevel> levels;
  Trend trend = Trend::mixed;
};

/// Σ_{Q ∈ A_j} probe(diam u(Q ∩ M)), diameters from the images of sample points of M.
ImageSums image_cover_sums(const RandomMap& map, const GaugeFn& probe, int max_level,
                           int per_axis = 3);

/// per_axis^n grid points inside each leaf cube, leaf by leaf.
std::vector<std::vector<double>> leaf_samples(const CantorSet& c, int per_axis);

struct InvariantReport {
  bool nesting = false;
  bool counts = false;
  bool overlap_bounded = false;     ///< max_overlap ≤ 3^n max_children
  bool coefficient_bound = false;   ///< ‖a(x,y)‖∞ ≥ 2^{-(j+2)ν/σ}/(j+2)^δ
  std::size_t pairs_checked = 0;
  double lipschitz = 0.0;           ///< Lipschitz bound of the truncated map
  double truncation_gap = 0.0;      ///< sup |u_{ξ,J}| over the leaf samples
  double truncation_bound = 0.0;    ///< J^{-δ} 2^{-Jν/σ} max_overlap
};

InvariantReport check_construction(const RandomMap& map, std::size_t pairs = 2000);

/// Data for one instance of d(Q)^n/κ B(d(u(Q))/(κλ d(Q))) ≤ ∫_Q A(|∇u|/λ).
struct MorreySample {
  double cube_diameter = 0.0;
  double image_diameter = 0.0;
  FieldSample gradient;
};

/// Left minus right side.
double morrey_residual(const MorreySample& s, const YoungFunction& A, const YoungFunction& B,
                       int n, double lambda, double kappa);

/// u(x) = M x on the unit cube (row-major n×n matrix); all quantities exact.
MorreySample morrey_linear(int n, const std::vector<double>& matrix);
/// u = η_j on its support cube, gradient by radial quadrature.
MorreySample morrey_bump(int n, int j, int radial_nodes = 16);

}  // namespace orlicz
