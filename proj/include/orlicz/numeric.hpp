#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct BisectionOptions {
  double rtol = 1e-8;
  double atol = 1e-12;
  int max_iter = 200;
};

/// Solve f(x) = target for non-decreasing f on [lo, hi].
/// The bracket must satisfy f(lo) <= target <= f(hi); it is never left.
/// Stops when |f(x) - target| <= rtol*|target| + atol or the bracket collapses.
double bisect(const std::function<double(double)>& f, double target, double lo,
              double hi, const BisectionOptions& opt = {});

/// Widen [lo, hi] geometrically around a guess until f straddles target.
/// Returns false if the limits are reached first.
bool expand_bracket(const std::function<double(double)>& f, double target,
                    double& lo, double& hi, double min_x, double max_x);

double log_sum_exp(const std::vector<double>& v);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

/// Least squares for y ≈ X b with a handful of columns (normal equations).
std::vector<double> least_squares(const std::vector<std::vector<double>>& X,
                                  const std::vector<double>& y,
                                  double* rms_residual = nullptr);

/// Thread count from ORLICZ_DISTORT_THREADS (falls back to hardware threads).
unsigned worker_threads();

/// Runs body(i) for i in [0, count) on worker_threads() threads.
/// Each index is processed exactly once; results must be written by index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

std::vector<double> linspace(double a, double b, std::size_t count);

}  // namespace orlicz
