#pragma once

#include <string>

#include "orlicz/convex_calculus.hpp"

namespace orlicz {

/// B̃(t) = t^{n'} ∫_t^∞ Ã(s)/s^{1+n'} ds tabulated on the conjugate grid
/// (n ≥ 2, n' = n/(n−1)).
YoungFunction sobolev_dual(const YoungFunction& A, int n, const Grid& grid = {});

/// B = conjugate of B̃; B = A when n = 1.
/// Rejects A unless the embedding and divergence conditions are certified.
YoungFunction sobolev_conjugate(const YoungFunction& A, int n, const Grid& grid = {});

/// Measured comparison between A and B near infinity.
struct EquivalenceReport {
  double c1 = 0.0;          ///< min of B⁻¹(y)/A⁻¹(y) on the tail
  double c2 = 0.0;          ///< max of the same ratio
  double domination = 0.0;  ///< smallest c with B(t) ≤ A(c t) on the sampled range
  double tail_lo = 0.0;     ///< log y window of the ratio scan
  double tail_hi = 0.0;
  std::string note;
};

EquivalenceReport compare_sobolev(const YoungFunction& A, const YoungFunction& B);

/// Φ_B(r) = r B⁻¹(1/r)^n, Φ_B(0) = 0.
double phi_B(const YoungFunction& B, int n, double r);

}  // namespace orlicz
