#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/convex_calculus.hpp"
#include "orlicz/distortion.hpp"
#include "orlicz/gauge.hpp"
#include "orlicz/scaling.hpp"

namespace orlicz {

struct InstanceSpec {
  std::string name;
  YoungFunction A;
  GaugeFunction phi;
  int n = 2;
  std::optional<Stability> expected;  ///< known stability verdict, if any
};

struct CorpusEntry {
  InstanceSpec spec;
  std::shared_ptr<const DistortionBundle> bundle;
};

/// t⁴, t³, t² log²(e + t), t³ log(e + t), t^2 e^t in dimension n.
std::vector<std::pair<std::string, YoungFunction>> young_corpus(int n);

/// Every Young family with φ = r^n, plus the four worked examples in n = 2.
std::vector<InstanceSpec> default_instances();

/// Builds the bundles (in parallel).
std::vector<CorpusEntry> build_corpus(const std::vector<InstanceSpec>& specs);

struct SuiteOptions {
  std::uint64_t seed = 1;
  double slope_tol = 0.01;         ///< relative, on the fitted ψ exponent
  std::size_t key_pairs = 10'000;  ///< per instance
  double key_tol = 1e-8;           ///< relative gap
  std::size_t theta_points = 1'000;
  double theta_tol = 1e-3;
  std::size_t young_pairs = 1'000;
  double conjugate_tol = 1e-3;
  std::size_t net_instances = 100;
  double c_n = 0.0;                ///< 0 selects default_cn(n)
};

struct SuiteResult {
  std::string name;
  Truth verdict = Truth::inconclusive;  ///< yes = pass
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  double worst = 0.0;                   ///< suite specific, see `measure`
  double tolerance = 0.0;
  std::string measure;
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;
  bool passed() const { return verdict == Truth::yes; }
};

/// φ = r^n gives ψ = r^n: least-squares slope of log ψ over r ∈ [1e-9, 1e-3].
SuiteResult slope_identity_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt);
/// ψ(st) ≤ φ(t) + t^n B(s) on random (s, t).
SuiteResult key_inequality_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt);
SuiteResult bundle_invariant_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt);
/// Bounds by min/max{1, r^γ}, submultiplicativity and Θ_*(r) = 1/Θ(1/r) for ψ (γ = n)
/// and B⁻¹ (γ = 1), one-sided and global.
SuiteResult theta_law_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt);
/// Θ → 0 or Θ ≡ 1 on (0, 1], consistent with Θ(2^{-k}) ≤ Θ(1/2)^k, and the expected
/// stability verdicts.
SuiteResult dichotomy_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt);
/// Young's inequality and Ã̃ = A for every distinct Young function of the corpus.
SuiteResult conjugate_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt);
/// φ° idempotent, φ°/r^n non-increasing, φ°(2r) ≤ 2^n φ°(r).
SuiteResult gauge_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& opt);
/// Random depth ≤ 4 cube sets: DP equals the exhaustive optimum exactly, the σ sandwich
/// is certified with c_n, and the φ° sandwich holds.
SuiteResult net_measure_suite(const SuiteOptions& opt);

std::vector<SuiteResult> run_all_suites(const std::vector<CorpusEntry>& corpus,
                                        const SuiteOptions& opt);

}  // namespace orlicz
