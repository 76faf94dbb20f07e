// regression.hpp
// Frozen regression constants. The asymptotic bounds computed by this
// project carry unspecified constants; each value below was measured once on
// the seeded corpus (see tests and the acceptance suite) and committed.
// Later runs assert observed <= kRegressionSlack x recorded. Regenerate with
// `vpl accept --record` only when the corpus itself changes.

#pragma once

#include <cstdint>

namespace vpl::regression {

inline constexpr double kRegressionSlack = 1.05;

// classic_large_sieve_lhs / ((N + Q^2) * energy); N=256, Q=8, unit-modulus
// coefficients, seed 77.
inline constexpr double kClassicLargeSieveC = 0.029931673100531176;

// var_at_points / ((N + 1/delta + 1) * ln N * energy) at r = 2; N=64,
// Farey Q=4, +/-1 coefficients, seed 78.
inline constexpr double kVarAtPointsR2C = 0.055288467359170666;

// var_at_points / ((N + 1/delta + 1) * energy) at r = 3, same corpus.
inline constexpr double kVarAtPointsHighRC = 1.838641523369742;

// var_large_sieve_lhs / (ln^2 N * (N + Q^2) * energy); N=128, Q=4, +/-1
// coefficients, seed 1.
inline constexpr double kVarLargeSieveC = 0.0034360397519391317;

// Acceptance corpus: per-point frozen ratios; 0 marks a point whose
// computation exceeds the resource budget on the reference hardware (it is
// reported as failed, never silently skipped).
struct CorpusRatios {
    std::uint64_t x;
    std::uint64_t Q;
    double t11;  // bdh_sum / (x Q ln x)
    double t14;  // var_bdh_sum / (x Q ln^3 x)
    double t15;  // var_bdh_shared_partition / (x Q ln^2 x)
    double ls51; // var_large_sieve_lhs / (ln^2 N (N + Q^2) energy)
};

inline constexpr CorpusRatios kCorpus[] = {
    {1024, 128, 0.21391267571518538, 0.040171536596304139, 0.12875231030416653, 0.013932189172300791},
    {4096, 512, 0.285537566851498, 0.030146472231323575, 0.1078190876811381, 0.010935237097438483},
    {16384, 2048, 0.36959657066890722, 0.023187865700152507, 0.092909762011056482, 0.0},
};

// Exact values frozen from the first oracle run (fully deterministic
// computations, asserted to tight tolerance).
inline constexpr double kGapSquareSum1e6 = 21038161.0;
inline constexpr double kCheerGoldstonRatio1e6 = 1.5227928719486998;
inline constexpr double kThetaPsiGapRatio1e6 = 1.10242246999871;
inline constexpr double kAsymRatio1e4 = 2.2568600606639708;
inline constexpr double kAsymRatioFloor1e4 = 0.5;

} // namespace vpl::regression
