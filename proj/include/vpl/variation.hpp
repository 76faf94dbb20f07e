// variation.hpp
// Exact r-variation over interval partitions: exhaustive oracle, dense DP,
// and pruned DPs for real / sparse / piecewise-linear inputs, plus the
// canonical dyadic interval decomposition.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vpl/common.hpp"
#include "vpl/sieve.hpp"

namespace vpl {

inline constexpr std::size_t kDefaultDenseCap = 20'000;
inline constexpr std::size_t kOracleCap = 18;

// Breakpoints 0 = t0 < t1 < ... < tm = N; blocks are (t_{i-1}, t_i].
// For the degenerate N = 0 the list is just {0} and there are no blocks.
struct IntervalPartition {
    std::uint64_t length = 0;
    std::vector<std::uint64_t> breakpoints;
};

enum class VariationAlgo {
    oracle,
    dense_dp,
    extrema_pruned,
    sparse_pruned,
    piecewise_linear,
};

const char* to_string(VariationAlgo algo);

struct VariationResult {
    double value = 0.0;     // the V^r norm
    double power_sum = 0.0; // value^r, exactly as accumulated by the DP
    IntervalPartition partition;
    VariationAlgo algorithm = VariationAlgo::dense_dp;
};

// ------------------------------------------------------------------
// A length-N sequence whose prefix function is slope*j plus jumps:
//   prefix(j) = slope*j + sum of jump values at positions <= j,
// with prefix(0) = 0. Jump positions lie in [1, N], strictly increasing
// (duplicates are merged by make()).
// ------------------------------------------------------------------
template <typename T>
struct PiecewiseLinearSeries {
    std::uint64_t length = 0;
    double slope = 0.0;
    std::vector<std::pair<std::uint64_t, T>> jumps;

    static PiecewiseLinearSeries make(std::uint64_t length, double slope,
                                      std::vector<std::pair<std::uint64_t, T>> jumps);

    T prefix(std::uint64_t j) const;
    std::vector<T> densify() const;
};

extern template struct PiecewiseLinearSeries<double>;
extern template struct PiecewiseLinearSeries<cplx>;

// ------------------------------------------------------------------
// Core engine: given prefix values P_0..P_m at an increasing list of
// breakpoint candidates, the maximum over partitions that only break at
// candidates of sum |P_k - P_j|^r over blocks. Returns the power sum
// (the r-th power of the variation norm). This is the value-only hot path;
// the public operations below add tie-broken partition reconstruction.
// ------------------------------------------------------------------
double max_partition_power(const std::vector<double>& prefix, double r);
double max_partition_power(const std::vector<cplx>& prefix, double r);

// Exhaustive search over all 2^(N-1) partitions; N <= 18 (ResourceError
// above). Ties break toward fewer blocks, then lexicographically smallest
// breakpoints.
VariationResult variation_oracle(const std::vector<cplx>& seq, double r);
VariationResult variation_oracle(const std::vector<double>& seq, double r);

// O(N^2) DP over all breakpoints; equals the oracle (same tie-breaking) on
// any input the oracle accepts. Inputs beyond `cap` get a ResourceError
// pointing at the pruned variants.
VariationResult variation_dp(const std::vector<cplx>& seq, double r,
                             std::size_t cap = kDefaultDenseCap);
VariationResult variation_dp(const std::vector<double>& seq, double r,
                             std::size_t cap = kDefaultDenseCap);

// DP restricted to {0, N} plus weak local extrema of the prefix-sum walk.
// Exact for real input: between extrema the walk is monotone, and a block
// cost is convex in the breakpoint's prefix value.
VariationResult variation_pruned_real(const std::vector<double>& seq, double r);

// DP over {0, N} and {p-1, p} for each jump position p. Between jumps the
// prefix is linear, so each block cost is convex along a jump-free run and
// is maximized at one of its ends.
VariationResult variation_piecewise_linear(const PiecewiseLinearSeries<double>& series,
                                           double r = 2.0);

// Slope must be 0 (DomainError otherwise). Candidates are {0, N} and the
// jump positions: zero-runs contribute nothing to block sums, so a
// breakpoint inside one can slide back to the previous jump.
VariationResult variation_sparse_complex(const PiecewiseLinearSeries<cplx>& series,
                                         double r);

// ------------------------------------------------------------------
// Canonical decomposition of S (0-based, half-open (lo, hi]) contained in
// (0, 2^k] into aligned dyadic blocks I_{c,l} = ((c-1)2^l, c2^l]: pairwise
// disjoint, union S, at most two per level, at most 2k blocks in total.
// ------------------------------------------------------------------
struct DyadicLabel {
    std::uint64_t c = 0;
    std::uint32_t level = 0;

    IntInterval interval() const {
        return {(c - 1) << level, c << level};
    }
    bool operator==(const DyadicLabel&) const = default;
};

std::vector<DyadicLabel> dyadic_decompose(IntInterval S, std::uint32_t k);

// max over y in [1, N] of prefix(y)^2 and the smallest y attaining it.
// The scan is restricted to jump-adjacent positions and the endpoints,
// which is exact by piecewise linearity.
std::pair<double, std::uint64_t> max_prefix_deviation(
    const PiecewiseLinearSeries<double>& series);

// ------------------------------------------------------------------
// Candidate helpers shared with the theorem assemblers.
// ------------------------------------------------------------------

// {0, N} plus {p-1, p} for every jump position p, sorted and deduplicated.
template <typename T>
std::vector<std::uint64_t> jump_adjacent_candidates(
    const PiecewiseLinearSeries<T>& series);

// {0, N} plus the weak local extrema of the walk S_0..S_N (prefix values of
// a real sequence); the exact candidate set for real-input pruning.
std::vector<std::uint64_t> extrema_candidates(const std::vector<double>& prefix);

// Prefix values of `series` evaluated at each candidate position.
template <typename T>
std::vector<T> prefix_at(const PiecewiseLinearSeries<T>& series,
                         const std::vector<std::uint64_t>& candidates);

} // namespace vpl
