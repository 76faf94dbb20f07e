// gaps.hpp
// Prime-gap square sums: single-modulus and progression variants, the
// averaged sum over moduli, the gap-partition witness, and the
// von-Mangoldt-deviation partition maximum.

#pragma once

#include <cstdint>
#include <optional>

#include "vpl/sieve.hpp"
#include "vpl/theorems.hpp"

namespace vpl {

inline constexpr double kCheerGoldstonConstant = 193.0 / 192.0;

enum class GapQuantity { erdos_single, erdos_ap, erdos_avg, cheer_goldston, asym };

const char* to_string(GapQuantity q);

struct GapReport {
    GapQuantity quantity = GapQuantity::erdos_single;
    double x = 0.0;
    std::optional<double> Q;
    double value = 0.0;
    double normalizer = 0.0;
    double ratio = 0.0;
};

// Sum over consecutive primes p_i < p_{i+1} <= x of (p_{i+1} - p_i)^2.
// Only gaps with both endpoints <= x are counted. x >= 3 (DomainError below).
double gap_square_sum(const PrimeStore& store, double x);

// Same over the primes p = a (mod q), with gaps scaled by 1/phi(q):
// integer gap-square total divided by phi(q)^2.
double gap_square_sum_ap(const PrimeStore& store, double x, std::uint64_t q,
                         std::uint64_t a);

// Sum of gap_square_sum_ap over q <= Q and all classes; normalizer
// Q x ln^3 x.
GapReport erdos_avg_sum(const PrimeStore& store, double x, double Q);

// Value of the gap-interval partition family: per class, blocks are the open
// runs between consecutive class primes, each contributing
// ((gap - 1)/phi(q))^2. Dominated by var_bdh_sum at the same (x, Q).
double erdos_partition_witness(const PrimeStore& store, double x, double Q);

// gap_square_sum(x) / (x ln x); x >= 1000.
double cheer_goldston_ratio(const PrimeStore& store, double x);

// max over partitions of sum_I (sum_{n in I} (Lambda(n) - 1))^2, via the
// piecewise-linear DP with slope -1 and jumps ln p at prime powers.
double asym_quantity(const PrimeStore& store, double x,
                     std::uint64_t budget = kDefaultDpBudget);

} // namespace vpl
