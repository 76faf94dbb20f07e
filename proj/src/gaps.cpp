#include "vpl/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace vpl {

const char* to_string(GapQuantity q) {
    switch (q) {
        case GapQuantity::erdos_single: return "single";
        case GapQuantity::erdos_ap: return "ap";
        case GapQuantity::erdos_avg: return "avg";
        case GapQuantity::cheer_goldston: return "cg";
        case GapQuantity::asym: return "asym";
    }
    return "?";
}

namespace {

std::uint64_t bound_of(const PrimeStore& store, double x, const char* who) {
    if (x > static_cast<double>(store.limit)) {
        throw std::out_of_range(std::string(who) + ": x exceeds store.limit");
    }
    return static_cast<std::uint64_t>(std::floor(x));
}

inline void kahan_add(double& sum, double& comp, double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

// Integer gap-square totals per class for one modulus: for every prime
// p <= bound in a coprime class, accumulate (p - prev_class_prime)^2.
// shift = 0 sums gap^2, shift = 1 sums (gap - 1)^2.
std::uint64_t class_gap_total(const PrimeStore& store, std::uint64_t bound,
                              std::uint64_t q, std::uint64_t shift) {
    std::vector<std::uint64_t> prev(q, 0);
    std::uint64_t total = 0;
    for (std::uint64_t p : store.primes) {
        if (p > bound) break;
        const std::uint64_t r = p % q;
        if (q > 1 && std::gcd(r, q) != 1) continue;
        if (prev[r] != 0) {
            const std::uint64_t gap = p - prev[r];
            const std::uint64_t g = gap - shift;
            total += g * g;
        }
        prev[r] = p;
    }
    return total;
}

} // namespace

double gap_square_sum(const PrimeStore& store, double x) {
    if (x < 3.0) throw DomainError("gap_square_sum: x must be >= 3 (no gap below)");
    const std::uint64_t bound = bound_of(store, x, "gap_square_sum");
    std::uint64_t total = 0;
    std::uint64_t prev = 0;
    for (std::uint64_t p : store.primes) {
        if (p > bound) break;
        if (prev != 0) {
            const std::uint64_t gap = p - prev;
            total += gap * gap;
        }
        prev = p;
    }
    return static_cast<double>(total);
}

double gap_square_sum_ap(const PrimeStore& store, double x, std::uint64_t q,
                         std::uint64_t a) {
    if (q == 0 || a == 0 || std::gcd(a, q) != 1) {
        throw DomainError("gap_square_sum_ap: need positive a, q with (a,q) = 1");
    }
    const std::uint64_t bound = bound_of(store, x, "gap_square_sum_ap");
    const std::uint64_t residue = a % q;
    std::uint64_t total = 0;
    std::uint64_t prev = 0;
    for (std::uint64_t p : store.primes) {
        if (p > bound) break;
        if (p % q != residue) continue;
        if (prev != 0) {
            const std::uint64_t gap = p - prev;
            total += gap * gap;
        }
        prev = p;
    }
    const double phi = static_cast<double>(euler_phi(q));
    return static_cast<double>(total) / (phi * phi);
}

GapReport erdos_avg_sum(const PrimeStore& store, double x, double Q) {
    if (!(Q >= 1.0) || Q > x) throw DomainError("erdos_avg_sum: need 1 <= Q <= x");
    const std::uint64_t bound = bound_of(store, x, "erdos_avg_sum");
    const auto Qi = static_cast<std::uint64_t>(std::floor(Q));

    double sum = 0.0, comp = 0.0;
    for (std::uint64_t q = 1; q <= Qi; ++q) {
        const double phi = static_cast<double>(euler_phi(q));
        const std::uint64_t total = class_gap_total(store, bound, q, 0);
        kahan_add(sum, comp, static_cast<double>(total) / (phi * phi));
    }

    GapReport rep;
    rep.quantity = GapQuantity::erdos_avg;
    rep.x = x;
    rep.Q = Q;
    rep.value = sum;
    const double lx = std::log(x);
    rep.normalizer = Q * x * lx * lx * lx;
    rep.ratio = rep.value / rep.normalizer;
    return rep;
}

double erdos_partition_witness(const PrimeStore& store, double x, double Q) {
    if (!(Q >= 1.0) || Q > x) {
        throw DomainError("erdos_partition_witness: need 1 <= Q <= x");
    }
    const std::uint64_t bound = bound_of(store, x, "erdos_partition_witness");
    const auto Qi = static_cast<std::uint64_t>(std::floor(Q));

    // Blocks are the open runs (p_i, p_{i+1}) of length gap - 1, on which the
    // class theta vanishes; the (2,3) pair contributes (1-1)^2 = 0, matching
    // its exclusion.
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t q = 1; q <= Qi; ++q) {
        const double phi = static_cast<double>(euler_phi(q));
        const std::uint64_t total = class_gap_total(store, bound, q, 1);
        kahan_add(sum, comp, static_cast<double>(total) / (phi * phi));
    }
    return sum;
}

double cheer_goldston_ratio(const PrimeStore& store, double x) {
    if (x < 1000.0) throw DomainError("cheer_goldston_ratio: x must be >= 1000");
    return gap_square_sum(store, x) / (x * std::log(x));
}

double asym_quantity(const PrimeStore& store, double x, std::uint64_t budget) {
    const std::uint64_t bound = bound_of(store, x, "asym_quantity");
    if (bound < 1) throw DomainError("asym_quantity: x must be >= 1");

    std::vector<std::pair<std::uint64_t, double>> jumps;
    for (std::size_t i = 0; i < store.primes.size(); ++i) {
        const std::uint64_t p = store.primes[i];
        if (p > bound) break;
        for (std::uint64_t pw = p; pw <= bound; ) {
            jumps.emplace_back(pw, store.logw[i]);
            if (pw > bound / p) break;
            pw *= p;
        }
    }
    const std::uint64_t C = 2 * jumps.size() + 2;
    if (C * C > budget) {
        throw ResourceError("asym_quantity: predicted " + std::to_string(C * C) +
                            " candidate-pair ops exceed budget " +
                            std::to_string(budget));
    }

    auto series = PiecewiseLinearSeries<double>::make(bound, -1.0, std::move(jumps));
    return variation_piecewise_linear(series, 2.0).power_sum;
}

} // namespace vpl
