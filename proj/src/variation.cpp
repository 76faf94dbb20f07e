#include "vpl/variation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace vpl {

namespace {

// |z|^r from |z|^2. r = 2 is the hot path and must stay a plain pass-through.
inline double pow_from_sq(double norm_sq, double r) {
    if (r == 2.0) return norm_sq;
    if (r == 1.0) return std::sqrt(norm_sq);
    return std::pow(norm_sq, 0.5 * r);
}

inline double root_of_power(double power, double r) {
    if (r == 2.0) return std::sqrt(power);
    if (r == 1.0) return power;
    return std::pow(power, 1.0 / r);
}

inline double dist_sq(double a, double b) {
    const double d = b - a;
    return d * d;
}

inline double dist_sq(const cplx& a, const cplx& b) {
    const double dx = b.real() - a.real();
    const double dy = b.imag() - a.imag();
    return dx * dx + dy * dy;
}

void require_r(double r) {
    if (!(r >= 1.0)) throw DomainError("variation: r must be >= 1");
}

// Backward DP over candidate prefix values:
//   b[i] = max_{k > i} |P_k - P_i|^r + b[k],  b[last] = 0.
// Block powers therefore accumulate right-to-left; the oracle uses the same
// association so that exact ties are bit-identical across both.
void backward_pass(const std::vector<double>& P, double r,
                   std::vector<double>& b) {
    const std::size_t K = P.size();
    b.assign(K, 0.0);
    if (K < 2) return;
    const double* bp = b.data();
    if (r == 2.0) {
        for (std::size_t i = K - 1; i-- > 0;) {
            const double xi = P[i];
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t k = i + 1; k < K; ++k) {
                const double d = P[k] - xi;
                const double v = d * d + bp[k];
                best = best < v ? v : best;
            }
            b[i] = best;
        }
    } else {
        for (std::size_t i = K - 1; i-- > 0;) {
            const double xi = P[i];
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t k = i + 1; k < K; ++k) {
                const double v = pow_from_sq(dist_sq(xi, P[k]), r) + bp[k];
                best = best < v ? v : best;
            }
            b[i] = best;
        }
    }
}

void backward_pass(const std::vector<cplx>& P, double r,
                   std::vector<double>& b) {
    const std::size_t K = P.size();
    b.assign(K, 0.0);
    if (K < 2) return;
    std::vector<double> px(K), py(K);
    for (std::size_t i = 0; i < K; ++i) {
        px[i] = P[i].real();
        py[i] = P[i].imag();
    }
    const double* bp = b.data();
    if (r == 2.0) {
        for (std::size_t i = K - 1; i-- > 0;) {
            const double xi = px[i];
            const double yi = py[i];
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t k = i + 1; k < K; ++k) {
                const double dx = px[k] - xi;
                const double dy = py[k] - yi;
                const double v = dx * dx + dy * dy + bp[k];
                best = best < v ? v : best;
            }
            b[i] = best;
        }
    } else {
        for (std::size_t i = K - 1; i-- > 0;) {
            const cplx zi = P[i];
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t k = i + 1; k < K; ++k) {
                const double v = pow_from_sq(dist_sq(zi, P[k]), r) + bp[k];
                best = best < v ? v : best;
            }
            b[i] = best;
        }
    }
}

// Cost of block (cand[i], cand[k]] exactly as the backward pass computed it.
template <typename T>
inline double block_power(const std::vector<T>& P, std::size_t i,
                          std::size_t k, double r) {
    if constexpr (std::is_same_v<T, cplx>) {
        const double dx = P[k].real() - P[i].real();
        const double dy = P[k].imag() - P[i].imag();
        if (r == 2.0) return dx * dx + dy * dy;
        return pow_from_sq(dx * dx + dy * dy, r);
    } else {
        const double d = P[k] - P[i];
        if (r == 2.0) return d * d;
        return pow_from_sq(d * d, r);
    }
}

// Reconstructs the tie-broken optimal partition: maximal value, then fewest
// blocks, then lexicographically smallest breakpoints. Minimal block counts
// are only tabulated if a tie is actually met along the greedy walk.
template <typename T>
VariationResult candidate_dp_full(const std::vector<std::uint64_t>& cand,
                                  const std::vector<T>& P, double r,
                                  VariationAlgo algo) {
    const std::size_t K = cand.size();
    VariationResult res;
    res.algorithm = algo;
    res.partition.length = K ? cand.back() : 0;
    if (K <= 1) {
        res.partition.breakpoints = {0};
        return res;
    }

    std::vector<double> b;
    backward_pass(P, r, b);

    std::vector<std::uint32_t> blocks;
    auto ensure_blocks = [&] {
        if (!blocks.empty()) return;
        blocks.assign(K, 0);
        for (std::size_t i = K - 1; i-- > 0;) {
            std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
            for (std::size_t k = i + 1; k < K; ++k) {
                if (block_power(P, i, k, r) + b[k] == b[i]) {
                    best = std::min(best, 1 + blocks[k]);
                }
            }
            blocks[i] = best;
        }
    };

    res.partition.breakpoints.push_back(cand[0]);
    std::size_t pos = 0;
    while (pos + 1 < K) {
        std::size_t first = K;
        std::size_t hits = 0;
        for (std::size_t k = pos + 1; k < K; ++k) {
            if (block_power(P, pos, k, r) + b[k] == b[pos]) {
                if (first == K) first = k;
                ++hits;
            }
        }
        std::size_t chosen = first;
        if (hits > 1) {
            ensure_blocks();
            for (std::size_t k = pos + 1; k < K; ++k) {
                if (block_power(P, pos, k, r) + b[k] == b[pos] &&
                    blocks[pos] == 1 + blocks[k]) {
                    chosen = k;
                    break;
                }
            }
        }
        res.partition.breakpoints.push_back(cand[chosen]);
        pos = chosen;
    }

    res.power_sum = b[0];
    res.value = root_of_power(b[0], r);
    return res;
}

template <typename T>
std::vector<T> kahan_prefix(const std::vector<T>& seq) {
    std::vector<T> P;
    P.reserve(seq.size() + 1);
    P.push_back(T{});
    if constexpr (std::is_same_v<T, cplx>) {
        KahanComplexSum acc;
        for (const T& v : seq) {
            acc.add(v);
            P.push_back(acc.value());
        }
    } else {
        KahanSum acc;
        for (const T& v : seq) {
            acc.add(v);
            P.push_back(acc.value());
        }
    }
    return P;
}

VariationResult trivial_result(VariationAlgo algo) {
    VariationResult res;
    res.algorithm = algo;
    res.partition.length = 0;
    res.partition.breakpoints = {0};
    return res;
}

} // namespace

const char* to_string(VariationAlgo algo) {
    switch (algo) {
        case VariationAlgo::oracle: return "oracle";
        case VariationAlgo::dense_dp: return "dense_dp";
        case VariationAlgo::extrema_pruned: return "extrema_pruned";
        case VariationAlgo::sparse_pruned: return "sparse_pruned";
        case VariationAlgo::piecewise_linear: return "piecewise_linear";
    }
    return "?";
}

double max_partition_power(const std::vector<double>& prefix, double r) {
    require_r(r);
    if (prefix.size() <= 1) return 0.0;
    std::vector<double> b;
    backward_pass(prefix, r, b);
    return b[0];
}

double max_partition_power(const std::vector<cplx>& prefix, double r) {
    require_r(r);
    if (prefix.size() <= 1) return 0.0;
    std::vector<double> b;
    backward_pass(prefix, r, b);
    return b[0];
}

// ------------------------------------------------------------------
// Oracle
// ------------------------------------------------------------------
namespace {

// Breakpoint sets of equal size compare lexicographically as increasing
// sequences; the set containing the lowest differing position is smaller.
inline bool mask_lex_less(std::uint32_t a, std::uint32_t bmask) {
    const std::uint32_t diff = a ^ bmask;
    if (diff == 0) return false;
    return (a >> std::countr_zero(diff)) & 1u;
}

} // namespace

VariationResult variation_oracle(const std::vector<cplx>& seq, double r) {
    require_r(r);
    const std::size_t n = seq.size();
    if (n > kOracleCap) {
        throw ResourceError("variation_oracle: N = " + std::to_string(n) +
                            " exceeds the exhaustive cap " +
                            std::to_string(kOracleCap));
    }
    if (n == 0) return trivial_result(VariationAlgo::oracle);

    const auto S = kahan_prefix(seq);
    const std::uint32_t mask_count = 1u << (n - 1);

    double best_val = -std::numeric_limits<double>::infinity();
    int best_blocks = std::numeric_limits<int>::max();
    std::uint32_t best_mask = 0;

    for (std::uint32_t mask = 0; mask < mask_count; ++mask) {
        double acc = 0.0;
        std::size_t prev = n;
        int nblocks = 0;
        for (std::size_t pos = n; pos-- > 0;) {
            const bool is_bp = (pos == 0) || ((mask >> (pos - 1)) & 1u);
            if (is_bp) {
                acc = pow_from_sq(dist_sq(S[pos], S[prev]), r) + acc;
                prev = pos;
                ++nblocks;
            }
        }
        const bool better =
            acc > best_val ||
            (acc == best_val && nblocks < best_blocks) ||
            (acc == best_val && nblocks == best_blocks &&
             mask_lex_less(mask, best_mask));
        if (better) {
            best_val = acc;
            best_blocks = nblocks;
            best_mask = mask;
        }
    }

    VariationResult res;
    res.algorithm = VariationAlgo::oracle;
    res.power_sum = best_val;
    res.value = root_of_power(best_val, r);
    res.partition.length = n;
    res.partition.breakpoints.push_back(0);
    for (std::size_t pos = 1; pos < n; ++pos) {
        if ((best_mask >> (pos - 1)) & 1u) res.partition.breakpoints.push_back(pos);
    }
    res.partition.breakpoints.push_back(n);
    return res;
}

VariationResult variation_oracle(const std::vector<double>& seq, double r) {
    std::vector<cplx> z(seq.begin(), seq.end());
    return variation_oracle(z, r);
}

// ------------------------------------------------------------------
// Dense DP
// ------------------------------------------------------------------
namespace {

template <typename T>
VariationResult dense_dp_impl(const std::vector<T>& seq, double r,
                              std::size_t cap) {
    require_r(r);
    if (seq.size() > cap) {
        throw ResourceError(
            "variation_dp: N = " + std::to_string(seq.size()) +
            " exceeds the dense cap " + std::to_string(cap) +
            "; route long inputs through the pruned variants");
    }
    if (seq.empty()) return trivial_result(VariationAlgo::dense_dp);
    const auto P = kahan_prefix(seq);
    std::vector<std::uint64_t> cand(seq.size() + 1);
    std::iota(cand.begin(), cand.end(), std::uint64_t{0});
    return candidate_dp_full(cand, P, r, VariationAlgo::dense_dp);
}

} // namespace

VariationResult variation_dp(const std::vector<cplx>& seq, double r,
                             std::size_t cap) {
    return dense_dp_impl(seq, r, cap);
}

VariationResult variation_dp(const std::vector<double>& seq, double r,
                             std::size_t cap) {
    return dense_dp_impl(seq, r, cap);
}

// ------------------------------------------------------------------
// Extrema pruning (real input)
// ------------------------------------------------------------------
std::vector<std::uint64_t> extrema_candidates(const std::vector<double>& S) {
    std::vector<std::uint64_t> cand;
    if (S.empty()) return cand;
    const std::size_t n = S.size() - 1;
    cand.push_back(0);
    for (std::size_t j = 1; j < n; ++j) {
        const bool wmax = S[j] >= S[j - 1] && S[j] >= S[j + 1];
        const bool wmin = S[j] <= S[j - 1] && S[j] <= S[j + 1];
        if (wmax || wmin) cand.push_back(j);
    }
    if (n > 0) cand.push_back(n);
    return cand;
}

VariationResult variation_pruned_real(const std::vector<double>& seq, double r) {
    require_r(r);
    if (seq.empty()) return trivial_result(VariationAlgo::extrema_pruned);
    const auto S = kahan_prefix(seq);
    const auto cand = extrema_candidates(S);

    std::vector<double> P;
    P.reserve(cand.size());
    for (std::uint64_t c : cand) P.push_back(S[c]);
    return candidate_dp_full(cand, P, r, VariationAlgo::extrema_pruned);
}

// ------------------------------------------------------------------
// PiecewiseLinearSeries
// ------------------------------------------------------------------
template <typename T>
PiecewiseLinearSeries<T> PiecewiseLinearSeries<T>::make(
    std::uint64_t length, double slope,
    std::vector<std::pair<std::uint64_t, T>> jumps) {
    std::sort(jumps.begin(), jumps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::uint64_t, T>> merged;
    for (const auto& [pos, val] : jumps) {
        if (pos < 1 || pos > length) {
            throw DomainError("PiecewiseLinearSeries: jump position " +
                              std::to_string(pos) + " outside [1, N]");
        }
        if (!merged.empty() && merged.back().first == pos) {
            merged.back().second += val;
        } else {
            merged.emplace_back(pos, val);
        }
    }
    PiecewiseLinearSeries<T> s;
    s.length = length;
    s.slope = slope;
    s.jumps = std::move(merged);
    return s;
}

template <typename T>
T PiecewiseLinearSeries<T>::prefix(std::uint64_t j) const {
    T jump_sum{};
    if constexpr (std::is_same_v<T, cplx>) {
        KahanComplexSum acc;
        for (const auto& [pos, val] : jumps) {
            if (pos > j) break;
            acc.add(val);
        }
        jump_sum = acc.value();
    } else {
        KahanSum acc;
        for (const auto& [pos, val] : jumps) {
            if (pos > j) break;
            acc.add(val);
        }
        jump_sum = acc.value();
    }
    return static_cast<T>(slope * static_cast<double>(j)) + jump_sum;
}

template <typename T>
std::vector<T> PiecewiseLinearSeries<T>::densify() const {
    std::vector<T> seq(length, static_cast<T>(slope));
    for (const auto& [pos, val] : jumps) seq[pos - 1] += val;
    return seq;
}

template struct PiecewiseLinearSeries<double>;
template struct PiecewiseLinearSeries<cplx>;

template <typename T>
std::vector<std::uint64_t> jump_adjacent_candidates(
    const PiecewiseLinearSeries<T>& series) {
    std::vector<std::uint64_t> cand;
    cand.reserve(2 * series.jumps.size() + 2);
    cand.push_back(0);
    for (const auto& [pos, val] : series.jumps) {
        cand.push_back(pos - 1);
        cand.push_back(pos);
    }
    cand.push_back(series.length);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    return cand;
}

template std::vector<std::uint64_t> jump_adjacent_candidates(
    const PiecewiseLinearSeries<double>&);
template std::vector<std::uint64_t> jump_adjacent_candidates(
    const PiecewiseLinearSeries<cplx>&);

template <typename T>
std::vector<T> prefix_at(const PiecewiseLinearSeries<T>& series,
                         const std::vector<std::uint64_t>& candidates) {
    std::vector<T> out;
    out.reserve(candidates.size());
    std::size_t ji = 0;
    if constexpr (std::is_same_v<T, cplx>) {
        KahanComplexSum acc;
        for (std::uint64_t c : candidates) {
            while (ji < series.jumps.size() && series.jumps[ji].first <= c) {
                acc.add(series.jumps[ji].second);
                ++ji;
            }
            out.push_back(static_cast<T>(series.slope * static_cast<double>(c)) +
                          acc.value());
        }
    } else {
        KahanSum acc;
        for (std::uint64_t c : candidates) {
            while (ji < series.jumps.size() && series.jumps[ji].first <= c) {
                acc.add(series.jumps[ji].second);
                ++ji;
            }
            out.push_back(series.slope * static_cast<double>(c) + acc.value());
        }
    }
    return out;
}

template std::vector<double> prefix_at(const PiecewiseLinearSeries<double>&,
                                       const std::vector<std::uint64_t>&);
template std::vector<cplx> prefix_at(const PiecewiseLinearSeries<cplx>&,
                                     const std::vector<std::uint64_t>&);

VariationResult variation_piecewise_linear(
    const PiecewiseLinearSeries<double>& series, double r) {
    require_r(r);
    if (series.length == 0) return trivial_result(VariationAlgo::piecewise_linear);
    const auto cand = jump_adjacent_candidates(series);
    const auto P = prefix_at(series, cand);
    return candidate_dp_full(cand, P, r, VariationAlgo::piecewise_linear);
}

VariationResult variation_sparse_complex(const PiecewiseLinearSeries<cplx>& series,
                                         double r) {
    require_r(r);
    if (series.slope != 0.0) {
        throw DomainError("variation_sparse_complex: slope must be 0");
    }
    if (series.length == 0) return trivial_result(VariationAlgo::sparse_pruned);
    std::vector<std::uint64_t> cand;
    cand.reserve(series.jumps.size() + 2);
    cand.push_back(0);
    for (const auto& [pos, val] : series.jumps) cand.push_back(pos);
    cand.push_back(series.length);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    const auto P = prefix_at(series, cand);
    return candidate_dp_full(cand, P, r, VariationAlgo::sparse_pruned);
}

// ------------------------------------------------------------------
// Dyadic decomposition
// ------------------------------------------------------------------
std::vector<DyadicLabel> dyadic_decompose(IntInterval S, std::uint32_t k) {
    if (k > 62) throw DomainError("dyadic_decompose: k too large");
    const std::uint64_t span = std::uint64_t{1} << k;
    if (S.lo > S.hi || S.hi > span) {
        throw DomainError("dyadic_decompose: S not contained in (0, 2^k]");
    }

    std::vector<DyadicLabel> out;
    std::uint64_t lo = S.lo;
    while (lo < S.hi) {
        // Largest aligned block starting at lo that still fits in S.
        const std::uint32_t align =
            lo == 0 ? k : static_cast<std::uint32_t>(std::countr_zero(lo));
        const std::uint64_t len = S.hi - lo;
        const std::uint32_t fit =
            static_cast<std::uint32_t>(std::bit_width(len)) - 1;
        const std::uint32_t level = std::min({align, fit, k});
        out.push_back({(lo >> level) + 1, level});
        lo += std::uint64_t{1} << level;
    }
    return out;
}

// ------------------------------------------------------------------
// Maximal prefix deviation
// ------------------------------------------------------------------
std::pair<double, std::uint64_t> max_prefix_deviation(
    const PiecewiseLinearSeries<double>& series) {
    if (series.length == 0) return {0.0, 0};

    std::vector<std::uint64_t> cand;
    cand.push_back(1);
    cand.push_back(series.length);
    for (const auto& [pos, val] : series.jumps) {
        if (pos >= 1) cand.push_back(pos);
        if (pos - 1 >= 1) cand.push_back(pos - 1);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    const auto P = prefix_at(series, cand);
    double best = -1.0;
    std::uint64_t arg = cand[0];
    for (std::size_t i = 0; i < cand.size(); ++i) {
        const double v = P[i] * P[i];
        if (v > best) {
            best = v;
            arg = cand[i];
        }
    }
    return {best, arg};
}

} // namespace vpl
