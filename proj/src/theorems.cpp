#include "vpl/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vpl {

const char* to_string(WeightMode mode) {
    return mode == WeightMode::theta ? "theta" : "psi";
}

const char* to_string(TheoremTag tag) {
    switch (tag) {
        case TheoremTag::T1_1: return "1.1";
        case TheoremTag::T1_2: return "1.2";
        case TheoremTag::T1_3: return "1.3";
        case TheoremTag::T1_4: return "1.4";
        case TheoremTag::T1_5: return "1.5";
    }
    return "?";
}

namespace {

void require_coprime(std::uint64_t q, std::uint64_t a, const char* who) {
    if (q == 0 || a == 0 || std::gcd(a, q) != 1) {
        throw DomainError(std::string(who) + ": need positive a, q with (a,q) = 1");
    }
}

std::uint64_t floor_to_u64(double x) {
    return static_cast<std::uint64_t>(std::floor(x));
}

// Weighted jump positions up to N: (p, ln p) at primes in theta mode, or
// (p^alpha, ln p) at prime powers in psi mode. Sorted by position; shared by
// every modulus of one assembler run.
std::vector<std::pair<std::uint64_t, double>> weighted_jumps(
    const PrimeStore& store, std::uint64_t N, WeightMode mode) {
    std::vector<std::pair<std::uint64_t, double>> jumps;
    for (std::size_t i = 0; i < store.primes.size(); ++i) {
        const std::uint64_t p = store.primes[i];
        if (p > N) break;
        if (mode == WeightMode::theta) {
            jumps.emplace_back(p, store.logw[i]);
        } else {
            for (std::uint64_t pw = p; pw <= N; ) {
                jumps.emplace_back(pw, store.logw[i]);
                if (pw > N / p) break;
                pw *= p;
            }
        }
    }
    std::sort(jumps.begin(), jumps.end());
    return jumps;
}

void require_xq(const PrimeStore& store, double x, double Q, const char* who) {
    if (!(x >= 2.0) || x > static_cast<double>(store.limit)) {
        throw std::out_of_range(std::string(who) + ": x outside [2, store.limit]");
    }
    if (!(Q >= 1.0) || Q > x) {
        throw DomainError(std::string(who) + ": need 1 <= Q <= x");
    }
}

inline void kahan_add(double& sum, double& comp, double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

double bound_form_for(TheoremTag tag, double x, double Q) {
    const double lx = std::log(x);
    switch (tag) {
        case TheoremTag::T1_1:
        case TheoremTag::T1_2: return x * Q * lx;
        case TheoremTag::T1_3:
        case TheoremTag::T1_4: return x * Q * lx * lx * lx;
        case TheoremTag::T1_5: return x * Q * lx * lx;
    }
    return 0.0;
}

BdhReport finish_report(TheoremTag tag, WeightMode mode, double x, double Q,
                        const std::vector<double>& per_q) {
    KahanSum lhs;
    for (double v : per_q) lhs.add(v);
    BdhReport rep;
    rep.x = x;
    rep.Q = Q;
    rep.theorem = tag;
    rep.weight_mode = mode;
    rep.lhs = lhs.value();
    rep.bound_form = bound_form_for(tag, x, Q);
    rep.ratio = rep.lhs / rep.bound_form;
    return rep;
}

} // namespace

// ------------------------------------------------------------------
// Series builders
// ------------------------------------------------------------------
DeviationSeries deviation_series(const PrimeStore& store, std::uint64_t q,
                                 std::uint64_t a, double x, WeightMode mode) {
    require_coprime(q, a, "deviation_series");
    if (!(x >= 0.0) || x > static_cast<double>(store.limit)) {
        throw std::out_of_range("deviation_series: x outside [0, store.limit]");
    }
    const std::uint64_t N = floor_to_u64(x);
    const double phi = static_cast<double>(euler_phi(q));
    const std::uint64_t residue = a % q;

    std::vector<std::pair<std::uint64_t, double>> jumps;
    for (std::size_t i = 0; i < store.primes.size(); ++i) {
        const std::uint64_t p = store.primes[i];
        if (p > N) break;
        if (mode == WeightMode::theta) {
            if (p % q == residue) jumps.emplace_back(p, store.logw[i]);
        } else {
            for (std::uint64_t pw = p; pw <= N; ) {
                if (pw % q == residue) jumps.emplace_back(pw, store.logw[i]);
                if (pw > N / p) break;
                pw *= p;
            }
        }
    }

    DeviationSeries out;
    out.q = q;
    out.a = a;
    out.series = PiecewiseLinearSeries<double>::make(N, -1.0 / phi, std::move(jumps));
    return out;
}

CharThetaSeries char_theta_series(const PrimeStore& store,
                                  const DirichletCharacter& chi, double x,
                                  bool principal_adjusted) {
    if (!(x >= 0.0) || x > static_cast<double>(store.limit)) {
        throw std::out_of_range("char_theta_series: x outside [0, store.limit]");
    }
    const std::uint64_t N = floor_to_u64(x);

    std::vector<std::pair<std::uint64_t, cplx>> jumps;
    for (std::size_t i = 0; i < store.primes.size(); ++i) {
        const std::uint64_t p = store.primes[i];
        if (p > N) break;
        auto ph = chi.phase(static_cast<std::int64_t>(p));
        if (!ph) continue; // p | q contributes nothing
        jumps.emplace_back(p, unit_phase(ph->first, ph->second) * store.logw[i]);
    }

    const bool adjust = principal_adjusted && chi.is_principal();
    CharThetaSeries out{chi, principal_adjusted,
                        PiecewiseLinearSeries<cplx>::make(N, adjust ? -1.0 : 0.0,
                                                          std::move(jumps))};
    return out;
}

// ------------------------------------------------------------------
// Theorem 1.1 style mean square
// ------------------------------------------------------------------
BdhReport bdh_sum(const PrimeStore& store, double x, double Q, WeightMode mode) {
    require_xq(store, x, Q, "bdh_sum");
    const std::uint64_t N = floor_to_u64(x);
    const auto Qi = static_cast<std::uint64_t>(std::floor(Q));
    const auto jumps = weighted_jumps(store, N, mode);

    std::vector<double> per_q(Qi, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(Qi); ++qi) {
        const auto q = static_cast<std::uint64_t>(qi);
        const double phi = static_cast<double>(euler_phi(q));
        std::vector<double> val(q, 0.0), comp(q, 0.0);
        for (const auto& [pos, w] : jumps) {
            kahan_add(val[pos % q], comp[pos % q], w);
        }
        double sum = 0.0, sumc = 0.0;
        const double center = static_cast<double>(N) / phi;
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            const double dev = val[a % q] - center;
            kahan_add(sum, sumc, dev * dev);
        }
        per_q[q - 1] = sum;
    }
    return finish_report(TheoremTag::T1_1, mode, x, Q, per_q);
}

// ------------------------------------------------------------------
// Theorem 1.2 style: max over y outside the class sum
// ------------------------------------------------------------------
BdhReport montgomery_sum(const PrimeStore& store, double x, double Q,
                         WeightMode mode) {
    require_xq(store, x, Q, "montgomery_sum");
    const std::uint64_t N = floor_to_u64(x);
    const auto Qi = static_cast<std::uint64_t>(std::floor(Q));
    const auto jumps = weighted_jumps(store, N, mode);

    // Candidate y values: endpoints and jump-adjacent positions. Between
    // jumps every class prefix is affine with the shared slope -1/phi, so
    // the class-sum of squares is a convex quadratic in y and its max over a
    // jump-free run is attained at one of the run's ends.
    std::vector<std::uint64_t> cand;
    cand.reserve(2 * jumps.size() + 2);
    cand.push_back(1);
    cand.push_back(N);
    for (const auto& [pos, w] : jumps) {
        if (pos >= 1) cand.push_back(pos);
        if (pos >= 2) cand.push_back(pos - 1);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<double> per_q(Qi, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(Qi); ++qi) {
        const auto q = static_cast<std::uint64_t>(qi);
        const double phi = static_cast<double>(euler_phi(q));
        std::vector<double> val(q, 0.0), comp(q, 0.0);

        // F(y) = sum_a (v_a - y/phi)^2 = sumv2 - (2y/phi) sumv + y^2/phi,
        // maintained incrementally as jumps enter.
        double sumv = 0.0, sumv_c = 0.0;
        double sumv2 = 0.0, sumv2_c = 0.0;
        double best = -std::numeric_limits<double>::infinity();
        std::size_t ji = 0;
        for (std::uint64_t y : cand) {
            while (ji < jumps.size() && jumps[ji].first <= y) {
                const auto [pos, w] = jumps[ji];
                ++ji;
                if (std::gcd(pos % q, q) != 1 && q > 1) continue; // p | q: in no class
                double& v = val[pos % q];
                double& c = comp[pos % q];
                kahan_add(sumv2, sumv2_c, 2.0 * v * w + w * w);
                kahan_add(v, c, w);
                kahan_add(sumv, sumv_c, w);
            }
            const double yd = static_cast<double>(y);
            const double F = sumv2 - (2.0 * yd / phi) * sumv + yd * yd / phi;
            best = std::max(best, F);
        }
        per_q[q - 1] = best;
    }
    return finish_report(TheoremTag::T1_2, mode, x, Q, per_q);
}

// ------------------------------------------------------------------
// Theorem 1.3 style: max over y inside the class sum
// ------------------------------------------------------------------
BdhReport uchiyama_sum(const PrimeStore& store, double x, double Q,
                       WeightMode mode) {
    require_xq(store, x, Q, "uchiyama_sum");
    const std::uint64_t N = floor_to_u64(x);
    const auto Qi = static_cast<std::uint64_t>(std::floor(Q));
    const auto jumps = weighted_jumps(store, N, mode);

    std::vector<double> per_q(Qi, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(Qi); ++qi) {
        const auto q = static_cast<std::uint64_t>(qi);
        const double phi = static_cast<double>(euler_phi(q));

        std::vector<std::vector<std::pair<std::uint64_t, double>>> by_class(q);
        for (const auto& [pos, w] : jumps) {
            const std::uint64_t r = pos % q;
            if (q > 1 && std::gcd(r, q) != 1) continue;
            by_class[r].emplace_back(pos, w);
        }

        double sum = 0.0, comp = 0.0;
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            auto series = PiecewiseLinearSeries<double>::make(
                N, -1.0 / phi, std::move(by_class[a % q]));
            kahan_add(sum, comp, max_prefix_deviation(series).first);
        }
        per_q[q - 1] = sum;
    }
    return finish_report(TheoremTag::T1_3, mode, x, Q, per_q);
}

// ------------------------------------------------------------------
// Theorem 1.4 style: full per-class 2-variation
// ------------------------------------------------------------------
std::uint64_t var_bdh_cost_estimate(const PrimeStore& store, double x, double Q) {
    require_xq(store, x, Q, "var_bdh_cost_estimate");
    const std::uint64_t N = floor_to_u64(x);
    const auto Qi = static_cast<std::uint64_t>(std::floor(Q));
    const auto jumps = weighted_jumps(store, N, WeightMode::theta);

    std::uint64_t total = 0;
    for (std::uint64_t q = 1; q <= Qi; ++q) {
        std::vector<std::uint64_t> count(q, 0);
        for (const auto& [pos, w] : jumps) ++count[pos % q];
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            const std::uint64_t c = 2 * count[a % q] + 2;
            total += c * c;
        }
    }
    return total;
}

BdhReport var_bdh_sum(const PrimeStore& store, double x, double Q,
                      std::uint64_t budget) {
    require_xq(store, x, Q, "var_bdh_sum");
    const std::uint64_t predicted = var_bdh_cost_estimate(store, x, Q);
    if (predicted > budget) {
        throw ResourceError("var_bdh_sum: predicted " + std::to_string(predicted) +
                            " candidate-pair ops exceed budget " +
                            std::to_string(budget) + "; reduce x or Q");
    }
    const std::uint64_t N = floor_to_u64(x);
    const auto Qi = static_cast<std::uint64_t>(std::floor(Q));
    const auto jumps = weighted_jumps(store, N, WeightMode::theta);

    std::vector<double> per_q(Qi, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(Qi); ++qi) {
        const auto q = static_cast<std::uint64_t>(qi);
        const double phi = static_cast<double>(euler_phi(q));

        std::vector<std::vector<std::pair<std::uint64_t, double>>> by_class(q);
        for (const auto& [pos, w] : jumps) {
            const std::uint64_t r = pos % q;
            if (q > 1 && std::gcd(r, q) != 1) continue;
            by_class[r].emplace_back(pos, w);
        }

        double sum = 0.0, comp = 0.0;
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            auto series = PiecewiseLinearSeries<double>::make(
                N, -1.0 / phi, std::move(by_class[a % q]));
            const auto cand = jump_adjacent_candidates(series);
            const auto prefix = prefix_at(series, cand);
            kahan_add(sum, comp, max_partition_power(prefix, 2.0));
        }
        per_q[q - 1] = sum;
    }
    return finish_report(TheoremTag::T1_4, WeightMode::theta, x, Q, per_q);
}

// ------------------------------------------------------------------
// Theorem 1.5 style: one partition per modulus shared by all classes
// ------------------------------------------------------------------
std::uint64_t var_bdh_shared_cost_estimate(const PrimeStore& store, double x,
                                           double Q) {
    require_xq(store, x, Q, "var_bdh_shared_cost_estimate");
    const std::uint64_t N = floor_to_u64(x);
    const auto Qi = static_cast<std::uint64_t>(std::floor(Q));
    const std::uint64_t jump_count =
        std::upper_bound(store.primes.begin(), store.primes.end(), N) -
        store.primes.begin();
    const std::uint64_t C = 2 * jump_count + 2;
    return Qi * (C * C / 2);
}

BdhReport var_bdh_shared_partition(const PrimeStore& store, double x, double Q,
                                   std::uint64_t budget) {
    require_xq(store, x, Q, "var_bdh_shared_partition");
    const std::uint64_t predicted = var_bdh_shared_cost_estimate(store, x, Q);
    if (predicted > budget) {
        throw ResourceError("var_bdh_shared_partition: predicted " +
                            std::to_string(predicted) +
                            " candidate-pair ops exceed budget " +
                            std::to_string(budget) + "; reduce x or Q");
    }
    const std::uint64_t N = floor_to_u64(x);
    const auto Qi = static_cast<std::uint64_t>(std::floor(Q));
    const auto jumps = weighted_jumps(store, N, WeightMode::theta);

    std::vector<double> per_q(Qi, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(Qi); ++qi) {
        const auto q = static_cast<std::uint64_t>(qi);
        const double phi = static_cast<double>(euler_phi(q));

        // Candidates: endpoints plus p-1, p for every prime p not dividing q.
        // Adjacent candidates therefore enclose at most one jump, and that
        // jump sits exactly at the right end of its gap.
        std::vector<std::uint64_t> cand;
        cand.push_back(0);
        std::vector<double> gap_weight;   // weight of the jump at cand[j], or 0
        std::vector<std::uint64_t> gap_residue;
        for (const auto& [pos, w] : jumps) {
            if (q > 1 && std::gcd(pos % q, q) != 1) continue;
            if (pos >= 1) cand.push_back(pos - 1);
            cand.push_back(pos);
        }
        cand.push_back(N);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

        const std::size_t K = cand.size();
        gap_weight.assign(K, 0.0);
        gap_residue.assign(K, 0);
        {
            std::size_t ji = 0;
            for (std::size_t j = 0; j < K; ++j) {
                while (ji < jumps.size() && jumps[ji].first < cand[j]) ++ji;
                if (ji < jumps.size() && jumps[ji].first == cand[j]) {
                    const auto [pos, w] = jumps[ji];
                    if (!(q > 1 && std::gcd(pos % q, q) != 1)) {
                        gap_weight[j] = w;
                        gap_residue[j] = pos % q;
                    }
                }
            }
        }

        // dp[j] = best shared-partition value over (0, cand[j]]; block cost
        // sum_a (v_a - t/phi)^2 = sumv2 - (2t/phi) sumv + t^2/phi, built
        // incrementally while the block's left end moves down.
        std::vector<double> dp(K, 0.0);
        std::vector<double> v(q, 0.0);
        std::vector<std::uint64_t> touched;
        for (std::size_t j = 1; j < K; ++j) {
            double sumv = 0.0, sumv_c = 0.0;
            double sumv2 = 0.0, sumv2_c = 0.0;
            double best = -std::numeric_limits<double>::infinity();
            const double cj = static_cast<double>(cand[j]);
            for (std::size_t i = j; i-- > 0;) {
                // extend the block to (cand[i], cand[j]]: the gap
                // (cand[i], cand[i+1]] contributes the jump at cand[i+1].
                if (gap_weight[i + 1] != 0.0) {
                    const double w = gap_weight[i + 1];
                    double& vr = v[gap_residue[i + 1]];
                    kahan_add(sumv2, sumv2_c, 2.0 * vr * w + w * w);
                    vr += w;
                    kahan_add(sumv, sumv_c, w);
                    touched.push_back(gap_residue[i + 1]);
                }
                const double t = cj - static_cast<double>(cand[i]);
                const double cost = sumv2 - (2.0 * t / phi) * sumv + t * t / phi;
                best = std::max(best, dp[i] + cost);
            }
            dp[j] = best;
            for (std::uint64_t r : touched) v[r] = 0.0;
            touched.clear();
        }
        per_q[q - 1] = dp[K - 1];
    }
    return finish_report(TheoremTag::T1_5, WeightMode::theta, x, Q, per_q);
}

// ------------------------------------------------------------------
// Character-side quantities
// ------------------------------------------------------------------
namespace {

// Per-residue log-weight buckets w[r] = sum of ln p over primes p in I with
// p = r (mod q); theta(I, chi) then needs only phi(q) character values.
std::vector<double> residue_buckets(const PrimeStore& store, IntInterval I,
                                    std::uint64_t q) {
    if (I.hi > store.limit) {
        throw std::out_of_range("residue_buckets: interval exceeds store.limit");
    }
    std::vector<double> val(q, 0.0), comp(q, 0.0);
    const std::size_t begin =
        std::upper_bound(store.primes.begin(), store.primes.end(), I.lo) -
        store.primes.begin();
    for (std::size_t i = begin; i < store.primes.size(); ++i) {
        const std::uint64_t p = store.primes[i];
        if (p > I.hi) break;
        kahan_add(val[p % q], comp[p % q], store.logw[i]);
    }
    return val;
}

} // namespace

cplx theta_char(const PrimeStore& store, const DirichletCharacter& chi,
                IntInterval I) {
    const std::uint64_t q = chi.modulus();
    const auto w = residue_buckets(store, I, q);
    KahanComplexSum sum;
    for (std::uint64_t r = 0; r < q; ++r) {
        if (w[r] == 0.0) continue;
        auto ph = chi.phase(static_cast<std::int64_t>(r));
        if (!ph) continue;
        sum.add(unit_phase(ph->first, ph->second) * w[r]);
    }
    return sum.value();
}

cplx theta_prime(const PrimeStore& store, const DirichletCharacter& chi,
                 IntInterval I) {
    cplx t = theta_char(store, chi, I);
    if (chi.is_principal()) t -= static_cast<double>(I.size());
    return t;
}

double identity_check(const PrimeStore& store,
                      const std::shared_ptr<const CharacterGroup>& group,
                      std::uint64_t a, IntInterval I) {
    const std::uint64_t q = group->modulus();
    require_coprime(q, a, "identity_check");
    const double phi = static_cast<double>(group->phi());

    const double lhs =
        theta_ap(store, I, q, a) - static_cast<double>(I.size()) / phi;

    const auto w = residue_buckets(store, I, q);
    KahanComplexSum rhs_sum;
    for (std::uint64_t idx = 0; idx < group->character_count(); ++idx) {
        const auto chi = character_by_index(group, idx);
        KahanComplexSum theta_sum;
        for (std::uint64_t r = 0; r < q; ++r) {
            if (w[r] == 0.0) continue;
            auto ph = chi.phase(static_cast<std::int64_t>(r));
            if (!ph) continue;
            theta_sum.add(unit_phase(ph->first, ph->second) * w[r]);
        }
        cplx tp = theta_sum.value();
        if (chi.is_principal()) tp -= static_cast<double>(I.size());
        rhs_sum.add(std::conj(chi.evaluate(static_cast<std::int64_t>(a))) * tp);
    }
    const cplx rhs = rhs_sum.value() / phi;
    return std::abs(cplx(lhs, 0.0) - rhs);
}

double primitive_shift_check(const PrimeStore& store,
                             const DirichletCharacter& chi, IntInterval I) {
    const auto chi1 = chi.primitive_inducer();
    const cplx diff = theta_prime(store, chi1, I) - theta_prime(store, chi, I);
    const double value = std::abs(diff);
    const double bound = std::log(static_cast<double>(chi.modulus())) + 1e-9;
    if (value > bound) {
        throw CheckError("primitive_shift_check: |theta'(I,chi1) - theta'(I,chi)| = " +
                         std::to_string(value) + " exceeds ln q = " +
                         std::to_string(bound));
    }
    return value;
}

double var_sw_quantity(const PrimeStore& store, const DirichletCharacter& chi,
                       double x) {
    if (chi.is_principal()) {
        throw DomainError("var_sw_quantity: chi must be nonprincipal");
    }
    const auto cts = char_theta_series(store, chi, x, false);
    return variation_sparse_complex(cts.series, 2.0).value;
}

} // namespace vpl
