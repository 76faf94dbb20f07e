#include "vpl/largesieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vpl/regression.hpp"
#include "vpl/rng.hpp"
#include "vpl/variation.hpp"

namespace vpl {

namespace {

inline cplx unit_circle(double t) {
    const double angle = 2.0 * M_PI * t;
    return {std::cos(angle), std::sin(angle)};
}

inline void kahan_add(double& sum, double& comp, double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

double log_factor(std::uint64_t N) {
    return std::log(static_cast<double>(std::max<std::uint64_t>(N, 2)));
}

} // namespace

TrigPolynomial make_trig_polynomial(std::int64_t M, std::vector<cplx> coeffs) {
    if (M < 0) throw DomainError("make_trig_polynomial: M must be >= 0");
    TrigPolynomial poly;
    poly.M = M;
    poly.N = coeffs.size();
    poly.coeffs = std::move(coeffs);
    KahanSum energy;
    for (const cplx& a : poly.coeffs) energy.add(std::norm(a));
    poly.energy = energy.value();
    return poly;
}

cplx eval_S(const TrigPolynomial& poly, double alpha) {
    double alpha0 = alpha - std::floor(alpha);
    KahanComplexSum acc;
    for (std::uint64_t j = 0; j < poly.N; ++j) {
        const double n = static_cast<double>(poly.M + 1 + static_cast<std::int64_t>(j));
        double t = std::fmod(n * alpha0, 1.0);
        acc.add(poly.coeffs[j] * unit_circle(t));
    }
    return acc.value();
}

// ------------------------------------------------------------------
// Point sets
// ------------------------------------------------------------------
PointSet make_point_set(std::vector<double> points, double delta) {
    if (!(delta > 0.0)) throw DomainError("make_point_set: delta must be > 0");
    for (double p : points) {
        if (!(p >= 0.0) || p >= 1.0) {
            throw DomainError("make_point_set: points must lie in [0,1)");
        }
    }
    // The minimal pairwise circle distance is attained by a circularly
    // adjacent pair after sorting, so checking the R gaps is exhaustive.
    if (points.size() >= 2) {
        std::vector<double> sorted = points;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            if (sorted[i + 1] - sorted[i] < delta) {
                throw DomainError("make_point_set: separation below delta");
            }
        }
        const double wrap = 1.0 - sorted.back() + sorted.front();
        if (wrap < delta) {
            throw DomainError("make_point_set: separation below delta (wraparound)");
        }
    }
    return {std::move(points), delta};
}

PointSet farey_points(std::uint64_t Q) {
    if (Q < 1) throw DomainError("farey_points: Q must be >= 1");
    std::vector<double> pts;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            pts.push_back(static_cast<double>(a % q) / static_cast<double>(q));
        }
    }
    return make_point_set(std::move(pts),
                          1.0 / (static_cast<double>(Q) * static_cast<double>(Q)));
}

// ------------------------------------------------------------------
// Variational analytic large sieve at explicit points
// ------------------------------------------------------------------
double var_at_points(const TrigPolynomial& poly, const PointSet& pts, double r,
                     bool check_bound) {
    if (poly.N > kDefaultDenseCap) {
        throw ResourceError("var_at_points: N exceeds the dense DP cap");
    }

    std::vector<double> per_point(pts.points.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(pts.points.size()); ++i) {
        const double alpha = pts.points[i];
        std::vector<cplx> prefix;
        prefix.reserve(poly.N + 1);
        prefix.push_back({0.0, 0.0});
        KahanComplexSum acc;
        for (std::uint64_t j = 0; j < poly.N; ++j) {
            const double n =
                static_cast<double>(poly.M + 1 + static_cast<std::int64_t>(j));
            const double t = std::fmod(n * alpha, 1.0);
            acc.add(poly.coeffs[j] * unit_circle(t));
            prefix.push_back(acc.value());
        }
        per_point[i] = max_partition_power(prefix, r);
    }

    KahanSum lhs;
    for (double v : per_point) lhs.add(v);
    const double value = lhs.value();

    if (check_bound && r >= 2.0) {
        const double base = (static_cast<double>(poly.N) + 1.0 / pts.delta + 1.0) *
                            poly.energy;
        const double bound_form = (r == 2.0) ? base * log_factor(poly.N) : base;
        const double cap = regression::kRegressionSlack *
                           (r == 2.0 ? regression::kVarAtPointsR2C
                                     : regression::kVarAtPointsHighRC);
        if (value > cap * bound_form) {
            throw CheckError("var_at_points: value " + std::to_string(value) +
                             " exceeds frozen bound " +
                             std::to_string(cap * bound_form));
        }
    }
    return value;
}

// ------------------------------------------------------------------
// Character-sum large sieves
// ------------------------------------------------------------------
namespace {

// Per-modulus evaluation plan: character values are den-th roots of unity
// looked up by an integer phase, no trig in the inner loops.
struct CharPlan {
    std::shared_ptr<const CharacterGroup> group;
    std::uint64_t q = 1;
    std::uint64_t den = 1;
    std::uint32_t ncomp = 0;
    std::vector<cplx> roots;          // roots[k] = e(k/den)
    std::vector<std::uint64_t> scaled; // per residue r, per comp j: d_j (den/ord_j) mod den
    std::vector<char> unit;            // gcd(r, q) == 1

    explicit CharPlan(std::uint64_t modulus) : group(character_group(modulus)) {
        q = modulus;
        den = group->phase_denominator();
        ncomp = static_cast<std::uint32_t>(group->components().size());
        roots.reserve(den);
        for (std::uint64_t k = 0; k < den; ++k) roots.push_back(unit_phase(k, den));
        scaled.assign(q * ncomp, 0);
        unit.assign(q, 0);
        for (std::uint64_t r = 0; r < q; ++r) {
            auto dl = group->dlogs(static_cast<std::int64_t>(r));
            if (!dl) continue;
            unit[r] = 1;
            for (std::uint32_t j = 0; j < ncomp; ++j) {
                const auto& comp = group->components()[j];
                scaled[r * ncomp + j] = (*dl)[j] % den * (den / comp.order) % den;
            }
        }
    }

    // Phase numerator of chi_exps at residue r (r must be a unit).
    std::uint64_t phase_num(const std::vector<std::uint64_t>& exps,
                            std::uint64_t r) const {
        std::uint64_t num = 0;
        for (std::uint32_t j = 0; j < ncomp; ++j) {
            num = (num + exps[j] % den * scaled[r * ncomp + j]) % den;
        }
        return num;
    }
};

// Enumerate exponent vectors; calls fn(exps, weight) for each primitive
// character, visiting conjugate pairs once (weight 2) when coefficients are
// real, since T(conj chi, I) = conj(T(chi, I)) then.
template <typename Fn>
void for_each_primitive(const CharPlan& plan, bool real_coeffs, Fn&& fn) {
    const auto& comps = plan.group->components();
    const std::uint64_t total = plan.group->character_count();
    std::vector<std::uint64_t> exps(comps.size(), 0);
    std::vector<std::uint64_t> conj(comps.size(), 0);
    for (std::uint64_t index = 0; index < total; ++index) {
        std::uint64_t ix = index;
        for (std::size_t j = 0; j < comps.size(); ++j) {
            exps[j] = ix % comps[j].order;
            ix /= comps[j].order;
        }
        if (!is_primitive_exponents(*plan.group, exps)) continue;
        double weight = 1.0;
        if (real_coeffs) {
            bool self = true;
            bool skip = false;
            for (std::size_t j = 0; j < comps.size(); ++j) {
                conj[j] = (comps[j].order - exps[j]) % comps[j].order;
            }
            for (std::size_t j = 0; j < comps.size(); ++j) {
                if (conj[j] != exps[j]) {
                    self = false;
                    skip = conj[j] < exps[j];
                    break;
                }
            }
            if (skip) continue;
            if (!self) weight = 2.0;
        }
        fn(exps, weight);
    }
}

struct Support {
    std::vector<std::uint64_t> positions; // sequence indices 1..N with a_n != 0
    std::vector<std::uint64_t> residues;  // (M + position) mod q
    std::vector<cplx> values;             // a_n
};

Support support_for(const TrigPolynomial& poly, std::uint64_t q) {
    Support s;
    for (std::uint64_t j = 0; j < poly.N; ++j) {
        if (poly.coeffs[j] == cplx{0.0, 0.0}) continue;
        const std::uint64_t n =
            static_cast<std::uint64_t>(poly.M + 1 + static_cast<std::int64_t>(j));
        s.positions.push_back(j + 1);
        s.residues.push_back(n % q);
        s.values.push_back(poly.coeffs[j]);
    }
    return s;
}

bool all_real(const TrigPolynomial& poly) {
    return std::all_of(poly.coeffs.begin(), poly.coeffs.end(),
                       [](const cplx& a) { return a.imag() == 0.0; });
}

} // namespace

double classic_large_sieve_lhs(const TrigPolynomial& poly, std::uint64_t Q,
                               bool check_bound) {
    if (Q < 1) throw DomainError("classic_large_sieve_lhs: Q must be >= 1");
    const bool real_coeffs = all_real(poly);

    std::vector<double> per_q(Q, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(Q); ++qi) {
        const auto q = static_cast<std::uint64_t>(qi);
        const CharPlan plan(q);
        const auto s = support_for(poly, q);

        // Residue buckets make T(chi) a phi(q)-term sum per character.
        std::vector<cplx> W(q, cplx{0.0, 0.0});
        {
            std::vector<KahanComplexSum> acc(q);
            for (std::size_t i = 0; i < s.positions.size(); ++i) {
                acc[s.residues[i]].add(s.values[i]);
            }
            for (std::uint64_t r = 0; r < q; ++r) W[r] = acc[r].value();
        }

        double sum = 0.0, comp = 0.0;
        for_each_primitive(plan, real_coeffs,
                           [&](const std::vector<std::uint64_t>& exps, double weight) {
            KahanComplexSum T;
            for (std::uint64_t r = 0; r < q; ++r) {
                if (!plan.unit[r] || W[r] == cplx{0.0, 0.0}) continue;
                T.add(plan.roots[plan.phase_num(exps, r)] * W[r]);
            }
            kahan_add(sum, comp, weight * std::norm(T.value()));
        });
        per_q[q - 1] =
            static_cast<double>(q) / static_cast<double>(euler_phi(q)) * sum;
    }

    KahanSum lhs;
    for (double v : per_q) lhs.add(v);
    const double value = lhs.value();

    if (check_bound) {
        const double bound_form =
            (static_cast<double>(poly.N) + static_cast<double>(Q) * Q) * poly.energy;
        const double cap =
            regression::kRegressionSlack * regression::kClassicLargeSieveC;
        if (value > cap * bound_form) {
            throw CheckError("classic_large_sieve_lhs: value exceeds frozen bound");
        }
    }
    return value;
}

std::uint64_t var_large_sieve_cost_estimate(const TrigPolynomial& poly,
                                            std::uint64_t Q) {
    if (Q < 1) throw DomainError("var_large_sieve_cost_estimate: Q must be >= 1");
    std::uint64_t total = 0;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        const auto s = support_for(poly, q);
        std::uint64_t C = 0;
        for (std::uint64_t r : s.residues) {
            if (q == 1 || std::gcd(r, q) == 1) ++C;
        }
        total += primitive_character_count(q) * (C * C / 2 + C);
    }
    return total;
}

namespace {

// Shared by the variational and maximal forms: per primitive character the
// prefix values of a_n chi(n) over the nonzero coprime support, fed to `fn`.
template <typename Fn>
double character_dp_sum(const TrigPolynomial& poly, std::uint64_t Q, Fn&& fn) {
    const bool real_coeffs = all_real(poly);
    std::vector<double> per_q(Q, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(Q); ++qi) {
        const auto q = static_cast<std::uint64_t>(qi);
        const CharPlan plan(q);
        const auto s = support_for(poly, q);

        std::vector<std::size_t> keep; // indices into the support with unit residue
        keep.reserve(s.positions.size());
        for (std::size_t i = 0; i < s.positions.size(); ++i) {
            if (plan.unit[s.residues[i]]) keep.push_back(i);
        }

        double sum = 0.0, comp = 0.0;
        std::vector<cplx> prefix(keep.size() + 1);
        for_each_primitive(plan, real_coeffs,
                           [&](const std::vector<std::uint64_t>& exps, double weight) {
            prefix[0] = {0.0, 0.0};
            KahanComplexSum acc;
            for (std::size_t t = 0; t < keep.size(); ++t) {
                const std::size_t i = keep[t];
                acc.add(s.values[i] * plan.roots[plan.phase_num(exps, s.residues[i])]);
                prefix[t + 1] = acc.value();
            }
            kahan_add(sum, comp, weight * fn(prefix));
        });
        per_q[q - 1] =
            static_cast<double>(q) / static_cast<double>(euler_phi(q)) * sum;
    }
    KahanSum lhs;
    for (double v : per_q) lhs.add(v);
    return lhs.value();
}

} // namespace

double var_large_sieve_lhs(const TrigPolynomial& poly, std::uint64_t Q,
                           std::uint64_t budget, bool check_bound) {
    if (Q < 1) throw DomainError("var_large_sieve_lhs: Q must be >= 1");
    const std::uint64_t predicted = var_large_sieve_cost_estimate(poly, Q);
    if (predicted > budget) {
        throw ResourceError("var_large_sieve_lhs: predicted " +
                            std::to_string(predicted) +
                            " candidate-pair ops exceed budget " +
                            std::to_string(budget) + "; reduce N or Q");
    }

    const double value = character_dp_sum(
        poly, Q, [](const std::vector<cplx>& prefix) {
            return max_partition_power(prefix, 2.0);
        });

    if (check_bound) {
        const double lx = log_factor(poly.N);
        const double bound_form =
            lx * lx *
            (static_cast<double>(poly.N) + static_cast<double>(Q) * Q) *
            poly.energy;
        const double cap =
            regression::kRegressionSlack * regression::kVarLargeSieveC;
        if (value > cap * bound_form) {
            throw CheckError("var_large_sieve_lhs: value exceeds frozen bound");
        }
    }
    return value;
}

double maximal_large_sieve_lhs(const TrigPolynomial& poly, std::uint64_t Q) {
    if (Q < 1) throw DomainError("maximal_large_sieve_lhs: Q must be >= 1");
    return character_dp_sum(poly, Q, [](const std::vector<cplx>& prefix) {
        // max over single subintervals: the largest |P_j - P_i|^2.
        double best = 0.0;
        for (std::size_t i = 0; i + 1 < prefix.size(); ++i) {
            for (std::size_t j = i + 1; j < prefix.size(); ++j) {
                best = std::max(best, std::norm(prefix[j] - prefix[i]));
            }
        }
        return best;
    });
}

// ------------------------------------------------------------------
// Gaussian lower-bound experiment
// ------------------------------------------------------------------
GaussianExperimentResult gaussian_lower_bound_experiment(std::uint64_t N,
                                                         std::uint64_t trials,
                                                         std::uint64_t seed) {
    if (trials < 2) {
        throw DomainError("gaussian_lower_bound_experiment: trials must be >= 2");
    }
    if (N < 1) throw DomainError("gaussian_lower_bound_experiment: N must be >= 1");
    if (N > kDefaultDenseCap) {
        throw ResourceError("gaussian_lower_bound_experiment: N exceeds the DP cap");
    }

    std::vector<double> values(trials, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
        const CounterRng rng(seed, static_cast<std::uint64_t>(t));
        std::vector<double> prefix(N + 1, 0.0);
        KahanSum acc;
        for (std::uint64_t j = 0; j < N; ++j) {
            acc.add(rng.normal(j + 1));
            prefix[j + 1] = acc.value();
        }
        const auto cand = extrema_candidates(prefix);
        std::vector<double> P;
        P.reserve(cand.size());
        for (std::uint64_t c : cand) P.push_back(prefix[c]);
        values[t] = max_partition_power(P, 2.0);
    }

    KahanSum mean_sum;
    for (double v : values) mean_sum.add(v);
    const double mean = mean_sum.value() / static_cast<double>(trials);
    KahanSum var_sum;
    for (double v : values) var_sum.add((v - mean) * (v - mean));
    const double variance = var_sum.value() / static_cast<double>(trials - 1);
    const double se = std::sqrt(variance / static_cast<double>(trials));

    GaussianExperimentResult res;
    res.N = N;
    res.trials = trials;
    res.seed = seed;
    res.mean = mean;
    res.stderr_ = se;
    res.ratio = mean / (static_cast<double>(N) *
                        std::log(std::log(static_cast<double>(N))));
    return res;
}

std::uint64_t coprime_count(std::uint64_t q, std::uint64_t N) {
    if (q == 0) throw DomainError("coprime_count: q must be positive");
    std::vector<std::uint64_t> primes;
    for (const auto& [p, e] : factorize(q)) primes.push_back(p);

    std::int64_t total = 0;
    const std::size_t subsets = std::size_t{1} << primes.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::uint64_t d = 1;
        int bits = 0;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (mask & (std::size_t{1} << i)) {
                d *= primes[i];
                ++bits;
            }
        }
        const std::int64_t term = static_cast<std::int64_t>(N / d);
        total += (bits % 2 == 0) ? term : -term;
    }
    return static_cast<std::uint64_t>(total);
}

} // namespace vpl
