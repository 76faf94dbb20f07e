#include "vpl/accept.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "vpl/dirichlet.hpp"
#include "vpl/gaps.hpp"
#include "vpl/largesieve.hpp"
#include "vpl/regression.hpp"
#include "vpl/rng.hpp"
#include "vpl/sieve.hpp"
#include "vpl/theorems.hpp"
#include "vpl/variation.hpp"

namespace vpl {

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

class Runner {
public:
    Runner(const AcceptanceOptions& opts, std::ostream& out)
        : opts_(opts), out_(out) {}

    template <typename Fn>
    void run(const std::string& name, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        Criterion c;
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        out_ << (c.pass ? "[PASS] " : "[FAIL] ") << name;
        if (!c.detail.empty()) out_ << "  (" << c.detail << ")";
        out_ << "  [" << ms << " ms]\n";
        out_.flush();
        if (!c.pass) ++failures_;
    }

    int failures() const { return failures_; }

private:
    AcceptanceOptions opts_;
    std::ostream& out_;
    int failures_ = 0;
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Chain comparisons get a 1e-9 relative slack for float reassociation.
bool leq_slack(double a, double b) {
    return a <= b + 1e-9 * (1.0 + std::abs(b));
}

std::vector<cplx> random_complex_seq(const CounterRng& rng, std::uint64_t base,
                                     std::size_t n) {
    std::vector<cplx> seq(n);
    for (std::size_t i = 0; i < n; ++i) {
        seq[i] = {rng.normal(base + 2 * i), rng.normal(base + 2 * i + 1)};
    }
    return seq;
}

// ------------------------------------------------------------------
// 1. dense DP == exhaustive oracle
// ------------------------------------------------------------------
void criterion_oracle(Criterion& c, bool quick) {
    const std::size_t cases = quick ? 200 : 1000;
    const CounterRng rng(101, 0);
    const double rs[] = {1.0, 2.0, 3.0};
    for (std::size_t t = 0; t < cases; ++t) {
        const std::size_t n = 1 + rng.bits(1'000'000 + t) % 12;
        const auto seq = random_complex_seq(rng, t * 64, n);
        for (double r : rs) {
            const auto oracle = variation_oracle(seq, r);
            const auto dp = variation_dp(seq, r);
            if (std::abs(oracle.value - dp.value) > 1e-12) {
                c.fail("value mismatch at case " + std::to_string(t) +
                       " r=" + fmt(r) + ": oracle " + fmt(oracle.value) +
                       " dp " + fmt(dp.value));
                return;
            }
            if (oracle.partition.breakpoints != dp.partition.breakpoints) {
                c.fail("partition mismatch at case " + std::to_string(t) +
                       " r=" + fmt(r));
                return;
            }
        }
    }
    c.note(std::to_string(cases) + " sequences x r in {1,2,3}");
}

// ------------------------------------------------------------------
// 2. pruning exactness
// ------------------------------------------------------------------
void criterion_pruning(Criterion& c, bool quick) {
    const CounterRng rng(202, 0);

    const std::size_t real_cases = quick ? 200 : 1000;
    const std::size_t real_max = 2000;
    for (std::size_t t = 0; t < real_cases; ++t) {
        const std::size_t n = 2 + rng.bits(t) % (real_max - 1);
        std::vector<double> seq(n);
        for (std::size_t i = 0; i < n; ++i) {
            seq[i] = rng.normal(t * 4096 + i + 1);
        }
        const double r = (t % 3 == 0) ? 1.0 : (t % 3 == 1 ? 2.0 : 2.5);
        const double dense = variation_dp(seq, r).value;
        const double pruned = variation_pruned_real(seq, r).value;
        if (!close_rel(dense, pruned, 1e-9)) {
            c.fail("extrema pruning mismatch at case " + std::to_string(t) +
                   ": dense " + fmt(dense) + " pruned " + fmt(pruned));
            return;
        }
    }

    const std::size_t series_cases = quick ? 40 : 200;
    const std::uint64_t series_max = quick ? 4000 : 20000;
    const CounterRng srng(203, 0);
    for (std::size_t t = 0; t < series_cases; ++t) {
        const std::uint64_t N = 1000 + srng.bits(t) % (series_max - 999);
        const std::size_t jump_count = 1 + srng.bits(t + 7'000'000) % 200;
        const bool sparse_complex = (t % 2 == 1);

        if (!sparse_complex) {
            const double slope = srng.normal(t * 10 + 1) * 0.1;
            std::vector<std::pair<std::uint64_t, double>> jumps;
            for (std::size_t j = 0; j < jump_count; ++j) {
                const std::uint64_t pos = 1 + srng.bits(t * 4096 + j) % N;
                jumps.emplace_back(pos, srng.normal(t * 8192 + j) * 3.0);
            }
            auto series = PiecewiseLinearSeries<double>::make(N, slope, jumps);
            const double fast = variation_piecewise_linear(series, 2.0).value;
            const double dense = variation_dp(series.densify(), 2.0).value;
            if (!close_rel(fast, dense, 1e-9)) {
                c.fail("piecewise-linear mismatch at case " + std::to_string(t) +
                       ": fast " + fmt(fast) + " dense " + fmt(dense));
                return;
            }
        } else {
            std::vector<std::pair<std::uint64_t, cplx>> jumps;
            for (std::size_t j = 0; j < jump_count; ++j) {
                const std::uint64_t pos = 1 + srng.bits(t * 4096 + j) % N;
                jumps.emplace_back(pos, cplx{srng.normal(t * 16384 + 2 * j),
                                             srng.normal(t * 16384 + 2 * j + 1)});
            }
            auto series = PiecewiseLinearSeries<cplx>::make(N, 0.0, jumps);
            const double fast = variation_sparse_complex(series, 2.0).value;
            const double dense = variation_dp(series.densify(), 2.0).value;
            if (!close_rel(fast, dense, 1e-9)) {
                c.fail("sparse-complex mismatch at case " + std::to_string(t) +
                       ": fast " + fmt(fast) + " dense " + fmt(dense));
                return;
            }
        }
    }
    c.note(std::to_string(real_cases) + " real + " +
           std::to_string(series_cases) + " series densify-compared");
}

// ------------------------------------------------------------------
// 3. dyadic decomposition postconditions, exhaustive over (0, 2^k]
// ------------------------------------------------------------------
void criterion_dyadic(Criterion& c, bool quick) {
    const std::uint32_t k = quick ? 8 : 10;
    const std::uint64_t span = std::uint64_t{1} << k;
    std::uint64_t cases = 0;
    for (std::uint64_t lo = 0; lo < span; ++lo) {
        for (std::uint64_t hi = lo + 1; hi <= span; ++hi) {
            const auto pieces = dyadic_decompose({lo, hi}, k);
            if (pieces.size() > 2 * k) {
                c.fail("count > 2k for (" + std::to_string(lo) + "," +
                       std::to_string(hi) + "]");
                return;
            }
            std::uint64_t cursor = lo;
            std::map<std::uint32_t, int> per_level;
            for (const auto& piece : pieces) {
                const auto I = piece.interval();
                if (I.lo != cursor) {
                    c.fail("gap or overlap at (" + std::to_string(lo) + "," +
                           std::to_string(hi) + "]");
                    return;
                }
                cursor = I.hi;
                if (++per_level[piece.level] > 2) {
                    c.fail("more than two pieces on level " +
                           std::to_string(piece.level));
                    return;
                }
            }
            if (cursor != hi) {
                c.fail("union does not reach hi for (" + std::to_string(lo) +
                       "," + std::to_string(hi) + "]");
                return;
            }
            ++cases;
        }
    }
    c.note(std::to_string(cases) + " subintervals of (0, 2^" +
           std::to_string(k) + "]");
}

// ------------------------------------------------------------------
// 4. character suite
// ------------------------------------------------------------------
void criterion_characters(Criterion& c, bool quick) {
    const std::uint64_t count_cap = quick ? 150 : 500;
    const std::uint64_t gauss_cap = quick ? 150 : 500;
    const std::uint64_t mult_cap = quick ? 40 : 100;
    const std::uint64_t orth_cap = quick ? 60 : 200;

    // phi(q) characters, and the primitive-count partition identity.
    for (std::uint64_t q = 1; q <= count_cap; ++q) {
        auto group = character_group(q);
        if (group->character_count() != euler_phi(q)) {
            c.fail("character count != phi at q=" + std::to_string(q));
            return;
        }
        std::uint64_t sum = 0;
        for (std::uint64_t d = 1; d <= q; ++d) {
            if (q % d == 0) sum += primitive_character_count(d);
        }
        if (sum != euler_phi(q)) {
            c.fail("primitive-count partition fails at q=" + std::to_string(q));
            return;
        }
    }

    // Multiplicativity on random pairs; conductor divides q.
    const CounterRng rng(404, 0);
    for (std::uint64_t q = 1; q <= mult_cap; ++q) {
        auto group = character_group(q);
        const std::size_t pairs = quick ? 2000 : 10000;
        for (std::uint64_t idx = 0; idx < group->character_count(); ++idx) {
            auto chi = character_by_index(group, idx);
            if (chi.modulus() % chi.conductor() != 0) {
                c.fail("conductor does not divide q=" + std::to_string(q));
                return;
            }
        }
        for (std::size_t t = 0; t < pairs; ++t) {
            auto chi = character_by_index(
                group, rng.bits(q * 100000 + 3 * t) % group->character_count());
            const auto m = static_cast<std::int64_t>(rng.bits(q * 100000 + 3 * t + 1) % (4 * q + 8)) - 2 * static_cast<std::int64_t>(q);
            const auto n = static_cast<std::int64_t>(rng.bits(q * 100000 + 3 * t + 2) % (4 * q + 8)) - 2 * static_cast<std::int64_t>(q);
            const cplx lhs = chi.evaluate(m * n);
            const cplx rhs = chi.evaluate(m) * chi.evaluate(n);
            if (std::abs(lhs - rhs) > 1e-12) {
                c.fail("multiplicativity fails at q=" + std::to_string(q));
                return;
            }
        }
    }

    // Gauss sum modulus law for all primitive characters.
    double worst_gauss = 0.0;
    for (std::uint64_t q = 1; q <= gauss_cap; ++q) {
        auto group = character_group(q);
        for (std::uint64_t idx = 0; idx < group->character_count(); ++idx) {
            auto chi = character_by_index(group, idx);
            if (!is_primitive_exponents(*group, chi.exponents())) continue;
            const double abs2 = std::norm(gauss_sum(chi));
            const double defect = std::abs(abs2 - static_cast<double>(q));
            worst_gauss = std::max(worst_gauss, defect / static_cast<double>(q));
            if (defect > 1e-6 * static_cast<double>(q)) {
                c.fail("|tau|^2 != q at q=" + std::to_string(q) +
                       " idx=" + std::to_string(idx) + " defect " + fmt(defect));
                return;
            }
        }
    }

    // Orthogonality defect.
    double worst_orth = 0.0;
    for (std::uint64_t q = 1; q <= orth_cap; ++q) {
        const double defect = orthogonality_defect(q);
        const double phi = static_cast<double>(euler_phi(q));
        worst_orth = std::max(worst_orth, defect / phi);
        if (defect > 1e-9 * phi) {
            c.fail("orthogonality defect " + fmt(defect) + " at q=" +
                   std::to_string(q));
            return;
        }
    }

    c.note("worst |tau|^2 rel defect " + fmt(worst_gauss) +
           ", worst orthogonality defect/phi " + fmt(worst_orth));
}

// ------------------------------------------------------------------
// 5. identity lemma sweep
// ------------------------------------------------------------------
void criterion_identity(Criterion& c, const PrimeStore& store1e4, bool quick) {
    const std::size_t cases = quick ? 200 : 1000;
    const CounterRng rng(505, 0);
    double worst = 0.0;
    for (std::size_t t = 0; t < cases; ++t) {
        const std::uint64_t q = 1 + rng.bits(3 * t) % 100;
        std::uint64_t a = 1 + rng.bits(3 * t + 1) % q;
        while (std::gcd(a, q) != 1) a = 1 + (a % q);
        std::uint64_t lo = rng.bits(3 * t + 2) % 10000;
        std::uint64_t hi = rng.bits(3 * t + 2'000'000) % 10001;
        if (lo > hi) std::swap(lo, hi);
        auto group = character_group(q);
        const double lhs = theta_ap(store1e4, {lo, hi}, q, a) -
                           static_cast<double>(hi - lo) /
                               static_cast<double>(group->phi());
        const double defect = identity_check(store1e4, group, a, {lo, hi});
        const double tol = 1e-9 * (1.0 + std::abs(lhs));
        worst = std::max(worst, defect / tol);
        if (defect > tol) {
            c.fail("defect " + fmt(defect) + " at q=" + std::to_string(q) +
                   " a=" + std::to_string(a) + " I=(" + std::to_string(lo) +
                   "," + std::to_string(hi) + "]");
            return;
        }
    }
    c.note(std::to_string(cases) + " tuples, worst defect/tolerance " +
           fmt(worst));
}

// ------------------------------------------------------------------
// 6. + 7. ordering chain and the gap-partition witness
// ------------------------------------------------------------------
void criterion_chain_and_witness(Criterion& chain, Criterion& witness,
                                 const PrimeStore& store1e4, bool quick) {
    const double x = 10000.0;
    std::vector<double> Qs = quick ? std::vector<double>{10.0, 100.0}
                                   : std::vector<double>{10.0, 100.0, 1000.0};
    // Predicted shared-partition cost at Q = 1000 is ~3e9 pair ops, so the
    // suite raises the (still active) guard to 6e9 for this run.
    const std::uint64_t budget = 6'000'000'000ULL;
    for (double Q : Qs) {
        const double t11 = bdh_sum(store1e4, x, Q).lhs;
        const double t12 = montgomery_sum(store1e4, x, Q).lhs;
        const double t13 = uchiyama_sum(store1e4, x, Q).lhs;
        const double t14 = var_bdh_sum(store1e4, x, Q, budget).lhs;
        const double t15 = var_bdh_shared_partition(store1e4, x, Q, budget).lhs;
        if (!leq_slack(t11, t12)) chain.fail("T1.1 > T1.2 at Q=" + fmt(Q));
        if (!leq_slack(t12, t13)) chain.fail("T1.2 > T1.3 at Q=" + fmt(Q));
        if (!leq_slack(t13, t14)) chain.fail("T1.3 > T1.4 at Q=" + fmt(Q));
        if (!leq_slack(t15, t14)) chain.fail("T1.5 > T1.4 at Q=" + fmt(Q));
        if (!chain.pass) return;

        if (Q == 100.0) {
            witness = Criterion{};
            const double w = erdos_partition_witness(store1e4, x, Q);
            if (!(w <= t14 * (1.0 + 1e-9))) {
                witness.fail("witness " + fmt(w) + " > var_bdh_sum " + fmt(t14));
            } else {
                witness.note("witness " + fmt(w) + " <= var_bdh_sum " + fmt(t14));
            }
        }
    }
    chain.note("x=1e4, Q in {10,100" + std::string(quick ? "" : ",1000") + "}");
}

// ------------------------------------------------------------------
// 8. regression ratios on the frozen corpus
// ------------------------------------------------------------------
void criterion_regression(Criterion& c, std::ostream& out, bool quick,
                          bool record) {
    using regression::kCorpus;
    using regression::kRegressionSlack;

    const std::size_t points = quick ? 1 : std::size(kCorpus);
    for (std::size_t i = 0; i < points; ++i) {
        const auto& pt = kCorpus[i];
        const auto x = static_cast<double>(pt.x);
        const auto Q = static_cast<double>(pt.Q);
        PrimeStore store = sieve_primes(pt.x);

        const double lx = std::log(x);
        const double t11 = bdh_sum(store, x, Q).ratio;
        const double t14 = var_bdh_sum(store, x, Q, 100'000'000'000ULL).ratio;
        const double t15 =
            var_bdh_shared_partition(store, x, Q, 100'000'000'000ULL).ratio;

        // Lemma 5.1 quantity with +/-1 coefficients, seed 1.
        double ls51 = 0.0;
        bool ls51_refused = false;
        std::string ls51_reason;
        {
            const CounterRng rng(1, 0);
            std::vector<cplx> coeffs(pt.x);
            for (std::uint64_t j = 0; j < pt.x; ++j) {
                coeffs[j] = {rng.pm1(j + 1), 0.0};
            }
            const auto poly = make_trig_polynomial(0, std::move(coeffs));
            const std::uint64_t predicted =
                var_large_sieve_cost_estimate(poly, pt.Q);
            if (predicted > kLargeSieveDpBudget) {
                ls51_refused = true;
                ls51_reason = "var_large_sieve at (N=" + std::to_string(pt.x) +
                              ",Q=" + std::to_string(pt.Q) + ") needs " +
                              std::to_string(predicted) +
                              " pair ops > budget " +
                              std::to_string(kLargeSieveDpBudget);
            } else {
                const double lhs =
                    var_large_sieve_lhs(poly, pt.Q, kLargeSieveDpBudget, false);
                ls51 = lhs / (lx * lx * (x + Q * Q) * poly.energy);
            }
        }

        if (record) {
            out << "    {" << pt.x << ", " << pt.Q << ", " << fmt(t11) << ", "
                << fmt(t14) << ", " << fmt(t15) << ", "
                << (ls51_refused ? "0.0" : fmt(ls51)) << "},\n";
            continue;
        }

        auto assert_ratio = [&](const char* name, double got, double frozen) {
            if (!(got > 0.0) || !std::isfinite(got)) {
                c.fail(std::string(name) + " ratio not finite-positive at x=" +
                       std::to_string(pt.x));
            } else if (got > kRegressionSlack * frozen) {
                c.fail(std::string(name) + " ratio " + fmt(got) + " > 1.05 x " +
                       fmt(frozen) + " at x=" + std::to_string(pt.x));
            }
        };
        assert_ratio("T1.1", t11, pt.t11);
        assert_ratio("T1.4", t14, pt.t14);
        assert_ratio("T1.5", t15, pt.t15);
        if (pt.ls51 == 0.0) {
            // Frozen as unattainable on the reference hardware: an honest red.
            c.fail("Lemma 5.1 at (N=" + std::to_string(pt.x) + ",Q=" +
                   std::to_string(pt.Q) + ") unattainable: " +
                   (ls51_refused ? ls51_reason
                                 : "expected resource refusal, got a value"));
        } else if (ls51_refused) {
            c.fail("Lemma 5.1 refused but a frozen ratio exists: " + ls51_reason);
        } else {
            assert_ratio("Lemma5.1", ls51, pt.ls51);
        }
    }
    if (!record) {
        c.note(std::to_string(points) + " corpus points");
    }
}

// ------------------------------------------------------------------
// 9. gap-square ratio at 1e6
// ------------------------------------------------------------------
void criterion_cheer_goldston(Criterion& c, bool record, std::ostream& out) {
    PrimeStore store = sieve_primes(1'000'000);
    const double gss = gap_square_sum(store, 1e6);
    const double ratio = cheer_goldston_ratio(store, 1e6);
    if (record) {
        out << "kGapSquareSum1e6 = " << fmt(gss) << "\n";
        out << "kCheerGoldstonRatio1e6 = " << fmt(ratio) << "\n";
        out << "kThetaPsiGapRatio1e6 = " << fmt(theta_psi_gap_ratio(store, 1e6))
            << "\n";
        return;
    }
    if (!(ratio > 1.0)) {
        c.fail("gap_square_sum(1e6)/(1e6 ln 1e6) = " + fmt(ratio) + " <= 1");
        return;
    }
    if (gss != regression::kGapSquareSum1e6) {
        c.fail("gap_square_sum(1e6) = " + fmt(gss) + " != frozen " +
               fmt(regression::kGapSquareSum1e6));
        return;
    }
    c.note("ratio " + fmt(ratio) + " > 1; comparison constant 193/192 = " +
           fmt(kCheerGoldstonConstant));
}

// ------------------------------------------------------------------
// 10. Gaussian lower-bound experiment
// ------------------------------------------------------------------
void criterion_gaussian(Criterion& c, bool quick) {
    const std::uint64_t seed = 1;
    const std::uint64_t trials = quick ? 60 : 200;
    const std::uint64_t sizes[] = {256, 1024, 4096};

    GaussianExperimentResult prev{};
    bool have_prev = false;
    for (std::uint64_t N : sizes) {
        const auto res = gaussian_lower_bound_experiment(N, trials, seed);
        if (!(res.mean >= static_cast<double>(N) - 3.0 * res.stderr_)) {
            c.fail("mean " + fmt(res.mean) + " < N - 3 stderr at N=" +
                   std::to_string(N));
            return;
        }
        if (have_prev) {
            const double prev_ratio_se =
                3.0 * prev.stderr_ /
                (static_cast<double>(prev.N) *
                 std::log(std::log(static_cast<double>(prev.N))));
            const double cur_ratio_se =
                3.0 * res.stderr_ /
                (static_cast<double>(res.N) *
                 std::log(std::log(static_cast<double>(res.N))));
            if (res.ratio < prev.ratio - prev_ratio_se - cur_ratio_se) {
                c.fail("ratio trend decreases beyond 3-stderr slack: " +
                       fmt(prev.ratio) + " -> " + fmt(res.ratio) + " at N=" +
                       std::to_string(N));
                return;
            }
        }
        c.note("N=" + std::to_string(N) + " mean/(N lnlnN)=" + fmt(res.ratio));
        prev = res;
        have_prev = true;
    }
}

// ------------------------------------------------------------------
// 11. Parseval / DFT check on eval_S
// ------------------------------------------------------------------
void criterion_parseval(Criterion& c, bool quick) {
    const std::size_t cases = quick ? 30 : 100;
    const CounterRng rng(1111, 0);
    double worst = 0.0;
    for (std::size_t t = 0; t < cases; ++t) {
        const std::uint64_t N = 1 + rng.bits(2 * t) % 512;
        const std::int64_t M = static_cast<std::int64_t>(rng.bits(2 * t + 1) % 64);
        std::vector<cplx> coeffs(N);
        for (std::uint64_t j = 0; j < N; ++j) {
            coeffs[j] = {rng.normal(t * 8192 + 2 * j),
                         rng.normal(t * 8192 + 2 * j + 1)};
        }
        const auto poly = make_trig_polynomial(M, std::move(coeffs));
        const std::uint64_t K =
            2 * (static_cast<std::uint64_t>(M) + N) + 1;
        KahanSum acc;
        for (std::uint64_t k = 0; k < K; ++k) {
            acc.add(std::norm(eval_S(
                poly, static_cast<double>(k) / static_cast<double>(K))));
        }
        const double mean = acc.value() / static_cast<double>(K);
        const double rel = std::abs(mean - poly.energy) / poly.energy;
        worst = std::max(worst, rel);
        if (rel > 1e-9) {
            c.fail("Parseval defect " + fmt(rel) + " at case " +
                   std::to_string(t));
            return;
        }
    }
    c.note(std::to_string(cases) + " polynomials, worst relative defect " +
           fmt(worst));
}

// Measured operation-level regression constants (record mode).
void record_op_constants(std::ostream& out) {
    // classic large sieve at N=256, Q=8, random unit-modulus coefficients.
    {
        const CounterRng rng(77, 0);
        std::vector<cplx> coeffs(256);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            const double t = rng.uniform01(j + 1);
            coeffs[j] = {std::cos(2 * M_PI * t), std::sin(2 * M_PI * t)};
        }
        const auto poly = make_trig_polynomial(0, std::move(coeffs));
        const double lhs = classic_large_sieve_lhs(poly, 8, false);
        out << "kClassicLargeSieveC = "
            << fmt(lhs / ((256.0 + 64.0) * poly.energy)) << "\n";
    }
    // var_at_points on the Farey corpus, r = 2 and r = 3.
    {
        const CounterRng rng(78, 0);
        std::vector<cplx> coeffs(64);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            coeffs[j] = {rng.pm1(j + 1), 0.0};
        }
        const auto poly = make_trig_polynomial(0, std::move(coeffs));
        const auto pts = farey_points(4);
        const double base =
            (64.0 + 1.0 / pts.delta + 1.0) * poly.energy;
        const double v2 = var_at_points(poly, pts, 2.0, false);
        const double v3 = var_at_points(poly, pts, 3.0, false);
        out << "kVarAtPointsR2C = " << fmt(v2 / (base * std::log(64.0))) << "\n";
        out << "kVarAtPointsHighRC = " << fmt(v3 / base) << "\n";
    }
    // var large sieve at N=128, Q=4, +/-1 coefficients, seed 1.
    {
        const CounterRng rng(1, 0);
        std::vector<cplx> coeffs(128);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            coeffs[j] = {rng.pm1(j + 1), 0.0};
        }
        const auto poly = make_trig_polynomial(0, std::move(coeffs));
        const double lhs = var_large_sieve_lhs(poly, 4, kLargeSieveDpBudget, false);
        const double lx = std::log(128.0);
        out << "kVarLargeSieveC = "
            << fmt(lhs / (lx * lx * (128.0 + 16.0) * poly.energy)) << "\n";
    }
    // asym ratio at x = 1e4.
    {
        PrimeStore store = sieve_primes(10'000);
        const double v = asym_quantity(store, 1e4);
        out << "asym_quantity(1e4)/(x ln x) = "
            << fmt(v / (1e4 * std::log(1e4))) << "\n";
    }
}

} // namespace

int run_acceptance(const AcceptanceOptions& opts, std::ostream& out) {
    Runner runner(opts, out);

    if (opts.record) {
        out << "// measured regression constants (paste into regression.hpp)\n";
        record_op_constants(out);
        out << "// corpus ratios {x, Q, t11, t14, t15, ls51}:\n";
        Criterion dummy;
        criterion_regression(dummy, out, opts.quick, true);
        Criterion cg;
        criterion_cheer_goldston(cg, true, out);
        return 0;
    }

    PrimeStore store1e4 = sieve_primes(10'000);

    runner.run("01 variation-oracle-equivalence",
               [&](Criterion& c) { criterion_oracle(c, opts.quick); });
    runner.run("02 pruning-exactness",
               [&](Criterion& c) { criterion_pruning(c, opts.quick); });
    runner.run("03 dyadic-decomposition",
               [&](Criterion& c) { criterion_dyadic(c, opts.quick); });
    runner.run("04 character-suite",
               [&](Criterion& c) { criterion_characters(c, opts.quick); });
    runner.run("05 identity-lemma-sweep", [&](Criterion& c) {
        criterion_identity(c, store1e4, opts.quick);
    });

    Criterion witness;
    witness.fail("not computed (criterion 06 aborted early)");
    runner.run("06 ordering-chain", [&](Criterion& c) {
        criterion_chain_and_witness(c, witness, store1e4, opts.quick);
    });
    runner.run("07 erdos-witness", [&](Criterion& c) { c = witness; });

    runner.run("08 regression-ratios", [&](Criterion& c) {
        criterion_regression(c, out, opts.quick, false);
    });
    runner.run("09 cheer-goldston-sanity",
               [&](Criterion& c) { criterion_cheer_goldston(c, false, out); });
    runner.run("10 gaussian-lower-bound",
               [&](Criterion& c) { criterion_gaussian(c, opts.quick); });
    runner.run("11 parseval-dft",
               [&](Criterion& c) { criterion_parseval(c, opts.quick); });

    out << (runner.failures() == 0 ? "acceptance: all criteria passed\n"
                                   : "acceptance: " +
                                         std::to_string(runner.failures()) +
                                         " criterion(s) failed\n");
    return runner.failures();
}

} // namespace vpl
