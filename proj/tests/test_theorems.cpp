#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "vpl/rng.hpp"
#include "vpl/theorems.hpp"

using namespace vpl;

namespace {

const PrimeStore& store1e4() {
    static PrimeStore s = sieve_primes(10'000);
    return s;
}

bool leq_slack(double a, double b) {
    return a <= b + 1e-9 * (1.0 + std::abs(b));
}

// Brute-force oracle for the endpoint mean square.
double bdh_oracle(const PrimeStore& s, double x, std::uint64_t Q) {
    double total = 0.0;
    const auto N = static_cast<std::uint64_t>(std::floor(x));
    for (std::uint64_t q = 1; q <= Q; ++q) {
        const double phi = static_cast<double>(euler_phi(q));
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            const double dev =
                theta_ap(s, {0, N}, q, a) - static_cast<double>(N) / phi;
            total += dev * dev;
        }
    }
    return total;
}

} // namespace

TEST_CASE("deviation_series examples") {
    SUBCASE("q=1, x=10") {
        const auto ds = deviation_series(store1e4(), 1, 1, 10.0);
        REQUIRE(ds.series.jumps.size() == 4); // 2, 3, 5, 7
        CHECK(ds.series.prefix(10) ==
              doctest::Approx(theta(store1e4(), 10.0) - 10.0).epsilon(1e-12));
    }
    SUBCASE("q=3, a=1, x=10: single jump at 7") {
        const auto ds = deviation_series(store1e4(), 3, 1, 10.0);
        REQUIRE(ds.series.jumps.size() == 1);
        CHECK(ds.series.jumps[0].first == 7);
        CHECK(ds.series.prefix(10) ==
              doctest::Approx(std::log(7.0) - 5.0).epsilon(1e-12));
    }
    SUBCASE("x=1: no jumps, prefix(1) = -1/phi(q)") {
        const auto ds = deviation_series(store1e4(), 5, 2, 1.0);
        CHECK(ds.series.jumps.empty());
        CHECK(ds.series.prefix(1) == doctest::Approx(-0.25).epsilon(1e-14));
    }
    SUBCASE("jump count matches primes_in_class") {
        for (std::uint64_t q : {1, 4, 7, 12}) {
            for (std::uint64_t a = 1; a <= q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                const auto ds = deviation_series(store1e4(), q, a, 5000.0);
                CHECK(ds.series.jumps.size() ==
                      primes_in_class(store1e4(), q, a, 5000).size());
            }
        }
    }
    CHECK_THROWS_AS(deviation_series(store1e4(), 6, 2, 100.0), DomainError);
}

TEST_CASE("char_theta_series realizes theta(y, chi) and theta'") {
    auto g = character_group(5);
    for (std::uint64_t i = 0; i < g->phi(); ++i) {
        auto chi = character_by_index(g, i);
        const auto cts = char_theta_series(store1e4(), chi, 500.0, false);
        const cplx direct = theta_char(store1e4(), chi, {0, 500});
        CHECK(std::abs(cts.series.prefix(500) - direct) <=
              1e-9 * (1.0 + std::abs(direct)));
    }
    // principal adjusted: slope -1 realizes theta(y,chi0) - y
    auto chi0 = principal_character(g);
    const auto adj = char_theta_series(store1e4(), chi0, 300.0, true);
    const cplx expect = theta_char(store1e4(), chi0, {0, 300}) - 300.0;
    CHECK(std::abs(adj.series.prefix(300) - expect) <=
          1e-9 * (1.0 + std::abs(expect)));
}

TEST_CASE("bdh_sum small oracles") {
    // x = Q = 2: terms q=1 -> (ln 2 - 2)^2 and q=2 -> (0 - 2)^2.
    const double expect2 = std::pow(std::log(2.0) - 2.0, 2) + 4.0;
    CHECK(bdh_sum(store1e4(), 2.0, 2.0).lhs ==
          doctest::Approx(expect2).epsilon(1e-12));

    // x = 10, Q = 1.
    CHECK(bdh_sum(store1e4(), 10.0, 1.0).lhs ==
          doctest::Approx(std::pow(theta(store1e4(), 10.0) - 10.0, 2))
              .epsilon(1e-12));

    for (double x : {50.0, 200.0}) {
        for (double Q : {1.0, 7.0, 20.0}) {
            if (Q > x) continue;
            CHECK(bdh_sum(store1e4(), x, Q).lhs ==
                  doctest::Approx(bdh_oracle(store1e4(), x, Q)).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(bdh_sum(store1e4(), 10.0, 100.0), DomainError);
}

TEST_CASE("bdh_sum psi mode") {
    // q=1 only: (psi(x) - floor(x))^2.
    const auto rep = bdh_sum(store1e4(), 100.0, 1.0, WeightMode::psi);
    CHECK(rep.lhs ==
          doctest::Approx(std::pow(psi(store1e4(), 100.0) - 100.0, 2))
              .epsilon(1e-12));
}

TEST_CASE("montgomery_sum examples") {
    // x = Q = 2: q=1 gives max((0-1)^2, (ln2-2)^2) = (ln2-2)^2;
    // q=2 gives max over y in {1,2} of (0 - y)^2 = 4.
    const double q1 = std::pow(std::log(2.0) - 2.0, 2);
    CHECK(montgomery_sum(store1e4(), 2.0, 2.0).lhs ==
          doctest::Approx(q1 + 4.0).epsilon(1e-12));

    // x=10, Q=1: dense scan cross-check.
    double dense = 0.0;
    for (std::uint64_t y = 1; y <= 10; ++y) {
        const double d = theta(store1e4(), static_cast<double>(y)) -
                         static_cast<double>(y);
        dense = std::max(dense, d * d);
    }
    CHECK(montgomery_sum(store1e4(), 10.0, 1.0).lhs ==
          doctest::Approx(dense).epsilon(1e-12));

    for (double Q : {1.0, 5.0, 13.0}) {
        CHECK(leq_slack(bdh_sum(store1e4(), 500.0, Q).lhs,
                        montgomery_sum(store1e4(), 500.0, Q).lhs));
    }
}

TEST_CASE("uchiyama_sum examples") {
    // x=10, Q=1 equals the maximal prefix deviation of the q=1 series.
    const auto ds = deviation_series(store1e4(), 1, 1, 10.0);
    CHECK(uchiyama_sum(store1e4(), 10.0, 1.0).lhs ==
          doctest::Approx(max_prefix_deviation(ds.series).first).epsilon(1e-12));

    for (double Q : {1.0, 5.0, 13.0}) {
        CHECK(leq_slack(montgomery_sum(store1e4(), 500.0, Q).lhs,
                        uchiyama_sum(store1e4(), 500.0, Q).lhs));
    }
}

TEST_CASE("var_bdh_sum examples") {
    // x=20, q range {1}: equals the dense DP on the explicit sequence.
    const auto ds = deviation_series(store1e4(), 1, 1, 20.0);
    const double dense = variation_dp(ds.series.densify(), 2.0).power_sum;
    CHECK(var_bdh_sum(store1e4(), 20.0, 1.0).lhs ==
          doctest::Approx(dense).epsilon(1e-9));

    for (double Q : {1.0, 5.0, 13.0}) {
        CHECK(leq_slack(uchiyama_sum(store1e4(), 500.0, Q).lhs,
                        var_bdh_sum(store1e4(), 500.0, Q).lhs));
    }

    CHECK_THROWS_AS(var_bdh_sum(store1e4(), 5000.0, 500.0, 1000), ResourceError);
}

TEST_CASE("var_bdh_shared_partition examples") {
    // q=1: identical to var_bdh_sum restricted to q=1.
    CHECK(var_bdh_shared_partition(store1e4(), 300.0, 1.0).lhs ==
          doctest::Approx(var_bdh_sum(store1e4(), 300.0, 1.0).lhs)
              .epsilon(1e-9));

    // x=50, Q=3: brute force across every breakpoint subset via a DP over
    // all integer positions with the exact shared block cost.
    {
        const double x = 50.0;
        const std::uint64_t N = 50;
        double expected = 0.0;
        for (std::uint64_t q = 1; q <= 3; ++q) {
            const double phi = static_cast<double>(euler_phi(q));
            std::vector<std::uint64_t> classes;
            for (std::uint64_t a = 1; a <= q; ++a) {
                if (std::gcd(a, q) == 1) classes.push_back(a);
            }
            auto cost = [&](std::uint64_t lo, std::uint64_t hi) {
                double c = 0.0;
                for (std::uint64_t a : classes) {
                    const double d = theta_ap(store1e4(), {lo, hi}, q, a) -
                                     static_cast<double>(hi - lo) / phi;
                    c += d * d;
                }
                return c;
            };
            std::vector<double> dp(N + 1, 0.0);
            for (std::uint64_t j = 1; j <= N; ++j) {
                double best = -1.0;
                for (std::uint64_t i = 0; i < j; ++i) {
                    best = std::max(best, dp[i] + cost(i, j));
                }
                dp[j] = best;
            }
            expected += dp[N];
        }
        CHECK(var_bdh_shared_partition(store1e4(), x, 3.0).lhs ==
              doctest::Approx(expected).epsilon(1e-9));
    }

    // shared partition never beats per-class partitions
    for (double Q : {1.0, 5.0, 13.0}) {
        CHECK(leq_slack(var_bdh_shared_partition(store1e4(), 500.0, Q).lhs,
                        var_bdh_sum(store1e4(), 500.0, Q).lhs));
    }
}

TEST_CASE("bound forms carry the right log powers") {
    const double x = 500.0, Q = 13.0, lx = std::log(x);
    CHECK(bdh_sum(store1e4(), x, Q).bound_form ==
          doctest::Approx(x * Q * lx));
    CHECK(montgomery_sum(store1e4(), x, Q).bound_form ==
          doctest::Approx(x * Q * lx));
    CHECK(uchiyama_sum(store1e4(), x, Q).bound_form ==
          doctest::Approx(x * Q * lx * lx * lx));
    CHECK(var_bdh_sum(store1e4(), x, Q).bound_form ==
          doctest::Approx(x * Q * lx * lx * lx));
    CHECK(var_bdh_shared_partition(store1e4(), x, Q).bound_form ==
          doctest::Approx(x * Q * lx * lx));
}

TEST_CASE("identity_check examples") {
    SUBCASE("q=1: identity collapses exactly") {
        CHECK(identity_check(store1e4(), character_group(1), 1, {0, 100}) == 0.0);
    }
    SUBCASE("q=3, a=1, I=(0,10]") {
        // LHS = ln 7 - 5; RHS = ((theta(I,chi0) - 10) + theta(I,chi)) / 2
        // with theta(I,chi0) = ln 70 and theta(I,chi) = ln(7/10).
        auto g = character_group(3);
        const double lhs = std::log(7.0) - 5.0;
        const double rhs =
            ((std::log(70.0) - 10.0) + std::log(0.7)) / 2.0;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(identity_check(store1e4(), g, 1, {0, 10}) <= 1e-9);
    }
    SUBCASE("random sweep") {
        const CounterRng rng(31, 0);
        for (int t = 0; t < 100; ++t) {
            const std::uint64_t q = 1 + rng.bits(3 * t) % 60;
            std::uint64_t a = 1 + rng.bits(3 * t + 1) % q;
            while (std::gcd(a, q) != 1) a = 1 + (a % q);
            std::uint64_t lo = rng.bits(3 * t + 2) % 4000;
            std::uint64_t hi = lo + rng.bits(7000 + t) % 4000;
            auto g = character_group(q);
            const double lhs =
                theta_ap(store1e4(), {lo, hi}, q, a) -
                static_cast<double>(hi - lo) / static_cast<double>(g->phi());
            CHECK(identity_check(store1e4(), g, a, {lo, hi}) <=
                  1e-9 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("Parseval over characters") {
    // sum_a |sum_chi conj(chi)(a) theta'(I,chi)|^2 = phi(q) sum_chi |theta'|^2
    const CounterRng rng(32, 0);
    for (std::uint64_t q = 1; q <= 50; ++q) {
        auto g = character_group(q);
        const std::uint64_t lo = rng.bits(q) % 2000;
        const std::uint64_t hi = lo + 1 + rng.bits(q + 100) % 6000;
        std::vector<cplx> tp;
        for (std::uint64_t i = 0; i < g->phi(); ++i) {
            tp.push_back(theta_prime(store1e4(), character_by_index(g, i), {lo, hi}));
        }
        double lhs = 0.0;
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            KahanComplexSum inner;
            for (std::uint64_t i = 0; i < g->phi(); ++i) {
                auto chi = character_by_index(g, i);
                inner.add(std::conj(chi.evaluate(static_cast<std::int64_t>(a))) *
                          tp[i]);
            }
            lhs += std::norm(inner.value());
        }
        double rhs = 0.0;
        for (const cplx& v : tp) rhs += std::norm(v);
        rhs *= static_cast<double>(g->phi());
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("primitive_shift_check examples") {
    SUBCASE("primitive character shifts by zero") {
        auto chi = character_by_index(character_group(4), 1);
        CHECK(primitive_shift_check(store1e4(), chi, {0, 100}) == 0.0);
    }
    SUBCASE("chi mod 6 from mod 3 over (0,10]: shift is exactly ln 2") {
        auto chi = character_by_index(character_group(6), 1);
        REQUIRE(chi.conductor() == 3);
        const double v = primitive_shift_check(store1e4(), chi, {0, 10});
        CHECK(v == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(v <= std::log(6.0));
    }
    SUBCASE("sweep: bound never violated") {
        const CounterRng rng(33, 0);
        for (std::uint64_t q = 2; q <= 100; ++q) {
            auto g = character_group(q);
            const std::uint64_t lo = rng.bits(q) % 5000;
            const std::uint64_t hi = lo + rng.bits(q + 7) % 5000;
            for (std::uint64_t i = 0; i < g->phi(); ++i) {
                // throws CheckError on violation
                primitive_shift_check(store1e4(), character_by_index(g, i),
                                      {lo, hi});
            }
        }
    }
}

TEST_CASE("var_sw_quantity examples") {
    auto g4 = character_group(4);
    auto chi4 = character_by_index(g4, 1);

    SUBCASE("x < 2: no primes, value 0") {
        CHECK(var_sw_quantity(store1e4(), chi4, 1.5) == 0.0);
    }
    SUBCASE("principal rejected") {
        CHECK_THROWS_AS(var_sw_quantity(store1e4(), principal_character(g4), 10.0),
                        DomainError);
    }
    SUBCASE("chi mod 4, x=10: agrees with the densified brute force") {
        const auto cts = char_theta_series(store1e4(), chi4, 10.0, false);
        const auto oracle = variation_oracle(cts.series.densify(), 2.0);
        CHECK(var_sw_quantity(store1e4(), chi4, 10.0) ==
              doctest::Approx(oracle.value).epsilon(1e-12));
    }
    SUBCASE("nondecreasing in x") {
        auto chi3 = character_by_index(character_group(3), 1);
        double prev = 0.0;
        for (double x : {10.0, 50.0, 100.0, 500.0, 2000.0}) {
            const double v = var_sw_quantity(store1e4(), chi3, x);
            CHECK(v >= prev * (1.0 - 1e-12));
            prev = v;
        }
    }
    SUBCASE("Cauchy-type bound against the maximal interval sum") {
        const CounterRng rng(34, 0);
        for (std::uint64_t q = 3; q <= 30; ++q) {
            auto g = character_group(q);
            for (std::uint64_t i = 1; i < g->phi(); i += 3) {
                auto chi = character_by_index(g, i);
                if (chi.is_principal()) continue;
                const double x = 3000.0;
                const double v = var_sw_quantity(store1e4(), chi, x);
                // max over subintervals of |theta(J, chi)| via sparse prefixes
                const auto cts = char_theta_series(store1e4(), chi, x, false);
                const auto cand = jump_adjacent_candidates(cts.series);
                const auto pref = prefix_at(cts.series, cand);
                double max_j = 0.0;
                for (std::size_t b = 0; b < pref.size(); ++b) {
                    for (std::size_t e = b + 1; e < pref.size(); ++e) {
                        max_j = std::max(max_j, std::abs(pref[e] - pref[b]));
                    }
                }
                CHECK(v * v <= theta(store1e4(), x) * max_j + 1e-6);
            }
        }
    }
}
