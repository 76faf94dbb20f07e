#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "vpl/dirichlet.hpp"
#include "vpl/rng.hpp"

using namespace vpl;

namespace {

// Independent conductor oracle: the smallest divisor d of q such that chi is
// constant on units that agree mod d.
std::uint64_t conductor_slow(const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus();
    for (std::uint64_t d = 1; d <= q; ++d) {
        if (q % d != 0) continue;
        bool ok = true;
        for (std::uint64_t m = 1; m <= q && ok; ++m) {
            if (std::gcd(m, q) != 1) continue;
            for (std::uint64_t n = m; n <= q && ok; n += d) {
                if (std::gcd(n, q) != 1) continue;
                if ((m % d) != (n % d)) continue;
                if (std::abs(chi.evaluate(m) - chi.evaluate(n)) > 1e-9) ok = false;
            }
        }
        if (ok) return d;
    }
    return q;
}

} // namespace

TEST_CASE("character_group examples") {
    SUBCASE("q=1: trivial group with one character") {
        auto g = character_group(1);
        CHECK(g->character_count() == 1);
        CHECK(g->components().empty());
    }
    SUBCASE("q=8: orders {2,2} with generators -1 and 5") {
        auto g = character_group(8);
        REQUIRE(g->components().size() == 2);
        CHECK(g->components()[0].generator == 7);
        CHECK(g->components()[0].order == 2);
        CHECK(g->components()[1].generator == 5);
        CHECK(g->components()[1].order == 2);
        // 5 has order 2 mod 8 and {±5^k mod 8} covers the units
        CHECK(mod_pow(5, 2, 8) == 1);
        std::set<std::uint64_t> covered;
        for (std::uint64_t s = 0; s < 2; ++s) {
            for (std::uint64_t t = 0; t < 2; ++t) {
                covered.insert(mod_pow(7, s, 8) * mod_pow(5, t, 8) % 8);
            }
        }
        CHECK(covered == std::set<std::uint64_t>{1, 3, 5, 7});
    }
    SUBCASE("q=15: component orders multiply to phi(15)=8") {
        auto g = character_group(15);
        std::uint64_t prod = 1;
        for (const auto& comp : g->components()) prod *= comp.order;
        CHECK(prod == 8);
        CHECK(g->phi() == 8);
    }
    SUBCASE("q=0 rejected, cap enforced") {
        CHECK_THROWS_AS(character_group(0), DomainError);
        CHECK_THROWS_AS(CharacterGroup(2'000'000), ResourceError);
    }
}

TEST_CASE("group structure invariants") {
    for (std::uint64_t q = 1; q <= 200; ++q) {
        auto g = character_group(q);
        std::uint64_t prod = 1;
        for (const auto& comp : g->components()) prod *= comp.order;
        CHECK(prod == euler_phi(q));

        // Re-exponentiating the discrete logs reproduces n mod q via CRT:
        // verify the generators' powers at each component agree with n.
        for (std::uint64_t n = 1; n <= q; ++n) {
            if (q > 1 && std::gcd(n, q) != 1) {
                CHECK_FALSE(g->dlogs(n).has_value());
                continue;
            }
            auto dl = g->dlogs(n);
            REQUIRE(dl.has_value());
            // product over components (all mod the same prime power for the
            // 2^e pair) must reproduce n modulo each prime power.
            std::map<std::uint64_t, std::uint64_t> per_pp;
            for (std::size_t j = 0; j < g->components().size(); ++j) {
                const auto& comp = g->components()[j];
                auto [it, fresh] = per_pp.emplace(comp.prime_power, 1);
                it->second = it->second *
                             mod_pow(comp.generator, (*dl)[j], comp.prime_power) %
                             comp.prime_power;
            }
            for (const auto& [pp, value] : per_pp) {
                CHECK(value == n % pp);
            }
        }
    }
}

TEST_CASE("evaluate examples") {
    SUBCASE("principal character is 1 on units") {
        auto chi = principal_character(character_group(12));
        for (std::int64_t n : {1, 5, 7, 11, 13, -1}) {
            CHECK(std::abs(chi.evaluate(n) - cplx{1.0, 0.0}) <= 1e-15);
        }
    }
    SUBCASE("the nonprincipal character mod 4 at 3 is -1") {
        auto chi = character_by_index(character_group(4), 1);
        CHECK_FALSE(chi.is_principal());
        CHECK(std::abs(chi.evaluate(3) - cplx{-1.0, 0.0}) <= 1e-15);
    }
    SUBCASE("any character mod 6 vanishes at 3") {
        auto g = character_group(6);
        for (std::uint64_t i = 0; i < g->character_count(); ++i) {
            CHECK(character_by_index(g, i).evaluate(3) == cplx{0.0, 0.0});
        }
    }
    SUBCASE("periodicity and negative arguments") {
        auto g = character_group(7);
        for (std::uint64_t i = 0; i < g->character_count(); ++i) {
            auto chi = character_by_index(g, i);
            for (std::int64_t n = -20; n <= 20; ++n) {
                CHECK(std::abs(chi.evaluate(n) - chi.evaluate(n + 7)) <= 1e-15);
            }
        }
    }
}

TEST_CASE("complete multiplicativity on random pairs") {
    const CounterRng rng(21, 0);
    for (std::uint64_t q = 1; q <= 100; ++q) {
        auto g = character_group(q);
        for (int t = 0; t < 100; ++t) {
            auto chi = character_by_index(g, rng.bits(q * 1000 + 3 * t) % g->phi());
            const auto m = static_cast<std::int64_t>(
                rng.bits(q * 1000 + 3 * t + 1) % (3 * q + 5));
            const auto n = static_cast<std::int64_t>(
                rng.bits(q * 1000 + 3 * t + 2) % (3 * q + 5));
            CHECK(std::abs(chi.evaluate(m * n) - chi.evaluate(m) * chi.evaluate(n)) <=
                  1e-12);
        }
    }
}

TEST_CASE("unit modulus on units") {
    auto g = character_group(40);
    for (std::uint64_t i = 0; i < g->phi(); ++i) {
        auto chi = character_by_index(g, i);
        for (std::uint64_t n = 1; n <= 40; ++n) {
            const cplx v = chi.evaluate(n);
            if (std::gcd(n, 40ULL) == 1) {
                CHECK(std::abs(std::abs(v) - 1.0) <= 1e-15);
            } else {
                CHECK(v == cplx{0.0, 0.0});
            }
        }
    }
}

TEST_CASE("is_principal examples") {
    CHECK(principal_character(character_group(9)).is_principal());
    CHECK(principal_character(character_group(1)).is_principal());
    CHECK_FALSE(character_by_index(character_group(4), 1).is_principal());
}

TEST_CASE("conductor examples") {
    SUBCASE("principal character has conductor 1") {
        auto chi = principal_character(character_group(12));
        CHECK(chi.conductor() == 1);
        auto chi1 = chi.primitive_inducer();
        CHECK(chi1.modulus() == 1);
        CHECK(chi1.is_principal());
    }
    SUBCASE("nonprincipal mod 6 is induced from mod 3") {
        auto g = character_group(6);
        auto chi = character_by_index(g, 1);
        REQUIRE_FALSE(chi.is_principal());
        CHECK(chi.conductor() == 3);
        auto chi1 = chi.primitive_inducer();
        CHECK(chi1.modulus() == 3);
        CHECK(chi1.is_primitive());
        // agreement on units mod 6
        for (std::uint64_t n = 1; n <= 6; ++n) {
            if (std::gcd(n, 6ULL) != 1) continue;
            CHECK(std::abs(chi.evaluate(n) - chi1.evaluate(n)) <= 1e-12);
        }
    }
    SUBCASE("nonprincipal mod 4 is primitive") {
        auto chi = character_by_index(character_group(4), 1);
        CHECK(chi.conductor() == 4);
        CHECK(chi.is_primitive());
    }
}

TEST_CASE("conductor matches the period oracle and induction agrees") {
    for (std::uint64_t q = 1; q <= 60; ++q) {
        auto g = character_group(q);
        for (std::uint64_t i = 0; i < g->phi(); ++i) {
            auto chi = character_by_index(g, i);
            CHECK(chi.conductor() == conductor_slow(chi));
            CHECK(q % chi.conductor() == 0);
            auto chi1 = chi.primitive_inducer();
            CHECK(chi1.is_primitive());
            CHECK(chi1.modulus() == chi.conductor());
            for (std::uint64_t n = 1; n <= q; ++n) {
                if (q > 1 && std::gcd(n, q) != 1) continue;
                CHECK(std::abs(chi.evaluate(n) - chi1.evaluate(n)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("is_primitive examples and the fast exponent test") {
    CHECK_FALSE(principal_character(character_group(5)).is_primitive());
    CHECK(character_by_index(character_group(3), 1).is_primitive());

    // character mod 6 induced from mod 3 is not primitive
    CHECK_FALSE(character_by_index(character_group(6), 1).is_primitive());

    for (std::uint64_t q = 1; q <= 100; ++q) {
        auto g = character_group(q);
        for (std::uint64_t i = 0; i < g->phi(); ++i) {
            auto chi = character_by_index(g, i);
            CHECK(is_primitive_exponents(*g, chi.exponents()) ==
                  chi.is_primitive());
        }
    }
}

TEST_CASE("primitive count partitions phi(q)") {
    for (std::uint64_t q = 1; q <= 500; ++q) {
        std::uint64_t sum = 0;
        for (std::uint64_t d = 1; d <= q; ++d) {
            if (q % d == 0) sum += primitive_character_count(d);
        }
        CHECK(sum == euler_phi(q));
    }
}

TEST_CASE("gauss sum examples") {
    SUBCASE("primitive chi mod 4: tau = 2i") {
        auto chi = character_by_index(character_group(4), 1);
        const cplx tau = gauss_sum(chi);
        CHECK(std::abs(tau - cplx{0.0, 2.0}) <= 1e-12);
        CHECK(std::norm(tau) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("trivial character mod 1: tau = 1") {
        auto chi = principal_character(character_group(1));
        CHECK(std::abs(gauss_sum(chi) - cplx{1.0, 0.0}) <= 1e-15);
    }
    SUBCASE("primitive chi mod 3: |tau|^2 = 3") {
        auto chi = character_by_index(character_group(3), 1);
        CHECK(std::norm(gauss_sum(chi)) == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("gauss sum modulus law for primitive characters up to 200") {
    for (std::uint64_t q = 1; q <= 200; ++q) {
        auto g = character_group(q);
        for (std::uint64_t i = 0; i < g->phi(); ++i) {
            auto chi = character_by_index(g, i);
            if (!is_primitive_exponents(*g, chi.exponents())) continue;
            const double abs2 = std::norm(gauss_sum(chi));
            CHECK(std::abs(abs2 - static_cast<double>(q)) <=
                  1e-6 * static_cast<double>(q));
        }
    }
}

TEST_CASE("orthogonality defect") {
    CHECK(orthogonality_defect(1) == 0.0);
    CHECK(orthogonality_defect(12) <= 1e-9);
    for (std::uint64_t q : {2, 5, 24, 36, 97, 200}) {
        CHECK(orthogonality_defect(q) <=
              1e-9 * static_cast<double>(euler_phi(q)));
    }
    CHECK_THROWS_AS(orthogonality_defect(2000), ResourceError);
}

TEST_CASE("euler_phi and factorize basics") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(2) == 1);
    CHECK(euler_phi(15) == 8);
    CHECK(euler_phi(4096) == 2048);
    CHECK(factorize(360) ==
          std::vector<std::pair<std::uint64_t, std::uint32_t>>{
              {2, 3}, {3, 2}, {5, 1}});
}
