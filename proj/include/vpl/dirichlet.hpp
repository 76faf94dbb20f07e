// dirichlet.hpp
// Dirichlet characters mod q as exponent vectors against a fixed generator
// decomposition of the unit group, with conductor/primitivity classification,
// Gauss sums and orthogonality checks.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "vpl/common.hpp"

namespace vpl {

inline constexpr std::uint64_t kDefaultModulusCap = 1'000'000;

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// One cyclic factor of (Z/q)^*: residues mod prime_power generated by
// `generator`, of the given order. Powers of 2 >= 8 contribute two factors
// (<-1> of order 2 and <5> of order 2^(e-2)).
struct UnitComponent {
    std::uint64_t prime_power = 0;
    std::uint64_t generator = 0;
    std::uint64_t order = 0;
};

class CharacterGroup {
public:
    explicit CharacterGroup(std::uint64_t q,
                            std::uint64_t cap = kDefaultModulusCap);

    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t phi() const { return phi_; }
    std::uint64_t character_count() const { return phi_; }
    const std::vector<UnitComponent>& components() const { return components_; }

    // Per-component discrete logs of n, or nullopt when gcd(n, q) > 1.
    std::optional<std::vector<std::uint64_t>> dlogs(std::int64_t n) const;

    // lcm of the component orders; every character value is a den-th root
    // of unity.
    std::uint64_t phase_denominator() const { return phase_den_; }

private:
    std::uint64_t modulus_;
    std::uint64_t phi_;
    std::uint64_t phase_den_;
    std::vector<UnitComponent> components_;
    std::vector<std::vector<std::int64_t>> dlog_; // per component, indexed mod prime_power
};

// Shared, thread-safe group cache; building distinct moduli can proceed in
// parallel, each modulus is built once.
std::shared_ptr<const CharacterGroup> character_group(
    std::uint64_t q, std::uint64_t cap = kDefaultModulusCap);

class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const CharacterGroup> group,
                       std::vector<std::uint64_t> exponents);

    std::uint64_t modulus() const { return group_->modulus(); }
    const CharacterGroup& group() const { return *group_; }
    std::shared_ptr<const CharacterGroup> group_ptr() const { return group_; }
    const std::vector<std::uint64_t>& exponents() const { return exponents_; }

    // Exact phase: chi(n) = e(num/den), or nullopt when chi(n) = 0. The
    // rational is only turned into a float at the final exp step.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> phase(std::int64_t n) const;

    cplx evaluate(std::int64_t n) const;
    cplx operator()(std::int64_t n) const { return evaluate(n); }

    bool is_principal() const;

    // Minimal modulus q1 | q whose character induces this one; cached.
    std::uint64_t conductor() const;
    // The primitive character mod conductor() inducing this one.
    DirichletCharacter primitive_inducer() const;
    bool is_primitive() const { return conductor() == modulus(); }

private:
    std::shared_ptr<const CharacterGroup> group_;
    std::vector<std::uint64_t> exponents_;
    mutable std::uint64_t conductor_cache_ = 0; // 0 = not computed yet
};

// Character with the given mixed-radix index in [0, phi(q)); index 0 is
// principal.
DirichletCharacter character_by_index(std::shared_ptr<const CharacterGroup> group,
                                      std::uint64_t index);
DirichletCharacter principal_character(std::shared_ptr<const CharacterGroup> group);

// Number of primitive characters mod q (multiplicative; phi(p^e) -
// phi(p^(e-1)) per prime power).
std::uint64_t primitive_character_count(std::uint64_t q);

// Component-wise primitivity of an exponent vector, without computing the
// conductor: odd p^e needs an exponent not divisible by p (nonzero for
// e = 1); 2^e with e >= 3 needs an odd <5>-exponent; mod 4 nonprincipal; a
// bare factor of 2 admits no primitive character. Used by the bulk character
// enumerations and cross-checked against the conductor route in the tests.
bool is_primitive_exponents(const CharacterGroup& group,
                            const std::vector<std::uint64_t>& exps);

// tau(chi) = sum_{a <= q} chi(a) e(a/q); |tau|^2 = q for primitive chi.
cplx gauss_sum(const DirichletCharacter& chi);

// Max orthogonality defect over both relations (character sums at fixed n
// against phi(q)[n = 1 mod q], and pairwise character inner products against
// phi(q)[chi1 = chi2]); exhaustive, so q is capped at 1000.
double orthogonality_defect(std::uint64_t q);

// e(num/den), the exact root of unity.
cplx unit_phase(std::uint64_t num, std::uint64_t den);

} // namespace vpl
