#include "vpl/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <utility>

namespace vpl {

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            std::uint32_t e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw DomainError("euler_phi: n must be positive");
    std::uint64_t phi = n;
    for (const auto& [p, e] : factorize(n)) phi -= phi / p;
    return phi;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    if (mod == 1) return 0;
    unsigned __int128 result = 1;
    unsigned __int128 b = base % mod;
    while (exp) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

cplx unit_phase(std::uint64_t num, std::uint64_t den) {
    const double t = static_cast<double>(num % den) / static_cast<double>(den);
    const double angle = 2.0 * M_PI * t;
    return {std::cos(angle), std::sin(angle)};
}

// ------------------------------------------------------------------
// CharacterGroup
// ------------------------------------------------------------------
namespace {

// Smallest primitive root mod an odd prime p.
std::uint64_t primitive_root_mod_p(std::uint64_t p) {
    const auto factors = factorize(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [f, e] : factors) {
            if (mod_pow(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root_mod_p: none found");
}

// Generator of the cyclic unit group mod p^e for odd p: a primitive root
// mod p^2 generates mod every higher power.
std::uint64_t primitive_root_mod_pe(std::uint64_t p, std::uint32_t e,
                                    std::uint64_t pe) {
    std::uint64_t g = primitive_root_mod_p(p);
    if (e >= 2 && mod_pow(g, p - 1, p * p) == 1) g += p;
    return g % pe;
}

} // namespace

CharacterGroup::CharacterGroup(std::uint64_t q, std::uint64_t cap)
    : modulus_(q) {
    if (q == 0) throw DomainError("character_group: q must be positive");
    if (q > cap) {
        throw ResourceError("character_group: q = " + std::to_string(q) +
                            " exceeds cap " + std::to_string(cap));
    }

    for (const auto& [p, e] : factorize(q)) {
        std::uint64_t pe = 1;
        for (std::uint32_t i = 0; i < e; ++i) pe *= p;

        if (p == 2) {
            if (e == 1) continue; // unit group mod 2 is trivial
            if (e == 2) {
                components_.push_back({pe, 3, 2});
                std::vector<std::int64_t> table(pe, -1);
                table[1] = 0;
                table[3] = 1;
                dlog_.push_back(std::move(table));
                continue;
            }
            // 2^e with e >= 3: <-1> x <5>.
            const std::uint64_t half_order = pe / 4;
            components_.push_back({pe, pe - 1, 2});
            components_.push_back({pe, 5, half_order});
            std::vector<std::int64_t> sign_table(pe, -1);
            std::vector<std::int64_t> five_table(pe, -1);
            std::uint64_t v = 1;
            for (std::uint64_t t = 0; t < half_order; ++t) {
                sign_table[v] = 0;
                five_table[v] = static_cast<std::int64_t>(t);
                sign_table[pe - v] = 1;
                five_table[pe - v] = static_cast<std::int64_t>(t);
                v = v * 5 % pe;
            }
            dlog_.push_back(std::move(sign_table));
            dlog_.push_back(std::move(five_table));
            continue;
        }

        const std::uint64_t order = pe / p * (p - 1); // phi(p^e)
        const std::uint64_t g = primitive_root_mod_pe(p, e, pe);
        components_.push_back({pe, g, order});
        std::vector<std::int64_t> table(pe, -1);
        std::uint64_t v = 1;
        for (std::uint64_t t = 0; t < order; ++t) {
            table[v] = static_cast<std::int64_t>(t);
            v = static_cast<std::uint64_t>(
                (unsigned __int128)v * g % pe);
        }
        dlog_.push_back(std::move(table));
    }

    phi_ = 1;
    phase_den_ = 1;
    for (const auto& comp : components_) {
        phi_ *= comp.order;
        phase_den_ = std::lcm(phase_den_, comp.order);
    }
}

std::optional<std::vector<std::uint64_t>> CharacterGroup::dlogs(
    std::int64_t n) const {
    const std::uint64_t q = modulus_;
    std::uint64_t n0 = static_cast<std::uint64_t>(((n % static_cast<std::int64_t>(q)) +
                                                   static_cast<std::int64_t>(q)) %
                                                  static_cast<std::int64_t>(q));
    if (q > 1 && std::gcd(n0, q) != 1) return std::nullopt;
    std::vector<std::uint64_t> out;
    out.reserve(components_.size());
    for (std::size_t j = 0; j < components_.size(); ++j) {
        const std::int64_t d = dlog_[j][n0 % components_[j].prime_power];
        if (d < 0) return std::nullopt;
        out.push_back(static_cast<std::uint64_t>(d));
    }
    return out;
}

std::shared_ptr<const CharacterGroup> character_group(std::uint64_t q,
                                                      std::uint64_t cap) {
    static std::mutex mutex;
    static std::unordered_map<std::uint64_t, std::shared_ptr<const CharacterGroup>> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
    }
    auto group = std::make_shared<const CharacterGroup>(q, cap);
    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = cache.emplace(q, std::move(group));
    return it->second;
}

// ------------------------------------------------------------------
// DirichletCharacter
// ------------------------------------------------------------------
DirichletCharacter::DirichletCharacter(
    std::shared_ptr<const CharacterGroup> group,
    std::vector<std::uint64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
    const auto& comps = group_->components();
    if (exponents_.size() != comps.size()) {
        throw DomainError("DirichletCharacter: exponent count mismatch");
    }
    for (std::size_t j = 0; j < comps.size(); ++j) {
        exponents_[j] %= comps[j].order;
    }
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
DirichletCharacter::phase(std::int64_t n) const {
    auto dl = group_->dlogs(n);
    if (!dl) return std::nullopt;
    const std::uint64_t den = group_->phase_denominator();
    const auto& comps = group_->components();
    std::uint64_t num = 0;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        // e_j * d_j * (den / order_j) mod den, with the product reduced
        // before the final multiply so everything stays inside 64 bits.
        const std::uint64_t term =
            (exponents_[j] * (*dl)[j]) % den * (den / comps[j].order) % den;
        num = (num + term) % den;
    }
    return std::make_pair(num, den);
}

cplx DirichletCharacter::evaluate(std::int64_t n) const {
    auto ph = phase(n);
    if (!ph) return {0.0, 0.0};
    return unit_phase(ph->first, ph->second);
}

bool DirichletCharacter::is_principal() const {
    return std::all_of(exponents_.begin(), exponents_.end(),
                       [](std::uint64_t e) { return e == 0; });
}

std::uint64_t DirichletCharacter::conductor() const {
    if (conductor_cache_ != 0) return conductor_cache_;
    const std::uint64_t q = modulus();

    std::vector<std::uint64_t> divisors;
    for (std::uint64_t d = 1; d * d <= q; ++d) {
        if (q % d == 0) {
            divisors.push_back(d);
            if (d != q / d) divisors.push_back(q / d);
        }
    }
    std::sort(divisors.begin(), divisors.end());

    for (std::uint64_t d : divisors) {
        // chi is induced mod d iff it is trivial on the kernel of the
        // reduction U(q) -> U(d), i.e. on units n = 1 (mod d).
        bool trivial_on_kernel = true;
        for (std::uint64_t n = 1 + d; n <= q; n += d) {
            if (std::gcd(n, q) != 1) continue;
            auto ph = phase(static_cast<std::int64_t>(n));
            if (!ph || ph->first % ph->second != 0) {
                trivial_on_kernel = false;
                break;
            }
        }
        if (trivial_on_kernel) {
            conductor_cache_ = d;
            return d;
        }
    }
    throw std::logic_error("conductor: no divisor qualified"); // d = q always does
}

namespace {

// Inverse of a mod m via extended Euclid; gcd(a, m) must be 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m);
    std::int64_t new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    if (r != 1) throw std::logic_error("mod_inverse: not coprime");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

// CRT lift of a component generator into the unit group mod q1: equal to the
// generator modulo its own prime power and 1 modulo the rest, so its
// discrete-log vector is one-hot at that component.
std::uint64_t lift_generator(const UnitComponent& comp, std::uint64_t q1) {
    const std::uint64_t pp = comp.prime_power;
    const std::uint64_t rest = q1 / pp;
    if (rest == 1) return comp.generator % pp;
    const std::uint64_t inv = mod_inverse(pp % rest, rest);
    const std::uint64_t diff = (1 + rest - comp.generator % rest) % rest;
    const std::uint64_t t = static_cast<std::uint64_t>(
        (unsigned __int128)diff * inv % rest);
    return comp.generator + pp * t;
}

} // namespace

DirichletCharacter DirichletCharacter::primitive_inducer() const {
    const std::uint64_t q = modulus();
    const std::uint64_t q1 = conductor();
    auto group1 = character_group(q1);
    const auto& comps1 = group1->components();

    std::vector<std::uint64_t> exps1;
    exps1.reserve(comps1.size());
    for (const auto& comp : comps1) {
        // Lift the generator to a unit mod q1, then shift by multiples of q1
        // until it is also a unit mod q; chi agrees with chi1 there. The
        // shift preserves the residue mod every prime dividing q1, so only
        // the primes of q outside q1 constrain it and the walk terminates.
        std::uint64_t g = lift_generator(comp, q1);
        while (std::gcd(g, q) != 1) g += q1;
        auto ph = phase(static_cast<std::int64_t>(g));
        if (!ph) throw std::logic_error("primitive_inducer: unit expected");
        const auto [num, den] = *ph;
        // chi1(generator)^order = 1, so num/den * order is an integer.
        const std::uint64_t scaled = num * comp.order;
        if (scaled % den != 0) {
            throw std::logic_error("primitive_inducer: non-integral exponent");
        }
        exps1.push_back((scaled / den) % comp.order);
    }
    return DirichletCharacter(std::move(group1), std::move(exps1));
}

DirichletCharacter character_by_index(
    std::shared_ptr<const CharacterGroup> group, std::uint64_t index) {
    if (index >= group->character_count()) {
        throw DomainError("character_by_index: index out of range");
    }
    const auto& comps = group->components();
    std::vector<std::uint64_t> exps(comps.size());
    for (std::size_t j = 0; j < comps.size(); ++j) {
        exps[j] = index % comps[j].order;
        index /= comps[j].order;
    }
    return DirichletCharacter(std::move(group), std::move(exps));
}

DirichletCharacter principal_character(
    std::shared_ptr<const CharacterGroup> group) {
    std::vector<std::uint64_t> exps(group->components().size(), 0);
    return DirichletCharacter(std::move(group), std::move(exps));
}

std::uint64_t primitive_character_count(std::uint64_t q) {
    if (q == 0) throw DomainError("primitive_character_count: q must be positive");
    std::uint64_t count = 1;
    for (const auto& [p, e] : factorize(q)) {
        std::uint64_t pe1 = 1; // p^(e-1)
        for (std::uint32_t i = 1; i < e; ++i) pe1 *= p;
        count *= (e == 1) ? (p - 2) : pe1 * (p - 1) - euler_phi(pe1);
    }
    return count;
}

bool is_primitive_exponents(const CharacterGroup& group,
                            const std::vector<std::uint64_t>& exps) {
    const std::uint64_t q = group.modulus();
    if (q == 1) return true;
    std::size_t ci = 0;
    for (const auto& [p, e] : factorize(q)) {
        if (p == 2) {
            if (e == 1) return false;
            if (e == 2) {
                if (exps[ci] == 0) return false;
                ci += 1;
            } else {
                if (exps[ci + 1] % 2 == 0) return false;
                ci += 2;
            }
        } else {
            if (e == 1) {
                if (exps[ci] == 0) return false;
            } else {
                if (exps[ci] % p == 0) return false;
            }
            ci += 1;
        }
    }
    return true;
}

// ------------------------------------------------------------------
// Gauss sums and orthogonality
// ------------------------------------------------------------------
cplx gauss_sum(const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus();
    KahanComplexSum acc;
    for (std::uint64_t a = 1; a <= q; ++a) {
        auto ph = chi.phase(static_cast<std::int64_t>(a));
        if (!ph) continue;
        const auto [num, den] = *ph;
        // chi(a) e(a/q) = e(num/den + a/q), combined as one exact rational.
        const std::uint64_t D = den * q;
        const std::uint64_t Nn = (num * q + a * den) % D;
        acc.add(unit_phase(Nn, D));
    }
    return acc.value();
}

double orthogonality_defect(std::uint64_t q) {
    if (q == 0) throw DomainError("orthogonality_defect: q must be positive");
    if (q > 1000) {
        throw ResourceError("orthogonality_defect: exhaustive check capped at q <= 1000");
    }
    auto group = character_group(q);
    const std::uint64_t phi = group->phi();

    std::vector<DirichletCharacter> chars;
    chars.reserve(phi);
    for (std::uint64_t i = 0; i < phi; ++i) {
        chars.push_back(character_by_index(group, i));
    }

    double defect = 0.0;

    // Sum over characters at fixed n vs phi(q) [n = 1 mod q].
    for (std::uint64_t n = 1; n <= q; ++n) {
        KahanComplexSum sum;
        for (const auto& chi : chars) sum.add(chi.evaluate(static_cast<std::int64_t>(n)));
        const double expected = (n % q == 1 % q) ? static_cast<double>(phi) : 0.0;
        defect = std::max(defect, std::abs(sum.value() - expected));
    }

    // Pairwise inner products: sum_a conj(chi1)(a) chi2(a) depends only on
    // the quotient character chi2 * conj(chi1), so each quotient is checked
    // once instead of each of the phi^2 pairs.
    for (std::uint64_t i = 0; i < phi; ++i) {
        const auto& xi = chars[i];
        KahanComplexSum sum;
        for (std::uint64_t a = 1; a <= q; ++a) {
            sum.add(xi.evaluate(static_cast<std::int64_t>(a)));
        }
        const double expected = xi.is_principal() ? static_cast<double>(phi) : 0.0;
        defect = std::max(defect, std::abs(sum.value() - expected));
    }

    return defect;
}

} // namespace vpl
