// largesieve.hpp
// Exponential-sum and character-sum large-sieve quantities: evaluation of
// S(alpha), Farey point sets, the variational analytic large sieve sum, the
// classic / maximal / variational character-sum forms, and the Gaussian
// lower-bound experiment.

#pragma once

#include <cstdint>
#include <vector>

#include "vpl/common.hpp"
#include "vpl/dirichlet.hpp"

namespace vpl {

// Total candidate-pair budget for the per-character DPs.
inline constexpr std::uint64_t kLargeSieveDpBudget = 400'000'000'000ULL;

// Coefficients a_{M+1}, ..., a_{M+N}; energy = sum |a_n|^2 cached once.
struct TrigPolynomial {
    std::int64_t M = 0;
    std::uint64_t N = 0;
    std::vector<cplx> coeffs;
    double energy = 0.0;
};

TrigPolynomial make_trig_polynomial(std::int64_t M, std::vector<cplx> coeffs);

// S(alpha) = sum a_n e(n alpha), with every angle reduced mod 1 before
// exponentiation.
cplx eval_S(const TrigPolynomial& poly, double alpha);

// Points in [0,1) with a claimed pairwise circle-metric separation,
// verified on construction (sorted-adjacent distances realize the minimum).
struct PointSet {
    std::vector<double> points;
    double delta = 0.0;
};

PointSet make_point_set(std::vector<double> points, double delta);

// All reduced fractions a/q with q <= Q, as points of T; delta = 1/Q^2.
PointSet farey_points(std::uint64_t Q);

// sum_i ||S(alpha_i)||_{V^r}^2 via the dense complex DP per point. With
// check_bound set, asserts the frozen regression bound
//   <= 1.05 C (N + 1/delta + 1) (ln N if r = 2) energy   for r >= 2.
double var_at_points(const TrigPolynomial& poly, const PointSet& pts, double r,
                     bool check_bound = true);

// sum_{q<=Q} (q/phi(q)) sum*_{chi} |T(chi)|^2 over primitive characters.
double classic_large_sieve_lhs(const TrigPolynomial& poly, std::uint64_t Q,
                               bool check_bound = true);

// sum_{q<=Q} (q/phi(q)) sum*_{chi} max_pi sum_I |T(chi, I)|^2, one sparse DP
// per primitive character over the nonzero coprime support.
double var_large_sieve_lhs(const TrigPolynomial& poly, std::uint64_t Q,
                           std::uint64_t budget = kLargeSieveDpBudget,
                           bool check_bound = true);

// Predicted candidate-pair cost of var_large_sieve_lhs.
std::uint64_t var_large_sieve_cost_estimate(const TrigPolynomial& poly,
                                            std::uint64_t Q);

// sum_{q<=Q} (q/phi(q)) sum*_{chi} max over single subintervals |T(chi,I)|^2.
double maximal_large_sieve_lhs(const TrigPolynomial& poly, std::uint64_t Q);

struct GaussianExperimentResult {
    std::uint64_t N = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;    // Monte Carlo mean of sup_pi sum_I |sum X_n|^2
    double stderr_ = 0.0; // standard error of the mean
    double ratio = 0.0;   // mean / (N ln ln N)
};

// i.i.d. standard normals from the counter RNG; identical seed gives
// bit-identical output regardless of thread count.
GaussianExperimentResult gaussian_lower_bound_experiment(std::uint64_t N,
                                                         std::uint64_t trials,
                                                         std::uint64_t seed);

// Character-weighted variant: the summands are chi(n) X_n, supported on the
// indices coprime to the modulus. The ratio is normalized by the support
// count C = #{n <= N : chi(n) != 0} instead of N; no bound is asserted.
GaussianExperimentResult gaussian_char_weighted_experiment(
    std::uint64_t N, std::uint64_t trials, std::uint64_t seed,
    const DirichletCharacter& chi);

// #{n <= N : gcd(n, q) = 1} by inclusion-exclusion over the primes of q.
std::uint64_t coprime_count(std::uint64_t q, std::uint64_t N);

} // namespace vpl
