// theorems.hpp
// Assembles the mean-square, maximal, and variational deviation sums over
// arithmetic progressions, the character-sum identity and primitive-shift
// checks, and the variational character-sum quantity.

#pragma once

#include <cstdint>
#include <memory>

#include "vpl/dirichlet.hpp"
#include "vpl/sieve.hpp"
#include "vpl/variation.hpp"

namespace vpl {

// Default total DP budget in candidate-pair operations; the assemblers
// refuse (ResourceError) rather than start a run that cannot finish.
inline constexpr std::uint64_t kDefaultDpBudget = 2'000'000'000;

enum class WeightMode { theta, psi };
enum class TheoremTag { T1_1, T1_2, T1_3, T1_4, T1_5 };

const char* to_string(WeightMode mode);
const char* to_string(TheoremTag tag);

// Deviation sequence for one progression class: slope -1/phi(q) with jumps
// ln p at primes p = a (mod q) (or Lambda-weighted jumps at prime powers in
// psi mode). prefix(y) = theta(y; q, a) - y/phi(q).
struct DeviationSeries {
    std::uint64_t q = 1;
    std::uint64_t a = 1;
    PiecewiseLinearSeries<double> series;
};

DeviationSeries deviation_series(const PrimeStore& store, std::uint64_t q,
                                 std::uint64_t a, double x,
                                 WeightMode mode = WeightMode::theta);

// Character-twisted theta series: slope 0 with complex jumps chi(p) ln p.
// With principal_adjusted set and chi principal the slope becomes -1, so the
// prefix realizes theta(y, chi0) - y.
struct CharThetaSeries {
    DirichletCharacter chi;
    bool principal_adjusted = false;
    PiecewiseLinearSeries<cplx> series;
};

CharThetaSeries char_theta_series(const PrimeStore& store,
                                  const DirichletCharacter& chi, double x,
                                  bool principal_adjusted);

struct BdhReport {
    double x = 0.0;
    double Q = 0.0;
    TheoremTag theorem = TheoremTag::T1_1;
    WeightMode weight_mode = WeightMode::theta;
    double lhs = 0.0;
    double bound_form = 0.0; // x Q log^k(x) with k in {1,1,3,3,2}
    double ratio = 0.0;
};

// Mean-square deviation at the endpoint:
//   sum_{q<=Q} sum_{(a,q)=1} (theta(x;q,a) - floor(x)/phi(q))^2.
BdhReport bdh_sum(const PrimeStore& store, double x, double Q,
                  WeightMode mode = WeightMode::theta);

// Maximum over y <= x taken outside the class sum (per modulus).
BdhReport montgomery_sum(const PrimeStore& store, double x, double Q,
                         WeightMode mode = WeightMode::theta);

// Maximum over y <= x taken inside the class sum (per class).
BdhReport uchiyama_sum(const PrimeStore& store, double x, double Q,
                       WeightMode mode = WeightMode::theta);

// Full 2-variation per class (theta weights).
BdhReport var_bdh_sum(const PrimeStore& store, double x, double Q,
                      std::uint64_t budget = kDefaultDpBudget);

// One partition per modulus, shared by all classes of that modulus.
BdhReport var_bdh_shared_partition(const PrimeStore& store, double x, double Q,
                                   std::uint64_t budget = kDefaultDpBudget);

// Predicted candidate-pair costs, reported by the CLI before running.
std::uint64_t var_bdh_cost_estimate(const PrimeStore& store, double x, double Q);
std::uint64_t var_bdh_shared_cost_estimate(const PrimeStore& store, double x,
                                           double Q);

// theta(I, chi) = sum over primes p in I of chi(p) ln p.
cplx theta_char(const PrimeStore& store, const DirichletCharacter& chi,
                IntInterval I);

// theta'(I, chi): theta(I, chi) for nonprincipal chi, theta(I, chi0) - |I|
// for the principal character.
cplx theta_prime(const PrimeStore& store, const DirichletCharacter& chi,
                 IntInterval I);

// | theta(I;q,a) - |I|/phi(q) - (1/phi(q)) sum_chi conj(chi)(a) theta'(I,chi) |
double identity_check(const PrimeStore& store,
                      const std::shared_ptr<const CharacterGroup>& group,
                      std::uint64_t a, IntInterval I);

// |theta'(I, chi1) - theta'(I, chi)| for the inducing primitive chi1; throws
// CheckError if it exceeds ln(q) + 1e-9, else returns the value.
double primitive_shift_check(const PrimeStore& store,
                             const DirichletCharacter& chi, IntInterval I);

// sqrt of max over partitions of sum_I |theta(I, chi)|^2, chi nonprincipal.
double var_sw_quantity(const PrimeStore& store, const DirichletCharacter& chi,
                       double x);

} // namespace vpl
