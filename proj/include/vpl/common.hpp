// common.hpp
// Error taxonomy and compensated accumulators shared by every module.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vpl {

using cplx = std::complex<double>;

// The CLI maps these onto exit codes: DomainError -> 1, ResourceError -> 2,
// CheckError (a violated internal bound) -> 3.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -------------------------------------------------------------------------
// Kahan-compensated accumulators. Every bulk sum of reals runs through one
// of these in a fixed iteration order, so serial and parallel runs (which
// reduce per-item results in index order) produce identical bits.
// -------------------------------------------------------------------------
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

class KahanComplexSum {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_;
    KahanSum im_;
};

} // namespace vpl
