#pragma once
// Shared error model and numeric aliases for the zetares core.

#include <complex>
#include <stdexcept>
#include <string>

namespace zr {

using cplx = std::complex<double>;

// Status codes, shared verbatim with the C API in zetares.h.
enum class Status : int {
    Ok = 0,
    InvalidArgument = 1,   // bad parameter / precondition violation
    ConfigError = 2,       // malformed run configuration
    Domain = 3,            // pole, ordinate too close, T <= e^e, ...
    EmptyRange = 4,        // prime window holds no primes and no override given
    DegenerateWeight = 5,  // weight formula denominator <= 0
    BudgetExceeded = 6,    // enumeration or refinement budget blown
    QuadratureFailure = 7, // tolerance unreachable within evaluation budget
    HeightCap = 8,         // |t| beyond the configured evaluation cap
    IoError = 9,
};

class Error : public std::runtime_error {
public:
    Error(Status s, const std::string& msg) : std::runtime_error(msg), status_(s) {}
    Status status() const noexcept { return status_; }

private:
    Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& msg) { throw Error(s, msg); }

namespace consts {
inline constexpr double pi = 3.14159265358979323846264338328;
inline constexpr double two_pi = 6.28318530717958647692528676656;
inline constexpr double sqrt_two_pi = 2.50662827463100050241576528481;
inline constexpr long double pi_l = 3.14159265358979323846264338328L;
inline constexpr long double two_pi_l = 6.28318530717958647692528676656L;
// e^e, below which log(log(log(T))) is undefined or nonpositive
inline constexpr double e_to_e = 15.1542622414792641897604302726;
} // namespace consts

} // namespace zr
