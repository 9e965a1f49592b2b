#pragma once
// Small numeric utilities: compensated summation, complex log-gamma,
// sine integral, unit phases with extended-precision argument reduction,
// Bernoulli numbers, FNV hashing and decimal big-integer strings.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "zetares/common.hpp"

namespace zr {

// Kahan–Neumaier compensated accumulator.
class KahanSum {
public:
    void add(double x) {
        double t = s_ + x;
        if (std::abs(s_) >= std::abs(x))
            c_ += (s_ - t) + x;
        else
            c_ += (x - t) + s_;
        s_ = t;
    }
    double value() const { return s_ + c_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

class KahanSumC {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

// e^{i*phi} with phi = a*b reduced mod 2pi in long double. Keeps the phase
// error near machine epsilon even when a*b is ~1e9.
inline cplx cis_prod(double a, long double b) {
    long double phi = std::fmod(static_cast<long double>(a) * b, consts::two_pi_l);
    return {static_cast<double>(std::cos(phi)), static_cast<double>(std::sin(phi))};
}

// Principal log-gamma via the Lanczos approximation (g=7, n=9), valid for
// Re z > 0. Accurate to ~1e-13 absolute in log-space.
std::complex<double> log_gamma(std::complex<double> z);

// Sine integral Si(x) = int_0^x sin(u)/u du. Power series for small x,
// asymptotic expansion beyond.
double sine_integral(double x);

// Bernoulli numbers B_2, B_4, ..., B_26 (index 0 -> B_2).
const long double* bernoulli2k();
int bernoulli2k_count();

// FNV-1a 64-bit over a byte string; returned as fixed-width hex.
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::string fnv1a64_hex(const std::string& payload);

// Decimal string of a product of uint64 factors (values may exceed 2^64).
std::string decimal_product(const std::vector<std::uint64_t>& factors);

} // namespace zr
