#pragma once
// The three analytic smoothing kernels: the Fejer-type kernel
// sin^2(w u)/(w u^2) and the odd/even Gaussian kernels built from
// Phi(t) = e^{-t^2/2}. All are entire, real on the real axis, and have
// closed-form Fourier transforms under K^(xi) = int K(x) e^{-i x xi} dx.

#include <string>

#include "zetares/common.hpp"

namespace zr {

class Kernel {
public:
    enum class Kind { Fejer, OddGauss, EvenGauss };

    static Kernel fejer(double width);      // width w = eps * log T
    static Kernel odd_gauss(double scale);  // scale s = log log T
    static Kernel even_gauss(double scale);

    Kind kind() const { return kind_; }
    double param() const { return param_; }
    bool even() const { return kind_ != Kind::OddGauss; }

    cplx value(cplx z) const;
    cplx fourier(double xi) const;

    // V(x) >= max_{sigma-2 <= y <= 0} |K(x + iy)|, monotone in |x| past the
    // plateau; used for truncation control and identity error budgets.
    double majorant(double x, double sigma) const;

    // int_U^infty K(u) du, closed form (U > 0).
    double tail_mass(double u) const;

    // |x| beyond which the real-axis envelope of K falls below tol.
    double envelope_cutoff(double tol) const;

    // frequency content of K on the real axis (panel-sizing hint)
    double osc_frequency() const;

    // smallest n with fourier(log n) == 0 for all larger n, or 0 if the
    // transform has unbounded support
    double support_end() const;

    std::string name() const;
    std::string to_json() const;
    static Kernel from_json(const std::string& text);

private:
    Kernel(Kind k, double p);
    Kind kind_;
    double param_;
};

} // namespace zr
