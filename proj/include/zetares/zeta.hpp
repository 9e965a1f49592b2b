#pragma once
// Critical-strip analytics: zeta via Euler-Maclaurin and Riemann-Siegel,
// Hardy's Z and the phase theta, the zero-ordinate cache with counting,
// and the argument functions S, S1.

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "zetares/common.hpp"

namespace zr {

struct PrecisionPolicy {
    int working_digits = 15;
    double quadrature_abs_tol = 1e-9;
    double zero_isolation_tol = 1e-9;
    // evaluation caps; off the critical line only Euler-Maclaurin is used
    double max_height_em = 6.0e4;
    double max_height = 2.0e8;

    void validate() const;
};

struct CriticalSample {
    double t = 0.0;
    cplx zeta_half{};
    double Z = 0.0;
    long Ncount = 0;
    double S = 0.0;
    double S1 = 0.0;
};

// Riemann-Siegel phase theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.
double theta_phase(double t);

// Derivatives 0..nder (nder <= 12) of the Riemann-Siegel atom
// Psi(p) = cos(2pi(p^2 - p - 1/16))/cos(2pi p); exposed for validation.
void rs_psi_derivs(double p, double* d, int nder);

// Lambda(n): log p on prime powers, 0 elsewhere.
double von_mangoldt(std::uint64_t n);

class ZetaEngine {
public:
    explicit ZetaEngine(PrecisionPolicy policy = {});

    const PrecisionPolicy& policy() const { return policy_; }

    // zeta(sigma + i t) for sigma in [0.4, 3.5]. Throws Domain at the pole,
    // HeightCap beyond the configured limits.
    cplx zeta(double sigma, double t) const;

    // Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it); real for real t.
    double hardy_z(double t) const;

    // Number of zero ordinates in (0, t). Throws Domain if t is within the
    // isolation tolerance of an ordinate.
    long count_zeros(double t) const;

    // S(t) by continuous variation along 2 -> 2+it -> 1/2+it, extended to
    // t < 0 as an odd function; two-sided mean at ordinates.
    double S_tracked(double t) const;

    // S(t) from the verified ordinate count: N(t) - 1 - theta(t)/pi.
    // Identical to S_tracked up to numerical error; cheap inside quadrature.
    double S_fast(double t) const;

    // Im log zeta(sigma + it) tracked from the 2-line (sigma >= 1/2).
    double im_log_zeta(double sigma, double t) const;
    // log zeta with the tracked branch (sigma >= 1/2, t not an ordinate
    // when sigma == 1/2).
    cplx log_zeta(double sigma, double t) const;

    // S1(t) = int_0^t S, even extension.
    double S1(double t) const;
    // Independent route: (1/pi) int_{1/2}^inf log|zeta(sigma+it)| dsigma
    // minus the same integral at t = 0 (Dirichlet prime tail handled in
    // closed form). Used as a cross-check oracle.
    double S1_via_log_modulus(double t) const;

    // h(t) = S1(t) - (1/pi) int_{1/2}^2 log|zeta(sigma+it)| dsigma.
    double h_diag(double t) const;

    CriticalSample sample(double t) const;

    // --- zero cache ---
    void ensure_zeros_to(double t) const;
    std::vector<double> zeros_up_to(double t) const;
    std::optional<double> nearest_zero(double t) const;
    double scanned_height() const;
    void save_zero_cache(const std::string& path) const;
    void load_zero_cache(const std::string& path);

    // internals exposed for validation tests
    cplx zeta_euler_maclaurin(double sigma, double t) const;
    cplx zeta_em_economic(double sigma, double t) const;
    double hardy_z_riemann_siegel(double t) const;

private:
    double arg_zeta_from_two_line(double sigma, double t) const;
    void scan_segment(double lo, double hi, double step, std::vector<double>& out) const;
    void scan_segment_impl(double lo, double hi, double step, std::vector<double>& out,
                           bool rescan_gaps) const;

    PrecisionPolicy policy_;

    mutable std::shared_mutex zeros_mtx_;
    mutable std::vector<double> zeros_; // ascending ordinates
    mutable double scanned_to_ = 0.0;
};

} // namespace zr
