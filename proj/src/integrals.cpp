#include "zetares/integrals.hpp"

#include <algorithm>
#include <cmath>

#include "zetares/jobs.hpp"
#include "zetares/mathutil.hpp"
#include "zetares/primes.hpp"
#include "zetares/quadrature.hpp"

namespace zr {

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Zeta: return "zeta";
        case Flavor::LogZeta: return "logzeta";
        case Flavor::S: return "S";
        case Flavor::S1: return "S1";
    }
    return "?";
}

namespace {

double phi(double x) { return std::exp(-0.5 * x * x); }

// window half-width for the convolution integral
double conv_halfwidth(Flavor flavor, double sigma, const Kernel& k) {
    if (k.kind() == Kernel::Kind::Fejer) {
        if (flavor == Flavor::Zeta) return 6000.0;
        return 2600.0;
    }
    return k.envelope_cutoff(1e-16);
}

} // namespace

cplx ConvolutionIdentities::lhs_integrand(Flavor flavor, double sigma, double v) const {
    switch (flavor) {
        case Flavor::Zeta:
            return eng_.zeta(sigma, v);
        case Flavor::LogZeta:
            if (std::abs(sigma - 0.5) < 1e-14) {
                double z = eng_.hardy_z(v);
                return {std::log(std::abs(z)), consts::pi * eng_.S_fast(v)};
            }
            return eng_.log_zeta(sigma, v);
        case Flavor::S:
            return {eng_.S_fast(v), 0.0};
        case Flavor::S1: {
            // S1 - h at height v equals (1/pi) int_{1/2}^2 log|zeta(x+iv)| dx
            QuadOptions opt;
            opt.abs_tol = 1e-10;
            opt.init_width = 0.25;
            auto out = integrate_real(
                [&](double x) { return std::log(std::abs(eng_.zeta(x, v))); }, 0.5, 2.0, opt);
            return {out.value.real() / consts::pi, 0.0};
        }
    }
    return {};
}

cplx ConvolutionIdentities::convolution_lhs(Flavor flavor, double sigma, double t,
                                            const Kernel& k, QuadBudget* budget) const {
    if (!(sigma >= 0.5 - 1e-14 && sigma < 1.0))
        fail(Status::InvalidArgument, "convolution_lhs: need 1/2 <= sigma < 1");
    if ((flavor == Flavor::S || flavor == Flavor::S1) && std::abs(sigma - 0.5) > 1e-14)
        fail(Status::InvalidArgument, "convolution_lhs: S/S1 flavors are defined at sigma = 1/2");

    const double U = conv_halfwidth(flavor, sigma, k);
    const double zeta_freq = 0.5 * std::log(std::max((std::abs(t) + U) / consts::two_pi, 3.0));
    const double omega = k.osc_frequency() + zeta_freq + 1.0;

    QuadOptions opt;
    opt.abs_tol = (flavor == Flavor::Zeta) ? 1e-9 : 1e-8;
    opt.init_width = std::min(2.5, 16.0 / omega);
    opt.max_evals = 8'000'000;

    std::vector<double> breaks;
    if ((flavor == Flavor::S || flavor == Flavor::S1 || flavor == Flavor::LogZeta) &&
        std::abs(sigma - 0.5) < 1e-14) {
        eng_.ensure_zeros_to(std::abs(t) + U + 2.0);
        for (double g : eng_.zeros_up_to(std::abs(t) + U + 1.0)) {
            if (g - t > -U && g - t < U) breaks.push_back(g - t);
            if (-g - t > -U && -g - t < U) breaks.push_back(-g - t);
        }
    }
    if (-t > -U && -t < U) breaks.push_back(-t); // height-zero point

    auto f = [&](double u) { return lhs_integrand(flavor, sigma, t + u) * k.value(cplx(u, 0.0)); };
    auto out = integrate(f, -U, U, opt, breaks);

    cplx tail_corr{};
    if (flavor == Flavor::Zeta) {
        // zeta = 1 + zero-mean fluctuation; put back the exact kernel tail
        // mass against the constant 1 and drop only the fluctuation part
        tail_corr = k.tail_mass(U) + (k.even() ? k.tail_mass(U) : -k.tail_mass(U));
    }
    if (budget) {
        budget->evals += out.evals;
        budget->err_estimate += out.err_estimate;
        budget->halfwidth = U;
        budget->tail_correction = std::abs(tail_corr);
        budget->tail_bound = 2.0 * std::abs(k.tail_mass(U)); // scale of the dropped range
    }
    return out.value + tail_corr;
}

cplx ConvolutionIdentities::dirichlet_rhs(Flavor flavor, double sigma, double t, const Kernel& k,
                                          double* o_n2_bound) const {
    if (o_n2_bound) *o_n2_bound = 0.0;
    const double tol = 1e-13;

    auto term_phase = [&](double log_n) { return cis_prod(-t, static_cast<long double>(log_n)); };

    if (flavor == Flavor::Zeta) {
        KahanSumC acc;
        double xi_max;
        if (k.support_end() > 0.0) {
            xi_max = 2.0 * k.param(); // Fejer: transform support ends here
        } else {
            // Gaussian families: sum-weighted cutoff; the term density e^xi
            // and the n^{-sigma} amplitude shift the Gaussian center to
            // (1-sigma) s^2, the sqrt(2 log 1/tol) margin covers the rest
            const double s = k.param();
            xi_max = (1.0 - sigma) * s * s + s * std::sqrt(2.0 * std::log(1.0 / tol));
        }
        const double n_max = std::exp(xi_max);
        if (n_max > 4.0e7) fail(Status::InvalidArgument, "dirichlet_rhs: cutoff too large");
        for (long n = 1; static_cast<double>(n) < n_max; ++n) {
            double ln = std::log(static_cast<double>(n));
            cplx kh = k.fourier(ln);
            if (kh == cplx{}) continue;
            acc.add(kh * std::exp(-sigma * ln) * term_phase(ln));
        }
        return acc.value();
    }

    // prime-power flavors; Gaussian transforms decay slowly in log n, so the
    // sum is cut at 4e7 with the remaining mass below ~2e-8 for the desk
    // scales used here (the identity defects under test are far larger)
    double cutoff;
    if (k.support_end() > 0.0) {
        cutoff = k.support_end();
    } else {
        const double s = k.param();
        cutoff = std::exp(0.5 * s * s + s * std::sqrt(2.0 * std::log(1.0 / tol)));
        cutoff = std::min(cutoff, 4.0e7);
    }
    if (cutoff > 5.0e7)
        fail(Status::InvalidArgument, "dirichlet_rhs: prime-power cutoff too large");

    KahanSumC acc;
    double n2_bound = 0.0;
    auto powers = prime_powers_up_to(cutoff);
    for (const auto& pp : *powers) {
        if (static_cast<double>(pp.value) > cutoff) break;
        double ln = std::log(static_cast<double>(pp.value));
        cplx kh = k.fourier(ln);
        if (kh == cplx{}) continue;
        double lp = std::log(static_cast<double>(pp.p));
        switch (flavor) {
            case Flavor::LogZeta:
                // Lambda(n)/log n = 1/k
                acc.add(kh / static_cast<double>(pp.k) * std::exp(-sigma * ln) * term_phase(ln));
                break;
            case Flavor::S:
            case Flavor::S1: {
                double w = (flavor == Flavor::S) ? lp / ln : lp / (ln * ln);
                acc.add(kh * w * std::exp(-0.5 * ln) * term_phase(ln));
                if (flavor == Flavor::S1)
                    n2_bound += std::abs(kh) * w * std::exp(-2.0 * ln);
                break;
            }
            default: break;
        }
    }
    if (flavor == Flavor::LogZeta) return acc.value();
    cplx v = acc.value();
    if (flavor == Flavor::S) return {v.imag() / consts::pi, 0.0};
    if (o_n2_bound) *o_n2_bound = n2_bound / consts::pi;
    return {v.real() / consts::pi, 0.0};
}

cplx ConvolutionIdentities::residue_term(double sigma, double t, const Kernel& k) const {
    return -consts::two_pi * k.value(cplx(-t, -(1.0 - sigma)));
}

std::array<std::pair<std::string, cplx>, 4> ConvolutionIdentities::residue_candidates(
    double sigma, double t, const Kernel& k) const {
    const double d = 1.0 - sigma;
    return {{{"+2piK(-t-i(1-sigma))", consts::two_pi * k.value(cplx(-t, -d))},
             {"-2piK(-t-i(1-sigma))", -consts::two_pi * k.value(cplx(-t, -d))},
             {"+2piK(+t-i(1-sigma))", consts::two_pi * k.value(cplx(t, -d))},
             {"-2piK(+t-i(1-sigma))", -consts::two_pi * k.value(cplx(t, -d))}}};
}

cplx ConvolutionIdentities::zero_sum_term(
    double sigma, double t, const Kernel& k,
    const std::vector<std::pair<double, double>>& offline_zeros) const {
    KahanSumC acc;
    QuadOptions opt;
    opt.abs_tol = 1e-12;
    opt.init_width = 0.1;
    for (const auto& [beta, gamma] : offline_zeros) {
        if (beta <= sigma) continue;
        auto out = integrate([&](double a) { return k.value(cplx(gamma - t, -a)); }, 0.0,
                             beta - sigma, opt);
        acc.add(consts::two_pi * out.value);
    }
    return acc.value();
}

IdentityReport ConvolutionIdentities::check_zeta_identity(double sigma, double t,
                                                          const Kernel& k) const {
    IdentityReport rep;
    rep.check_id = "conv-zeta";
    rep.sigma = sigma;
    rep.t = t;
    rep.kernel = k.name() + "(" + std::to_string(k.param()) + ")";
    rep.lhs = convolution_lhs(Flavor::Zeta, sigma, t, k, &rep.budget);
    rep.rhs = dirichlet_rhs(Flavor::Zeta, sigma, t, k) + residue_term(sigma, t, k);
    rep.residual = std::abs(rep.lhs - rep.rhs);
    return rep;
}

IdentityReport ConvolutionIdentities::check_s_identity(double t, const Kernel& k) const {
    IdentityReport rep;
    rep.check_id = "conv-S";
    rep.sigma = 0.5;
    rep.t = t;
    rep.kernel = k.name() + "(" + std::to_string(k.param()) + ")";
    rep.lhs = convolution_lhs(Flavor::S, 0.5, t, k, &rep.budget);
    rep.rhs = dirichlet_rhs(Flavor::S, 0.5, t, k);
    rep.residual = std::abs(rep.lhs - rep.rhs);
    return rep;
}

IdentityReport ConvolutionIdentities::check_s1_identity(double t, const Kernel& k) const {
    IdentityReport rep;
    rep.check_id = "conv-S1";
    rep.sigma = 0.5;
    rep.t = t;
    rep.kernel = k.name() + "(" + std::to_string(k.param()) + ")";
    rep.lhs = convolution_lhs(Flavor::S1, 0.5, t, k, &rep.budget);
    double n2 = 0.0;
    rep.rhs = dirichlet_rhs(Flavor::S1, 0.5, t, k, &n2);
    rep.budget.aux_bound = n2;
    rep.residual = std::abs(rep.lhs - rep.rhs);
    return rep;
}

// ---------------------------------------------------------------------------
// resonated moments
// ---------------------------------------------------------------------------

namespace {

MomentResult moment_grid(const std::vector<Representative>& reps, double T,
                         const std::function<cplx(double)>& g, double g_freq) {
    MomentResult res;
    double omega_r = 0.0;
    for (const auto& r : reps) omega_r = std::max(omega_r, r.log_m);
    omega_r *= 2.0;
    const double h = consts::two_pi / (omega_r + g_freq + 1.0);
    const double tmax = 8.0 * T;
    const long long n_side = static_cast<long long>(std::ceil(tmax / h));
    const long long n_total = 2 * n_side + 1;
    res.step = h;
    res.nodes = static_cast<long>(n_total);

    const std::size_t nchunks = 256;
    std::vector<cplx> partial(nchunks);
    const long long chunk_len = (n_total + nchunks - 1) / nchunks;

    parallel_chunks(nchunks, [&](std::size_t c) {
        const long long i0 = -n_side + static_cast<long long>(c) * chunk_len;
        const long long i1 = std::min<long long>(i0 + chunk_len, n_side + 1);
        if (i0 >= i1) return;
        const double t0 = static_cast<double>(i0) * h;
        // per-representative rotating phases
        const std::size_t m = reps.size();
        std::vector<cplx> ph(m), st(m);
        for (std::size_t j = 0; j < m; ++j) {
            ph[j] = cis_prod(-t0, static_cast<long double>(reps[j].log_m));
            st[j] = cis_prod(-h, static_cast<long double>(reps[j].log_m));
        }
        KahanSumC acc;
        long long since_anchor = 0;
        for (long long i = i0; i < i1; ++i) {
            const double t = static_cast<double>(i) * h;
            cplx R{};
            for (std::size_t j = 0; j < m; ++j) R += reps[j].r * ph[j];
            const double r2 = std::norm(R);
            acc.add(g(t) * (r2 * phi(t / T)));
            for (std::size_t j = 0; j < m; ++j) ph[j] *= st[j];
            if (++since_anchor == 8192 && i + 1 < i1) {
                since_anchor = 0;
                const double tn = static_cast<double>(i + 1) * h;
                for (std::size_t j = 0; j < m; ++j)
                    ph[j] = cis_prod(-tn, static_cast<long double>(reps[j].log_m));
            }
        }
        partial[c] = acc.value();
    });

    KahanSumC total;
    for (const cplx& p : partial) total.add(p);
    res.value = total.value() * h;
    return res;
}

} // namespace

MomentResult moment_quadrature(const ResonatorSet& R, double T,
                               const std::function<cplx(double)>& g, double g_freq) {
    if (!(T > 0.0)) fail(Status::InvalidArgument, "moment_quadrature: T must be positive");
    return moment_grid(R.reps, T, g, g_freq);
}

MomentResult phi_average(double T, const std::function<cplx(double)>& g, double g_freq) {
    std::vector<Representative> unit(1);
    unit[0].r = 1.0;
    unit[0].log_m = 0.0;
    MomentResult num = moment_grid(unit, T, g, g_freq);
    MomentResult den = moment_grid(unit, T, [](double) { return cplx(1.0, 0.0); }, g_freq);
    num.value /= den.value;
    return num;
}

double pair_sum(const ResonatorSet& R, double T, const std::vector<Shift>& shifts) {
    const double cut = 9.5 / T; // |log(km/n)| beyond which Phi(T log) < 1e-19
    const auto& reps = R.reps;
    std::vector<double> logs(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) logs[i] = reps[i].log_m;

    KahanSum acc;
    for (const auto& sh : shifts) {
        if (sh.weight == 0.0) continue;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            const double target = sh.log_k + logs[i];
            auto lo = std::lower_bound(logs.begin(), logs.end(), target - cut);
            auto hi = std::upper_bound(logs.begin(), logs.end(), target + cut);
            for (auto it = lo; it != hi; ++it) {
                std::size_t j = static_cast<std::size_t>(it - logs.begin());
                acc.add(sh.weight * reps[i].r * reps[j].r * phi(T * (target - logs[j])));
            }
        }
    }
    return consts::sqrt_two_pi * T * acc.value();
}

double pair_sum_offdiag(const ResonatorSet& R, double T) {
    double full = pair_sum(R, T);
    KahanSum diag;
    for (const auto& r : R.reps) diag.add(r.r * r.r);
    return full - consts::sqrt_two_pi * T * diag.value();
}

BaseInequality base_inequality(const ResonatorSet& R, std::uint64_t k) {
    const auto& blocks = R.blocks;
    auto kit = std::lower_bound(blocks.all.begin(), blocks.all.end(), k);
    if (kit == blocks.all.end() || *kit != k)
        fail(Status::InvalidArgument, "base_inequality: k must be a prime of the window");
    const std::uint32_t kidx = static_cast<std::uint32_t>(kit - blocks.all.begin());

    // factor-set membership over the support
    std::map<std::vector<std::uint32_t>, const SupportElement*> by_factors;
    for (const auto& e : R.support.elems) by_factors[e.prime_idx] = &e;

    BaseInequality out;
    KahanSum lhs;
    for (const auto& e : R.support.elems) {
        if (std::binary_search(e.prime_idx.begin(), e.prime_idx.end(), kidx)) continue;
        std::vector<std::uint32_t> mk = e.prime_idx;
        mk.insert(std::upper_bound(mk.begin(), mk.end(), kidx), kidx);
        auto it = by_factors.find(mk);
        if (it != by_factors.end()) lhs.add(e.f * it->second->f);
    }
    out.lhs = lhs.value();

    const double T = R.params.T > 0.0 ? R.params.T : static_cast<double>(R.params.N);
    const double delta = 3.0 / T;
    const double lk = std::log(static_cast<double>(k));
    std::vector<double> logs(R.reps.size());
    for (std::size_t i = 0; i < R.reps.size(); ++i) logs[i] = R.reps[i].log_m;
    KahanSum rhs;
    for (std::size_t i = 0; i < R.reps.size(); ++i) {
        double lo = lk + logs[i] - std::log1p(delta);
        double hi = lk + logs[i] - std::log1p(-delta);
        auto a = std::lower_bound(logs.begin(), logs.end(), lo - 1e-14);
        auto b = std::upper_bound(logs.begin(), logs.end(), hi + 1e-14);
        for (auto it = a; it != b; ++it)
            rhs.add(R.reps[i].r * R.reps[static_cast<std::size_t>(it - logs.begin())].r);
    }
    out.rhs = rhs.value();
    return out;
}

Ll2Result ll2_quantity(const SupportSet& support, const ResonatorParams& params) {
    Ll2Result out;
    KahanSum num;
    for (const auto& e : support.elems) num.add(e.f * e.f * e.inv_sum);
    double norm = 1.0;
    for (double f : support.fp) norm *= 1.0 + f * f;
    out.value = num.value() / norm;
    const double lN = std::log(static_cast<double>(params.N));
    const double l2 = std::log(lN), l3 = std::log(l2);
    out.reference = params.gamma * std::sqrt(lN * l3 / l2);
    return out;
}

MomentLowerBound moment_log_lower_bound(const ResonatorSet& R, double T,
                                        const std::map<std::uint64_t, double>& a_p) {
    MomentLowerBound out;
    out.constant = consts::sqrt_two_pi * phi(3.0);
    double amin = std::numeric_limits<double>::infinity();
    std::vector<Shift> shifts;
    for (std::uint64_t p : R.blocks.all) {
        auto it = a_p.find(p);
        double a = (it == a_p.end()) ? 0.0 : it->second;
        if (a < 0.0) fail(Status::InvalidArgument, "moment_log_lower_bound: a_p must be >= 0");
        amin = std::min(amin, a);
        shifts.push_back({std::log(static_cast<double>(p)), a / std::sqrt(static_cast<double>(p))});
    }
    KahanSum s;
    for (const auto& e : R.support.elems) s.add(e.f * e.f * e.inv_sum);
    out.raw_bound = T * amin * s.value();
    out.integral = pair_sum(R, T, shifts);
    return out;
}

} // namespace zr
