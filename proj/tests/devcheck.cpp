// scratch validation harness (replaced by real test suites)
#include <cstdio>
#include <cmath>
#include <chrono>
#include "zetares/zeta.hpp"
#include "zetares/mathutil.hpp"
#include "zetares/resonator.hpp"
#include "zetares/integrals.hpp"
#include "zetares/hunt.hpp"
using namespace zr;
using clk = std::chrono::steady_clock;
static double secs(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}
int main(int argc, char**) {
    ZetaEngine eng;
    ConvolutionIdentities conv(eng);

    // --- S stack ---
    auto t0 = clk::now();
    printf("N(100) = %ld (ref 29)\n", eng.count_zeros(100));
    printf("N(14)=%ld N(15)=%ld\n", eng.count_zeros(14), eng.count_zeros(15));
    printf("S_tracked(50) = %.12f (ref 0.577085577939)\n", eng.S_tracked(50.0));
    printf("S_fast(50)    = %.12f\n", eng.S_fast(50.0));
    printf("S_tracked(30) = %.12f (ref -0.564877444361)\n", eng.S_tracked(30.0));
    printf("S1(50)        = %.12f (ref -1.198763566019)\n", eng.S1(50.0));
    auto t1 = clk::now();
    printf("S1_logmod(50) = %.12f   [%.1fs]\n", eng.S1_via_log_modulus(50.0), secs(t0, t1));
    auto z1 = eng.nearest_zero(14.0);
    printf("first zero = %.12f (ref 14.134725141735)\n", *z1);
    // S jump at first zero
    double g1 = 14.134725141734694;
    double jump = eng.S_tracked(g1 + 1e-4) - eng.S_tracked(g1 - 1e-4);
    printf("S jump at gamma1 = %.6f (ref 1)\n", jump);
    double rvm_worst = 0;
    for (double t = 20.25; t <= 100; t += 0.5) {
        double s = eng.S_tracked(t);
        double n = (double)eng.count_zeros(t);
        double r = s - (n - t / consts::two_pi * std::log(t / (consts::two_pi * std::exp(1.0))) - 0.875);
        rvm_worst = std::max(rvm_worst, std::abs(r));
    }
    printf("RvM residual max on [20,100] = %.6f (<= 0.05?)\n", rvm_worst);
    printf("h(40) = %.9f h(77.5) = %.9f\n", eng.h_diag(40.0), eng.h_diag(77.5));

    if (argc > 1) return 0; // quick mode

    // --- A7 calibration: S identity per kernel at t in {30,60,90} ---
    double s_scale = std::log(std::log(1e5));
    for (auto k : {Kernel::odd_gauss(s_scale), Kernel::even_gauss(s_scale), Kernel::fejer(2.0)}) {
        for (double t : {30.0, 60.0, 90.0}) {
            auto ta = clk::now();
            auto rep = conv.check_s_identity(t, k);
            auto tb = clk::now();
            double v = k.majorant(t, 0.5);
            printf("A7 %-12s t=%2.0f: resid=%.4e V=%.4e log10(resid/V)=%+.3f [%.1fs]\n",
                   rep.kernel.c_str(), t, rep.residual, v,
                   std::log10(rep.residual) - std::log10(v), secs(ta, tb));
        }
    }

    // --- S1 identity (Tsang4-type), EvenGauss only ---
    {
        auto rep = conv.check_s1_identity(60.0, Kernel::even_gauss(s_scale));
        printf("S1-identity t=60: resid=%.4e n2bound=%.4e\n", rep.residual, rep.budget.aux_bound);
    }

    // --- A6 calibration: resonance lift at T=1e5 ---
    auto ta = clk::now();
    ResonatorParams rp = ResonatorParams::from_height(1e5, 0.4);
    rp.block_override = {{20.0, 60.0}};
    rp.element_cap = 3;
    auto R6 = build_resonator(rp);
    double T6 = 1e5;
    auto num = moment_quadrature(R6, T6, [&](double t) { return cplx(std::abs(eng.hardy_z(t)), 0.0); }, 8.0);
    auto den = moment_quadrature(R6, T6, [](double) { return cplx(1.0, 0.0); }, 8.0);
    auto plain = phi_average(T6, [&](double t) { return cplx(std::abs(eng.hardy_z(t)), 0.0); }, 8.0);
    auto tb = clk::now();
    printf("A6: |M|=%zu weighted avg=%.6f plain avg=%.6f lift=%.4f [%.1fs, %ld+%ld nodes]\n",
           R6.support.elems.size(), num.value.real() / den.value.real(), plain.value.real(),
           num.value.real() / den.value.real() / plain.value.real(), secs(ta, tb), num.nodes,
           plain.nodes);
    return 0;
}
