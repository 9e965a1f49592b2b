#pragma once
// Adaptive panel quadrature for complex-valued integrands. Error control is
// nested Gauss-Legendre (16 vs 32 nodes per panel); panels split at caller
// breakpoints and refine greedily until the absolute tolerance or the
// evaluation budget is reached.

#include <functional>
#include <vector>

#include "zetares/common.hpp"

namespace zr {

struct GaussLegendre {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Cached rule of the given order (Newton on the Legendre recurrence).
const GaussLegendre& gauss_legendre(int n);

struct QuadOptions {
    double abs_tol = 1e-9;
    long max_evals = 4'000'000;
    // initial panel width cap; pick ~ 2*pi/omega for integrands with
    // oscillation frequency omega
    double init_width = 1.0;
    bool throw_on_budget = true;
};

struct QuadOutcome {
    cplx value{};
    double err_estimate = 0.0;
    long evals = 0;
    bool converged = true;
};

using CFunc = std::function<cplx(double)>;
using RFunc = std::function<double(double)>;

// Integrate f over [a, b]; `breakpoints` inside (a,b) force panel edges
// (integrable endpoint singularities, kinks, zero ordinates).
QuadOutcome integrate(const CFunc& f, double a, double b, const QuadOptions& opt,
                      const std::vector<double>& breakpoints = {});

QuadOutcome integrate_real(const RFunc& f, double a, double b, const QuadOptions& opt,
                           const std::vector<double>& breakpoints = {});

} // namespace zr
