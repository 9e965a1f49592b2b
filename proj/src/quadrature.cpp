#include "zetares/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

#include "zetares/mathutil.hpp"

namespace zr {

namespace {

GaussLegendre compute_rule(int n) {
    GaussLegendre r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n
        long double x = std::cos(consts::pi_l * (i + 0.75L) / (n + 0.5L));
        long double pp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0L);
            long double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        long double w = 2.0L / ((1.0L - x * x) * pp * pp);
        r.nodes[i] = static_cast<double>(-x);
        r.nodes[n - 1 - i] = static_cast<double>(x);
        r.weights[i] = static_cast<double>(w);
        r.weights[n - 1 - i] = static_cast<double>(w);
    }
    return r;
}

} // namespace

const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

namespace {

struct Panel {
    double a, b;
    cplx coarse, fine;
    double err;
};

Panel make_panel(const CFunc& f, double a, double b, long& evals) {
    static const GaussLegendre& g16 = gauss_legendre(16);
    static const GaussLegendre& g32 = gauss_legendre(32);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    KahanSumC s16, s32;
    for (int i = 0; i < 16; ++i) s16.add(g16.weights[i] * f(c + h * g16.nodes[i]));
    for (int i = 0; i < 32; ++i) s32.add(g32.weights[i] * f(c + h * g32.nodes[i]));
    evals += 48;
    Panel p;
    p.a = a;
    p.b = b;
    p.coarse = h * s16.value();
    p.fine = h * s32.value();
    p.err = std::abs(p.fine - p.coarse);
    return p;
}

} // namespace

QuadOutcome integrate(const CFunc& f, double a, double b, const QuadOptions& opt,
                      const std::vector<double>& breakpoints) {
    QuadOutcome out;
    if (!(a < b)) return out;

    std::vector<double> edges{a};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double lo = edges[i], hi = edges[i + 1];
        long parts = std::max(1L, static_cast<long>(std::ceil((hi - lo) / opt.init_width)));
        double h = (hi - lo) / static_cast<double>(parts);
        for (long j = 0; j < parts; ++j)
            heap.push(make_panel(f, lo + j * h, lo + (j + 1) * h, out.evals));
    }

    double total_err = 0.0;
    {
        std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> tmp = heap;
        while (!tmp.empty()) {
            total_err += tmp.top().err;
            tmp.pop();
        }
    }
    while (total_err > opt.abs_tol && !heap.empty()) {
        if (out.evals + 96 > opt.max_evals) {
            if (opt.throw_on_budget)
                fail(Status::QuadratureFailure,
                     "quadrature: tolerance unreachable within evaluation budget");
            out.converged = false;
            break;
        }
        Panel worst = heap.top();
        heap.pop();
        total_err -= worst.err;
        double mid = 0.5 * (worst.a + worst.b);
        Panel l = make_panel(f, worst.a, mid, out.evals);
        Panel r = make_panel(f, mid, worst.b, out.evals);
        total_err += l.err + r.err;
        heap.push(l);
        heap.push(r);
    }

    KahanSumC sum;
    std::vector<Panel> rest;
    while (!heap.empty()) {
        rest.push_back(heap.top());
        heap.pop();
    }
    // accumulate in position order for determinism
    std::sort(rest.begin(), rest.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const Panel& p : rest) sum.add(p.fine);
    out.value = sum.value();
    out.err_estimate = total_err;
    if (total_err > opt.abs_tol && out.converged) out.converged = false;
    return out;
}

QuadOutcome integrate_real(const RFunc& f, double a, double b, const QuadOptions& opt,
                           const std::vector<double>& breakpoints) {
    return integrate([&f](double x) { return cplx(f(x), 0.0); }, a, b, opt, breakpoints);
}

} // namespace zr
