#include "zetares/zeta.hpp"
#include <cstdlib>
#include <cstdio>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>

#include <json.hpp>

#include "zetares/mathutil.hpp"
#include "zetares/quadrature.hpp"
#include "zetares/primes.hpp"

namespace zr {

using cplxl = std::complex<long double>;

void PrecisionPolicy::validate() const {
    if (working_digits < 15)
        fail(Status::InvalidArgument, "PrecisionPolicy: working_digits must be >= 15");
    if (!(quadrature_abs_tol > 0.0) || !(zero_isolation_tol > 0.0))
        fail(Status::InvalidArgument, "PrecisionPolicy: tolerances must be positive");
}

// ---------------------------------------------------------------------------
// phase theta(t)
// ---------------------------------------------------------------------------

namespace {

// long-double asymptotic phase, used by the Riemann-Siegel path (t >= 200)
long double theta_asym_l(long double t) {
    long double lt = std::log(t / consts::two_pi_l);
    long double t2 = t * t;
    return 0.5L * t * lt - 0.5L * t - consts::pi_l / 8.0L + 1.0L / (48.0L * t) +
           7.0L / (5760.0L * t * t2) + 31.0L / (80640.0L * t2 * t2 * t);
}

} // namespace

double theta_phase(double t) {
    if (t < 0.0) return -theta_phase(-t);
    if (t == 0.0) return 0.0;
    if (t >= 200.0) return static_cast<double>(theta_asym_l(t));
    cplx lg = log_gamma(cplx(0.25, 0.5 * t));
    return lg.imag() - 0.5 * t * 1.14472988584940017414; // log(pi)
}

// ---------------------------------------------------------------------------
// von Mangoldt
// ---------------------------------------------------------------------------

double von_mangoldt(std::uint64_t n) {
    if (n < 2) return 0.0;
    std::uint64_t p = 0, m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return std::log(static_cast<double>(n)); // n prime
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

// ---------------------------------------------------------------------------
// shared log table for Dirichlet sums
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const std::vector<long double>> log_table(std::size_t need) {
    static std::shared_ptr<const std::vector<long double>> table =
        std::make_shared<const std::vector<long double>>();
    static std::mutex mtx;
    auto snap = std::atomic_load(&table);
    if (snap->size() >= need) return snap;
    std::lock_guard<std::mutex> lk(mtx);
    snap = std::atomic_load(&table);
    if (snap->size() >= need) return snap;
    auto next = std::make_shared<std::vector<long double>>(std::max<std::size_t>(need, 1024));
    auto& v = *next;
    v[0] = 0.0L;
    for (std::size_t n = 1; n < v.size(); ++n) v[n] = std::log(static_cast<long double>(n));
    std::shared_ptr<const std::vector<long double>> pub(std::move(next));
    std::atomic_store(&table, pub);
    return pub;
}

} // namespace

// ---------------------------------------------------------------------------
// Euler-Maclaurin
// ---------------------------------------------------------------------------

namespace {

// per-thread amplitude cache n^{-sigma}; keyed by the exact sigma value
struct EmAmps {
    double sigma = -99.0;
    std::vector<double> amp;
};

cplx zeta_em_impl(double sigma, double t, long M) {
    auto logs = log_table(static_cast<std::size_t>(M) + 1);
    thread_local EmAmps cache;
    if (cache.sigma != sigma) {
        cache.sigma = sigma;
        cache.amp.assign(1, 0.0);
    }
    if (static_cast<long>(cache.amp.size()) <= M) {
        std::size_t old = cache.amp.size();
        cache.amp.resize(static_cast<std::size_t>(M) + 1);
        for (std::size_t n = std::max<std::size_t>(old, 1); n < cache.amp.size(); ++n)
            cache.amp[n] =
                static_cast<double>(std::exp(-static_cast<long double>(sigma) * (*logs)[n]));
    }
    const long double tl = t;
    const long double sl = sigma;
    long double sum_re = 0.0L, sum_im = 0.0L;
    for (long n = 1; n < M; ++n) {
        long double ph = std::fmod(tl * (*logs)[static_cast<std::size_t>(n)], consts::two_pi_l);
        double p = static_cast<double>(ph);
        double a = cache.amp[static_cast<std::size_t>(n)];
        sum_re += a * std::cos(p);
        sum_im -= a * std::sin(p);
    }
    cplxl s(sl, tl);
    long double lM = (*logs)[static_cast<std::size_t>(M)];
    cplxl Mms = std::exp(cplxl(-sl * lM, -std::fmod(tl * lM, consts::two_pi_l))); // M^{-s}
    cplxl acc(sum_re, sum_im);
    acc += Mms * static_cast<long double>(M) / (s - 1.0L); // M^{1-s}/(s-1)
    acc += Mms * 0.5L;

    // Bernoulli corrections: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * M^{-s-2k+1}
    const long double* b2 = bernoulli2k();
    cplxl poch = s;                      // k = 1 term: just s
    long double fact = 2.0L;             // (2k)!
    cplxl Mpow = Mms / static_cast<long double>(M); // M^{-s-1}
    long double prev_mag = 1e400L;
    for (int k = 1; k <= bernoulli2k_count(); ++k) {
        cplxl term = b2[k - 1] / fact * poch * Mpow;
        long double mag = std::abs(term);
        if (mag > prev_mag) break; // asymptotic regime ended
        acc += term;
        if (mag < 1e-22L * std::abs(acc)) break;
        prev_mag = mag;
        // advance to k+1
        poch *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
        fact *= (2.0L * k + 1.0L) * (2.0L * k + 2.0L);
        Mpow /= static_cast<long double>(M) * static_cast<long double>(M);
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

} // namespace

// ---------------------------------------------------------------------------
// Riemann-Siegel correction atoms via truncated Taylor jets
// ---------------------------------------------------------------------------

namespace {

constexpr int kJetN = 26;

struct Jet {
    long double c[kJetN] = {};
};

Jet jet_mul(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < kJetN; ++i)
        for (int j = 0; i + j < kJetN; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

Jet jet_div(const Jet& num, const Jet& den) {
    Jet q;
    for (int i = 0; i < kJetN; ++i) {
        long double acc = num.c[i];
        for (int j = 0; j < i; ++j) acc -= q.c[j] * den.c[i - j];
        q.c[i] = acc / den.c[0];
    }
    return q;
}

// cos(u0 + v) where v = u - u0 has no constant term
Jet jet_cos(long double u0, const Jet& v) {
    Jet cosv, sinv, pw;
    cosv.c[0] = 1.0L;
    pw.c[0] = 1.0L;
    for (int k = 1; k < kJetN; ++k) {
        pw = jet_mul(pw, v);
        for (int i = 0; i < kJetN; ++i) pw.c[i] /= k;
        switch (k % 4) {
            case 0:
                for (int i = 0; i < kJetN; ++i) cosv.c[i] += pw.c[i];
                break;
            case 1:
                for (int i = 0; i < kJetN; ++i) sinv.c[i] += pw.c[i];
                break;
            case 2:
                for (int i = 0; i < kJetN; ++i) cosv.c[i] -= pw.c[i];
                break;
            case 3:
                for (int i = 0; i < kJetN; ++i) sinv.c[i] -= pw.c[i];
                break;
        }
    }
    long double cu = std::cos(u0), su = std::sin(u0);
    Jet r;
    for (int i = 0; i < kJetN; ++i) r.c[i] = cu * cosv.c[i] - su * sinv.c[i];
    return r;
}

// Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p); removable zeros of the
// denominator at p = 1/4, 3/4. Fills derivatives d[0..nder] at p.
void psi_derivs(long double p, long double* d, int nder) {
    long double x0 = p;
    bool deflate = false;
    for (long double ps : {0.25L, 0.75L}) {
        if (std::abs(p - ps) < 0.06L) {
            x0 = ps;
            deflate = true;
            break;
        }
    }
    const long double tp = consts::two_pi_l;
    // numerator argument u(x0 + d) = u0 + u1 d + u2 d^2
    long double u0 = tp * (x0 * x0 - x0 - 0.0625L);
    Jet uv;
    uv.c[1] = tp * (2.0L * x0 - 1.0L);
    uv.c[2] = tp;
    Jet num = jet_cos(u0, uv);
    Jet wv;
    wv.c[1] = tp;
    Jet den = jet_cos(tp * x0, wv);
    if (deflate) {
        // both series vanish at x0; drop the (numerically ~1e-18) constants
        for (int i = 0; i + 1 < kJetN; ++i) {
            num.c[i] = num.c[i + 1];
            den.c[i] = den.c[i + 1];
        }
        num.c[kJetN - 1] = den.c[kJetN - 1] = 0.0L;
    }
    Jet q = jet_div(num, den);
    const long double dd = p - x0;
    for (int order = 0; order <= nder; ++order) {
        long double v = 0.0L, dp = 1.0L;
        for (int k = order; k < kJetN; ++k) {
            long double fall = 1.0L;
            for (int j = 0; j < order; ++j) fall *= static_cast<long double>(k - j);
            v += q.c[k] * fall * dp;
            dp *= dd;
        }
        d[order] = v;
    }
}

} // namespace

void rs_psi_derivs(double p, double* d, int nder) {
    long double buf[13];
    nder = std::min(nder, 12);
    psi_derivs(static_cast<long double>(p), buf, nder);
    for (int i = 0; i <= nder; ++i) d[i] = static_cast<double>(buf[i]);
}

namespace {

// Correction coefficients C0..C3 tabulated on p in [0,1] with cubic
// interpolation; the jet evaluation is accurate but ~10us per call, far too
// slow inside quadrature loops.
struct RsCoefTable {
    static constexpr int N = 4097;
    std::vector<std::array<double, 4>> c;

    RsCoefTable() : c(N) {
        const long double pi2 = consts::pi_l * consts::pi_l;
        for (int i = 0; i < N; ++i) {
            long double p = static_cast<long double>(i) / (N - 1);
            long double d[10];
            psi_derivs(p, d, 9);
            c[i][0] = static_cast<double>(d[0]);
            c[i][1] = static_cast<double>(-d[3] / (96.0L * pi2));
            c[i][2] = static_cast<double>(d[2] / (64.0L * pi2) + d[6] / (18432.0L * pi2 * pi2));
            c[i][3] = static_cast<double>(-d[1] / (64.0L * pi2) - d[5] / (3840.0L * pi2 * pi2) -
                                          d[9] / (5308416.0L * pi2 * pi2 * pi2));
        }
    }

    void eval(double p, double* out) const {
        double x = p * (N - 1);
        int i = std::clamp(static_cast<int>(x), 1, N - 3);
        double u = x - i;
        // Catmull-Rom through the four surrounding samples
        for (int k = 0; k < 4; ++k) {
            double m0 = c[i - 1][k], m1 = c[i][k], m2 = c[i + 1][k], m3 = c[i + 2][k];
            out[k] = m1 + 0.5 * u *
                              (m2 - m0 +
                               u * (2.0 * m0 - 5.0 * m1 + 4.0 * m2 - m3 +
                                    u * (3.0 * (m1 - m2) + m3 - m0)));
        }
    }
};

const RsCoefTable& rs_coef_table() {
    static RsCoefTable table;
    return table;
}

} // namespace

// ---------------------------------------------------------------------------
// engine
// ---------------------------------------------------------------------------

ZetaEngine::ZetaEngine(PrecisionPolicy policy) : policy_(policy) { policy_.validate(); }

cplx ZetaEngine::zeta_euler_maclaurin(double sigma, double t) const {
    double at = std::abs(t);
    long M = std::max<long>(24, static_cast<long>(std::ceil(0.55 * at)));
    cplx v = zeta_em_impl(sigma, at, M);
    return t < 0.0 ? std::conj(v) : v;
}

cplx ZetaEngine::zeta_em_economic(double sigma, double t) const {
    // ~1.4x cheaper truncation; Bernoulli block still converges below 1e-10
    double at = std::abs(t);
    long M = std::max<long>(24, static_cast<long>(std::ceil(0.38 * at)));
    cplx v = zeta_em_impl(sigma, at, M);
    return t < 0.0 ? std::conj(v) : v;
}

double ZetaEngine::hardy_z_riemann_siegel(double t) const {
    if (t < 200.0) fail(Status::InvalidArgument, "riemann_siegel: t too small");
    const long double tl = t;
    const long double a = std::sqrt(tl / consts::two_pi_l);
    const long m = static_cast<long>(a);
    const long double p = a - static_cast<long double>(m);
    const long double th = theta_asym_l(tl);

    auto logs = log_table(static_cast<std::size_t>(m) + 1);
    long double main = 0.0L;
    for (long n = 1; n <= m; ++n) {
        long double ln = (*logs)[static_cast<std::size_t>(n)];
        long double ph = std::fmod(th - tl * ln, consts::two_pi_l);
        main += std::cos(ph) / std::sqrt(static_cast<long double>(n));
    }
    main *= 2.0L;

    double cf[4];
    rs_coef_table().eval(static_cast<double>(p), cf);
    const double sign = (m % 2 == 1) ? 1.0 : -1.0; // (-1)^{m-1}
    const double ia = static_cast<double>(1.0L / a);
    double corr = sign / std::sqrt(static_cast<double>(a)) *
                  (cf[0] + (cf[1] + (cf[2] + cf[3] * ia) * ia) * ia);
    return static_cast<double>(main) + corr;
}

cplx ZetaEngine::zeta(double sigma, double t) const {
    if (sigma < 0.4 || sigma > 3.5)
        fail(Status::InvalidArgument, "zeta: sigma outside [0.4, 3.5]");
    if (std::abs(sigma - 1.0) < 1e-12 && std::abs(t) < 1e-12)
        fail(Status::Domain, "zeta: pole at s = 1");
    if (t < 0.0) return std::conj(zeta(sigma, -t));

    const bool on_line = std::abs(sigma - 0.5) < 1e-14;
    if (on_line && t > 2000.0) {
        if (t > policy_.max_height) fail(Status::HeightCap, "zeta: height beyond cap");
        double z = hardy_z_riemann_siegel(t);
        long double th = theta_asym_l(t);
        long double ph = std::fmod(-th, consts::two_pi_l);
        return z * cplx(static_cast<double>(std::cos(ph)), static_cast<double>(std::sin(ph)));
    }
    if (t > policy_.max_height_em)
        fail(Status::HeightCap, "zeta: height beyond Euler-Maclaurin cap off the critical line");
    if (t > 1500.0) return zeta_em_economic(sigma, t);
    return zeta_euler_maclaurin(sigma, t);
}

double ZetaEngine::hardy_z(double t) const {
    t = std::abs(t);
    if (t <= 3000.0) {
        cplx zv = zeta_euler_maclaurin(0.5, t);
        double th = theta_phase(t);
        return (cplx(std::cos(th), std::sin(th)) * zv).real();
    }
    if (t > policy_.max_height) fail(Status::HeightCap, "hardy_z: height beyond cap");
    return hardy_z_riemann_siegel(t);
}

// ---------------------------------------------------------------------------
// zero cache
// ---------------------------------------------------------------------------

void ZetaEngine::scan_segment(double lo, double hi, double step, std::vector<double>& out) const {
    scan_segment_impl(lo, hi, step, out, true);
}

void ZetaEngine::scan_segment_impl(double lo, double hi, double step, std::vector<double>& out,
                                   bool rescan_gaps) const {
    std::size_t first = out.size();
    double prev_t = lo;
    double prev_z = hardy_z(lo);
    while (prev_t < hi) {
        double next_t = std::min(hi, prev_t + step);
        double next_z = hardy_z(next_t);
        if ((prev_z < 0.0) != (next_z < 0.0)) {
            double a = prev_t, b = next_t, fa = prev_z;
            for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
                double mid = 0.5 * (a + b);
                double fm = hardy_z(mid);
                if ((fa < 0.0) != (fm < 0.0))
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            out.push_back(0.5 * (a + b));
        }
        prev_t = next_t;
        prev_z = next_z;
    }
    if (!rescan_gaps) return;
    // an even number of crossings inside one step is invisible to the sign
    // scan; re-sweep suspiciously wide gaps once at a much finer step
    std::vector<double> extra;
    double prev = lo;
    for (std::size_t i = first; i <= out.size(); ++i) {
        double next = (i < out.size()) ? out[i] : hi;
        double mid = 0.5 * (prev + next);
        double avg_gap =
            consts::two_pi / std::max(1.0, std::log(std::max(mid, 20.0) / consts::two_pi));
        if (next - prev > 1.45 * avg_gap && next - prev > step)
            scan_segment_impl(prev + 1e-9, next - 1e-9, step / 16.0, extra, false);
        prev = next;
    }
    if (!extra.empty()) {
        out.insert(out.end(), extra.begin(), extra.end());
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
    }
}

void ZetaEngine::ensure_zeros_to(double t) const {
    double target = std::abs(t) + 5.0;
    {
        std::shared_lock lk(zeros_mtx_);
        if (target <= scanned_to_) return;
    }
    std::unique_lock lk(zeros_mtx_);
    if (target <= scanned_to_) return;
    double lo = std::max(scanned_to_, 5.0);
    // chunked scan with a count integrity check per chunk; the check walks
    // the running count N against theta/pi + 1 at gap midpoints, where the
    // difference is S(t) and must stay small
    auto count_consistent = [this](double win_lo, double win_hi, std::size_t base,
                                   const std::vector<double>& found) {
        double prev = win_lo;
        for (std::size_t i = 0; i <= found.size(); ++i) {
            double next = (i < found.size()) ? found[i] : win_hi;
            double mid = 0.5 * (prev + next);
            if (next - prev > 1e-6 && mid > 14.0) {
                double s = static_cast<double>(base + i) - 1.0 - theta_phase(mid) / consts::pi;
                if (std::abs(s) > 1.8) return false;
            }
            prev = next;
        }
        return true;
    };

    while (lo < target) {
        double hi = std::min(target, lo + 200.0);
        double gap = consts::two_pi / std::max(1.0, std::log(std::max(hi, 20.0) / consts::two_pi));
        double step = std::clamp(0.30 * gap, 0.02, 1.2);
        double win_lo = lo;
        std::vector<double> found;
        for (int attempt = 0;; ++attempt) {
            found.clear();
            scan_segment(win_lo, hi, step, found);
            std::size_t base = static_cast<std::size_t>(
                std::lower_bound(zeros_.begin(), zeros_.end(), win_lo) - zeros_.begin());
            if (count_consistent(win_lo, hi, base, found)) break;
            if (attempt == 2) {
                // an earlier chunk may have lost a close pair near its end;
                // widen the window backwards and rescan fine
                win_lo = std::max(5.0, lo - 250.0);
                step = std::clamp(0.05 * gap, 0.005, 1.2);
                continue;
            }
            if (attempt >= 4)
                fail(Status::Domain, "zero scan: count integrity check failed");
            step *= 0.25;
        }
        zeros_.erase(std::lower_bound(zeros_.begin(), zeros_.end(), win_lo), zeros_.end());
        zeros_.insert(zeros_.end(), found.begin(), found.end());
        scanned_to_ = hi;
        lo = hi;
    }
}

std::vector<double> ZetaEngine::zeros_up_to(double t) const {
    ensure_zeros_to(t);
    std::shared_lock lk(zeros_mtx_);
    auto it = std::upper_bound(zeros_.begin(), zeros_.end(), t);
    return {zeros_.begin(), it};
}

std::optional<double> ZetaEngine::nearest_zero(double t) const {
    ensure_zeros_to(t + 10.0);
    std::shared_lock lk(zeros_mtx_);
    if (zeros_.empty()) return std::nullopt;
    auto it = std::lower_bound(zeros_.begin(), zeros_.end(), t);
    double best = (it != zeros_.end()) ? *it : zeros_.back();
    if (it != zeros_.begin()) {
        double lo = *(it - 1);
        if (std::abs(lo - t) < std::abs(best - t)) best = lo;
    }
    return best;
}

double ZetaEngine::scanned_height() const {
    std::shared_lock lk(zeros_mtx_);
    return scanned_to_;
}

long ZetaEngine::count_zeros(double t) const {
    if (t <= 0.0) return 0;
    ensure_zeros_to(t);
    std::shared_lock lk(zeros_mtx_);
    auto it = std::lower_bound(zeros_.begin(), zeros_.end(), t);
    if (it != zeros_.end() && std::abs(*it - t) < policy_.zero_isolation_tol)
        fail(Status::Domain, "count_zeros: t is within tolerance of an ordinate");
    if (it != zeros_.begin() && std::abs(*(it - 1) - t) < policy_.zero_isolation_tol)
        fail(Status::Domain, "count_zeros: t is within tolerance of an ordinate");
    return static_cast<long>(it - zeros_.begin());
}

void ZetaEngine::save_zero_cache(const std::string& path) const {
    nlohmann::json j;
    j["format"] = "zero-cache";
    j["version"] = 1;
    {
        std::shared_lock lk(zeros_mtx_);
        j["scanned_to"] = scanned_to_;
        nlohmann::json arr = nlohmann::json::array();
        for (double z : zeros_) arr.push_back({z, policy_.zero_isolation_tol});
        j["ordinates"] = std::move(arr);
    }
    std::ofstream out(path);
    if (!out) fail(Status::IoError, "cannot write zero cache: " + path);
    out << j.dump(1) << "\n";
}

void ZetaEngine::load_zero_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Status::IoError, "cannot read zero cache: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || j.value("format", "") != "zero-cache")
        fail(Status::ConfigError, "not a zero-cache file: " + path);
    std::unique_lock lk(zeros_mtx_);
    zeros_.clear();
    for (const auto& e : j["ordinates"]) zeros_.push_back(e[0].get<double>());
    std::sort(zeros_.begin(), zeros_.end());
    scanned_to_ = j.value("scanned_to", 0.0);
}

// ---------------------------------------------------------------------------
// S, S1
// ---------------------------------------------------------------------------

double ZetaEngine::S_fast(double t) const {
    if (t == 0.0) return 0.0;
    if (t < 0.0) return -S_fast(-t);
    ensure_zeros_to(t);
    std::shared_lock lk(zeros_mtx_);
    auto lo = std::lower_bound(zeros_.begin(), zeros_.end(), t - policy_.zero_isolation_tol);
    auto hi = std::lower_bound(zeros_.begin(), zeros_.end(), t + policy_.zero_isolation_tol);
    // two-sided mean at ordinates: average the below/above counts
    double n_mean = 0.5 * (static_cast<double>(lo - zeros_.begin()) +
                           static_cast<double>(hi - zeros_.begin()));
    return n_mean - 1.0 - theta_phase(t) / consts::pi;
}

double ZetaEngine::arg_zeta_from_two_line(double sigma, double t) const {
    // continuous variation along the horizontal segment from 2 + it;
    // on the 2-line the principal argument is already the tracked one
    cplx cur = zeta(2.0, t);
    double arg = std::arg(cur);
    double s_at = 2.0;
    double h = 0.25;
    while (s_at > sigma + 1e-15) {
        h = std::min(h, s_at - sigma);
        cplx nxt = zeta(s_at - h, t);
        double dphi = std::arg(nxt / cur);
        if (std::abs(dphi) >= consts::pi / 2.0 && h > 1e-9) {
            h *= 0.5;
            continue;
        }
        arg += dphi;
        cur = nxt;
        s_at -= h;
        h = std::min(0.25, h * 1.9);
    }
    return arg;
}

double ZetaEngine::im_log_zeta(double sigma, double t) const {
    if (sigma < 0.5 - 1e-14) fail(Status::InvalidArgument, "im_log_zeta: sigma < 1/2");
    if (std::abs(t) < 1e-12 && sigma < 1.0)
        fail(Status::Domain, "im_log_zeta: path through the pole at t = 0");
    if (t < 0.0) return -im_log_zeta(sigma, -t);
    return arg_zeta_from_two_line(sigma, t);
}

cplx ZetaEngine::log_zeta(double sigma, double t) const {
    cplx v = zeta(sigma, t);
    double mod = std::log(std::abs(v));
    return {mod, im_log_zeta(sigma, t)};
}

double ZetaEngine::S_tracked(double t) const {
    if (t == 0.0) return 0.0;
    if (t < 0.0) return -S_tracked(-t);
    auto nz = nearest_zero(t);
    if (nz && std::abs(*nz - t) < policy_.zero_isolation_tol) {
        double d = std::max(1e-7, 4.0 * policy_.zero_isolation_tol);
        return 0.5 * (arg_zeta_from_two_line(0.5, t - d) + arg_zeta_from_two_line(0.5, t + d)) /
               consts::pi;
    }
    return arg_zeta_from_two_line(0.5, t) / consts::pi;
}

double ZetaEngine::S1(double t) const {
    double a = std::abs(t);
    if (a == 0.0) return 0.0;
    auto zs = zeros_up_to(a);
    QuadOptions opt;
    opt.abs_tol = policy_.quadrature_abs_tol;
    opt.init_width = 2.0;
    auto out = integrate_real([this](double x) { return S_fast(x); }, 0.0, a, opt, zs);
    return out.value.real();
}

double ZetaEngine::S1_via_log_modulus(double t) const {
    t = std::abs(t); // even extension
    const double sm = 3.0;

    auto prime_tail = [&](double tt) {
        // int_{sm}^inf log|zeta| dsigma = Re sum_{p^k} p^{-k sm - i k t} / (k^2 log p)
        KahanSum acc;
        auto powers = prime_powers_up_to(2.0e5);
        for (const auto& pp : *powers) {
            if (static_cast<double>(pp.value) > 2.0e5) break;
            double lp = std::log(static_cast<double>(pp.p));
            double amp = std::exp(-pp.k * sm * lp) / (pp.k * pp.k * lp);
            acc.add(amp * cis_prod(-tt, static_cast<long double>(pp.k) * lp).real());
        }
        return acc.value();
    };

    auto strip_integral = [&](double tt) {
        QuadOptions opt;
        opt.abs_tol = 1e-11;
        opt.init_width = 0.25;
        if (std::abs(tt) < 0.5) {
            // log|zeta| has a logarithmic spike at sigma = 1; integrate
            // log|(sigma-1) zeta| and add the closed form for -log|sigma-1|
            auto out = integrate_real(
                [&](double s) {
                    if (std::abs(s - 1.0) < 1e-9)
                        return 0.0; // (s-1)zeta(s) -> 1
                    return std::log(std::abs(zeta(s, tt)) * std::abs(s - 1.0));
                },
                0.5, sm, opt, {1.0});
            // int_{1/2}^{3} log|sigma-1| dsigma
            auto f = [](double x) { return x * std::log(x) - x; };
            double corr = f(0.5) + f(2.0);
            return out.value.real() - corr;
        }
        auto out = integrate_real(
            [&](double s) { return std::log(std::abs(zeta(s, tt))); }, 0.5, sm, opt, {1.0});
        return out.value.real();
    };

    static std::mutex mtx;
    static bool have_base = false;
    static double base = 0.0;
    {
        std::lock_guard<std::mutex> lk(mtx);
        if (!have_base) {
            base = strip_integral(0.0) + prime_tail(0.0);
            have_base = true;
        }
    }
    if (t == 0.0) return 0.0;
    return (strip_integral(t) + prime_tail(t) - base) / consts::pi;
}

double ZetaEngine::h_diag(double t) const {
    QuadOptions opt;
    opt.abs_tol = 1e-10;
    opt.init_width = 0.25;
    auto out = integrate_real([&](double s) { return std::log(std::abs(zeta(s, t))); }, 0.5, 2.0,
                              opt);
    return S1(t) - out.value.real() / consts::pi;
}

CriticalSample ZetaEngine::sample(double t) const {
    CriticalSample cs;
    cs.t = t;
    cs.zeta_half = zeta(0.5, t);
    cs.Z = hardy_z(t);
    ensure_zeros_to(std::abs(t));
    {
        std::shared_lock lk(zeros_mtx_);
        auto it = std::lower_bound(zeros_.begin(), zeros_.end(), std::abs(t));
        cs.Ncount = static_cast<long>(it - zeros_.begin());
    }
    cs.S = S_fast(t);
    cs.S1 = S1(t);
    return cs;
}

} // namespace zr
