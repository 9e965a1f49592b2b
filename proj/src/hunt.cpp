#include "zetares/hunt.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "zetares/mathutil.hpp"

namespace zr {

HuntTarget parse_target(const std::string& name) {
    if (name == "abs_zeta") return HuntTarget::AbsZeta;
    if (name == "abs_S") return HuntTarget::AbsS;
    if (name == "S1") return HuntTarget::S1;
    fail(Status::ConfigError, "unknown hunt target: " + name);
}

std::string target_name(HuntTarget t) {
    switch (t) {
        case HuntTarget::AbsZeta: return "abs_zeta";
        case HuntTarget::AbsS: return "abs_S";
        case HuntTarget::S1: return "S1";
    }
    return "?";
}

namespace {

struct LogTriple {
    double l1, l2, l3;
};

LogTriple log_triple(double T) {
    if (!(T > consts::e_to_e))
        fail(Status::Domain, "benchmark_curve: T must exceed e^e");
    double l1 = std::log(T);
    double l2 = std::log(l1);
    double l3 = std::log(l2);
    return {l1, l2, l3};
}

double target_eval(const ZetaEngine& eng, HuntTarget target, double t) {
    switch (target) {
        case HuntTarget::AbsZeta: return std::abs(eng.hardy_z(t));
        case HuntTarget::AbsS: return std::abs(eng.S_fast(t));
        case HuntTarget::S1: return eng.S1(t);
    }
    return 0.0;
}

} // namespace

double benchmark_curve(double T, double c, HuntTarget target) {
    auto [l1, l2, l3] = log_triple(T);
    switch (target) {
        case HuntTarget::AbsZeta: return std::exp(c * std::sqrt(l1 * l3 / l2));
        case HuntTarget::AbsS: return c * std::sqrt(l1 * l3 / l2);
        case HuntTarget::S1: return c * std::sqrt(l1 * l3 / (l2 * l2 * l2));
    }
    return 0.0;
}

double benchmark_c_star(double T, double value, HuntTarget target) {
    auto [l1, l2, l3] = log_triple(T);
    switch (target) {
        case HuntTarget::AbsZeta: return std::log(value) / std::sqrt(l1 * l3 / l2);
        case HuntTarget::AbsS: return value / std::sqrt(l1 * l3 / l2);
        case HuntTarget::S1: return value / std::sqrt(l1 * l3 / (l2 * l2 * l2));
    }
    return 0.0;
}

namespace {

// golden-section ascent on [lo, hi]; every accepted move increases f
double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters,
                  double* out_t) {
    const double gr = 0.61803398874989484820;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    if (f1 >= f2) {
        if (out_t) *out_t = x1;
        return f1;
    }
    if (out_t) *out_t = x2;
    return f2;
}

} // namespace

ScanReport resonant_scan(const ZetaEngine& eng, const ResonatorSet& R, double T, double beta,
                         HuntTarget target, long budget, double benchmark_c) {
    if (!(beta >= 0.0 && beta < 1.0))
        fail(Status::InvalidArgument, "resonant_scan: beta must lie in [0,1)");
    if (!(R.params.kappa < 1.0 - beta))
        fail(Status::InvalidArgument, "resonant_scan: need kappa < 1 - beta");
    if (budget < 100) fail(Status::InvalidArgument, "resonant_scan: budget too small");

    ScanReport rep;
    rep.target = target;
    rep.T = T;
    rep.beta = beta;
    rep.budget = budget;
    rep.benchmark_c = benchmark_c;
    rep.benchmark_value = benchmark_curve(T, benchmark_c, target);

    const double t_lo = std::max(std::pow(T, beta), 10.0);
    const double t_hi = T;

    // coarse pass on the cheap resonator weight |R|^2 Phi(t/T)
    double max_log = 0.0;
    for (const auto& r : R.reps) max_log = std::max(max_log, r.log_m);
    double step = consts::two_pi / (2.0 * std::max(max_log, 1.0)) / 3.0;
    long ncoarse = static_cast<long>(std::ceil((t_hi - t_lo) / step));
    ncoarse = std::min(ncoarse, 6'000'000L);
    step = (t_hi - t_lo) / static_cast<double>(ncoarse);

    std::vector<double> weight(static_cast<std::size_t>(ncoarse) + 1);
    for (long i = 0; i <= ncoarse; ++i) {
        double t = t_lo + step * static_cast<double>(i);
        double w = std::norm(R.value(t));
        double x = t / T;
        weight[static_cast<std::size_t>(i)] = w * std::exp(-0.5 * x * x);
    }

    // local maxima of the weight, ranked
    std::vector<std::pair<double, long>> local;
    for (long i = 1; i < ncoarse; ++i) {
        if (weight[i] > weight[i - 1] && weight[i] >= weight[i + 1])
            local.push_back({weight[i], i});
    }
    std::sort(local.begin(), local.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    const int refine_iters = 28;
    long candidates = std::max<long>(1, budget / (2 * refine_iters + 2));
    candidates = std::min<long>(candidates, static_cast<long>(local.size()));

    auto f = [&](double t) { return target_eval(eng, target, t); };
    std::vector<Peak> peaks;
    for (long c = 0; c < candidates; ++c) {
        long i = local[static_cast<std::size_t>(c)].second;
        double lo = t_lo + step * static_cast<double>(i - 1);
        double hi = t_lo + step * static_cast<double>(i + 1);
        Peak p;
        p.value = golden_max(f, lo, hi, refine_iters, &p.t);
        p.resonator_weight = std::norm(R.value(p.t));
        peaks.push_back(p);
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.t < b.t;
    });
    if (peaks.size() > 40) peaks.resize(40);
    rep.peaks = std::move(peaks);
    if (!rep.peaks.empty()) rep.c_star = benchmark_c_star(T, rep.peaks.front().value, target);
    return rep;
}

std::vector<std::pair<double, double>> baseline_scan(const ZetaEngine& eng, double T, double beta,
                                                     HuntTarget target, long budget,
                                                     std::uint64_t seed) {
    if (budget < 10) fail(Status::InvalidArgument, "baseline_scan: budget too small");
    const double t_lo = std::max(std::pow(T, beta), 10.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(t_lo, T);
    std::vector<double> vals(static_cast<std::size_t>(budget));
    for (auto& v : vals) v = target_eval(eng, target, dist(rng));
    std::sort(vals.begin(), vals.end());
    std::vector<std::pair<double, double>> out;
    for (double q : {50.0, 90.0, 99.0, 99.9}) {
        std::size_t idx = static_cast<std::size_t>(
            std::min<double>(static_cast<double>(vals.size()) - 1.0,
                             std::floor(q / 100.0 * static_cast<double>(vals.size()))));
        out.push_back({q, vals[idx]});
    }
    return out;
}

std::string ScanReport::to_json() const {
    nlohmann::json j;
    j["format"] = "scan-report";
    j["version"] = 1;
    j["target"] = target_name(target);
    j["T"] = T;
    j["beta"] = beta;
    j["budget"] = budget;
    j["seed"] = seed;
    j["benchmark"] = {{"c", benchmark_c}, {"value", benchmark_value}};
    j["c_star"] = c_star;
    nlohmann::json pk = nlohmann::json::array();
    for (const auto& p : peaks)
        pk.push_back({{"t", p.t}, {"value", p.value}, {"r2", p.resonator_weight}});
    j["peaks"] = std::move(pk);
    nlohmann::json bq = nlohmann::json::array();
    for (const auto& [q, v] : baseline_quantiles) bq.push_back({{"percent", q}, {"value", v}});
    j["baseline_quantiles"] = std::move(bq);
    j["content_hash"] = fnv1a64_hex(j.dump());
    return j.dump(1);
}

std::string ScanReport::to_csv() const {
    std::ostringstream os;
    os << "rank,t,value,r2\n";
    os.setf(std::ios::scientific);
    os.precision(17);
    for (std::size_t i = 0; i < peaks.size(); ++i)
        os << i + 1 << "," << peaks[i].t << "," << peaks[i].value << ","
           << peaks[i].resonator_weight << "\n";
    return os.str();
}

} // namespace zr
