#include "zetares/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "zetares/mathutil.hpp"
#include "zetares/primes.hpp"

namespace zr {

namespace {

struct LogScales {
    double lN, l2, l3;
};

LogScales log_scales(long long N) {
    double lN = std::log(static_cast<double>(N));
    double l2 = std::log(lN);
    double l3 = std::log(l2);
    return {lN, l2, l3};
}

} // namespace

void ResonatorParams::validate() const {
    if (N < 16)
        fail(Status::InvalidArgument,
             "ResonatorParams: N must be >= 16 so that log log log N is positive");
    if (!(gamma > 0.0 && gamma < 1.0))
        fail(Status::InvalidArgument, "ResonatorParams: gamma must lie in (0,1)");
    if (!(a > 1.0 && a < 1.0 / gamma))
        fail(Status::InvalidArgument, "ResonatorParams: need 1 < a < 1/gamma");
    if (!(epsilon > 0.0)) fail(Status::InvalidArgument, "ResonatorParams: epsilon must be positive");
    if (T > 0.0) {
        if (!(kappa > 0.0 && kappa <= 1.0))
            fail(Status::InvalidArgument, "ResonatorParams: kappa must lie in (0,1]");
        double x = std::pow(T, kappa);
        long long lo = static_cast<long long>(std::floor(x * (1.0 - 1e-12)));
        long long hi = static_cast<long long>(std::floor(x * (1.0 + 1e-12)));
        if (N < lo || N > hi)
            fail(Status::InvalidArgument, "ResonatorParams: N must equal floor(T^kappa)");
    }
    if (block_override) {
        auto [lo, hi] = *block_override;
        if (!(lo >= 0.0 && lo < hi))
            fail(Status::InvalidArgument, "ResonatorParams: bad block_override window");
    }
    if (element_cap && *element_cap < 0)
        fail(Status::InvalidArgument, "ResonatorParams: element_cap must be >= 0");
    if (support_budget < 1) fail(Status::InvalidArgument, "ResonatorParams: bad support budget");
}

ResonatorParams ResonatorParams::from_height(double T, double kappa, double gamma, double a,
                                             double epsilon) {
    ResonatorParams p;
    p.T = T;
    p.kappa = kappa;
    p.gamma = gamma;
    p.a = a;
    p.epsilon = epsilon;
    p.N = static_cast<long long>(std::floor(std::pow(T, kappa)));
    return p;
}

PrimeBlocks build_blocks(const ResonatorParams& params) {
    params.validate();
    auto [lN, l2, l3] = log_scales(params.N);
    PrimeBlocks out;

    if (params.block_override) {
        auto [lo, hi] = *params.block_override;
        PrimeBlock b;
        b.k = 1;
        b.lo = lo;
        b.hi = hi;
        b.cap = static_cast<long>(std::floor(params.a * lN / l3));
        b.primes = sieve_primes(lo, hi);
        if (b.primes.empty())
            fail(Status::EmptyRange, "build_blocks: override window holds no primes");
        out.all = b.primes;
        out.blocks.push_back(std::move(b));
        out.overridden = true;
        return out;
    }

    const double lo_p = std::exp(1.0) * lN * l2;
    const double hi_p = lN * std::exp(std::pow(l2, params.gamma)) * l2;
    const int K = std::max(1, static_cast<int>(std::floor(std::pow(l2, params.gamma))));
    for (int k = 1; k <= K; ++k) {
        PrimeBlock b;
        b.k = k;
        b.lo = std::exp(static_cast<double>(k)) * lN * l2;
        b.hi = std::min(std::exp(static_cast<double>(k + 1)) * lN * l2, hi_p);
        b.cap = static_cast<long>(std::floor(params.a * lN / (static_cast<double>(k) * k * l3)));
        if (b.hi <= b.lo) continue;
        b.primes = sieve_primes(b.lo, b.hi);
        if (b.primes.empty()) continue;
        out.all.insert(out.all.end(), b.primes.begin(), b.primes.end());
        out.blocks.push_back(std::move(b));
    }
    if (out.all.empty())
        fail(Status::EmptyRange,
             "build_blocks: prime window (" + std::to_string(lo_p) + ", " + std::to_string(hi_p) +
                 "] is empty at this N; supply block_override for desk-scale runs");
    return out;
}

double prime_weight(std::uint64_t p, const ResonatorParams& params, const PrimeBlocks& blocks) {
    if (!std::binary_search(blocks.all.begin(), blocks.all.end(), p)) return 0.0;
    auto [lN, l2, l3] = log_scales(params.N);
    double denom = std::log(static_cast<double>(p)) - l2 - l3;
    if (denom <= 0.0)
        fail(Status::DegenerateWeight,
             "prime_weight: log p - log_2 N - log_3 N <= 0 for p = " + std::to_string(p) +
                 "; parameters outside the admissible regime");
    return std::sqrt(lN * l2 / l3) / (std::sqrt(static_cast<double>(p)) * denom);
}

SupportSet enumerate_support(const PrimeBlocks& blocks, const ResonatorParams& params) {
    SupportSet out;
    const std::size_t np = blocks.all.size();
    out.fp.resize(np);
    std::vector<int> block_of(np);
    {
        std::size_t i = 0;
        for (std::size_t b = 0; b < blocks.blocks.size(); ++b)
            for (std::size_t j = 0; j < blocks.blocks[b].primes.size(); ++j, ++i)
                block_of[i] = static_cast<int>(b);
    }
    for (std::size_t i = 0; i < np; ++i)
        out.fp[i] = prime_weight(blocks.all[i], params, blocks);

    const long max_total = params.element_cap ? *params.element_cap
                                              : static_cast<long>(np);
    std::vector<long> used(blocks.blocks.size(), 0);
    SupportElement cur;

    // depth-first over ascending prime indices; caps make the set divisor closed
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<long long>(out.elems.size()) >= params.support_budget)
            fail(Status::BudgetExceeded, "enumerate_support: support budget exceeded");
        out.elems.push_back(cur);
        if (static_cast<long>(cur.prime_idx.size()) >= max_total) return;
        for (std::size_t i = start; i < np; ++i) {
            int b = block_of[i];
            if (used[b] >= blocks.blocks[b].cap) continue;
            double lp = std::log(static_cast<double>(blocks.all[i]));
            ++used[b];
            cur.prime_idx.push_back(static_cast<std::uint32_t>(i));
            double old_log = cur.log_n, old_f = cur.f, old_inv = cur.inv_sum;
            cur.log_n += lp;
            cur.f *= out.fp[i];
            cur.inv_sum += 1.0 / (out.fp[i] * std::sqrt(static_cast<double>(blocks.all[i])));
            self(self, i + 1);
            cur.prime_idx.pop_back();
            cur.log_n = old_log;
            cur.f = old_f;
            cur.inv_sum = old_inv;
            --used[b];
        }
    };
    rec(rec, 0);

    std::sort(out.elems.begin(), out.elems.end(),
              [](const SupportElement& a, const SupportElement& b) { return a.log_n < b.log_n; });
    KahanSum f2;
    for (const auto& e : out.elems) f2.add(e.f * e.f);
    out.sum_f2 = f2.value();
    return out;
}

std::string SupportSet::decimal_value(const PrimeBlocks& blocks, const SupportElement& e) const {
    std::vector<std::uint64_t> fac;
    fac.reserve(e.prime_idx.size());
    for (auto i : e.prime_idx) fac.push_back(blocks.all[i]);
    return decimal_product(fac);
}

std::vector<Representative> bin_representatives(const SupportSet& support, double T) {
    if (!(T > 0.0)) fail(Status::InvalidArgument, "bin_representatives: T must be positive");
    if (support.elems.empty())
        fail(Status::InvalidArgument, "bin_representatives: empty support");
    const double L = std::log1p(1.0 / T);
    const double edge_eps = 1e-12;

    std::vector<double> logs(support.elems.size());
    std::vector<double> pref(support.elems.size() + 1, 0.0);
    for (std::size_t i = 0; i < support.elems.size(); ++i) {
        logs[i] = support.elems[i].log_n;
        pref[i + 1] = pref[i] + support.elems[i].f * support.elems[i].f;
    }

    std::vector<Representative> reps;
    std::size_t i = 0;
    while (i < support.elems.size()) {
        long long j = static_cast<long long>(std::floor(logs[i] / L + edge_eps));
        // all elements in bin j share the representative m_j = smallest of them
        std::size_t end = i;
        while (end < support.elems.size() &&
               static_cast<long long>(std::floor(logs[end] / L + edge_eps)) == j)
            ++end;
        // window [(1+1/T)^{j-1}, (1+1/T)^{j+2}], inclusive
        double wlo = (static_cast<double>(j) - 1.0) * L - edge_eps;
        double whi = (static_cast<double>(j) + 2.0) * L + edge_eps;
        auto lo_it = std::lower_bound(logs.begin(), logs.end(), wlo);
        auto hi_it = std::upper_bound(logs.begin(), logs.end(), whi);
        double r2 = pref[hi_it - logs.begin()] - pref[lo_it - logs.begin()];
        Representative rep;
        rep.elem = i;
        rep.bin = j;
        rep.log_m = logs[i];
        rep.r = std::sqrt(r2);
        reps.push_back(rep);
        i = end;
    }
    return reps;
}

cplx ResonatorSet::value(double t) const {
    KahanSumC acc;
    for (const auto& rep : reps)
        acc.add(rep.r * cis_prod(-t, static_cast<long double>(rep.log_m)));
    return acc.value();
}

ResonatorSet build_resonator(const ResonatorParams& params) {
    ResonatorSet rs;
    rs.params = params;
    rs.blocks = build_blocks(params);
    rs.support = enumerate_support(rs.blocks, params);
    double T = params.T > 0.0 ? params.T : static_cast<double>(params.N);
    rs.bin_ratio = 1.0 + 1.0 / T;
    rs.reps = bin_representatives(rs.support, T);
    KahanSum r2;
    for (const auto& rep : rs.reps) r2.add(rep.r * rep.r);
    rs.sum_r2 = r2.value();
    return rs;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

std::string ResonatorSet::to_json() const {
    nlohmann::json j;
    j["format"] = "resonator-set";
    j["version"] = 1;
    nlohmann::json p;
    p["N"] = params.N;
    p["T"] = params.T;
    p["gamma"] = params.gamma;
    p["a"] = params.a;
    p["kappa"] = params.kappa;
    p["epsilon"] = params.epsilon;
    if (params.block_override)
        p["block_override"] = {params.block_override->first, params.block_override->second};
    if (params.element_cap) p["element_cap"] = *params.element_cap;
    p["support_budget"] = params.support_budget;
    j["params"] = std::move(p);

    nlohmann::json blk = nlohmann::json::array();
    for (const auto& b : blocks.blocks) {
        nlohmann::json e;
        e["k"] = b.k;
        e["lo"] = b.lo;
        e["hi"] = b.hi;
        e["cap"] = b.cap;
        e["primes"] = b.primes;
        blk.push_back(std::move(e));
    }
    j["blocks"] = std::move(blk);
    j["bin_ratio"] = bin_ratio;

    nlohmann::json sup = nlohmann::json::array();
    for (const auto& e : support.elems) {
        nlohmann::json it;
        it["n"] = support.decimal_value(blocks, e);
        it["factors"] = e.prime_idx;
        it["f"] = e.f;
        sup.push_back(std::move(it));
    }
    j["support"] = std::move(sup);

    nlohmann::json rp = nlohmann::json::array();
    for (const auto& r : reps) {
        nlohmann::json it;
        it["m"] = support.decimal_value(blocks, support.elems[r.elem]);
        it["elem"] = r.elem;
        it["bin"] = r.bin;
        it["r"] = r.r;
        rp.push_back(std::move(it));
    }
    j["reps"] = std::move(rp);
    j["content_hash"] = fnv1a64_hex(j.dump());
    return j.dump(1);
}

ResonatorSet ResonatorSet::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || j.value("format", "") != "resonator-set")
        fail(Status::ConfigError, "not a resonator-set document");
    ResonatorParams p;
    const auto& jp = j.at("params");
    p.N = jp.at("N").get<long long>();
    p.T = jp.at("T").get<double>();
    p.gamma = jp.at("gamma").get<double>();
    p.a = jp.at("a").get<double>();
    p.kappa = jp.at("kappa").get<double>();
    p.epsilon = jp.at("epsilon").get<double>();
    if (jp.contains("block_override"))
        p.block_override = {jp["block_override"][0].get<double>(),
                            jp["block_override"][1].get<double>()};
    if (jp.contains("element_cap")) p.element_cap = jp["element_cap"].get<int>();
    p.support_budget = jp.value("support_budget", 2'000'000LL);
    // rebuild deterministically (artifact carries the data for other tools,
    // the builder is the source of truth for in-process use)
    return build_resonator(p);
}

void ResonatorSet::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) fail(Status::IoError, "cannot write resonator set: " + path);
    out << to_json() << "\n";
}

ResonatorSet ResonatorSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Status::IoError, "cannot read resonator set: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

} // namespace zr
