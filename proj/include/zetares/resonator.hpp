#pragma once
// Resonator construction: prime window and blocks, the multiplicative weight
// f on square-free products subject to per-block divisor caps, the binned
// representative set with coefficients r, and the Dirichlet polynomial
// R(t) = sum r(m) m^{-it}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zetares/common.hpp"

namespace zr {

struct ResonatorParams {
    long long N = 0;    // size budget; N = floor(T^kappa) when tied to a height
    double T = 0.0;     // scan height (0 = standalone)
    double gamma = 0.5; // prime-window exponent, 0 < gamma < 1
    double a = 1.5;     // cap multiplier, 1 < a < 1/gamma
    double kappa = 0.5; // N = floor(T^kappa), 0 < kappa <= 1
    double epsilon = 0.05; // Fejer width parameter (w = epsilon log T)
    std::optional<std::pair<double, double>> block_override; // prime window (lo, hi]
    std::optional<int> element_cap;                          // max factors per element
    long long support_budget = 2'000'000;

    void validate() const;
    static ResonatorParams from_height(double T, double kappa, double gamma = 0.5,
                                       double a = 1.5, double epsilon = 0.05);
};

struct PrimeBlock {
    int k = 1;
    double lo = 0.0, hi = 0.0; // window (lo, hi]
    long cap = 0;              // max divisors of an element inside this block
    std::vector<std::uint64_t> primes;
};

struct PrimeBlocks {
    std::vector<std::uint64_t> all; // ascending union of the blocks
    std::vector<PrimeBlock> blocks;
    bool overridden = false;
};

PrimeBlocks build_blocks(const ResonatorParams& params);

// f(p) for primes inside the window, 0 outside; DegenerateWeight when the
// formula denominator log p - log_2 N - log_3 N is nonpositive.
double prime_weight(std::uint64_t p, const ResonatorParams& params, const PrimeBlocks& blocks);

struct SupportElement {
    std::vector<std::uint32_t> prime_idx; // ascending indices into blocks.all
    double log_n = 0.0;
    double f = 1.0;
    double inv_sum = 0.0; // sum_{p | n} 1/(f(p) sqrt p)
};

struct SupportSet {
    std::vector<SupportElement> elems; // ascending by log_n; elems[0] is n = 1
    std::vector<double> fp;            // weight per prime in blocks.all
    double sum_f2 = 0.0;

    std::string decimal_value(const PrimeBlocks& blocks, const SupportElement& e) const;
};

SupportSet enumerate_support(const PrimeBlocks& blocks, const ResonatorParams& params);

struct Representative {
    std::size_t elem = 0;  // index into support.elems
    long long bin = 0;     // j with (1+1/T)^j <= m < (1+1/T)^{j+1}
    double log_m = 0.0;
    double r = 0.0;
};

std::vector<Representative> bin_representatives(const SupportSet& support, double T);

struct ResonatorSet {
    ResonatorParams params;
    PrimeBlocks blocks;
    SupportSet support;
    double bin_ratio = 0.0; // 1 + 1/T
    std::vector<Representative> reps;
    double sum_r2 = 0.0;

    cplx value(double t) const; // R(t)

    std::string to_json() const;
    static ResonatorSet from_json(const std::string& text);
    void save(const std::string& path) const;
    static ResonatorSet load(const std::string& path);
};

ResonatorSet build_resonator(const ResonatorParams& params);

} // namespace zr
