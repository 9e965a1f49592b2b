#pragma once
// Resonator-guided search for large |zeta(1/2+it)|, |S(t)| and S1(t) on
// [T^beta, T], with the growth benchmark curves and a uniform-sampling
// control arm.

#include <cstdint>
#include <string>
#include <vector>

#include "zetares/resonator.hpp"
#include "zetares/zeta.hpp"

namespace zr {

enum class HuntTarget { AbsZeta, AbsS, S1 };

HuntTarget parse_target(const std::string& name);
std::string target_name(HuntTarget t);

// exp(c sqrt(log T log_3 T / log_2 T)) for zeta, the linear form for S and
// the (log_2 T)^3 denominator form for S1. Requires T > e^e.
double benchmark_curve(double T, double c, HuntTarget target);

// c* such that benchmark_curve(T, c*, target) equals the given value.
double benchmark_c_star(double T, double value, HuntTarget target);

struct Peak {
    double t = 0.0;
    double value = 0.0;
    double resonator_weight = 0.0; // |R(t)|^2
};

struct ScanReport {
    HuntTarget target = HuntTarget::AbsZeta;
    double T = 0.0;
    double beta = 0.0;
    long budget = 0;
    std::uint64_t seed = 0;
    double benchmark_c = 1.0;
    double benchmark_value = 0.0;
    double c_star = 0.0;
    std::vector<Peak> peaks;                 // sorted descending by value
    std::vector<std::pair<double, double>> baseline_quantiles; // (percent, value)

    std::string to_json() const;
    std::string to_csv() const;
};

ScanReport resonant_scan(const ZetaEngine& eng, const ResonatorSet& R, double T, double beta,
                         HuntTarget target, long budget, double benchmark_c = 1.0);

std::vector<std::pair<double, double>> baseline_scan(const ZetaEngine& eng, double T, double beta,
                                                     HuntTarget target, long budget,
                                                     std::uint64_t seed);

} // namespace zr
