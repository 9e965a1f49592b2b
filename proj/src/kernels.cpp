#include "zetares/kernels.hpp"

#include <cmath>

#include <json.hpp>

#include "zetares/mathutil.hpp"

namespace zr {

Kernel::Kernel(Kind k, double p) : kind_(k), param_(p) {
    if (!(p > 0.0)) fail(Status::InvalidArgument, "kernel parameter must be positive");
}

Kernel Kernel::fejer(double width) { return {Kind::Fejer, width}; }
Kernel Kernel::odd_gauss(double scale) { return {Kind::OddGauss, scale}; }
Kernel Kernel::even_gauss(double scale) { return {Kind::EvenGauss, scale}; }

cplx Kernel::value(cplx z) const {
    const double w = param_;
    switch (kind_) {
        case Kind::Fejer: {
            cplx wz = w * z;
            if (std::abs(wz) < 1e-2) {
                // sin^2(wz)/(w z^2) = w (1 - (wz)^2/3 + 2(wz)^4/45 - (wz)^6/315 + ...)
                cplx q = wz * wz;
                return w * (1.0 + q * (-1.0 / 3.0 + q * (2.0 / 45.0 + q * (-1.0 / 315.0))));
            }
            cplx s = std::sin(wz);
            return s * s / (w * z * z);
        }
        case Kind::OddGauss:
            return -w * w * z * std::exp(-0.5 * (w * z) * (w * z));
        case Kind::EvenGauss:
            return w * std::exp(-0.5 * (w * z) * (w * z));
    }
    return {};
}

cplx Kernel::fourier(double xi) const {
    const double w = param_;
    switch (kind_) {
        case Kind::Fejer:
            // pi * max(1 - |xi|/(2w), 0); triangle on [-2w, 2w]
            return {consts::pi * std::max(1.0 - std::abs(xi) / (2.0 * w), 0.0), 0.0};
        case Kind::OddGauss:
            return {0.0, consts::sqrt_two_pi * (xi / w) * std::exp(-0.5 * (xi / w) * (xi / w))};
        case Kind::EvenGauss:
            return {consts::sqrt_two_pi * std::exp(-0.5 * (xi / w) * (xi / w)), 0.0};
    }
    return {};
}

double Kernel::majorant(double x, double sigma) const {
    const double w = param_;
    const double s2 = 2.0 - sigma; // strip depth
    x = std::abs(x);
    switch (kind_) {
        case Kind::Fejer: {
            double sh = std::sinh(w * s2);
            double plateau = w * (1.0 + (sh / (w * s2)) * (sh / (w * s2)));
            if (x == 0.0) return plateau;
            return std::min(plateau, (1.0 + sh * sh) / (w * x * x));
        }
        case Kind::OddGauss:
            return w * w * std::hypot(x, s2) * std::exp(0.5 * (w * s2) * (w * s2)) *
                   std::exp(-0.5 * (w * x) * (w * x));
        case Kind::EvenGauss:
            return w * std::exp(0.5 * (w * s2) * (w * s2)) * std::exp(-0.5 * (w * x) * (w * x));
    }
    return 0.0;
}

double Kernel::tail_mass(double u) const {
    const double w = param_;
    switch (kind_) {
        case Kind::Fejer: {
            double a = 2.0 * w;
            return ((1.0 - std::cos(a * u)) / u + a * (consts::pi / 2.0 - sine_integral(a * u))) /
                   (2.0 * w);
        }
        case Kind::OddGauss:
            return -std::exp(-0.5 * (w * u) * (w * u));
        case Kind::EvenGauss:
            return std::sqrt(consts::pi / 2.0) * std::erfc(w * u / std::sqrt(2.0));
    }
    return 0.0;
}

double Kernel::envelope_cutoff(double tol) const {
    const double w = param_;
    switch (kind_) {
        case Kind::Fejer:
            return std::sqrt(1.0 / (w * tol));
        case Kind::OddGauss:
        case Kind::EvenGauss: {
            double lim = 2.0 * std::log(std::max(w * w, 2.0) / tol);
            return std::sqrt(std::max(lim, 1.0)) / w;
        }
    }
    return 0.0;
}

double Kernel::osc_frequency() const {
    return kind_ == Kind::Fejer ? 2.0 * param_ : 3.0 * param_;
}

double Kernel::support_end() const {
    return kind_ == Kind::Fejer ? std::exp(2.0 * param_) : 0.0;
}

std::string Kernel::name() const {
    switch (kind_) {
        case Kind::Fejer: return "fejer";
        case Kind::OddGauss: return "odd_gauss";
        case Kind::EvenGauss: return "even_gauss";
    }
    return "?";
}

std::string Kernel::to_json() const {
    nlohmann::json j;
    j["kind"] = name();
    j["param"] = param_;
    return j.dump();
}

Kernel Kernel::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("kind") || !j.contains("param"))
        fail(Status::ConfigError, "kernel descriptor must be {kind, param}");
    std::string k = j["kind"].get<std::string>();
    double p = j["param"].get<double>();
    if (k == "fejer") return fejer(p);
    if (k == "odd_gauss") return odd_gauss(p);
    if (k == "even_gauss") return even_gauss(p);
    fail(Status::ConfigError, "unknown kernel kind: " + k);
}

} // namespace zr
