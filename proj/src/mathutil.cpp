#include "zetares/mathutil.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace zr {

std::complex<double> log_gamma(std::complex<double> z) {
    // Lanczos, g = 7, 9 coefficients.
    static const double g = 7.0;
    static const std::array<double, 9> c = {
        0.99999999999980993,    676.5203681218851,      -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7};
    if (z.real() <= 0.0)
        fail(Status::Domain, "log_gamma: Re z must be positive");
    z -= 1.0;
    std::complex<double> x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    std::complex<double> t = z + g + 0.5;
    static const double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

double sine_integral(double x) {
    if (x < 0.0) return -sine_integral(-x);
    if (x <= 18.0) {
        // Si(x) = sum (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
        long double term = x, sum = x;
        const long double x2 = static_cast<long double>(x) * x;
        for (int k = 1; k < 120; ++k) {
            term *= -x2 / ((2.0L * k) * (2.0L * k + 1.0L));
            long double add = term / (2.0L * k + 1.0L);
            sum += add;
            if (std::abs(add) < 1e-20L * std::abs(sum)) break;
        }
        return static_cast<double>(sum);
    }
    // asymptotic: Si(x) = pi/2 - cos(x)/x * P(1/x^2) - sin(x)/x^2 * Q(1/x^2)
    long double inv2 = 1.0L / (static_cast<long double>(x) * x);
    long double p = 0.0L, q = 0.0L, fp = 1.0L, fq = 1.0L;
    long double prev_p = 1e400L;
    for (int k = 0; k < 40; ++k) {
        // fp = (2k)!/x^{2k}, fq = (2k+1)!/x^{2k}
        if (fp > prev_p) break; // truncate at the smallest term
        prev_p = fp;
        p += (k % 2 ? -fp : fp);
        q += (k % 2 ? -fq : fq);
        fp *= (2.0L * k + 1.0L) * (2.0L * k + 2.0L) * inv2;
        fq *= (2.0L * k + 2.0L) * (2.0L * k + 3.0L) * inv2;
    }
    long double r = consts::pi_l / 2.0L - std::cos((long double)x) / x * p -
                    std::sin((long double)x) * inv2 * q;
    return static_cast<double>(r);
}

const long double* bernoulli2k() {
    static const long double b[] = {
        1.0L / 6.0L,           -1.0L / 30.0L,        1.0L / 42.0L,
        -1.0L / 30.0L,         5.0L / 66.0L,         -691.0L / 2730.0L,
        7.0L / 6.0L,           -3617.0L / 510.0L,    43867.0L / 798.0L,
        -174611.0L / 330.0L,   854513.0L / 138.0L,   -236364091.0L / 2730.0L,
        8553103.0L / 6.0L};
    return b;
}

int bernoulli2k_count() { return 13; }

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& payload) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(payload.data(), payload.size())));
    return buf;
}

std::string decimal_product(const std::vector<std::uint64_t>& factors) {
    // little-endian limbs, base 1e9
    std::vector<std::uint32_t> limbs{1};
    for (std::uint64_t f : factors) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs) {
            unsigned __int128 v = static_cast<unsigned __int128>(limb) * f + carry;
            limb = static_cast<std::uint32_t>(v % 1000000000u);
            carry = static_cast<std::uint64_t>(v / 1000000000u);
        }
        while (carry) {
            limbs.push_back(static_cast<std::uint32_t>(carry % 1000000000u));
            carry /= 1000000000u;
        }
    }
    std::string out = std::to_string(limbs.back());
    char buf[12];
    for (auto it = limbs.rbegin() + 1; it != limbs.rend(); ++it) {
        std::snprintf(buf, sizeof buf, "%09u", *it);
        out += buf;
    }
    return out;
}

} // namespace zr
