#include "zetares/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "zetares/common.hpp"

namespace zr {

namespace {

// simple segmented sieve; base primes up to sqrt(hi)
std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return out;
}

} // namespace

std::vector<std::uint64_t> sieve_primes(double lo, double hi) {
    if (!(lo <= hi)) fail(Status::InvalidArgument, "sieve_primes: lo > hi");
    if (hi < 2.0) return {};
    if (hi > 4.0e12) fail(Status::InvalidArgument, "sieve_primes: range too large");

    // primes p with lo < p <= hi
    std::uint64_t first = (lo < 2.0) ? 2 : static_cast<std::uint64_t>(std::floor(lo)) + 1;
    std::uint64_t last = static_cast<std::uint64_t>(std::floor(hi));
    if (first > last) return {};

    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(last))) + 1;
    auto base = base_primes(std::max<std::uint64_t>(root, 3));

    std::vector<std::uint64_t> out;
    const std::uint64_t seg = 1 << 20;
    for (std::uint64_t start = first; start <= last; start += seg) {
        std::uint64_t end = std::min(last, start + seg - 1);
        std::vector<bool> comp(end - start + 1, false);
        for (std::uint32_t p : base) {
            std::uint64_t pp = p;
            if (pp * pp > end) break;
            std::uint64_t from = std::max(pp * pp, ((start + pp - 1) / pp) * pp);
            for (std::uint64_t j = from; j <= end; j += pp) comp[j - start] = true;
        }
        for (std::uint64_t v = start; v <= end; ++v)
            if (v >= 2 && !comp[v - start]) out.push_back(v);
    }
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<PrimePower> build_prime_powers(double limit) {
    std::vector<PrimePower> out;
    if (limit < 2.0) return out;
    auto primes = sieve_primes(1.0, limit);
    for (std::uint64_t p : primes) {
        std::uint64_t v = p;
        int k = 1;
        while (static_cast<double>(v) <= limit) {
            out.push_back({v, p, k});
            if (static_cast<double>(v) > limit / static_cast<double>(p)) break;
            v *= p;
            ++k;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
    return out;
}

} // namespace

std::shared_ptr<const std::vector<PrimePower>> prime_powers_up_to(double limit) {
    static std::mutex mtx;
    static double cached_limit = 0.0;
    static std::shared_ptr<const std::vector<PrimePower>> cached =
        std::make_shared<const std::vector<PrimePower>>();
    std::lock_guard<std::mutex> lk(mtx);
    if (limit > cached_limit) {
        double grow = std::max(limit, 2.0 * cached_limit);
        cached = std::make_shared<const std::vector<PrimePower>>(build_prime_powers(grow));
        cached_limit = grow;
    }
    // the cache may extend past the requested limit; callers stop early
    return cached;
}

} // namespace zr
