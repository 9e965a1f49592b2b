#pragma once
// Prime generation and factor queries backing the resonator construction
// and the prime-power Dirichlet sums.

#include <cstdint>
#include <memory>
#include <vector>

namespace zr {

// Primes p with lo < p <= hi, ascending. Real-valued bounds so callers can
// pass analytic window edges directly; empty ranges give empty output.
std::vector<std::uint64_t> sieve_primes(double lo, double hi);

bool is_prime(std::uint64_t n);

struct PrimePower {
    std::uint64_t value; // p^k
    std::uint64_t p;
    int k;
};

// Prime powers sorted by value, covering at least [2, limit]; the shared
// list may extend further, so iterate with an explicit bound.
std::shared_ptr<const std::vector<PrimePower>> prime_powers_up_to(double limit);

} // namespace zr
