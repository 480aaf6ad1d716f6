#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace zetalab {

/// All primes p <= limit in increasing order.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Smallest-prime-factor table on [0, limit]; spf[0] = spf[1] = 0.
class FactorTable {
public:
    explicit FactorTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::uint64_t smallest_factor(std::uint64_t n) const { return spf_[n]; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }

    /// (prime, multiplicity) pairs of n, n <= limit.
    std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
};

/// Distinct prime divisors of n by trial division (n >= 1).
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

}  // namespace zetalab
