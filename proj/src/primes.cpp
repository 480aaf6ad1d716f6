#include "zetalab/primes.hpp"

#include <numeric>

#include "zetalab/errors.hpp"

namespace zetalab {

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
    }
    return out;
}

FactorTable::FactorTable(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
    if (limit > 0xFFFFFFFFull) throw DomainError("FactorTable: limit too large");
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (spf_[p] != 0) continue;
        for (std::uint64_t q = p; q <= limit; q += p)
            if (spf_[q] == 0) spf_[q] = static_cast<std::uint32_t>(p);
    }
}

std::vector<std::pair<std::uint64_t, int>> FactorTable::factorize(std::uint64_t n) const {
    if (n > limit_) throw TruncationError("FactorTable: argument beyond table limit");
    std::vector<std::pair<std::uint64_t, int>> out;
    while (n > 1) {
        const std::uint64_t p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace zetalab
