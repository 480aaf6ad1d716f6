#include "zetalab/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "zetalab/errors.hpp"
#include "zetalab/primes.hpp"

namespace zetalab {

namespace {

struct CyclicFactor {
    int order;
    std::vector<int> log;  // discrete log of each residue mod q (units only)
};

std::int64_t power_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    std::int64_t r = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

// exp(2 pi i num/den), exact on the quarter points.
Complex unit_root(std::int64_t num, std::int64_t den) {
    num %= den;
    if (num < 0) num += den;
    if ((4 * num) % den == 0) {
        switch ((4 * num) / den) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<CyclicFactor> decompose(int q) {
    std::vector<CyclicFactor> factors;
    std::vector<std::pair<int, int>> prime_powers;  // (p, e)
    int rest = q;
    for (int p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        prime_powers.emplace_back(p, e);
    }
    // odd primes first, 2 last
    std::vector<std::pair<int, int>> ordered;
    for (auto pe : prime_powers)
        if (pe.first != 2) ordered.push_back(pe);
    for (auto pe : prime_powers)
        if (pe.first == 2) ordered.push_back(pe);

    for (auto [p, e] : ordered) {
        int pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p != 2) {
            const int order = pe / p * (p - 1);
            int g = 2;
            for (;; ++g) {
                if (std::gcd(g, pe) != 1) continue;
                bool primitive = true;
                for (int d = 1; d < order; ++d) {
                    if (order % d == 0 && power_mod(g, d, pe) == 1) {
                        primitive = false;
                        break;
                    }
                }
                if (primitive) break;
            }
            CyclicFactor f{order, std::vector<int>(q, -1)};
            std::vector<int> log_mod(pe, -1);
            std::int64_t x = 1;
            for (int j = 0; j < order; ++j) {
                log_mod[x] = j;
                x = x * g % pe;
            }
            for (int n = 0; n < q; ++n)
                if (std::gcd(n, q) == 1) f.log[n] = log_mod[n % pe];
            factors.push_back(std::move(f));
        } else if (e >= 2) {
            // sign factor generated by -1
            CyclicFactor sign{2, std::vector<int>(q, -1)};
            for (int n = 0; n < q; ++n)
                if (std::gcd(n, q) == 1) sign.log[n] = (n % 4 == 1) ? 0 : 1;
            factors.push_back(std::move(sign));
            if (e >= 3) {
                const int order = pe / 4;
                std::vector<int> log_mod(pe, -1);
                std::int64_t x = 1;
                for (int j = 0; j < order; ++j) {
                    log_mod[x] = j;
                    x = x * 5 % pe;
                }
                CyclicFactor five{order, std::vector<int>(q, -1)};
                for (int n = 0; n < q; ++n) {
                    if (std::gcd(n, q) != 1) continue;
                    int r = n % pe;
                    if (r % 4 != 1) r = (pe - r) % pe;
                    five.log[n] = log_mod[r];
                }
                factors.push_back(std::move(five));
            }
        }
    }
    return factors;
}

}  // namespace

int DirichletCharacter::count(int modulus) {
    if (modulus < 1) throw DomainError("DirichletCharacter: modulus must be >= 1");
    int c = 0;
    for (int n = 1; n <= modulus; ++n)
        if (std::gcd(n, modulus) == 1) ++c;
    return c;
}

DirichletCharacter::DirichletCharacter(int modulus, int index) : modulus_(modulus), index_(index) {
    if (modulus < 1 || modulus > kMaxRegistryModulus)
        throw DomainError("DirichletCharacter: modulus must lie in [1, 20]");
    if (index < 0 || index >= count(modulus)) throw DomainError("DirichletCharacter: index out of range");
    const auto factors = decompose(modulus);
    std::vector<int> exponents;
    int rem = index;
    std::int64_t lcm = 1;
    for (const auto& f : factors) {
        exponents.push_back(rem % f.order);
        rem /= f.order;
        lcm = std::lcm(lcm, static_cast<std::int64_t>(f.order));
    }
    values_.assign(modulus, Complex{0.0, 0.0});
    for (int n = 0; n < modulus; ++n) {
        if (std::gcd(n, modulus) != 1) continue;
        std::int64_t num = 0;
        for (std::size_t i = 0; i < factors.size(); ++i)
            num += static_cast<std::int64_t>(exponents[i]) * factors[i].log[n] * (lcm / factors[i].order);
        values_[n] = unit_root(num, lcm);
    }
    if (modulus == 1) values_[0] = 1.0;
}

bool DirichletCharacter::is_real() const {
    for (const auto& v : values_)
        if (v.imag() != 0.0) return false;
    return true;
}

}  // namespace zetalab
