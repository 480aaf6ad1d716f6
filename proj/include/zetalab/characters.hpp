#pragma once

#include <cstdint>
#include <vector>

#include "zetalab/numerics.hpp"

namespace zetalab {

/// Dirichlet character modulo q, built from the CRT decomposition of (Z/qZ)^*.
///
/// Characters mod q are numbered 0 .. phi(q)-1 in mixed radix over the cyclic
/// factors (odd prime powers by increasing prime, then -1 and 5 for 2^e).
/// Index 0 is the principal character; for q = 4, index 1 is chi_4.
class DirichletCharacter {
public:
    static constexpr int kMaxRegistryModulus = 20;

    DirichletCharacter(int modulus, int index);

    /// phi(q): how many characters exist mod q.
    static int count(int modulus);

    int modulus() const { return modulus_; }
    int index() const { return index_; }

    Complex operator()(std::uint64_t n) const { return values_[n % static_cast<std::uint64_t>(modulus_)]; }

    bool is_principal() const { return index_ == 0; }
    bool is_real() const;

    bool operator==(const DirichletCharacter& other) const {
        return modulus_ == other.modulus_ && index_ == other.index_;
    }

private:
    int modulus_;
    int index_;
    std::vector<Complex> values_;
};

}  // namespace zetalab
