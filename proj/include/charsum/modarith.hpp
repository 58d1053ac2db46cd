#ifndef CHARSUM_MODARITH_HPP
#define CHARSUM_MODARITH_HPP

#include <cstdint>
#include <vector>

namespace charsum {

using i64 = long long;

i64 gcd_ll(i64 a, i64 b);
i64 mod_pow(i64 base, i64 exp, i64 mod);

// Inverse of a modulo c; throws not_invertible when gcd(a, c) > 1.
i64 mod_inverse(i64 a, i64 c);

// Jacobi symbol (n|q) for odd q >= 1; throws invalid_input otherwise.
int jacobi_symbol(i64 n, i64 q);

bool is_prime(i64 n);
i64 smallest_primitive_root(i64 p);

struct Factor {
    i64 prime;
    int exponent;
};

std::vector<Factor> factorize(i64 n);
std::vector<i64> divisors(i64 n);
i64 euler_phi(i64 n);
int mobius(i64 n);
i64 divisor_count(i64 n);

// A positive modulus with its factorization pinned at construction.
class Modulus {
public:
    explicit Modulus(i64 q);

    i64 value() const { return q_; }
    const std::vector<Factor>& factorization() const { return factors_; }
    bool is_squarefree() const { return squarefree_; }
    bool is_odd() const { return q_ % 2 != 0; }
    i64 totient() const { return phi_; }

private:
    i64 q_;
    std::vector<Factor> factors_;
    bool squarefree_;
    i64 phi_;
};

// Residue in [0, q), value-semantic.
struct Residue {
    i64 value;
    i64 modulus;
};

inline i64 mod_reduce(i64 x, i64 q) {
    i64 r = x % q;
    return r < 0 ? r + q : r;
}

} // namespace charsum

#endif
