#ifndef CHARSUM_CHARACTERS_HPP
#define CHARSUM_CHARACTERS_HPP

#include <complex>
#include <memory>
#include <vector>

#include "charsum/modarith.hpp"
#include "charsum/unity.hpp"

namespace charsum {

enum class CharKind { principal, jacobi_real, general };

// Multiplicative character mod squarefree q, stored as one exponent per prime
// factor with respect to the smallest primitive root. Immutable after
// construction; evaluation is table-driven and thread-safe.
class MultChar {
public:
    // exponents[i] pairs with modulus.factorization()[i]; for p = 2 the only
    // exponent is 0.
    MultChar(Modulus modulus, std::vector<i64> exponents);

    const Modulus& modulus() const { return q_; }
    const std::vector<i64>& exponents() const { return exps_; }
    CharKind kind() const { return kind_; }
    i64 order() const { return order_; }
    int parity() const { return parity_; } // chi(-1)
    bool is_principal() const { return kind_ == CharKind::principal; }
    bool is_real() const { return order_ <= 2; }

    UnityRoot operator()(i64 x) const;
    std::complex<double> value(i64 x) const;
    MultChar conjugate() const;

    // Values at 0..q-1 evaluated once; the workhorse for sum loops.
    std::vector<std::complex<double>> value_table() const;

private:
    Modulus q_;
    std::vector<i64> exps_;
    CharKind kind_;
    i64 order_;
    int parity_;
    // per-prime discrete log tables: dlog_[i][x mod p_i] with dlog of 0 = -1
    std::vector<std::vector<i64>> dlogs_;
};

// All phi(q) characters mod squarefree q in deterministic order: lexicographic
// in the per-prime exponent vector. Throws unsupported_modulus otherwise.
std::vector<MultChar> enumerate_characters(const Modulus& q);

MultChar principal_character(const Modulus& q);

// The real primitive character (Jacobi symbol) mod odd squarefree q.
MultChar jacobi_character(const Modulus& q);

} // namespace charsum

#endif
