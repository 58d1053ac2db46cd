#ifndef CHARSUM_EXTFIELD_HPP
#define CHARSUM_EXTFIELD_HPP

#include <vector>

#include "charsum/characters.hpp"
#include "charsum/modarith.hpp"
#include "charsum/unity.hpp"

namespace charsum {

// Explicit model of F_{p^m}: polynomial basis modulo the lexicographically
// smallest monic irreducible of degree m. Elements are encoded as integers in
// [0, p^m) via base-p digits (constant coefficient least significant).
// Multiplication, discrete logs and the norm are table-driven after
// construction, so evaluation from many threads is safe.
class ExtField {
public:
    ExtField(i64 p, int m);

    i64 p() const { return p_; }
    int degree() const { return m_; }
    i64 size() const { return q_; }
    const std::vector<i64>& modulus_poly() const { return poly_; }

    i64 generator() const { return q_ == 2 ? 1 : exp_[1]; }

    i64 add(i64 a, i64 b) const;
    i64 sub(i64 a, i64 b) const;
    i64 mul(i64 a, i64 b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    i64 pow(i64 a, i64 e) const;

    i64 plus_one(i64 a) const { return plus_one_[a]; }
    i64 minus_one(i64 a) const { return minus_one_[a]; }

    // dlog with respect to the generator; -1 for the zero element
    i64 log(i64 a) const { return log_[a]; }
    i64 exp(i64 j) const { return exp_[mod_reduce(j, q_ - 1)]; }

    // Norm down to F_p as a residue in [0, p); norm(0) = 0.
    i64 norm(i64 a) const { return a == 0 ? 0 : norm_of_log_[log_[a] % (p_ > 2 ? p_ - 1 : 1)]; }

    // Embedding of a residue mod p (constant polynomial).
    i64 embed(i64 a) const { return mod_reduce(a, p_); }

private:
    i64 p_;
    int m_;
    i64 q_;
    std::vector<i64> poly_;
    std::vector<i64> exp_, log_, plus_one_, minus_one_, norm_of_log_;
};

// Character of F_{p^m}^*: psi(g^j) = e(t j / (p^m - 1)); 0 at the zero element.
class FieldChar {
public:
    FieldChar(const ExtField& F, i64 index);

    const ExtField& field() const { return *F_; }
    i64 index() const { return t_; }
    i64 order() const;
    bool is_principal() const { return t_ == 0; }

    UnityRoot operator()(i64 x) const {
        if (x == 0) return UnityRoot::zero();
        if (t_ == 0) return UnityRoot::one();
        return UnityRoot::of(t_ * F_->log(x), F_->size() - 1);
    }
    std::complex<double> value(i64 x) const { return (*this)(x).to_complex(); }
    FieldChar conjugate() const { return FieldChar(*F_, mod_reduce(-t_, F_->size() - 1)); }

private:
    const ExtField* F_;
    i64 t_;
};

// chi mod p composed with the norm map: chi_m(x) = chi(N(x)).
FieldChar lift_character(const ExtField& F, const MultChar& chi_mod_p);

// Process-wide cache; fields are built once per (p, m) and never evicted.
const ExtField& ext_field_cached(i64 p, int m);

} // namespace charsum

#endif
