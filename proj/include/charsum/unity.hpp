#ifndef CHARSUM_UNITY_HPP
#define CHARSUM_UNITY_HPP

#include <complex>
#include <numbers>

#include "charsum/modarith.hpp"

namespace charsum {

// Exact character value: either 0 or e(num/den) with the fraction reduced.
// Complex evaluation happens on demand so identities can be checked without
// premature rounding.
class UnityRoot {
public:
    static UnityRoot zero() { return UnityRoot(true, 0, 1); }
    static UnityRoot one() { return UnityRoot(false, 0, 1); }
    static UnityRoot of(i64 num, i64 den) {
        num = mod_reduce(num, den);
        i64 g = gcd_ll(num, den);
        if (num == 0) g = den;
        return UnityRoot(false, num / g, den / g);
    }

    bool is_zero() const { return zero_; }
    i64 numerator() const { return num_; }
    i64 denominator() const { return den_; }

    UnityRoot operator*(const UnityRoot& o) const {
        if (zero_ || o.zero_) return zero();
        i64 den = den_ / gcd_ll(den_, o.den_) * o.den_;
        return of(num_ * (den / den_) + o.num_ * (den / o.den_), den);
    }

    bool operator==(const UnityRoot& o) const {
        return zero_ == o.zero_ && num_ == o.num_ && den_ == o.den_;
    }

    std::complex<double> to_complex() const {
        if (zero_) return {0.0, 0.0};
        if (num_ == 0) return {1.0, 0.0};
        if (2 * num_ == den_) return {-1.0, 0.0};
        double theta = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
        return std::polar(1.0, theta);
    }

private:
    UnityRoot(bool zero, i64 num, i64 den) : zero_(zero), num_(num), den_(den) {}
    bool zero_;
    i64 num_, den_;
};

} // namespace charsum

#endif
