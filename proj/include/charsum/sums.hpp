#ifndef CHARSUM_SUMS_HPP
#define CHARSUM_SUMS_HPP

#include <complex>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/modarith.hpp"

namespace charsum {

enum class SumMethod { brute, closed_form, identity };

// A computed sum value with a worst-case absolute error. |Im| <= abs_error
// for sums known to be real.
struct SumValue {
    std::complex<double> value;
    double abs_error;
    SumMethod method;
};

const char* method_name(SumMethod m);

// e_c(j) = exp(2 pi i j / c) for j = 0..c-1
std::vector<std::complex<double>> unit_roots(i64 c);

// tau(chi) = sum over x mod q of chi(x) e_q(x)
SumValue gauss_sum(const MultChar& chi);

// R(m; q) = S(0, m; q), evaluated exactly by the divisor formula
// sum_{d | (m,q)} d mu(q/d).
i64 ramanujan_sum_int(i64 m, i64 q);
SumValue ramanujan_sum(i64 m, i64 q);

// S(m, n; c) by direct summation over units, fixed ascending order.
SumValue kloosterman(i64 m, i64 n, i64 c);

// Angle omega in [0, pi] with S(m, n; c) = 2 sqrt(c) cos(omega); only defined
// for prime c with (mn, c) = 1, otherwise throws angle_undefined.
struct KloostermanAngle {
    SumValue sum;
    double angle;
};
KloostermanAngle kloosterman_with_angle(i64 m, i64 n, i64 c);

// Weil bound (m, n, c)^{1/2} c^{1/2} tau(c)
double weil_bound(i64 m, i64 n, i64 c);

// Table of S(1, t; c) for all t mod c, built in one pass over the units.
// Lookups for S(m, n; c) reduce to the base row whenever m or n is coprime to
// c; the remaining gcd classes are summed directly at lookup time.
class KloostermanTable {
public:
    explicit KloostermanTable(i64 c);
    // test hook: adopt an externally supplied row
    KloostermanTable(i64 c, std::vector<double> row);

    i64 modulus() const { return c_; }
    const std::vector<double>& row() const { return row_; }
    double max_imag() const { return max_imag_; }
    double abs_error() const { return abs_error_; }

    double at(i64 m, i64 n) const;

private:
    i64 c_;
    std::vector<double> row_;
    double max_imag_;
    double abs_error_;
};

// Memoized per-modulus tables; construction is once-only, lookups are
// read-only and freely concurrent.
const KloostermanTable& kloosterman_table(i64 c);

// Full row S(m, t; c), t = 0..c-1, for a fixed first argument (used by the
// harnesses when gcd(m, c) > 1 so the base row does not apply).
std::vector<double> kloosterman_row(i64 m, i64 c);

} // namespace charsum

#endif
