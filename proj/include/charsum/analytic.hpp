#ifndef CHARSUM_ANALYTIC_HPP
#define CHARSUM_ANALYTIC_HPP

#include <vector>

#include "charsum/modarith.hpp"
#include "charsum/parallel.hpp"

namespace charsum {

// Incomplete-gamma weight of the approximate functional equation,
// V(y) = Gamma(k/2)^{-1} int_{2 pi y}^inf e^{-x} x^{k/2-1} dx, in closed form
// for even k. V(0) = 1; strictly decreasing.
double V_weight(double y, int k);

// Smallest y with V(y) < eps (V is monotone).
double V_support(int k, double eps = 1e-12);

// V(x) sum_{d <= d_max, (d,q)=1} d^{-1} V(d x1) V(d x2); harmonic divergence
// at x1 = x2 = 0 is reported through the flag with an infinite tail bound.
struct V3Result {
    double value;
    double tail_bound;
    bool divergent;
};
V3Result V3_weight(double x, double x1, double x2, i64 q, int k, i64 d_max);

// J_nu(z) for integer nu >= 0: Miller downward recurrence with the series
// normalization below the asymptotic range, Hankel expansion beyond.
double bessel_J(int nu, double z);

// J(x) = 4 pi i^k x^{-1} J_{k-1}(2 pi x), real for even k.
double bessel_kernel(double x, int k);

struct DiagonalResult {
    double value;
    double reference; // (8/3) (phi(q)/q) (log q)^3
    double ratio;
    double tail_estimate;
    bool tail_warning;
    double y_support;
};
DiagonalResult diagonal_D(i64 q, int k);

struct MomentConfig {
    i64 q = 5;
    int k = 12;
    i64 N_max = 0; // 0 = auto: ceil(3 k q), trimmed by the V support
    i64 C_max = 0; // 0 = auto: extend until the crude modulus tail < 1e-6 of the total
    i64 d_max = 0; // 0 = auto from the V support
};

struct PerCRow {
    i64 c;
    double S_c;        // the inner triple sum S(c)
    double contrib;    // c^{-2} S(c)
    double cumulative; // D + running Kloosterman part
};

struct MomentReport {
    MomentConfig config; // with resolved cutoffs
    i64 N_eff = 0;
    double D_value = 0.0;
    double kloosterman_part = 0.0;
    double total = 0.0;
    double tail_modulus = 0.0;
    double tail_box = 0.0;
    double tail_diagonal = 0.0;
    double tail_estimate = 0.0;
    std::vector<PerCRow> per_c;
};

MomentReport cubic_moment_rhs(const MomentConfig& cfg, const Parallelism& par = {});

} // namespace charsum

#endif
