#ifndef CHARSUM_LWEIGHTS_HPP
#define CHARSUM_LWEIGHTS_HPP

#include <complex>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/extfield.hpp"
#include "charsum/parallel.hpp"
#include "charsum/sums.hpp"

namespace charsum {

// Minimal linear recurrence fitted to g_1..g_M with the last term held out;
// the characteristic roots are the reciprocal roots of the rational L(T) and
// their magnitudes give the weights.
struct LSeriesFit {
    i64 p = 0;
    i64 psi_index = 0;
    std::vector<std::complex<double>> sequence;
    int order = 0;
    std::vector<std::complex<double>> reciprocal_roots; // |root| descending
    std::vector<std::complex<double>> coefficients;     // g_m ~ sum_j coeff_j root_j^m
    std::vector<double> weights;                        // 2 ln|root| / ln p, descending
    double residual = 0.0;                              // held-out |prediction - actual|
    double scale = 0.0;                                 // max |g_m|
    bool pass = false;
};

// g(chi_m, psi_m) over F_{p^m} with both characters lifted through the norm;
// chi is the real character mod p, psi any character mod p.
SumValue g_extension(i64 p, int m, const MultChar& psi_mod_p, const Parallelism& par = {});

LSeriesFit fit_lfunction(const std::vector<std::complex<double>>& g, i64 p, int d_max = 4);

struct WeightAuditRow {
    i64 psi_index;       // position in enumerate_characters(p)
    bool principal;
    bool real_chi;       // psi equals the real character chi (treated separately)
    bool flagged;        // some fitted weight exceeds 2.1
    LSeriesFit fit;
};

std::vector<WeightAuditRow> weight_audit(i64 p, int terms, const Parallelism& par = {});

// Largest m with p^m within the extension-field budget.
int default_audit_terms(i64 p);

} // namespace charsum

#endif
