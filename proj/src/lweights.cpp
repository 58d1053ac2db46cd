#include "charsum/lweights.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "charsum/budget.hpp"
#include "charsum/errors.hpp"
#include "charsum/paper_sums.hpp"

namespace charsum {

SumValue g_extension(i64 p, int m, const MultChar& psi_mod_p, const Parallelism& par) {
    if (psi_mod_p.modulus().value() != p)
        throw error(errc::invalid_input, "g_extension: psi must have modulus p");
    const ExtField& F = ext_field_cached(p, m);
    const auto& profile = ext_real_profile(F, par);
    i64 t = psi_mod_p.is_principal() ? 0 : lift_character(F, psi_mod_p).index();
    std::complex<double> v = ext_g_value(F, profile, t);
    double q = static_cast<double>(F.size());
    return {v, 8.0 * q * q * std::numeric_limits<double>::epsilon(), SumMethod::brute};
}

LSeriesFit fit_lfunction(const std::vector<std::complex<double>>& g, i64 p, int d_max) {
    const int M = static_cast<int>(g.size());
    if (M < 3) throw error(errc::invalid_input, "fit_lfunction: need at least 3 terms");
    if (d_max < 1) throw error(errc::invalid_input, "fit_lfunction: d_max must be >= 1");

    LSeriesFit fit;
    fit.p = p;
    fit.sequence = g;
    double scale = 0.0;
    for (const auto& z : g) scale = std::max(scale, std::abs(z));
    fit.scale = scale;
    if (scale == 0.0) { // identically zero: nothing to fit
        fit.order = 0;
        fit.residual = 0.0;
        fit.pass = true;
        return fit;
    }
    double accept = 1e-3 * scale;

    using Mat = Eigen::MatrixXcd;
    using Vec = Eigen::VectorXcd;

    int max_order = std::min<int>(d_max, (M - 1) / 2);
    int best_d = -1;
    double best_res = std::numeric_limits<double>::infinity();
    Vec best_coef;

    for (int d = 1; d <= max_order; ++d) {
        int rows = (M - 1) - d; // fit on the first M-1 terms
        Mat A(rows, d);
        Vec b(rows);
        for (int r = 0; r < rows; ++r) {
            int n = d + r;
            for (int i = 1; i <= d; ++i) A(r, i - 1) = g[n - i];
            b(r) = g[n];
        }
        Vec cs = A.colPivHouseholderQr().solve(b);
        std::complex<double> pred = 0.0;
        for (int i = 1; i <= d; ++i) pred += cs(i - 1) * g[M - 1 - i];
        double res = std::abs(pred - g[M - 1]);
        if (res < best_res) {
            best_res = res;
            best_d = d;
            best_coef = cs;
        }
        if (res < accept) break; // smallest order that validates
    }

    fit.order = best_d;
    fit.residual = best_res;
    fit.pass = best_res < accept;

    // roots of x^d - c_1 x^{d-1} - ... - c_d via the companion matrix
    int d = best_d;
    Mat comp = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) comp(0, i) = best_coef(i);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Mat> es(comp);
    std::vector<std::complex<double>> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = es.eigenvalues()(i);
    std::sort(roots.begin(), roots.end(),
              [](auto a, auto b) { return std::abs(a) > std::abs(b); });

    // linear-combination coefficients; in exact arithmetic these are -1 for
    // numerator roots and +1 for denominator roots
    Mat V(M, d);
    Vec rhs(M);
    for (int mm = 1; mm <= M; ++mm) {
        for (int j = 0; j < d; ++j) V(mm - 1, j) = std::pow(roots[j], mm);
        rhs(mm - 1) = g[mm - 1];
    }
    Vec kappa = V.colPivHouseholderQr().solve(rhs);

    fit.reciprocal_roots = roots;
    fit.coefficients.assign(d, 0.0);
    fit.weights.assign(d, 0.0);
    double logp = std::log(static_cast<double>(p));
    for (int j = 0; j < d; ++j) {
        fit.coefficients[j] = kappa(j);
        double mag = std::max(std::abs(roots[j]), 1e-15);
        fit.weights[j] = 2.0 * std::log(mag) / logp;
    }
    return fit;
}

std::vector<WeightAuditRow> weight_audit(i64 p, int terms, const Parallelism& par) {
    if (!is_prime(p) || p == 2)
        throw error(errc::invalid_input, "weight_audit: p must be an odd prime");
    if (terms < 3) throw error(errc::invalid_input, "weight_audit: need at least 3 terms");

    // one profile per degree, shared by every psi
    std::vector<const ExtRealProfile*> profiles(terms + 1, nullptr);
    for (int m = 1; m <= terms; ++m)
        profiles[m] = &ext_real_profile(ext_field_cached(p, m), par);

    auto psis = enumerate_characters(Modulus(p));
    std::vector<WeightAuditRow> out;
    out.reserve(psis.size());
    for (std::size_t idx = 0; idx < psis.size(); ++idx) {
        const MultChar& psi = psis[idx];
        std::vector<std::complex<double>> seq(terms);
        for (int m = 1; m <= terms; ++m) {
            const ExtField& F = ext_field_cached(p, m);
            i64 t = psi.is_principal() ? 0 : lift_character(F, psi).index();
            seq[m - 1] = ext_g_value(F, *profiles[m], t);
        }
        WeightAuditRow row;
        row.psi_index = static_cast<i64>(idx);
        row.principal = psi.is_principal();
        row.real_chi = psi.kind() == CharKind::jacobi_real;
        row.fit = fit_lfunction(seq, p);
        row.fit.psi_index = static_cast<i64>(idx);
        row.flagged = false;
        for (double w : row.fit.weights)
            if (w > 2.1) row.flagged = true;
        out.push_back(std::move(row));
    }
    return out;
}

int default_audit_terms(i64 p) {
    int m = 0;
    i64 sz = 1;
    while (sz * p <= global_budget().ext_field) {
        sz *= p;
        ++m;
    }
    return m;
}

} // namespace charsum
