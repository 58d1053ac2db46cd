#include "charsum/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "charsum/budget.hpp"
#include "charsum/errors.hpp"
#include "charsum/sums.hpp"

namespace charsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVCut = 1e-12;

void require_even_weight(int k, int floor_k, const char* who) {
    if (k < floor_k || k % 2 != 0)
        throw error(errc::invalid_input,
                    std::string(who) + ": weight must be even and >= " + std::to_string(floor_k));
}

double hankel_asymptotic(int nu, double z) {
    double mu = 4.0 * static_cast<double>(nu) * static_cast<double>(nu);
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 40; ++j) {
        double odd = 2.0 * j - 1.0;
        term *= (mu - odd * odd) / (8.0 * z * j);
        if (std::abs(term) >= prev) break; // divergence onset
        prev = std::abs(term);
        int r = j % 4;
        if (r == 1) q += term;
        else if (r == 2) p -= term;
        else if (r == 3) q -= term;
        else p += term;
        if (std::abs(term) < 1e-18) break;
    }
    double omega = z - 0.5 * nu * kPi - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * z)) * (p * std::cos(omega) - q * std::sin(omega));
}

double miller_recurrence(int nu, double z) {
    // downward recurrence with normalization J_0 + 2 J_2 + 2 J_4 + ... = 1
    int start = static_cast<int>(std::max<double>(nu, std::ceil(z))) + 60;
    if (start % 2) ++start;
    double jp = 0.0, jc = 1e-300;
    double norm = 0.0, value = 0.0;
    for (int r = start; r >= 1; --r) {
        double jm = (2.0 * r / z) * jc - jp;
        jp = jc;
        jc = jm;
        int order = r - 1;
        if (order == nu) value = jc;
        if (order > 0 && order % 2 == 0) norm += 2.0 * jc;
        if (std::abs(jc) > 1e250) { // rescale to avoid overflow
            jc *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            value *= 1e-250;
        }
    }
    norm += jc; // J_0
    return value / norm;
}

} // namespace

double V_weight(double y, int k) {
    require_even_weight(k, 2, "V_weight");
    if (y < 0.0) throw error(errc::domain, "V_weight: y must be nonnegative");
    int K = k / 2;
    double t = 2.0 * kPi * y;
    double e = std::exp(-t);
    if (e == 0.0) return 0.0;
    double term = 1.0, sum = 0.0;
    for (int j = 0; j < K; ++j) {
        sum += term;
        term *= t / (j + 1);
    }
    return e * sum;
}

double V_support(int k, double eps) {
    double lo = 0.0, hi = 1.0;
    while (V_weight(hi, k) >= eps) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
        double mid = 0.5 * (lo + hi);
        (V_weight(mid, k) >= eps ? lo : hi) = mid;
    }
    return hi;
}

V3Result V3_weight(double x, double x1, double x2, i64 q, int k, i64 d_max) {
    require_even_weight(k, 2, "V3_weight");
    if (x < 0.0 || x1 < 0.0 || x2 < 0.0) throw error(errc::domain, "V3_weight: arguments must be >= 0");
    if (d_max < 1) throw error(errc::invalid_input, "V3_weight: d_max must be >= 1");
    double vx = V_weight(x, k);
    double sum = 0.0;
    for (i64 d = 1; d <= d_max; ++d) {
        if (gcd_ll(d, q) != 1) continue;
        double v1 = V_weight(d * x1, k);
        if (v1 == 0.0) break; // strictly decreasing in d
        double v2 = V_weight(d * x2, k);
        if (v2 == 0.0 && x2 > 0.0) break;
        sum += v1 * v2 / static_cast<double>(d);
    }
    V3Result r;
    r.value = vx * sum;
    double s = x1 + x2;
    if (s == 0.0) {
        r.divergent = true;
        r.tail_bound = std::numeric_limits<double>::infinity();
    } else {
        r.divergent = false;
        // V(y) <= 2^{k/2-1} e^{-pi y} gives a geometric majorant for the tail
        double c = std::pow(2.0, k - 2); // (2^{K-1})^2
        double e = std::exp(-kPi * s);
        r.tail_bound = vx * c * std::pow(e, static_cast<double>(d_max + 1)) /
                       (static_cast<double>(d_max + 1) * (1.0 - e));
    }
    return r;
}

double bessel_J(int nu, double z) {
    if (nu < 0) throw error(errc::invalid_input, "bessel_J: order must be >= 0");
    if (z < 0.0) throw error(errc::domain, "bessel_J: argument must be >= 0");
    if (z == 0.0) return nu == 0 ? 1.0 : 0.0;
    // at z = 4 pi nu the Hankel terms reach ~1e-11 before diverging for the
    // orders used here (nu <= 15); larger orders would need a wider Miller range
    double threshold = std::max(30.0, 4.0 * kPi * nu);
    if (z >= threshold) return hankel_asymptotic(nu, z);
    return miller_recurrence(nu, z);
}

double bessel_kernel(double x, int k) {
    require_even_weight(k, 12, "bessel_kernel");
    if (x <= 0.0) throw error(errc::domain, "bessel_kernel: x must be positive");
    double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0; // i^k for even k
    return 4.0 * kPi * sign * bessel_J(k - 1, 2.0 * kPi * x) / x;
}

DiagonalResult diagonal_D(i64 q, int k) {
    require_even_weight(k, 2, "diagonal_D");
    Modulus mq(q);
    if (!mq.is_odd() || !mq.is_squarefree())
        throw error(errc::unsupported_modulus, "diagonal_D: q must be odd squarefree");
    double ystar = V_support(k, kVCut);
    i64 L = static_cast<i64>(std::floor(ystar * static_cast<double>(q)));
    double dq = static_cast<double>(q);

    std::vector<double> vtab(L + 1, 0.0);
    for (i64 n = 1; n <= L; ++n) vtab[n] = V_weight(static_cast<double>(n) / dq, k);

    double acc = 0.0;
    for (i64 d = 1; d <= L; ++d) {
        if (gcd_ll(d, q) != 1) continue;
        i64 n1max = L / d;
        for (i64 n1 = 1; n1 <= n1max; ++n1) {
            if (gcd_ll(n1, q) != 1) continue;
            double vd1 = vtab[d * n1];
            if (vd1 == 0.0) continue;
            i64 n2max = std::min(L / d, L / n1);
            double inner = 0.0;
            for (i64 n2 = 1; n2 <= n2max; ++n2) {
                if (gcd_ll(n2, q) != 1) continue;
                inner += vtab[n1 * n2] * vtab[d * n2] / static_cast<double>(n2);
            }
            acc += inner * vd1 / static_cast<double>(d * n1);
        }
    }
    DiagonalResult r;
    r.value = 8.0 * acc;
    double lq = std::log(dq);
    r.reference = (8.0 / 3.0) * (static_cast<double>(mq.totient()) / dq) * lq * lq * lq;
    r.ratio = r.value / r.reference;
    double hl = std::log(static_cast<double>(L)) + 1.0;
    r.tail_estimate = 8.0 * 3.0 * kVCut * hl * hl;
    r.tail_warning = r.tail_estimate > 1e-6 * r.value;
    r.y_support = ystar;
    return r;
}

namespace {

// crude per-modulus bound: 8 c^{-2} sum over the box of the Weil bound times
// the proven |J| envelope times the positive weight V3
double modulus_tail_bound(i64 c, i64 q, int k, i64 n_eff, const std::vector<int>& chi_q,
                          const std::vector<double>& vn, const std::vector<double>& sig) {
    double dc = static_cast<double>(c);
    double tau_c = static_cast<double>(divisor_count(c));
    double a_k = 4.0 * std::pow(kPi, k) / std::tgamma(static_cast<double>(k)); // 4 pi^k / (k-1)!
    double acc = 0.0;
    std::size_t nn = static_cast<std::size_t>(n_eff);
    for (i64 n = 1; n <= n_eff; ++n) {
        if (chi_q[n % q] == 0) continue;
        for (i64 n1 = 1; n1 <= n_eff; ++n1) {
            if (chi_q[n1 % q] == 0) continue;
            for (i64 n2 = n1; n2 <= n_eff; ++n2) {
                if (chi_q[n2 % q] == 0) continue;
                double v3 = vn[n] * sig[(n1 - 1) * nn + (n2 - 1)];
                if (v3 < 1e-18) continue;
                i64 g3 = gcd_ll(gcd_ll(n, n1 * n2), c);
                double x = 2.0 * std::sqrt(static_cast<double>(n * n1 * n2)) / dc;
                // |J(x)| <= 4 pi x^{-1} min(1, (pi x)^{k-1}/(k-1)!, 0.7858 (2 pi x)^{-1/3})
                double jb = std::min(a_k * std::pow(x, k - 2),
                                     4.0 * kPi / x *
                                         std::min(1.0, 0.7858 / std::cbrt(2.0 * kPi * x)));
                double term = std::sqrt(static_cast<double>(g3)) * jb * v3;
                acc += (n1 == n2) ? term : 2.0 * term;
            }
        }
    }
    return 8.0 * std::sqrt(dc) * tau_c * acc / (dc * dc);
}

} // namespace

MomentReport cubic_moment_rhs(const MomentConfig& cfg, const Parallelism& par) {
    i64 q = cfg.q;
    int k = cfg.k;
    require_even_weight(k, 12, "cubic_moment_rhs");
    Modulus mq(q);
    if (!mq.is_odd() || !mq.is_squarefree() || q < 3)
        throw error(errc::unsupported_modulus, "cubic_moment_rhs: q must be odd squarefree > 1");
    // chi(-1) = i^k, otherwise every central value vanishes
    int chi_m1 = jacobi_symbol(q - 1, q);
    int ik = (k / 2) % 2 == 0 ? 1 : -1;
    if (chi_m1 != ik)
        throw error(errc::parity_violation,
                    "cubic_moment_rhs: chi(-1) != i^k for q=" + std::to_string(q) +
                        ", k=" + std::to_string(k));

    MomentReport rep;
    rep.config = cfg;
    double dq = static_cast<double>(q);
    double ystar = V_support(k, kVCut);

    i64 n_req = cfg.N_max > 0 ? cfg.N_max : static_cast<i64>(std::ceil(3.0 * k * dq));
    i64 n_support = static_cast<i64>(std::floor(ystar * dq)) + 1;
    i64 n_eff = std::min(n_req, n_support);
    i64 d_max = cfg.d_max > 0 ? cfg.d_max : n_support;
    rep.config.N_max = n_req;
    rep.config.d_max = d_max;
    rep.N_eff = n_eff;

    DiagonalResult diag = diagonal_D(q, k);
    rep.D_value = diag.value;
    rep.tail_diagonal = diag.tail_estimate;

    std::vector<int> chi_q(q);
    for (i64 x = 0; x < q; ++x) chi_q[x] = jacobi_symbol(x, q);

    std::vector<double> vn(n_eff + 1, 0.0);
    for (i64 n = 1; n <= n_eff; ++n) vn[n] = V_weight(static_cast<double>(n) / dq, k);

    // sigma(n1,n2) = sum_{(d,q)=1, d<=d_max} V(d n1/q) V(d n2/q)/d
    std::size_t nn = static_cast<std::size_t>(n_eff);
    std::vector<double> sig(nn * nn, 0.0);
    for (i64 n1 = 1; n1 <= n_eff; ++n1)
        for (i64 n2 = n1; n2 <= n_eff; ++n2) {
            double s = 0.0;
            for (i64 d = 1; d <= d_max; ++d) {
                if (gcd_ll(d, q) != 1) continue;
                double v1 = V_weight(d * static_cast<double>(n1) / dq, k);
                if (v1 == 0.0) break;
                s += v1 * V_weight(d * static_cast<double>(n2) / dq, k) / static_cast<double>(d);
            }
            sig[(n1 - 1) * nn + (n2 - 1)] = s;
            sig[(n2 - 1) * nn + (n1 - 1)] = s;
        }

    // box-trim tail: every skipped triple has some V factor below the cut
    {
        double harm = 0.0;
        for (i64 d = 1; d <= d_max; ++d) harm += 1.0 / static_cast<double>(d);
        double per_triple = kVCut * (1.0 + harm);
        double nb = static_cast<double>(n_req);
        double ne = static_cast<double>(n_eff);
        double skipped = std::max(0.0, nb * nb * nb - ne * ne * ne);
        double csum = 0.0;
        for (i64 c = q; c <= 60 * q; c += q)
            csum += std::sqrt(static_cast<double>(c)) * static_cast<double>(divisor_count(c)) /
                    (static_cast<double>(c) * static_cast<double>(c));
        double jmax = 2.2; // max |J| over x (k >= 12), generous
        rep.tail_box = 8.0 * skipped * per_triple * jmax * csum;
    }

    i64 c_cap = cfg.C_max > 0 ? cfg.C_max : global_budget().moment_c;
    bool auto_cap = cfg.C_max == 0;

    auto compute_sc = [&](i64 c) {
        const auto& table = kloosterman_table(c);
        const auto& base = table.row();
        std::vector<double> jcache(static_cast<std::size_t>(n_eff) * n_eff * n_eff + 1,
                                   std::numeric_limits<double>::quiet_NaN());
        // dedicated rows S(n, .; c) for n sharing a factor with c
        std::vector<std::vector<double>> bad_rows(n_eff + 1);
        double acc = 0.0;
        for (i64 n = 1; n <= n_eff; ++n) {
            int cn = chi_q[n % q];
            if (cn == 0) continue;
            bool n_unit = gcd_ll(n, c) == 1;
            i64 nc = n % c;
            for (i64 n1 = 1; n1 <= n_eff; ++n1) {
                int cn1 = chi_q[n1 % q] * cn;
                if (cn1 == 0) continue;
                for (i64 n2 = 1; n2 <= n_eff; ++n2) {
                    int s = chi_q[n2 % q] * cn1;
                    if (s == 0) continue;
                    double v3 = vn[n] * sig[(n1 - 1) * nn + (n2 - 1)];
                    if (v3 < 1e-300) continue;
                    i64 t = n1 * n2 % c;
                    double S;
                    if (n_unit || gcd_ll(t, c) == 1) {
                        S = base[nc * t % c];
                    } else {
                        auto& row = bad_rows[n];
                        if (row.empty()) row = kloosterman_row(n, c);
                        S = row[t];
                    }
                    i64 P = n * n1 * n2;
                    double J = jcache[P];
                    if (std::isnan(J)) {
                        double x = 2.0 * std::sqrt(static_cast<double>(P)) / static_cast<double>(c);
                        J = bessel_kernel(x, k);
                        jcache[P] = J;
                    }
                    acc += static_cast<double>(s) * S * J * v3;
                }
            }
        }
        return 8.0 * acc;
    };

    double kpart = 0.0;
    double tail_mod = 0.0;
    const i64 block = 8;
    for (i64 c0 = q; c0 <= c_cap;) {
        std::vector<i64> cs;
        for (i64 c = c0; c <= c_cap && static_cast<i64>(cs.size()) < block; c += q) cs.push_back(c);
        if (cs.empty()) break;
        // per-c sums are independent; reduce in ascending order
        auto vals = parallel_map<double>(cs.size(), par,
                                         [&](std::size_t i) { return compute_sc(cs[i]); });
        for (std::size_t i = 0; i < cs.size(); ++i) {
            double contrib = vals[i] / (static_cast<double>(cs[i]) * static_cast<double>(cs[i]));
            kpart += contrib;
            rep.per_c.push_back({cs[i], vals[i], contrib, rep.D_value + kpart});
        }
        c0 = cs.back() + q;
        // crude bound on everything beyond the last processed modulus
        double t = 0.0;
        i64 c_next = c0;
        double last = 0.0;
        for (int j = 0; j < 400; ++j) {
            last = modulus_tail_bound(c_next, q, k, n_eff, chi_q, vn, sig);
            t += last;
            c_next += q;
            if (last < 1e-4 * t || last == 0.0) break;
        }
        t += last * static_cast<double>(c_next) / (9.0 * static_cast<double>(q)); // geometric closure
        tail_mod = t;
        if (auto_cap && tail_mod < 1e-6 * std::max(std::abs(rep.D_value + kpart), 1e-3)) {
            rep.config.C_max = cs.back();
            break;
        }
        rep.config.C_max = cs.back();
    }
    rep.kloosterman_part = kpart;
    rep.total = rep.D_value + kpart;
    rep.tail_modulus = tail_mod;
    rep.tail_estimate = rep.tail_modulus + rep.tail_box + rep.tail_diagonal;
    return rep;
}

} // namespace charsum
