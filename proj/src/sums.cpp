#include "charsum/sums.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "charsum/budget.hpp"
#include "charsum/errors.hpp"

namespace charsum {

std::vector<std::complex<double>> unit_roots(i64 c) {
    std::vector<std::complex<double>> r(c);
    for (i64 j = 0; j < c; ++j)
        r[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(c));
    return r;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<std::complex<double>> root_table(i64 c) { return unit_roots(c); }

// inverses of all units mod c, -1 for non-units
std::vector<i64> unit_inverses(i64 c) {
    std::vector<i64> inv(c, -1);
    for (i64 d = (c == 1 ? 0 : 1); d < c; ++d) {
        if (gcd_ll(d, c) == 1) {
            i64 r0 = d, r1 = c, s0 = 1, s1 = 0;
            while (r1) {
                i64 qq = r0 / r1, r2 = r0 - qq * r1, s2 = s0 - qq * s1;
                r0 = r1; r1 = r2; s0 = s1; s1 = s2;
            }
            inv[d] = mod_reduce(s0, c);
        }
    }
    if (c == 1) inv[0] = 0;
    return inv;
}

} // namespace

const char* method_name(SumMethod m) {
    switch (m) {
        case SumMethod::brute: return "brute";
        case SumMethod::closed_form: return "closed_form";
        case SumMethod::identity: return "identity";
    }
    return "unknown";
}

SumValue gauss_sum(const MultChar& chi) {
    i64 q = chi.modulus().value();
    auto roots = root_table(q);
    std::complex<double> acc = 0.0;
    for (i64 x = 0; x < q; ++x) {
        UnityRoot v = chi(x);
        if (!v.is_zero()) acc += v.to_complex() * roots[x];
    }
    return {acc, 4.0 * static_cast<double>(q) * kEps, SumMethod::brute};
}

i64 ramanujan_sum_int(i64 m, i64 q) {
    if (q <= 0) throw error(errc::invalid_input, "ramanujan_sum: modulus must be positive");
    i64 g = gcd_ll(mod_reduce(m, q), q);
    if (g == 0) g = q; // m = 0 mod q
    i64 acc = 0;
    for (i64 d : divisors(g)) acc += d * mobius(q / d);
    return acc;
}

SumValue ramanujan_sum(i64 m, i64 q) {
    return {{static_cast<double>(ramanujan_sum_int(m, q)), 0.0}, 0.0, SumMethod::closed_form};
}

SumValue kloosterman(i64 m, i64 n, i64 c) {
    if (c <= 0) throw error(errc::invalid_input, "kloosterman: modulus must be positive");
    auto roots = root_table(c);
    auto inv = unit_inverses(c);
    m = mod_reduce(m, c);
    n = mod_reduce(n, c);
    std::complex<double> acc = 0.0;
    for (i64 d = 0; d < c; ++d) {
        if (inv[d] < 0) continue;
        acc += roots[(m * d + n * inv[d]) % c];
    }
    return {acc, 4.0 * static_cast<double>(c) * kEps, SumMethod::brute};
}

KloostermanAngle kloosterman_with_angle(i64 m, i64 n, i64 c) {
    if (!is_prime(c))
        throw error(errc::angle_undefined, "kloosterman angle: modulus must be prime");
    if (gcd_ll(mod_reduce(m, c) * mod_reduce(n, c) % c, c) != 1)
        throw error(errc::angle_undefined, "kloosterman angle: arguments must be coprime to the modulus");
    SumValue s = kloosterman(m, n, c);
    double ratio = s.value.real() / (2.0 * std::sqrt(static_cast<double>(c)));
    ratio = std::min(1.0, std::max(-1.0, ratio));
    return {s, std::acos(ratio)};
}

double weil_bound(i64 m, i64 n, i64 c) {
    i64 g = gcd_ll(gcd_ll(mod_reduce(m, c) == 0 ? c : mod_reduce(m, c),
                          mod_reduce(n, c) == 0 ? c : mod_reduce(n, c)),
                   c);
    return std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(c)) *
           static_cast<double>(divisor_count(c));
}

KloostermanTable::KloostermanTable(i64 c) : c_(c) {
    if (c <= 0) throw error(errc::invalid_input, "KloostermanTable: modulus must be positive");
    if (c > global_budget().kloosterman_c)
        throw error(errc::budget_exceeded, "KloostermanTable: modulus exceeds budget");
    auto roots = root_table(c);
    auto inv = unit_inverses(c);
    std::vector<std::complex<double>> acc(c, 0.0);
    for (i64 d = 0; d < c; ++d) {
        if (inv[d] < 0) continue;
        i64 di = inv[d];
        i64 idx = d; // (d + t*di) mod c, advanced incrementally
        for (i64 t = 0; t < c; ++t) {
            acc[t] += roots[idx];
            idx += di;
            if (idx >= c) idx -= c;
        }
    }
    row_.resize(c);
    max_imag_ = 0.0;
    for (i64 t = 0; t < c; ++t) {
        row_[t] = acc[t].real();
        max_imag_ = std::max(max_imag_, std::abs(acc[t].imag()));
    }
    abs_error_ = 4.0 * static_cast<double>(c) * kEps;
}

KloostermanTable::KloostermanTable(i64 c, std::vector<double> row)
    : c_(c), row_(std::move(row)), max_imag_(0.0), abs_error_(4.0 * static_cast<double>(c) * kEps) {
    if (static_cast<i64>(row_.size()) != c)
        throw error(errc::invalid_input, "KloostermanTable: row length must equal the modulus");
}

double KloostermanTable::at(i64 m, i64 n) const {
    m = mod_reduce(m, c_);
    n = mod_reduce(n, c_);
    if (gcd_ll(m, c_) == 1 || gcd_ll(n, c_) == 1) return row_[m * n % c_];
    // both arguments share a factor with c: direct summation
    return kloosterman(m, n, c_).value.real();
}

const KloostermanTable& kloosterman_table(i64 c) {
    static std::mutex mu;
    static std::map<i64, std::unique_ptr<KloostermanTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, std::make_unique<KloostermanTable>(c)).first;
    return *it->second;
}

std::vector<double> kloosterman_row(i64 m, i64 c) {
    auto roots = root_table(c);
    auto inv = unit_inverses(c);
    m = mod_reduce(m, c);
    std::vector<std::complex<double>> acc(c, 0.0);
    for (i64 d = 0; d < c; ++d) {
        if (inv[d] < 0) continue;
        i64 di = inv[d];
        i64 idx = m * d % c;
        for (i64 t = 0; t < c; ++t) {
            acc[t] += roots[idx];
            idx += di;
            if (idx >= c) idx -= c;
        }
    }
    std::vector<double> out(c);
    for (i64 t = 0; t < c; ++t) out[t] = acc[t].real();
    return out;
}

} // namespace charsum
