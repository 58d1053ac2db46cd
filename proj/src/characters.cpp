#include "charsum/characters.hpp"

#include <numeric>
#include <string>

#include "charsum/errors.hpp"

namespace charsum {

namespace {

i64 lcm_ll(i64 a, i64 b) { return a / gcd_ll(a, b) * b; }

} // namespace

MultChar::MultChar(Modulus modulus, std::vector<i64> exponents)
    : q_(std::move(modulus)), exps_(std::move(exponents)) {
    if (!q_.is_squarefree())
        throw error(errc::unsupported_modulus, "MultChar: modulus must be squarefree");
    const auto& fs = q_.factorization();
    if (exps_.size() != fs.size())
        throw error(errc::invalid_input, "MultChar: one exponent per prime factor required");

    order_ = 1;
    parity_ = 1;
    bool principal = true;
    bool jacobi = q_.is_odd();
    dlogs_.resize(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        i64 p = fs[i].prime;
        i64 group = (p == 2) ? 1 : p - 1;
        exps_[i] = mod_reduce(exps_[i], group);
        if (exps_[i] != 0) principal = false;
        if (p != 2 && exps_[i] != (p - 1) / 2) jacobi = false;
        order_ = lcm_ll(order_, group / gcd_ll(exps_[i], group));
        if (p != 2 && exps_[i] % 2 != 0) parity_ = -parity_;

        auto& tab = dlogs_[i];
        tab.assign(p, -1);
        if (p == 2) {
            tab[1] = 0;
        } else {
            i64 g = smallest_primitive_root(p);
            i64 acc = 1;
            for (i64 j = 0; j < p - 1; ++j) {
                tab[acc] = j;
                acc = acc * g % p;
            }
        }
    }
    kind_ = principal ? CharKind::principal
                      : (jacobi ? CharKind::jacobi_real : CharKind::general);
}

UnityRoot MultChar::operator()(i64 x) const {
    x = mod_reduce(x, q_.value());
    UnityRoot v = UnityRoot::one();
    const auto& fs = q_.factorization();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        i64 p = fs[i].prime;
        i64 xi = x % p;
        if (dlogs_[i][xi] < 0) return UnityRoot::zero();
        i64 group = (p == 2) ? 1 : p - 1;
        if (exps_[i] != 0) v = v * UnityRoot::of(exps_[i] * dlogs_[i][xi], group);
    }
    return v;
}

std::complex<double> MultChar::value(i64 x) const { return (*this)(x).to_complex(); }

MultChar MultChar::conjugate() const {
    std::vector<i64> e(exps_.size());
    const auto& fs = q_.factorization();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        i64 group = (fs[i].prime == 2) ? 1 : fs[i].prime - 1;
        e[i] = mod_reduce(-exps_[i], group);
    }
    return MultChar(q_, e);
}

std::vector<std::complex<double>> MultChar::value_table() const {
    i64 q = q_.value();
    std::vector<std::complex<double>> tab(q);
    for (i64 x = 0; x < q; ++x) tab[x] = value(x);
    return tab;
}

std::vector<MultChar> enumerate_characters(const Modulus& q) {
    if (!q.is_squarefree())
        throw error(errc::unsupported_modulus,
                    "enumerate_characters: modulus " + std::to_string(q.value()) + " is not squarefree");
    const auto& fs = q.factorization();
    std::vector<i64> groups;
    groups.reserve(fs.size());
    for (const auto& f : fs) groups.push_back(f.prime == 2 ? 1 : f.prime - 1);

    std::vector<MultChar> out;
    std::vector<i64> e(fs.size(), 0);
    for (;;) {
        out.emplace_back(q, e);
        // odometer, last coordinate fastest: lexicographic emission order
        std::size_t i = fs.size();
        for (;;) {
            if (i == 0) return out;
            --i;
            if (++e[i] < groups[i]) break;
            e[i] = 0;
            if (i == 0) return out;
        }
    }
}

MultChar principal_character(const Modulus& q) {
    return MultChar(q, std::vector<i64>(q.factorization().size(), 0));
}

MultChar jacobi_character(const Modulus& q) {
    if (!q.is_odd() || !q.is_squarefree())
        throw error(errc::unsupported_modulus, "jacobi_character: q must be odd squarefree");
    std::vector<i64> e;
    for (const auto& f : q.factorization()) e.push_back((f.prime - 1) / 2);
    return MultChar(q, e);
}

} // namespace charsum
