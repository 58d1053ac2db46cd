#include "charsum/extfield.hpp"

#include <map>
#include <mutex>
#include <string>

#include "charsum/budget.hpp"
#include "charsum/errors.hpp"

namespace charsum {

namespace {

using Poly = std::vector<i64>; // coefficients, degree = size-1, over F_p

int degree_of(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly poly_mod(Poly a, const Poly& f, i64 p) {
    int df = degree_of(f);
    i64 lead_inv = mod_inverse(f[df], p);
    for (int i = degree_of(a); i >= df; i = degree_of(a)) {
        i64 c = a[i] * lead_inv % p;
        for (int j = 0; j <= df; ++j)
            a[i - df + j] = mod_reduce(a[i - df + j] - c * f[j], p);
    }
    a.resize(df);
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, i64 p) {
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(c), f, p);
}

Poly poly_powmod(Poly base, i64 e, const Poly& f, i64 p) {
    Poly acc{1};
    while (e > 0) {
        if (e & 1) acc = poly_mulmod(acc, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return acc;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
    while (degree_of(b) >= 0) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin's test: f monic of degree m is irreducible iff x^{p^m} = x (mod f)
// and gcd(x^{p^{m/s}} - x, f) = 1 for every prime s | m.
bool is_irreducible(const Poly& f, i64 p, int m) {
    if (m == 1) return true;
    Poly x{0, 1};
    Poly h = x; // x^{p^i} mod f, iterated
    std::vector<int> checkpoints;
    for (const auto& fac : factorize(m)) checkpoints.push_back(m / static_cast<int>(fac.prime));
    for (int i = 1; i <= m; ++i) {
        h = poly_powmod(h, p, f, p);
        bool is_checkpoint = false;
        for (int c : checkpoints)
            if (c == i) is_checkpoint = true;
        if (is_checkpoint) {
            Poly d = h;
            d.resize(std::max<std::size_t>(d.size(), 2), 0);
            d[1] = mod_reduce(d[1] - 1, p);
            if (degree_of(poly_gcd(f, d, p)) > 0) return false;
        }
    }
    // h is now x^{p^m} mod f
    Poly d = h;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = mod_reduce(d[1] - 1, p);
    return degree_of(d) < 0;
}

} // namespace

ExtField::ExtField(i64 p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw error(errc::invalid_input, "ExtField: p must be prime");
    if (m < 1) throw error(errc::invalid_input, "ExtField: degree must be >= 1");
    q_ = 1;
    for (int i = 0; i < m; ++i) {
        q_ *= p;
        if (q_ > global_budget().ext_field)
            throw error(errc::budget_exceeded,
                        "ExtField: p^m exceeds budget " + std::to_string(global_budget().ext_field));
    }

    // lexicographically smallest monic irreducible of degree m
    poly_.assign(m + 1, 0);
    poly_[m] = 1;
    for (i64 n = 0;; ++n) {
        if (n >= q_) throw error(errc::invalid_input, "ExtField: no irreducible found");
        i64 t = n;
        for (int i = 0; i < m; ++i) {
            poly_[i] = t % p;
            t /= p;
        }
        if (is_irreducible(poly_, p, m)) break;
    }

    // multiplication via digit polynomials, only needed while building tables
    auto decode = [&](i64 a) {
        Poly v(m, 0);
        for (int i = 0; i < m; ++i) {
            v[i] = a % p;
            a /= p;
        }
        return v;
    };
    auto encode = [&](const Poly& v) {
        i64 a = 0;
        for (int i = m - 1; i >= 0; --i) a = a * p + (i < static_cast<int>(v.size()) ? v[i] : 0);
        return a;
    };
    auto field_mul = [&](i64 a, i64 b) {
        Poly c = poly_mulmod(decode(a), decode(b), poly_, p);
        c.resize(m, 0);
        return encode(c);
    };
    auto field_pow = [&](i64 a, i64 e) {
        i64 acc = 1, base = a;
        while (e > 0) {
            if (e & 1) acc = field_mul(acc, base);
            base = field_mul(base, base);
            e >>= 1;
        }
        return acc;
    };

    // multiplicative generator: smallest encoding with full order
    i64 ord = q_ - 1;
    auto ordfac = factorize(ord == 0 ? 1 : ord);
    i64 g = 0;
    for (i64 cand = 2; cand < q_; ++cand) {
        bool ok = true;
        for (const auto& f : ordfac) {
            if (field_pow(cand, ord / f.prime) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0 && q_ > 2) throw error(errc::invalid_input, "ExtField: no generator found");
    if (q_ == 2) g = 1;

    exp_.assign(ord > 0 ? ord : 1, 1);
    log_.assign(q_, -1);
    i64 acc = 1;
    for (i64 j = 0; j < ord; ++j) {
        exp_[j] = acc;
        log_[acc] = j;
        acc = field_mul(acc, g);
    }

    plus_one_.resize(q_);
    minus_one_.resize(q_);
    for (i64 a = 0; a < q_; ++a) {
        i64 low = a % p;
        plus_one_[a] = a - low + (low + 1) % p;
        minus_one_[a] = a - low + (low + p - 1) % p;
    }

    // norm(g^j) = (g^{(q-1)/(p-1)})^j, and g^{(q-1)/(p-1)} generates F_p^*
    i64 sub_ord = (p > 2) ? p - 1 : 1;
    norm_of_log_.assign(sub_ord, 1);
    if (ord > 0) {
        i64 gamma = field_pow(g, ord / sub_ord);
        i64 v = 1;
        for (i64 j = 0; j < sub_ord; ++j) {
            norm_of_log_[j] = v; // gamma^j is a constant polynomial, encoding < p
            v = field_mul(v, gamma);
        }
    }
}

i64 ExtField::add(i64 a, i64 b) const {
    i64 out = 0, mult = 1;
    for (int i = 0; i < m_; ++i) {
        out += (a % p_ + b % p_) % p_ * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return out;
}

i64 ExtField::sub(i64 a, i64 b) const {
    i64 out = 0, mult = 1;
    for (int i = 0; i < m_; ++i) {
        out += (a % p_ - b % p_ + p_) % p_ * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return out;
}

i64 ExtField::pow(i64 a, i64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[mod_reduce(log_[a] * (e % (q_ - 1)), q_ - 1)];
}

FieldChar::FieldChar(const ExtField& F, i64 index) : F_(&F), t_(mod_reduce(index, F.size() - 1)) {}

i64 FieldChar::order() const {
    i64 n = F_->size() - 1;
    return n / gcd_ll(t_, n);
}

FieldChar lift_character(const ExtField& F, const MultChar& chi_mod_p) {
    if (chi_mod_p.modulus().value() != F.p())
        throw error(errc::invalid_input, "lift_character: character modulus must equal field characteristic");
    if (F.p() == 2) return FieldChar(F, 0);
    i64 p = F.p();
    // chi at gamma = norm(generator) determines the lifted index
    i64 gamma = F.norm(F.exp(1));
    UnityRoot v = chi_mod_p(gamma);
    if (v.is_zero()) throw error(errc::invalid_input, "lift_character: norm of generator not a unit");
    i64 s = v.numerator() * ((p - 1) / v.denominator());
    return FieldChar(F, s * ((F.size() - 1) / (p - 1)));
}

const ExtField& ext_field_cached(i64 p, int m) {
    static std::mutex mu;
    static std::map<std::pair<i64, int>, std::unique_ptr<ExtField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<ExtField>(p, m)).first;
    return *it->second;
}

} // namespace charsum
