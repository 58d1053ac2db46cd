#include "charsum/modarith.hpp"

#include <algorithm>
#include <string>

#include "charsum/errors.hpp"

namespace charsum {

i64 gcd_ll(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 mod_pow(i64 base, i64 exp, i64 mod) {
    if (mod <= 0) throw error(errc::invalid_input, "mod_pow: modulus must be positive");
    base = mod_reduce(base, mod);
    i64 acc = 1 % mod;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return acc;
}

i64 mod_inverse(i64 a, i64 c) {
    if (c <= 0) throw error(errc::invalid_input, "mod_inverse: modulus must be positive");
    a = mod_reduce(a, c);
    // extended Euclid on (a, c)
    i64 r0 = a, r1 = c, s0 = 1, s1 = 0;
    while (r1) {
        i64 qq = r0 / r1;
        i64 r2 = r0 - qq * r1;
        i64 s2 = s0 - qq * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1)
        throw error(errc::not_invertible,
                    "mod_inverse: " + std::to_string(a) + " not invertible mod " + std::to_string(c));
    return mod_reduce(s0, c);
}

int jacobi_symbol(i64 n, i64 q) {
    if (q <= 0 || q % 2 == 0)
        throw error(errc::invalid_input, "jacobi_symbol: modulus must be odd and positive");
    n = mod_reduce(n, q);
    int t = 1;
    while (n != 0) {
        while (n % 2 == 0) {
            n /= 2;
            i64 r = q % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(n, q);
        if (n % 4 == 3 && q % 4 == 3) t = -t;
        n %= q;
    }
    return q == 1 ? t : 0;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

i64 smallest_primitive_root(i64 p) {
    if (p == 2) return 1;
    if (!is_prime(p)) throw error(errc::invalid_input, "smallest_primitive_root: p must be prime");
    i64 ord = p - 1;
    auto fs = factorize(ord);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& f : fs) {
            if (mod_pow(g, ord / f.prime, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw error(errc::invalid_input, "smallest_primitive_root: none found");
}

std::vector<Factor> factorize(i64 n) {
    if (n <= 0) throw error(errc::invalid_input, "factorize: argument must be positive");
    std::vector<Factor> out;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.push_back({d, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> out{1};
    for (const auto& f : factorize(n)) {
        std::size_t sz = out.size();
        i64 pe = 1;
        for (int e = 1; e <= f.exponent; ++e) {
            pe *= f.prime;
            for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 euler_phi(i64 n) {
    i64 phi = 1;
    for (const auto& f : factorize(n)) {
        i64 pe = 1;
        for (int e = 1; e < f.exponent; ++e) pe *= f.prime;
        phi *= pe * (f.prime - 1);
    }
    return phi;
}

int mobius(i64 n) {
    int m = 1;
    for (const auto& f : factorize(n)) {
        if (f.exponent > 1) return 0;
        m = -m;
    }
    return m;
}

i64 divisor_count(i64 n) {
    i64 t = 1;
    for (const auto& f : factorize(n)) t *= f.exponent + 1;
    return t;
}

Modulus::Modulus(i64 q) : q_(q) {
    if (q <= 0) throw error(errc::invalid_input, "Modulus: value must be positive");
    factors_ = factorize(q);
    squarefree_ = true;
    phi_ = 1;
    for (const auto& f : factors_) {
        if (f.exponent > 1) squarefree_ = false;
        i64 pe = 1;
        for (int e = 1; e < f.exponent; ++e) pe *= f.prime;
        phi_ *= pe * (f.prime - 1);
    }
}

} // namespace charsum
