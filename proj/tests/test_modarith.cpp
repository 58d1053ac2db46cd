#include <doctest.h>

#include "charsum/errors.hpp"
#include "charsum/modarith.hpp"

using namespace charsum;

namespace {

// independent oracle: Legendre symbol by Euler's criterion, extended to odd
// composite moduli through the prime factorization
int jacobi_by_euler(i64 n, i64 q) {
    int out = 1;
    for (const auto& f : factorize(q)) {
        for (int e = 0; e < f.exponent; ++e) {
            i64 r = mod_pow(n, (f.prime - 1) / 2, f.prime);
            out *= r == f.prime - 1 ? -1 : static_cast<int>(r);
        }
    }
    return out;
}

} // namespace

TEST_CASE("jacobi symbol examples") {
    for (i64 q : {1, 3, 9, 15, 45, 101}) CHECK(jacobi_symbol(1, q) == 1);
    CHECK(jacobi_symbol(5, 15) == 0);
    CHECK(jacobi_symbol(2, 15) == 1); // (2|3)(2|5) = (-1)(-1)
    CHECK_THROWS_AS(jacobi_symbol(3, 10), error);
    CHECK_THROWS_AS(jacobi_symbol(3, 0), error);
    CHECK_THROWS_AS(jacobi_symbol(3, -5), error);
}

TEST_CASE("jacobi symbol matches the Euler-criterion oracle") {
    for (i64 q = 1; q <= 99; q += 2)
        for (i64 n = 0; n < q; ++n) CHECK(jacobi_symbol(n, q) == jacobi_by_euler(n, q));
}

TEST_CASE("jacobi symbol periodicity and negatives") {
    for (i64 q : {15, 21, 33}) {
        for (i64 n = -q; n < q; ++n) {
            CHECK(jacobi_symbol(n, q) == jacobi_symbol(n + q, q));
            CHECK(jacobi_symbol(n, q) == jacobi_symbol(n + 5 * q, q));
        }
    }
}

TEST_CASE("mod_inverse") {
    for (i64 c : {2, 7, 10, 31}) CHECK(mod_inverse(1, c) == 1);
    CHECK(mod_inverse(3, 10) == 7);
    CHECK_THROWS_AS(mod_inverse(2, 4), error);
    for (i64 c = 1; c <= 40; ++c)
        for (i64 a = 0; a < c; ++a) {
            if (gcd_ll(a, c) != 1) continue;
            CHECK(a * mod_inverse(a, c) % c == 1 % c);
        }
}

TEST_CASE("factorization and Modulus invariants") {
    for (i64 q = 1; q <= 300; ++q) {
        Modulus m(q);
        i64 prod = 1;
        i64 prev = 0;
        for (const auto& f : m.factorization()) {
            CHECK(f.prime > prev);
            prev = f.prime;
            for (int e = 0; e < f.exponent; ++e) prod *= f.prime;
        }
        CHECK(prod == q);
        CHECK(m.totient() == euler_phi(q));
    }
    CHECK(Modulus(30).is_squarefree());
    CHECK_FALSE(Modulus(12).is_squarefree());
    CHECK(Modulus(15).is_odd());
    CHECK_FALSE(Modulus(10).is_odd());
}

TEST_CASE("number-theoretic helpers") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(15) == 1);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(divisor_count(12) == 6);
    CHECK(divisors(12) == std::vector<i64>{1, 2, 3, 4, 6, 12});
    CHECK(smallest_primitive_root(7) == 3);
    CHECK(smallest_primitive_root(41) == 6);
    // Euler phi as a sum over gcd classes
    for (i64 n = 1; n <= 100; ++n) {
        i64 count = 0;
        for (i64 x = 1; x <= n; ++x)
            if (gcd_ll(x, n) == 1) ++count;
        CHECK(euler_phi(n) == count);
    }
}
