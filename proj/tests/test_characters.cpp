#include <doctest.h>

#include <algorithm>
#include <complex>

#include "charsum/characters.hpp"
#include "charsum/errors.hpp"

using namespace charsum;

TEST_CASE("enumeration matches the group structure") {
    auto c5 = enumerate_characters(Modulus(5));
    REQUIRE(c5.size() == 4);
    std::vector<i64> orders;
    for (const auto& ch : c5) orders.push_back(ch.order());
    CHECK(orders == std::vector<i64>{1, 4, 2, 4});

    auto c2 = enumerate_characters(Modulus(2));
    REQUIRE(c2.size() == 1);
    CHECK(c2[0].is_principal());

    auto c15 = enumerate_characters(Modulus(15));
    REQUIRE(c15.size() == 8);
    int jacobi_count = 0;
    for (const auto& ch : c15)
        if (ch.kind() == CharKind::jacobi_real) ++jacobi_count;
    CHECK(jacobi_count == 1);

    CHECK_THROWS_AS(enumerate_characters(Modulus(9)), error);
}

TEST_CASE("jacobi character agrees with the jacobi symbol everywhere") {
    for (i64 q : {3, 5, 15, 21, 33, 105}) {
        auto chi = jacobi_character(Modulus(q));
        CHECK(chi.kind() == CharKind::jacobi_real);
        CHECK(chi.order() == 2);
        for (i64 x = 0; x < q; ++x) {
            std::complex<double> expect(static_cast<double>(jacobi_symbol(x, q)), 0.0);
            CHECK(std::abs(chi.value(x) - expect) < 1e-14);
        }
        CHECK(chi.parity() == jacobi_symbol(q - 1, q));
    }
}

TEST_CASE("character values are exact roots of unity of dividing order") {
    for (i64 q : {5, 7, 15, 33}) {
        for (const auto& ch : enumerate_characters(Modulus(q))) {
            for (i64 x = 0; x < q; ++x) {
                UnityRoot v = ch(x);
                if (gcd_ll(x, q) != 1) {
                    CHECK(v.is_zero());
                } else {
                    REQUIRE_FALSE(v.is_zero());
                    CHECK(ch.order() % v.denominator() == 0);
                }
            }
        }
    }
}

TEST_CASE("characters are completely multiplicative") {
    for (i64 q : {5, 15, 21}) {
        for (const auto& ch : enumerate_characters(Modulus(q))) {
            for (i64 a = 0; a < q; ++a)
                for (i64 b = 0; b < q; ++b)
                    CHECK(std::abs(ch.value(a * b) - ch.value(a) * ch.value(b)) < 1e-13);
        }
    }
}

TEST_CASE("conjugate character") {
    for (const auto& ch : enumerate_characters(Modulus(13))) {
        auto bar = ch.conjugate();
        for (i64 x = 0; x < 13; ++x)
            CHECK(std::abs(bar.value(x) - std::conj(ch.value(x))) < 1e-14);
    }
}

TEST_CASE("parity equals the value at -1") {
    for (i64 q : {3, 5, 7, 15, 21, 33}) {
        for (const auto& ch : enumerate_characters(Modulus(q))) {
            std::complex<double> at = ch.value(q - 1);
            CHECK(std::abs(at - static_cast<double>(ch.parity())) < 1e-13);
        }
    }
}

TEST_CASE("modulus one") {
    auto cs = enumerate_characters(Modulus(1));
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].value(0) == std::complex<double>(1.0, 0.0));
    CHECK(cs[0].value(7) == std::complex<double>(1.0, 0.0));
}
