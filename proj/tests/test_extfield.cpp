#include <doctest.h>

#include "charsum/budget.hpp"
#include "charsum/errors.hpp"
#include "charsum/extfield.hpp"

using namespace charsum;

TEST_CASE("F_9 model") {
    ExtField F(3, 2);
    CHECK(F.size() == 9);
    // x^2 + 1 is the smallest monic irreducible over F_3
    CHECK(F.modulus_poly() == std::vector<i64>{1, 0, 1});
    // generator has full multiplicative order
    i64 g = F.generator();
    i64 acc = g;
    int order = 1;
    while (acc != 1) {
        acc = F.mul(acc, g);
        ++order;
    }
    CHECK(order == 8);
    // norm of the generator generates F_3^*
    CHECK(F.norm(g) == 2);
}

TEST_CASE("degree-1 field reduces to residues") {
    ExtField F(7, 1);
    CHECK(F.size() == 7);
    for (i64 a = 0; a < 7; ++a) {
        CHECK(F.norm(a) == a); // norm is the identity
        for (i64 b = 0; b < 7; ++b) {
            CHECK(F.add(a, b) == (a + b) % 7);
            CHECK(F.mul(a, b) == a * b % 7);
        }
    }
}

TEST_CASE("field axioms on samples") {
    ExtField F(5, 3);
    for (i64 a = 0; a < F.size(); a += 7)
        for (i64 b = 0; b < F.size(); b += 11) {
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.sub(F.add(a, b), b) == a);
            // distributivity
            i64 c = (a * 13 + b * 7 + 3) % F.size();
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
    CHECK(F.plus_one(F.embed(4)) == 0);
    CHECK(F.minus_one(0) == F.embed(4));
}

TEST_CASE("norm is multiplicative and surjective") {
    for (auto [p, m] : {std::pair<i64, int>{3, 2}, {5, 2}, {7, 3}}) {
        ExtField F(p, m);
        std::vector<bool> hit(p, false);
        for (i64 a = 1; a < F.size(); ++a) hit[F.norm(a)] = true;
        for (i64 t = 1; t < p; ++t) CHECK(hit[t]);
        for (i64 a = 1; a < F.size(); a += 3)
            for (i64 b = 1; b < F.size(); b += 5)
                CHECK(F.norm(F.mul(a, b)) == F.norm(a) * F.norm(b) % p);
        // norm of a base-field element x is x^m
        for (i64 x = 1; x < p; ++x) CHECK(F.norm(F.embed(x)) == mod_pow(x, m, p));
    }
}

TEST_CASE("lifted real character is the quadratic character of the field") {
    ExtField F(5, 2);
    auto chi = jacobi_character(Modulus(5));
    FieldChar lifted = lift_character(F, chi);
    for (i64 x = 1; x < 25; ++x) {
        // quadratic character: x^{(q-1)/2} = x^{12} in the field
        i64 pw = F.pow(x, 12);
        double expect = pw == 1 ? 1.0 : -1.0;
        CHECK(std::abs(lifted.value(x).real() - expect) < 1e-14);
        CHECK(std::abs(lifted.value(x).imag()) < 1e-14);
    }
    CHECK(lifted(0).is_zero());
}

TEST_CASE("lift is multiplicative and restricts to chi^m on the base field") {
    for (auto [p, m] : {std::pair<i64, int>{5, 2}, {7, 2}, {11, 2}, {5, 3}}) {
        const ExtField& F = ext_field_cached(p, m);
        for (const auto& chi : enumerate_characters(Modulus(p))) {
            if (chi.is_principal()) continue;
            FieldChar cm = lift_character(F, chi);
            for (i64 a = 1; a < F.size(); a += 3)
                for (i64 b = 1; b < F.size(); b += 7) {
                    auto lhs = cm.value(F.mul(a, b));
                    auto rhs = cm.value(a) * cm.value(b);
                    CHECK(std::abs(lhs - rhs) < 1e-13);
                }
            for (i64 x = 1; x < p; ++x) {
                std::complex<double> expect = 1.0;
                for (int i = 0; i < m; ++i) expect *= chi.value(x);
                CHECK(std::abs(cm.value(F.embed(x)) - expect) < 1e-13);
            }
        }
    }
}

TEST_CASE("errors: non-prime p, size budget") {
    CHECK_THROWS_AS(ExtField(6, 2), error);
    CHECK_THROWS_AS(ExtField(2, 0), error);
    CHECK_THROWS_AS(ExtField(7, 6), error); // 7^6 > 2^15 default budget
}
