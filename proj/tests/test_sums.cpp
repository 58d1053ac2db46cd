#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "charsum/errors.hpp"
#include "charsum/sums.hpp"
#include "charsum/verify.hpp"

using namespace charsum;

TEST_CASE("gauss sums") {
    // principal chi mod prime p: sum of all p-th roots minus 1
    for (i64 p : {5, 7, 13}) {
        auto tau = gauss_sum(principal_character(Modulus(p)));
        CHECK(std::abs(tau.value - std::complex<double>(-1.0, 0.0)) < 1e-12);
    }
    // real chi mod 5: tau = sqrt(5)
    auto t5 = gauss_sum(jacobi_character(Modulus(5)));
    CHECK(std::abs(t5.value - std::complex<double>(std::sqrt(5.0), 0.0)) < 1e-10);
    // tau^2 = chi(-1) q for the real primitive character
    for (i64 q : {3, 5, 7, 11, 15, 21, 33}) {
        auto chi = jacobi_character(Modulus(q));
        auto tau = gauss_sum(chi).value;
        std::complex<double> expect(chi.parity() * static_cast<double>(q), 0.0);
        CHECK(std::abs(tau * tau - expect) < 1e-9);
    }
    // |tau|^2 = q for primitive characters mod primes
    for (i64 p : {3, 5, 7, 11, 13, 101}) {
        for (const auto& psi : enumerate_characters(Modulus(p))) {
            if (psi.is_principal()) continue;
            CHECK(std::abs(std::norm(gauss_sum(psi).value) - static_cast<double>(p)) < 1e-8);
        }
    }
}

TEST_CASE("ramanujan sums") {
    auto r = ramanujan_sum(3, 15);
    CHECK(r.value == std::complex<double>(-2.0, 0.0));
    CHECK(r.abs_error == 0.0);
    CHECK(r.method == SumMethod::closed_form);
    CHECK(ramanujan_sum_int(0, 9) == euler_phi(9));
    CHECK(ramanujan_sum_int(18, 9) == euler_phi(9));
    for (i64 p : {2, 3, 5, 31}) CHECK(ramanujan_sum_int(1, p) == -1);
    CHECK(ramanujan_sum_int(3, 15) == -2);
    // against the defining unit sum
    for (i64 q = 1; q <= 40; ++q) {
        auto roots = unit_roots(q);
        for (i64 m = 0; m < q; ++m) {
            std::complex<double> direct = 0.0;
            for (i64 d = 0; d < q; ++d)
                if (gcd_ll(d, q) == 1) direct += roots[d * m % q];
            CHECK(std::abs(direct.real() - ramanujan_sum_int(m, q)) < 1e-10);
            CHECK(std::abs(direct.imag()) < 1e-10);
        }
    }
    // kloosterman(0, m, c) is the same sum
    for (i64 c : {7, 12, 15}) {
        for (i64 m = 0; m < c; ++m)
            CHECK(std::abs(kloosterman(0, m, c).value.real() - ramanujan_sum_int(m, c)) < 1e-10);
    }
}

TEST_CASE("kloosterman values") {
    for (i64 c : {1, 2, 5, 12, 30})
        CHECK(std::abs(kloosterman(0, 0, c).value.real() - euler_phi(c)) < 1e-10);
    // S(1,1;5) = (3 - sqrt 5)/2
    CHECK(std::abs(kloosterman(1, 1, 5).value.real() - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-12);
}

TEST_CASE("kloosterman table lookups") {
    for (i64 c : {20, 45, 77}) {
        const auto& t = kloosterman_table(c);
        for (i64 m = 0; m < c; m += 3)
            for (i64 n = 0; n < c; n += 5)
                CHECK(t.at(m, n) == doctest::Approx(kloosterman(m, n, c).value.real()).epsilon(1e-11));
    }
    // t = 0 entry is mu(c) for squarefree c
    CHECK(kloosterman_table(30).row()[0] == doctest::Approx(-1.0));
    CHECK(kloosterman_table(15).row()[0] == doctest::Approx(1.0));
}

TEST_CASE("corrupted table is caught and the failing triple is named") {
    const auto& good = kloosterman_table(35);
    auto row = good.row();
    row[7] += 0.5;
    KloostermanTable bad(35, row);
    auto rep = check_table_consistency(bad, 200);
    CHECK_FALSE(rep.pass);
    CHECK(rep.params.find("c=35") != std::string::npos);
    CHECK(rep.params.find("first failing") != std::string::npos);
}

TEST_CASE("angles") {
    auto r = kloosterman_with_angle(1, 1, 5);
    CHECK(std::abs(r.sum.value.real() - 2.0 * std::sqrt(5.0) * std::cos(r.angle)) < 1e-12);
    CHECK(r.angle >= 0.0);
    CHECK(r.angle <= std::numbers::pi);
    CHECK_THROWS_AS(kloosterman_with_angle(1, 1, 6), error);  // composite
    CHECK_THROWS_AS(kloosterman_with_angle(0, 1, 5), error);  // shared factor
}

TEST_CASE("weil bound on a grid") {
    for (i64 c = 1; c <= 60; ++c) {
        const auto& t = kloosterman_table(c);
        for (i64 m = 0; m < c; m += 2)
            for (i64 n = 0; n < c; n += 3)
                CHECK(std::abs(t.at(m, n)) <= weil_bound(m, n, c) + 1e-9);
    }
}

TEST_CASE("reality of S(m,n;c)") {
    for (i64 c = 1; c <= 60; ++c) CHECK(kloosterman_table(c).max_imag() <= 1e-9);
}
