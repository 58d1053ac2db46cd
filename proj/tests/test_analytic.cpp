#include <doctest.h>

#include <cmath>
#include <numbers>

#include "charsum/analytic.hpp"
#include "charsum/errors.hpp"

using namespace charsum;

namespace {

constexpr double kPi = std::numbers::pi;

// adaptive-step Simpson oracle for the incomplete-gamma integral
double v_by_quadrature(double y, int k) {
    int K = k / 2;
    double a = 2.0 * kPi * y;
    double b = a + 100.0 + 4.0 * K;
    auto f = [K](double x) { return std::exp(-x) * std::pow(x, K - 1); };
    int n = 40000;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0 / std::tgamma(static_cast<double>(K));
}

// ascending series for J_nu, the stated small-argument oracle
double j_series(int nu, double z, int terms = 40) {
    double t = std::pow(0.5 * z, nu);
    for (int i = 2; i <= nu; ++i) t /= i;
    double sum = 0.0;
    for (int s = 0; s < terms; ++s) {
        sum += t;
        t *= -0.25 * z * z / ((s + 1.0) * (s + 1.0 + nu));
    }
    return sum;
}

} // namespace

TEST_CASE("V normalization, monotonicity, frozen value") {
    CHECK(V_weight(0.0, 12) == doctest::Approx(1.0));
    double prev = 1.0 + 1e-15;
    for (int i = 0; i <= 300; ++i) {
        double v = V_weight(0.03 * i, 12);
        CHECK(v <= prev + 1e-15);
        CHECK(v <= 1.0 + 1e-15);
        CHECK(v >= 0.0);
        prev = v;
    }
    // k = 12, y = 1: e^{-2 pi} sum_{j<6} (2 pi)^j / j!
    double expect = 0.0, term = 1.0, t = 2.0 * kPi;
    for (int j = 0; j < 6; ++j) {
        expect += term;
        term *= t / (j + 1);
    }
    expect *= std::exp(-t);
    CHECK(V_weight(1.0, 12) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(V_weight(-0.1, 12), error);
    CHECK_THROWS_AS(V_weight(0.1, 13), error);
}

TEST_CASE("V closed form vs quadrature") {
    for (int k : {12, 14, 16}) {
        for (int i = 0; i < 20; ++i) {
            double y = 0.07 + 0.31 * i;
            CHECK(std::abs(V_weight(y, k) - v_by_quadrature(y, k)) < 1e-9);
        }
    }
}

TEST_CASE("V support") {
    double y = V_support(12);
    CHECK(V_weight(y, 12) < 1e-12);
    CHECK(V_weight(y * 0.95, 12) >= 1e-12);
}

TEST_CASE("V3 behavior") {
    auto sym1 = V3_weight(0.4, 0.9, 2.3, 5, 12, 60);
    auto sym2 = V3_weight(0.4, 2.3, 0.9, 5, 12, 60);
    CHECK(sym1.value == doctest::Approx(sym2.value));
    CHECK_FALSE(sym1.divergent);
    CHECK(sym1.tail_bound >= 0.0);

    auto dv = V3_weight(0.0, 0.0, 0.0, 5, 12, 50);
    CHECK(dv.divergent);
    CHECK(std::isinf(dv.tail_bound));
    CHECK(dv.value > 1.0); // partial harmonic sum of coprime d

    auto far = V3_weight(0.0, 130.0, 0.1, 5, 12, 50);
    CHECK(std::abs(far.value) <= far.tail_bound + 1e-300);

    // d-sum respects the coprimality condition: q = 3 drops d = 3, 6, ...
    auto with3 = V3_weight(0.0, 0.5, 0.5, 3, 12, 6);
    double expect = 0.0;
    for (i64 d : {1, 2, 4, 5}) {
        double v = V_weight(0.5 * d, 12);
        expect += v * v / static_cast<double>(d);
    }
    CHECK(with3.value == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("bessel against the ascending series") {
    for (int nu : {11, 13}) {
        for (int i = 1; i <= 25; ++i) {
            double z = 0.5 * i; // up to z = 12.5, x <= 2
            double lhs = bessel_J(nu, z);
            double rhs = j_series(nu, z);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1e-30, std::abs(rhs)));
        }
    }
}

TEST_CASE("bessel branch agreement at the switch point") {
    for (int nu : {11, 13}) {
        double zt = 4.0 * kPi * nu;
        CHECK(bessel_J(nu, zt * (1.0 - 1e-12)) == doctest::Approx(bessel_J(nu, zt * (1.0 + 1e-12)))
                                                      .epsilon(1e-8));
    }
}

TEST_CASE("kernel scaling branches of (2.13)") {
    // small x: J(x) proportional to x^10 for k = 12
    for (double x : {0.02, 0.01}) {
        double ratio = bessel_kernel(x, 12) / bessel_kernel(x / 2.0, 12);
        CHECK(std::abs(ratio / 1024.0 - 1.0) < 0.01);
    }
    // large x: |J(x)| x^{3/2} stays bounded
    double worst = 0.0;
    for (int i = 0; i <= 60; ++i) {
        double x = 10.0 * std::pow(100.0, i / 60.0);
        worst = std::max(worst, std::abs(bessel_kernel(x, 12)) * std::pow(x, 1.5));
    }
    CHECK(worst < 4.0);
    // x -> 0+ limit
    CHECK(std::abs(bessel_kernel(1e-4, 12)) < 1e-30);
    CHECK_THROWS_AS(bessel_kernel(0.0, 12), error);
    CHECK_THROWS_AS(bessel_kernel(-1.0, 12), error);
}

TEST_CASE("diagonal terms") {
    auto d = diagonal_D(101, 12);
    CHECK(d.value > 0.0);
    CHECK(d.ratio > 0.5);
    CHECK(d.ratio < 2.0);
    CHECK_FALSE(d.tail_warning);
    CHECK_THROWS_AS(diagonal_D(10, 12), error);
}

TEST_CASE("moment harness at q=5, k=12") {
    MomentConfig cfg;
    cfg.q = 5;
    cfg.k = 12;
    auto rep = cubic_moment_rhs(cfg);
    CHECK(rep.total >= -rep.tail_estimate);
    CHECK(rep.D_value > 0.0);
    CHECK_FALSE(rep.per_c.empty());
    // per-c table is internally consistent
    double run = rep.D_value;
    for (const auto& row : rep.per_c) {
        CHECK(row.contrib == doctest::Approx(row.S_c / (static_cast<double>(row.c) * row.c)));
        run += row.contrib;
        CHECK(row.cumulative == doctest::Approx(run));
    }
    CHECK(run == doctest::Approx(rep.total));
    // parity violation rejected: chi_7(-1) = -1 but i^12 = 1
    MomentConfig bad;
    bad.q = 7;
    bad.k = 12;
    CHECK_THROWS_AS(cubic_moment_rhs(bad), error);
    // q = 7 pairs with k = 14
    MomentConfig ok7;
    ok7.q = 7;
    ok7.k = 14;
    ok7.C_max = 21; // keep the unit test quick
    CHECK_NOTHROW(cubic_moment_rhs(ok7));
}

TEST_CASE("moment determinism across worker counts") {
    MomentConfig cfg;
    cfg.q = 5;
    cfg.k = 12;
    cfg.C_max = 60;
    auto a = cubic_moment_rhs(cfg, Parallelism::sequential());
    Parallelism many{8};
    auto b = cubic_moment_rhs(cfg, many);
    CHECK(a.total == b.total);
    CHECK(a.kloosterman_part == b.kloosterman_part);
    REQUIRE(a.per_c.size() == b.per_c.size());
    for (std::size_t i = 0; i < a.per_c.size(); ++i) CHECK(a.per_c[i].S_c == b.per_c[i].S_c);
}
