#include <cmath>

#include "doctest.h"
#include "vdc/sieve_lin.hpp"

using namespace vdc;
using namespace vdc::sieve;

TEST_CASE("closed forms") {
    double two_e_gamma = 2.0 * std::exp(0.57721566490153286);
    CHECK(SieveTable::F_closed(1.5) == doctest::Approx(two_e_gamma / 1.5).epsilon(1e-12));
    CHECK(SieveTable::F_closed(1.5) == doctest::Approx(2.374763).epsilon(1e-6));
    CHECK(SieveTable::f_closed(3.0) == doctest::Approx(two_e_gamma * std::log(2.0) / 3.0));
    CHECK(SieveTable::f_closed(1.7) == 0.0);
}

TEST_CASE("table construction and closed-form agreement") {
    SieveTable t = build_table(12.0, 1.0 / 1024);
    CHECK(t.F(1.5) == doctest::Approx(2.374763).epsilon(1e-6));
    CHECK(t.F(3.0) == doctest::Approx(SieveTable::F_closed(3.0)).epsilon(1e-12));
    CHECK(t.f(3.0) == doctest::Approx(0.8229).epsilon(1e-3));

    // the integrated table itself matches the closed forms to 1e-10
    for (double s = 2.0; s <= 3.0; s += 1.0 / 64)
        CHECK(std::abs(t.F_table(s) - SieveTable::F_closed(s)) < 1e-10);
    for (double s = 2.0 + 1.0 / 64; s <= 4.0; s += 1.0 / 64)
        CHECK(std::abs(t.f_table(s) - SieveTable::f_closed(s)) < 1e-10);

    CHECK_THROWS_AS(build_table(12.0, 1.0 / 32), std::domain_error);
    CHECK_THROWS_AS(build_table(30.0, 1.0 / 1024), std::domain_error);
}

TEST_CASE("monotonicity and ordering") {
    SieveTable t = build_table(14.0, 1.0 / 1024);
    double prevF = t.F(2.0), prevf = t.f(2.0);
    for (double s = 2.0; s <= 14.0; s += 1.0 / 16) {
        double F = t.F(s), f = t.f(s);
        CHECK(F <= prevF + 1e-12);
        CHECK(f >= prevf - 1e-12);
        CHECK(f <= 1.0 + 1e-9);
        CHECK(F >= 1.0 - 1e-9);
        CHECK(f <= F);
        prevF = F;
        prevf = f;
    }
}

TEST_CASE("asymptotics and grid refinement") {
    SieveTable coarse = build_table(12.0, 1.0 / 1024);
    SieveTable fine = build_table(12.0, 1.0 / 2048);
    CHECK(std::abs(coarse.F(10.0) - 1.0) < 1e-3);
    CHECK(std::abs(coarse.f(10.0) - 1.0) < 1e-3);
    for (double s = 2.5; s <= 10.0; s += 0.25) {
        CHECK(std::abs(coarse.F(s) - fine.F(s)) < 1e-8);
        CHECK(std::abs(coarse.f(s) - fine.f(s)) < 1e-8);
    }
}

TEST_CASE("bt upper constant") {
    CHECK(bt_upper_constant(Rat(1, 2)) == doctest::Approx(8.0 / 3.0));
    CHECK(bt_upper_constant(Rat(32, 41)) == doctest::Approx(164.0 / 29.0));
}

TEST_CASE("congruence sums") {
    // ell = 1: A_d counts multiples of d against ghat(0) X / d
    auto r1 = congruence_sum_check(1e5, 3, 1, nt::WindowId::Bump);
    CHECK(std::abs(r1.remainder) < 1e-3 * r1.main);
    CHECK(r1.poisson_ok);

    // rho(7) = 0: empty sum and zero main term
    auto r7 = congruence_sum_check(1e5, 3, 7, nt::WindowId::Bump);
    CHECK(r7.A_d == 0.0);
    CHECK(r7.main == 0.0);
    CHECK(r7.poisson_ok);

    auto r65 = congruence_sum_check(1e5, 3, 65, nt::WindowId::Bump);
    CHECK(r65.poisson_diff <= r65.tail_bound);
    CHECK(r65.poisson_ok);
    // remainder is genuinely small against the main term scale
    CHECK(std::abs(r65.remainder) < 1.0);

    CHECK_THROWS_AS(congruence_sum_check(1e5, 7, 14, nt::WindowId::Bump), std::domain_error);
}
