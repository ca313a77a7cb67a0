#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <numeric>

#include <gmpxx.h>

#include "mdsforge/characters.hpp"

using namespace mdsforge;

TEST_CASE("kronecker basic values") {
    CHECK(kronecker(5, 3) == -1);  // squares mod 3 are {1}, 5 = 2 mod 3
    for (int64_t d : {-7, -2, 1, 3, 10, 99}) CHECK(kronecker(d, 1) == 1);
    CHECK(kronecker(15, 9) == 0);  // shared factor 3
    CHECK(kronecker(2, 7) == 1);
    CHECK(kronecker(2, 3) == -1);
    CHECK(kronecker(-1, 3) == -1);
    CHECK(kronecker(-1, 5) == 1);
    // mod-8 character values
    CHECK(kronecker(2, 9) == 1);
    CHECK(kronecker(-2, 3) == 1);
    CHECK(kronecker(-2, 5) == -1);
}

TEST_CASE("kronecker agrees with GMP") {
    for (int64_t d = -60; d <= 60; ++d) {
        for (int64_t n = -60; n <= 60; ++n) {
            if (d == 0 && n == 0) continue;
            mpz_class dd(static_cast<long>(d));
            CHECK(kronecker(d, n) == mpz_kronecker_si(dd.get_mpz_t(), static_cast<long>(n)));
        }
    }
}

TEST_CASE("chi_eval basics") {
    // chi_d(-1) = 1 for odd positive d
    for (int64_t d : {1, 3, 5, 7, 9, 11, 15, 21}) {
        CHECK(chi_eval(CharSpec::quadratic(d), -1) == 1);
    }
    // chi~_3 = chi_{-3}
    CHECK(chi_tilde_core(3) == -3);
    CHECK(chi_tilde_core(5) == 5);
    for (int64_t m = 1; m <= 40; ++m) CHECK(chi_tilde_eval(3, m) == kronecker(-3, m));
    // chi_2 values mod 8
    CharSpec two{1, 2, 1};
    CHECK(chi_eval(two, 7) == 1);
    CHECK(chi_eval(two, 3) == -1);
    CHECK(chi_eval(two, 1) == 1);
    CHECK(chi_eval(two, 2) == 0);
}

TEST_CASE("complete multiplicativity") {
    CharSpec specs[] = {{5, 1, 1}, {3, -1, 1}, {1, 2, 11}, {7, -2, 3}};
    for (const auto& s : specs) {
        for (int64_t m = 1; m <= 100; ++m)
            for (int64_t n = 1; n <= 100; ++n)
                CHECK(chi_eval(s, m * n) == chi_eval(s, m) * chi_eval(s, n));
    }
}

TEST_CASE("reciprocity chi_d(n) = chi~_n(d)") {
    for (int64_t d = 1; d <= 99; d += 2) {
        for (int64_t n = 1; n <= 99; n += 2) {
            if (std::gcd(d, n) != 1) continue;
            CHECK(kronecker(d, n) == chi_tilde_eval(n, d));
        }
    }
}

TEST_CASE("periodicity modulo the conductor") {
    CharSpec specs[] = {{5, 1, 1}, {3, 1, 1}, {1, -1, 1}, {1, 2, 1}, {15, -2, 1}, {7, 1, 11}};
    for (const auto& s : specs) {
        int64_t Q = conductor(s).conductor;
        REQUIRE(Q <= 1000);
        for (int64_t n = 1; n <= 3 * Q; ++n)
            CHECK(chi_eval(s, n) == chi_eval(s, n + Q));
    }
}

TEST_CASE("conductors") {
    CHECK(conductor(CharSpec::quadratic(5)).conductor == 5);
    CHECK(conductor(CharSpec::quadratic(3)).conductor == 12);
    CHECK(conductor(CharSpec::trivial()).conductor == 1);
    CHECK(conductor(CharSpec{1, -1, 1}).conductor == 4);
    CHECK(conductor(CharSpec{1, 2, 1}).conductor == 8);
    CHECK(conductor(CharSpec{1, -2, 1}).conductor == 8);
    CHECK(conductor(CharSpec{5, -1, 1}).conductor == 20);
    CHECK(conductor(CharSpec{1, 1, 11}).conductor == 44);  // 11 = 3 mod 4
    CHECK(conductor(CharSpec{1, -1, 11}).conductor == 11);
    CHECK(conductor(CharSpec{5, 1, 1}).c_tilde == 1);
    CHECK(conductor(CharSpec{3, 1, 1}).c_tilde == 4);
    CHECK(conductor(CharSpec{1, 2, 1}).c_tilde == 8);
}

TEST_CASE("div_set enumeration") {
    CHECK(div_set(11).size() == 8);
    CHECK(div_set(9).size() == 8);
    CHECK(div_set(45).size() == 16);
    auto dv = div_set(9);
    CHECK(dv[0].a == 1);
    CHECK(dv[0].c == 1);
    CHECK(dv[1].c == 3);
    CHECK_THROWS_WITH_AS(div_set(8), "unsupported level: even", std::domain_error);
    CHECK_THROWS_WITH_AS(div_set(27), "unsupported level: not cubefree", std::domain_error);
}

TEST_CASE("gauss sums") {
    // chi_5: even real primitive => +1
    cplx g5 = gauss_sum(CharSpec::quadratic(5));
    CHECK(std::abs(g5 - cplx(1, 0)) < 1e-12);
    // chi_{-1}: conductor 4, odd => i
    cplx gm1 = gauss_sum(CharSpec{1, -1, 1});
    CHECK(std::abs(gm1 - cplx(0, 1)) < 1e-12);
    // |g| = 1 for all primitive specs with conductor <= 200
    int checked = 0;
    for (int64_t d0 = 1; d0 <= 50; d0 += 2) {
        if (!is_squarefree_u32(static_cast<uint32_t>(d0))) continue;
        for (int a : {1, -1, 2, -2}) {
            CharSpec s{d0, a, 1};
            if (conductor(s).conductor > 200) continue;
            CHECK(std::abs(std::abs(gauss_sum(s)) - 1.0) < 1e-10);
            ++checked;
        }
    }
    CHECK(checked >= 40);
}

TEST_CASE("zeta(2) via principal L") {
    cplx z2 = dirichlet_L(cplx(2.0, 0.0), CharSpec::trivial()).value;
    double expect = std::numbers::pi * std::numbers::pi / 6.0;
    CHECK(std::abs(z2 - expect) < 1e-10);
    CHECK_THROWS_WITH_AS(dirichlet_L(cplx(1.0, 0.0), CharSpec::trivial()).value,
                         "pole at w=1", std::domain_error);
}

TEST_CASE("Dirichlet functional equation residual for chi_5 at w = 0.3") {
    CharSpec s = CharSpec::quadratic(5);
    cplx lhs = dirichlet_L_direct(cplx(0.3, 0.0), s);
    cplx rhs = dirichlet_L_reflected(cplx(0.3, 0.0), s);
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("two-method agreement for chi_{-1} at w = 0.5") {
    CharSpec s{1, -1, 1};
    cplx a = dirichlet_L_direct(cplx(0.5, 0.0), s);
    cplx b = dirichlet_L_reflected(cplx(0.5, 0.0), s);
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("parity exponent matches chi(-1)") {
    for (int64_t d0 : {1, 3, 5, 7, 11}) {
        for (int a : {1, -1, 2, -2}) {
            CharSpec s{d0, a, 1};
            int par = parity_exponent(s);
            CHECK((par == 0 ? 1 : -1) == chi_eval(s, -1));
        }
    }
}

TEST_CASE("truncated L agrees with Hurwitz engine at w = 3") {
    CharSpec s = CharSpec::quadratic(13);
    double tail = 0;
    cplx a = dirichlet_L_truncated(cplx(3.0, 0.0), s.core(), 20000, &tail);
    cplx b = dirichlet_L_direct(cplx(3.0, 0.0), s);
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("Euler factor removal") {
    CharSpec s = CharSpec::trivial();
    cplx L = dirichlet_L(cplx(2.0, 0.0), s).value;
    cplx L2 = remove_euler_factors_dirichlet(L, cplx(2.0, 0.0), s, 6);
    // zeta(2) (1 - 2^-2)(1 - 3^-2)
    CHECK(std::abs(L2 - L * (1.0 - 0.25) * (1.0 - 1.0 / 9.0)) < 1e-12);
}
