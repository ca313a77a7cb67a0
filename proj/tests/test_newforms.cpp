#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numeric>

#include "mdsforge/newforms.hpp"

using namespace mdsforge;

TEST_CASE("euler product: pentagonal vs by-modulus orderings") {
    auto a = euler_product_pentagonal(5000);
    auto b = euler_product_by_modulus(5000);
    CHECK(a == b);
}

TEST_CASE("level11w2 coefficients") {
    auto f = eta_form(BuiltinForm::level11w2, 20000);
    CHECK(f->N == 11);
    CHECK(f->ell == 2);
    CHECK(f->N0 == 11);
    CHECK(f->N1 == 1);
    CHECK(f->an(1) == 1);
    CHECK(f->an(2) == -2);
    CHECK(f->an(3) == -1);
    CHECK(f->an(4) == 2);
    CHECK(f->an(5) == 1);
    CHECK(f->an(11) == 1);  // special at 11: lambda(11) = 11^{-1/2}
    CHECK(f->lambda(11) == doctest::Approx(1.0 / std::sqrt(11.0)));
}

TEST_CASE("level9w4 coefficients") {
    auto f = eta_form(BuiltinForm::level9w4, 20000);
    CHECK(f->N == 9);
    CHECK(f->ell == 4);
    CHECK(f->N0 == 1);
    CHECK(f->N1 == 3);
    CHECK(f->an(1) == 1);
    CHECK(f->an(3) == 0);  // supercuspidal at 3
    for (int64_t n = 3; n <= 20000; n += 3) CHECK(f->an(n) == 0);
    // eta(3 tau)^8: known initial coefficients a(2) = 0? expansion check:
    // q prod (1-q^{3n})^8 = q - 8q^4 + 20q^7 - ...
    CHECK(f->an(2) == 0);
    CHECK(f->an(4) == -8);
    CHECK(f->an(7) == 20);
}

TEST_CASE("validation passes for built-ins") {
    for (auto tag : {BuiltinForm::level11w2, BuiltinForm::level9w4}) {
        auto f = eta_form(tag, 20000);
        auto rep = validate(*f, 10000);
        for (const auto& v : rep.violations) MESSAGE(v);
        CHECK(rep.ok);
        CHECK(rep.assumptions.find("twist-minimal") != std::string::npos);
    }
}

TEST_CASE("validation flags corrupted tables") {
    auto f0 = eta_form(BuiltinForm::level11w2, 1000);
    Newform f = *f0;
    f.a[6] = f.a[2] * f.a[3] + 1;
    auto rep = validate(f, 1000);
    CHECK_FALSE(rep.ok);

    Newform g = *f0;
    g.a[2] = 3 * 2;  // lambda(2) = 3 > d(2)
    auto rep2 = validate(g, 100);
    CHECK_FALSE(rep2.ok);
}

TEST_CASE("satake parameters") {
    auto f = eta_form(BuiltinForm::level11w2, 1000);
    auto s2 = satake(*f, 2);
    CHECK(s2.kind == SatakeKind::unramified);
    CHECK((s2.alpha + s2.beta).real() == doctest::Approx(-2.0 / std::sqrt(2.0)));
    CHECK(std::abs(s2.alpha * s2.beta - cplx(1, 0)) < 1e-12);
    auto s11 = satake(*f, 11);
    CHECK(s11.kind == SatakeKind::special);
    CHECK(s11.alpha.real() == doctest::Approx(1.0 / std::sqrt(11.0)));
    auto f9 = eta_form(BuiltinForm::level9w4, 1000);
    CHECK(satake(*f9, 3).kind == SatakeKind::supercuspidal);
    CHECK_THROWS_AS(satake(*f, 2000), std::out_of_range);
}

TEST_CASE("unramified satake on the unit circle") {
    auto f = eta_form(BuiltinForm::level11w2, 1100);
    for (uint32_t p : SpfSieve::instance().primes_to(1000)) {
        if (11 % p == 0 || p == 11) continue;
        auto s = satake(*f, p);
        CHECK(std::abs(std::abs(s.alpha) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(s.beta) - 1.0) < 1e-12);
    }
}

TEST_CASE("lambda multiplicativity transfers") {
    auto f = eta_form(BuiltinForm::level11w2, 1000000 / 990);
    for (int64_t m = 2; m <= 31; ++m)
        for (int64_t n = 2; n <= 31; ++n) {
            if (std::gcd(m, n) != 1 || m * n > f->M()) continue;
            CHECK(f->an(m * n) == f->an(m) * f->an(n));
        }
}

TEST_CASE("conductor data") {
    auto f11 = eta_form(BuiltinForm::level11w2, 100);
    auto cd = conductor_data(*f11);
    CHECK(cd.N0 == 11);
    CHECK(cd.N1 == 1);
    CHECK(cd.sym2_conductor == 121);
    CHECK(cd.twisted_proxy == 88);
    CHECK(cd.twisted_exact == 11);  // trivial character: c~ = 1, d0 = 1

    auto f9 = eta_form(BuiltinForm::level9w4, 100);
    auto cd9 = conductor_data(*f9);
    CHECK(cd9.sym2_conductor == 27);

    // twist by chi_5: exact conductor 5^2 * 11 = 275
    CHECK(conductor_data(*f11, CharSpec::quadratic(5)).twisted_exact == 275);
    // twist by chi_{-1}: 16 * 11
    CHECK(conductor_data(*f11, CharSpec{1, -1, 1}).twisted_exact == 176);
    // twist by chi_2: 64 * 11
    CHECK(conductor_data(*f11, CharSpec{1, 2, 1}).twisted_exact == 704);
    CHECK_THROWS_WITH_AS(conductor_data(*f11, CharSpec::quadratic(11)),
                         "character not coprime to level", std::domain_error);
}

TEST_CASE("coefficient CSV round trip and diagnostics") {
    auto f = eta_form(BuiltinForm::level11w2, 64);
    const char* path = "roundtrip_test.csv";
    {
        std::ofstream out(path);
        out << "# level=11 weight=2 count=64\n";
        for (int64_t n = 1; n <= 64; ++n) out << n << "," << f->an(n) << "\n";
    }
    auto g = load_coefficients(path);
    CHECK(g->a == f->a);
    CHECK(g->N0 == 11);
    std::remove(path);

    {
        std::ofstream out("bad1.csv");
        out << "# level=11 weight=2 count=2\n1,2\n2,-2\n";
    }
    CHECK_THROWS_WITH_AS(load_coefficients("bad1.csv"), "a(1) must be 1", std::runtime_error);
    std::remove("bad1.csv");

    {
        std::ofstream out("bad2.csv");
        out << "# level=8 weight=2 count=1\n1,1\n";
    }
    CHECK_THROWS_WITH_AS(load_coefficients("bad2.csv"), "unsupported level: even",
                         std::domain_error);
    std::remove("bad2.csv");
}
