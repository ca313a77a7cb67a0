#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdsforge/moment.hpp"

using namespace mdsforge;

TEST_CASE("smooth weights are admissible bumps") {
    for (auto kind : {SmoothWeight::Kind::standard, SmoothWeight::Kind::secondary}) {
        SmoothWeight W(kind);
        CHECK(W(0.99) == 0.0);
        CHECK(W(2.01) == 0.0);
        CHECK(W(1.5) > 0.0);
        CHECK(W.mellin(0.5) > 0.0);
    }
}

TEST_CASE("main term scales exactly like sqrt(X)") {
    auto f = eta_form(BuiltinForm::level11w2, 50000);
    SmoothWeight W;
    double m1 = main_term(*f, 256, W);
    double m4 = main_term(*f, 1024, W);
    CHECK(m4 / m1 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("main term constituents for level11w2") {
    auto f = eta_form(BuiltinForm::level11w2, 50000);
    SmoothWeight W;
    double sym2 = sym2_L1(*f, 100000);
    double expect = std::sqrt(512.0) * W.mellin(0.5) * sym2 * 0.5 * (10.0 / 11.0);
    CHECK(main_term(*f, 512, W) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("level9w4 doubling factor when eps = +1") {
    auto f = eta_form(BuiltinForm::level9w4, 50000);
    int eps = root_number(*f, CharSpec::trivial());
    REQUIRE(eps == 1);
    SmoothWeight W;
    double sym2 = sym2_L1(*f, 100000);
    double expect = 2.0 * std::sqrt(256.0) * W.mellin(0.5) * sym2 * 0.5 * (2.0 / 3.0);
    CHECK(main_term(*f, 256, W) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("moment at X = 64: finite, positive, structural zeros tiny") {
    auto f = eta_form(BuiltinForm::level11w2, 50000);
    SmoothWeight W;
    MomentReport rep = moment_M(f, 64, W);
    CHECK(rep.M_value > 0.0);
    CHECK(std::isfinite(rep.relative_deviation));
    for (const auto& rec : rep.encountered) {
        if (rec.eps == -1) CHECK(std::abs(rec.central_value) < 1e-6);
        CHECK(rec.eps == root_number_formula(*f, CharSpec::quadratic(rec.d0)));
    }
}

TEST_CASE("least twist for level11w2 is d0 = 1") {
    auto f = eta_form(BuiltinForm::level11w2, 50000);
    auto res = least_twist(f, 100);
    CHECK(res.found);
    CHECK(res.least_d0 == 1);
}

TEST_CASE("least twist for level9w4 follows the root-number dichotomy") {
    auto f = eta_form(BuiltinForm::level9w4, 50000);
    int eps = root_number(*f, CharSpec::trivial());
    auto res = least_twist(f, 60);
    if (eps == 1) {
        CHECK(res.found);
        CHECK(res.least_d0 == 1);
        CHECK_FALSE(res.root_number_obstruction);
    } else {
        CHECK(res.root_number_obstruction);
        CHECK_FALSE(res.found);
    }
}

TEST_CASE("weight invariance: both bumps agree in sign and rough size") {
    auto f = eta_form(BuiltinForm::level11w2, 60000);
    SmoothWeight W1(SmoothWeight::Kind::standard), W2(SmoothWeight::Kind::secondary);
    MomentReport r1 = moment_M(f, 96, W1);
    MomentReport r2 = moment_M(f, 96, W2);
    CHECK(r1.M_value > 0);
    CHECK(r2.M_value > 0);
    CHECK(r1.relative_deviation < 0.6);
    CHECK(r2.relative_deviation < 0.6);
}
