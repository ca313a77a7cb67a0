#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mdsforge/series.hpp"
#include "mdsforge/weyl_cg.hpp"

using namespace mdsforge;

namespace {

MultiRat random_multirat(std::mt19937& rng) {
    std::uniform_int_distribution<int> ecoef(-3, 3), eexp(0, 2), nterm(1, 4);
    auto rand_poly = [&] {
        ZPoly p;
        int nt = nterm(rng);
        for (int t = 0; t < nt; ++t) {
            Mono m(eexp(rng), eexp(rng), eexp(rng), eexp(rng));
            int c = ecoef(rng);
            if (c != 0) p.add_term(m, Rational(c));
        }
        return p;
    };
    ZPoly num = rand_poly();
    ZPoly den;
    while (den.is_zero()) den = rand_poly();
    return MultiRat(num, den);
}

}  // namespace

TEST_CASE("geometric series expansion") {
    // 1/(1 - z3)
    MultiRat rf(ZPoly(1L), ZPoly(1L) - ZPoly::var(2));
    TruncSeries s = series_expand(rf, 3);
    for (int j = 0; j <= 3; ++j) CHECK(s.coeff(0, 0, j) == UPoly(1));
    CHECK(s.coeff(1, 0, 0).is_zero());
}

TEST_CASE("g_A3 constant term is 1") {
    TruncSeries s = series_expand(g_A3(), 0);
    CHECK(s.coeff(0, 0, 0) == UPoly(1));
}

TEST_CASE("long-division oracle: (1 - z1 z3)/((1-z1)(1-z3))") {
    ZPoly num = ZPoly(1L) - ZPoly::var(0) * ZPoly::var(2);
    ZPoly den = (ZPoly(1L) - ZPoly::var(0)) * (ZPoly(1L) - ZPoly::var(2));
    TruncSeries s = series_expand(MultiRat(num, den), 2);
    CHECK(s.coeff(1, 0, 1).is_zero());  // coefficient of z1 z3 is 0
    CHECK(s.coeff(1, 0, 0) == UPoly(1));
    CHECK(s.coeff(0, 0, 1) == UPoly(1));
}

TEST_CASE("series restriction consistency") {
    TruncSeries s16 = series_expand(g_A3(), 10);
    TruncSeries s6 = series_expand(g_A3(), 6);
    CHECK(s16.restricted(6) == s6);
}

TEST_CASE("series times denominator reproduces numerator") {
    TruncSeries s = series_expand(g_A3(), 10);
    CHECK(series_times_denominator_matches(s, g_A3()));
}

TEST_CASE("not expandable at origin") {
    MultiRat rf(ZPoly(1L), ZPoly::var(2));
    CHECK_THROWS_WITH_AS(series_expand(rf, 2), "not expandable at origin", std::domain_error);
}

TEST_CASE("substitute: even monomial under sign flip") {
    // z3 -> -z3 applied to z3^2 gives z3^2
    MultiRat rf(ZPoly::var(2, 2));
    MonomialMap m;
    m.images[2].first = -1;
    CHECK(rf.substituted(m).equals(rf));
}

TEST_CASE("substitute: sigma_3 sends z1 to u z1 z3") {
    MultiRat z1(ZPoly::var(0));
    MultiRat image = z1.substituted(sigma_map(3));
    MultiRat expect(ZPoly::var(3, 1) * ZPoly::var(0) * ZPoly::var(2));
    CHECK(image.equals(expect));
}

TEST_CASE("sigma_1 on z1 is an involution") {
    MultiRat z1(ZPoly::var(0));
    MultiRat once = z1.substituted(sigma_map(1));
    // z1 -> 1/(q z1)
    MultiRat expect(ZPoly(1L), ZPoly::var(3, 2) * ZPoly::var(0));
    CHECK(once.equals(expect));
    CHECK(once.substituted(sigma_map(1)).equals(z1));
}

TEST_CASE("rf_equal semantics") {
    ZPoly z1 = ZPoly::var(0);
    MultiRat a(ZPoly(1L), ZPoly(1L) - z1);
    MultiRat b(ZPoly(1L) + z1, ZPoly(1L) - z1 * z1);
    CHECK(a.equals(b));

    const MultiRat& g = g_A3();
    ZPoly f = ZPoly(1L) + ZPoly::var(1);
    MultiRat g2(g.num() * f, g.den() * f);
    CHECK(g.equals(g2));

    MultiRat g3 = g + MultiRat(ZPoly::var(0));
    CHECK_FALSE(g.equals(g3));
}

TEST_CASE("substitution respects composition on random inputs") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 24; ++trial) {
        MultiRat rf = random_multirat(rng);
        int i = 1 + (trial % 3), j = 1 + ((trial / 3) % 3);
        MonomialMap m1 = sigma_map(i), m2 = (trial % 2) ? sigma_map(j) : epsilon_map(j);
        MultiRat seq = rf.substituted(m1).substituted(m2);
        MultiRat composed = rf.substituted(m1.then(m2));
        CHECK(seq.equals(composed));
    }
}

TEST_CASE("exact field arithmetic on random values") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 24; ++trial) {
        MultiRat a = random_multirat(rng);
        MultiRat b = random_multirat(rng);
        CHECK(((a + b) - b).equals(a));
        if (!b.is_zero()) CHECK(((a * b) / b).equals(a));
    }
}

TEST_CASE("UPoly exact q-evaluation") {
    UPoly p = UPoly::u_power(2, Rational(3));  // 3q
    p.set_coeff(0, Rational(1, 2));
    CHECK(p.eval_at_q(Rational(5)) == Rational(31, 2));
    CHECK(p.even_powers_only());
    UPoly odd = UPoly::u_power(1);
    CHECK_THROWS_AS(odd.eval_at_q(Rational(2)), std::domain_error);
}
