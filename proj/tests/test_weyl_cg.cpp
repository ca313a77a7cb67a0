#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdsforge/weyl_cg.hpp"

using namespace mdsforge;

TEST_CASE("group relations hold on coordinate maps") {
    RelationReport rep = verify_group_relations();
    for (const auto& v : rep.violations) MESSAGE(v);
    CHECK(rep.all_hold);
}

TEST_CASE("g_A3 is invariant under each simple reflection") {
    const MultiRat& g = g_A3();
    for (int i = 1; i <= 3; ++i) {
        MultiRat gi = cg_act(g, i);
        CHECK(gi.equals(g));
    }
}

TEST_CASE("action of sigma_1 on the constant function") {
    // h = 1: h+ = 1, h- = 0, so (1|sigma_1) = -(1 - q z1)/(q z1 (1 - z1)).
    MultiRat one(1L);
    MultiRat acted = cg_act(one, 1);
    ZPoly q = ZPoly::var(3, 2), z1 = ZPoly::var(0);
    MultiRat expect(-(ZPoly(1L) - q * z1), q * z1 * (ZPoly(1L) - z1));
    CHECK(acted.equals(expect));
}

TEST_CASE("uniqueness properties of g") {
    for (int i = 1; i <= 3; ++i) CHECK(cg_uniqueness_property(i));
}

TEST_CASE("CG coefficient facts") {
    CGFunction cg(10, 6, 6);
    CHECK(cg.coefficient(0, 0, 0) == UPoly(1));
    CHECK(cg.coefficient(1, 0, 1).is_zero());
    for (int j = 0; j <= 6; ++j) CHECK(cg.coefficient(0, 0, j) == UPoly(1));
    CHECK_THROWS_AS(cg.coefficient(5, 5, 5), std::out_of_range);
    // even u-powers only throughout the cached range
    for (const auto& [k, c] : cg.series().coeffs()) CHECK(c.even_powers_only());
}

TEST_CASE("P and Q low-index values") {
    CGFunction cg(10, 4, 4);
    PolyZZ one_zz;
    one_zz.coeffs[{0, 0}] = UPoly(1);
    CHECK(cg.P(0) == one_zz);
    CHECK(cg.P(1) == one_zz);
    PolyZ one_z;
    one_z.coeffs[0] = UPoly(1);
    CHECK(cg.Q(0, 0) == one_z);
    CHECK(cg.Q(1, 0) == one_z);
    CHECK(cg.Q(1, 0) == cg.Q(0, 1));
}

TEST_CASE("P symmetry and formal functional equations") {
    CGFunction cg(12, 5, 5);
    for (int j = 0; j <= 5; ++j) {
        const PolyZZ& p = cg.P(j);
        PolyZZ swapped;
        for (const auto& [k, c] : p.coeffs) swapped.coeffs[{k.second, k.first}] = c;
        CHECK(p == swapped);
        CHECK(cg.check_formal_fe_P(j));
        int aj = j % 2;
        CHECK(p.degree_in(0) <= j - aj);
    }
    for (int k1 = 0; k1 <= 5; ++k1)
        for (int k2 = 0; k1 + k2 <= 5; ++k2) {
            CHECK(cg.check_formal_fe_Q(k1, k2));
            int n = k1 + k2;
            CHECK(cg.Q(k1, k2).degree() <= n - n % 2);
        }
}

TEST_CASE("coefficient consistency between series and P/Q tables") {
    CGFunction cg(8, 6, 6);
    // via P: a(k1,k2,j) = sum_{k1'<=k1,k2'<=k2} [P_j]_{k1',k2'} for even j
    for (int j = 0; j <= 4; ++j) {
        for (int k1 = 0; k1 <= 2; ++k1)
            for (int k2 = 0; k2 <= 2; ++k2) {
                if (k1 + k2 + j > 8) continue;
                const PolyZZ& p = cg.P(j);
                UPoly acc;
                if (j % 2 == 0) {
                    for (const auto& [k, c] : p.coeffs)
                        if (k.first <= k1 && k.second <= k2) acc += c;
                } else {
                    auto it = p.coeffs.find({k1, k2});
                    if (it != p.coeffs.end()) acc = it->second;
                }
                CHECK(acc == cg.coefficient(k1, k2, j));
            }
    }
    // via Q: a(k1,k2,j) = sum_{j'<=j} [Q_{k1,k2}]_{j'} for even |k|
    for (int k1 = 0; k1 <= 3; ++k1)
        for (int k2 = 0; k2 <= 3; ++k2) {
            for (int j = 0; j <= 2; ++j) {
                if (k1 + k2 + j > 8 || k1 + k2 > 6) continue;
                const PolyZ& qk = cg.Q(k1, k2);
                UPoly acc;
                if ((k1 + k2) % 2 == 0) {
                    for (const auto& [e, c] : qk.coeffs)
                        if (e <= j) acc += c;
                } else {
                    auto it = qk.coeffs.find(j);
                    if (it != qk.coeffs.end()) acc = it->second;
                }
                CHECK(acc == cg.coefficient(k1, k2, j));
            }
        }
}

TEST_CASE("residue factor identity") {
    CHECK(residue_factor_check());
    CHECK_FALSE(residue_factor_check(/*drop_prefactor=*/true));
}

TEST_CASE("residue identity rational specialization") {
    // alpha = 1, t = 1/3, q = 9: both sides equal (1 - 1/9)^{-3} = 729/512.
    const MultiRat& g = g_A3();
    MultiRat g3p = (g + g.substituted(epsilon_map(3))) * MultiRat(Rational(1, 2));
    Rational t(1, 3), u(3);  // q = u^2 = 9
    Rational lhs = (Rational(1) - Rational(1, 9)) * g3p.eval(t, t, Rational(1, 9), u);
    CHECK(lhs == Rational(729, 512));
}

TEST_CASE("word action composes") {
    const MultiRat& g = g_A3();
    MultiRat acted = cg_act(g, WeylWord{1, 3});
    CHECK(acted.equals(g));
}
