#include "mdsforge/weyl_cg.hpp"

namespace mdsforge {

bool weyl_adjacent(int i, int j) {
    // alpha_3 is the central node: 1-3 and 2-3 are edges, 1-2 is not.
    return (i == 3 && (j == 1 || j == 2)) || (j == 3 && (i == 1 || i == 2));
}

MonomialMap epsilon_map(int i) {
    MonomialMap m;
    for (int j = 1; j <= 3; ++j) {
        if (weyl_adjacent(i, j)) m.images[j - 1].first = -1;
    }
    return m;
}

MonomialMap sigma_map(int i) {
    MonomialMap m;
    for (int j = 1; j <= 3; ++j) {
        if (i == j) {
            // z_i -> 1/(q z_i)
            Mono im;
            im.e[j - 1] = -1;
            im.e[3] = -2;
            m.images[j - 1] = {Rational(1), im};
        } else if (weyl_adjacent(i, j)) {
            // z_j -> sqrt(q) z_i z_j
            Mono im;
            im.e[j - 1] = 1;
            im.e[i - 1] += 1;
            im.e[3] = 1;
            m.images[j - 1] = {Rational(1), im};
        }
    }
    return m;
}

MonomialMap word_map(const WeylWord& w) {
    MonomialMap m;
    for (int i : w.letters) m = m.then(sigma_map(i));
    return m;
}

MultiRat cg_act(const MultiRat& h, int i) {
    if (i < 1 || i > 3) throw std::domain_error("cg_act: bad generator");
    MultiRat h_eps = h.substituted(epsilon_map(i));
    Rational half(1, 2);
    MultiRat hp = (h + h_eps) * MultiRat(half);
    MultiRat hm = (h - h_eps) * MultiRat(half);
    MonomialMap s = sigma_map(i);
    MultiRat hp_s = hp.substituted(s);
    MultiRat hm_s = hm.substituted(s);

    ZPoly zi = ZPoly::var(i - 1);
    ZPoly q = ZPoly::var(3, 2);
    ZPoly u = ZPoly::var(3, 1);
    // -(1 - q z_i) / (q z_i (1 - z_i))
    MultiRat pref1(-(ZPoly(1L) - q * zi), q * zi * (ZPoly(1L) - zi));
    // 1 / (sqrt(q) z_i)
    MultiRat pref2(ZPoly(1L), u * zi);

    MultiRat out = pref1 * hp_s + pref2 * hm_s;
    out.reduce(MultiRat::default_catalog());
    return out;
}

MultiRat cg_act(const MultiRat& h, const WeylWord& w) {
    MultiRat cur = h;
    for (int i : w.letters) cur = cg_act(cur, i);
    return cur;
}

const MultiRat& g_A3() {
    static const MultiRat g = [] {
        auto z1 = ZPoly::var(0), z2 = ZPoly::var(1), z3 = ZPoly::var(2);
        auto q = ZPoly::var(3, 2), q2 = ZPoly::var(3, 4);
        ZPoly num = ZPoly(1L) - z1 * z3 - z2 * z3 + z1 * z2 * z3 + q * z1 * z2 * z3 * z3 -
                    q * z1 * z1 * z2 * z3 * z3 - q * z1 * z2 * z2 * z3 * z3 +
                    q * z1 * z1 * z2 * z2 * z3 * z3 * z3;
        ZPoly den = (ZPoly(1L) - z1) * (ZPoly(1L) - z2) * (ZPoly(1L) - z3) *
                    (ZPoly(1L) - q * z1 * z1 * z3 * z3) * (ZPoly(1L) - q * z2 * z2 * z3 * z3) *
                    (ZPoly(1L) - q2 * z1 * z1 * z2 * z2 * z3 * z3);
        return MultiRat(std::move(num), std::move(den));
    }();
    return g;
}

RelationReport verify_group_relations() {
    RelationReport rep;
    const int r[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 3, 1}};
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            MonomialMap m;
            for (int k = 0; k < r[i][j]; ++k) m = m.then(sigma_map(i)).then(sigma_map(j));
            if (!m.is_identity()) {
                rep.all_hold = false;
                rep.violations.push_back("(sigma_" + std::to_string(i) + " sigma_" +
                                         std::to_string(j) + ")^" + std::to_string(r[i][j]) +
                                         " != 1");
            }
        }
    }
    return rep;
}

int PolyZZ::degree_in(int which) const {
    int d = 0;
    for (const auto& [k, c] : coeffs)
        d = std::max(d, which == 0 ? k.first : k.second);
    return d;
}

ZPoly PolyZZ::to_zpoly(int var1, int var2) const {
    ZPoly p;
    for (const auto& [k, c] : coeffs)
        for (int e = 0; e <= c.degree(); ++e)
            if (c.coeff(e) != 0) {
                Mono m;
                m.e[var1] = k.first;
                m.e[var2] = k.second;
                m.e[3] = e;
                p.add_term(m, c.coeff(e));
            }
    return p;
}

std::complex<double> PolyZZ::eval(std::complex<double> x, std::complex<double> y, double p) const {
    std::complex<double> r = 0;
    for (const auto& [k, c] : coeffs) {
        std::complex<double> t = c.eval_at_sqrt(p);
        for (int i = 0; i < k.first; ++i) t *= x;
        for (int i = 0; i < k.second; ++i) t *= y;
        r += t;
    }
    return r;
}

int PolyZ::degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs) d = std::max(d, k);
    return d;
}

ZPoly PolyZ::to_zpoly(int var) const {
    ZPoly p;
    for (const auto& [k, c] : coeffs)
        for (int e = 0; e <= c.degree(); ++e)
            if (c.coeff(e) != 0) {
                Mono m;
                m.e[var] = k;
                m.e[3] = e;
                p.add_term(m, c.coeff(e));
            }
    return p;
}

std::complex<double> PolyZ::eval(std::complex<double> x, double p) const {
    std::complex<double> r = 0;
    for (const auto& [k, c] : coeffs) {
        std::complex<double> t = c.eval_at_sqrt(p);
        for (int i = 0; i < k; ++i) t *= x;
        r += t;
    }
    return r;
}

namespace {

// Convert a polynomial MultiRat (denominator 1 up to content) into grouped form.
ZPoly require_polynomial(const MultiRat& r, const char* what) {
    ZPoly quo;
    if (r.den() == ZPoly(1L)) return r.num();
    if (r.num().divide_exact(r.den(), quo)) return quo;
    throw std::runtime_error(std::string("decomposition violated: ") + what);
}

}  // namespace

CGFunction::CGFunction(int series_degree, int j_max, int k_max)
    : degree_(series_degree), j_max_(j_max), k_max_(k_max), series_(series_degree) {
    const MultiRat& g = g_A3();
    series_ = series_expand(g, degree_);

    // P_j: z3-coefficients of g over Q(z1, z2, u); even j carries the factor
    // (1-z1)^{-1}(1-z2)^{-1} per the decomposition into even/odd parts in z3.
    auto cj = series_in_vars(g, {2}, j_max_);
    ZPoly f12 = (ZPoly(1L) - ZPoly::var(0)) * (ZPoly(1L) - ZPoly::var(1));
    for (int j = 0; j <= j_max_; ++j) {
        MultiRat c = cj.at({j});
        MultiRat pj = (j % 2 == 0) ? c * MultiRat(f12) : c;
        pj.reduce(MultiRat::default_catalog());
        ZPoly poly = require_polynomial(pj, "P_j");
        PolyZZ out;
        for (const auto& [k, coeff] : poly.terms()) {
            Mono m = Mono::from_key(k);
            if (m.e[2] != 0) throw std::runtime_error("decomposition violated: P_j has z3");
            UPoly& u = out.coeffs[{m.e[0], m.e[1]}];
            u.set_coeff(m.e[3], u.coeff(m.e[3]) + coeff);
        }
        p_table_[j] = std::move(out);
    }

    // Q_k: (z1,z2)-coefficients; even |k| carries (1-z3)^{-1}.
    auto ck = series_in_vars(g, {0, 1}, k_max_);
    ZPoly f3 = ZPoly(1L) - ZPoly::var(2);
    for (int k1 = 0; k1 <= k_max_; ++k1) {
        for (int k2 = 0; k1 + k2 <= k_max_; ++k2) {
            MultiRat c = ck.at({k1, k2});
            MultiRat qk = ((k1 + k2) % 2 == 0) ? c * MultiRat(f3) : c;
            qk.reduce(MultiRat::default_catalog());
            ZPoly poly = require_polynomial(qk, "Q_k");
            PolyZ out;
            for (const auto& [k, coeff] : poly.terms()) {
                Mono m = Mono::from_key(k);
                if (m.e[0] != 0 || m.e[1] != 0)
                    throw std::runtime_error("decomposition violated: Q_k has z1/z2");
                UPoly& u = out.coeffs[m.e[2]];
                u.set_coeff(m.e[3], u.coeff(m.e[3]) + coeff);
            }
            q_table_[{k1, k2}] = std::move(out);
        }
    }
}

const UPoly& CGFunction::coefficient(int k1, int k2, int j) const {
    return series_.coeff(k1, k2, j);
}

const PolyZZ& CGFunction::P(int j) const {
    auto it = p_table_.find(j);
    if (it == p_table_.end()) throw std::out_of_range("P_j beyond table");
    return it->second;
}

const PolyZ& CGFunction::Q(int k1, int k2) const {
    auto it = q_table_.find({k1, k2});
    if (it == q_table_.end()) throw std::out_of_range("Q_k beyond table");
    return it->second;
}

bool CGFunction::check_formal_fe_P(int j) const {
    const PolyZZ& pj = P(j);
    int aj = j % 2;
    int ex = j - aj;
    for (int which = 0; which < 2; ++which) {
        // LHS: (u z)^{ex} P_j with z -> 1/(q z) in slot `which`
        ZPoly lhs;
        for (const auto& [k, c] : pj.coeffs) {
            int e_this = which == 0 ? k.first : k.second;
            int e_other = which == 0 ? k.second : k.first;
            int new_e = ex - e_this;
            int new_u_shift = ex - 2 * e_this;
            if (new_e < 0) return false;  // degree bound violated
            for (int e = 0; e <= c.degree(); ++e) {
                if (c.coeff(e) == 0) continue;
                if (e + new_u_shift < 0) return false;
                Mono m;
                m.e[which] = new_e;
                m.e[1 - which] = e_other;
                m.e[3] = e + new_u_shift;
                lhs.add_term(m, c.coeff(e));
            }
        }
        if (lhs != pj.to_zpoly(0, 1)) return false;
    }
    return true;
}

bool CGFunction::check_formal_fe_Q(int k1, int k2) const {
    const PolyZ& qk = Q(k1, k2);
    int n = k1 + k2;
    int an = n % 2;
    int ex = n - an;
    ZPoly lhs;
    for (const auto& [e3, c] : qk.coeffs) {
        int new_e = ex - e3;
        int new_u_shift = ex - 2 * e3;
        if (new_e < 0) return false;
        for (int e = 0; e <= c.degree(); ++e) {
            if (c.coeff(e) == 0) continue;
            if (e + new_u_shift < 0) return false;
            Mono m;
            m.e[2] = new_e;
            m.e[3] = e + new_u_shift;
            lhs.add_term(m, c.coeff(e));
        }
    }
    return lhs == qk.to_zpoly(2);
}

double CGFunction::coefficient_at(int k1, int k2, int j, double p) const {
    return coefficient(k1, k2, j).eval_at_sqrt(p);
}

bool residue_factor_check(bool drop_prefactor) {
    const MultiRat& g = g_A3();
    // g3+ = (g + g(eps_3 z)) / 2, even part in (z1, z2)
    MultiRat g3p = (g + g.substituted(epsilon_map(3))) * MultiRat(Rational(1, 2));
    g3p.reduce(MultiRat::default_catalog());

    // substitute z1 -> alpha t, z2 -> t / alpha, z3 -> 1/q, with alpha, t the
    // kernel variables z1, z2 and q = u^2
    MonomialMap sub;
    sub.images[0] = {Rational(1), Mono(1, 1, 0, 0)};    // z1 -> alpha t
    sub.images[1] = {Rational(1), Mono(-1, 1, 0, 0)};   // z2 -> t / alpha
    sub.images[2] = {Rational(1), Mono(0, 0, 0, -2)};   // z3 -> q^{-1}
    MultiRat lhs = g3p.substituted(sub);
    if (!drop_prefactor) {
        ZPoly q = ZPoly::var(3, 2);
        lhs = lhs * MultiRat(q - ZPoly(1L), q);  // (1 - q^{-1})
    }
    lhs.reduce(MultiRat::default_catalog());

    // RHS: 1/((1 - t^2)(1 - alpha^2 t^2)(1 - t^2/alpha^2)); clear alpha^2.
    ZPoly a2 = ZPoly::var(0, 2);
    ZPoly t2 = ZPoly::var(1, 2);
    ZPoly den = (ZPoly(1L) - t2) * (ZPoly(1L) - a2 * t2) * (a2 - t2);
    MultiRat rhs(a2, den);
    return lhs.equals(rhs);
}

bool cg_uniqueness_property(int i) {
    const MultiRat& g = g_A3();
    ZPoly num = g.num(), den = g.den();
    for (int j = 1; j <= 3; ++j) {
        if (weyl_adjacent(i, j)) {
            num = num.at_z_zero(j - 1);
            den = den.at_z_zero(j - 1);
        }
    }
    ZPoly one_minus_zi = ZPoly(1L) - ZPoly::var(i - 1);
    MultiRat restricted(num * one_minus_zi, den);
    restricted.reduce(MultiRat::default_catalog());
    return restricted.derivative_is_zero(i - 1);
}

}  // namespace mdsforge
