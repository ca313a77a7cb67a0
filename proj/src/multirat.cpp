#include "mdsforge/multirat.hpp"

namespace mdsforge {

namespace {

ZPoly one_minus(ZPoly t) { return ZPoly(1L) - t; }
ZPoly one_plus(ZPoly t) { return ZPoly(1L) + t; }

std::vector<ZPoly> build_catalog() {
    std::vector<ZPoly> cat;
    auto z = [](int i, int e = 1) { return ZPoly::var(i, e); };
    auto q = [&](int upow) { return ZPoly::var(3, upow); };
    for (int i = 0; i < 3; ++i) {
        cat.push_back(one_minus(z(i)));
        cat.push_back(one_plus(z(i)));
        cat.push_back(one_minus(q(2) * z(i)));
        cat.push_back(one_plus(q(2) * z(i)));
        cat.push_back(one_minus(q(1) * z(i)));
        cat.push_back(one_plus(q(1) * z(i)));
    }
    // quadratic factors of the g_{A3} denominator and their sign flips
    cat.push_back(one_minus(q(2) * z(0, 2) * z(2, 2)));
    cat.push_back(one_plus(q(2) * z(0, 2) * z(2, 2)));
    cat.push_back(one_minus(q(2) * z(1, 2) * z(2, 2)));
    cat.push_back(one_plus(q(2) * z(1, 2) * z(2, 2)));
    cat.push_back(one_minus(q(4) * z(0, 2) * z(1, 2) * z(2, 2)));
    cat.push_back(one_plus(q(4) * z(0, 2) * z(1, 2) * z(2, 2)));
    cat.push_back(one_minus(q(2) * z(0, 2) * z(1, 2)));
    cat.push_back(one_plus(q(2) * z(0, 2) * z(1, 2)));
    // shapes arising in the residue-identity variables (z1 = alpha, z2 = t)
    cat.push_back(one_minus(z(1, 2)));
    cat.push_back(one_minus(z(0, 2) * z(1, 2)));
    cat.push_back(ZPoly::var(0, 2) - z(1, 2));
    return cat;
}

}  // namespace

const std::vector<ZPoly>& MultiRat::default_catalog() {
    static const std::vector<ZPoly> cat = build_catalog();
    return cat;
}

MultiRat& MultiRat::reduce(const std::vector<ZPoly>& catalog) {
    if (num_.is_zero()) {
        den_ = ZPoly(1L);
        return *this;
    }
    // strip common monomial factors first
    auto mn = num_.min_exponents();
    auto md = den_.min_exponents();
    Mono shift;
    bool any = false;
    for (int i = 0; i < 4; ++i) {
        int m = std::min(mn[i], md[i]);
        if (m > 0) {
            shift.e[i] = -m;
            any = true;
        }
    }
    if (any) {
        num_ = num_.mul_monomial(shift);
        den_ = den_.mul_monomial(shift);
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& f : catalog) {
            if (f.n_terms() > den_.n_terms() && f.n_terms() > num_.n_terms()) continue;
            ZPoly qn, qd;
            while (den_.n_terms() >= f.n_terms() && num_.divide_exact(f, qn) && den_.divide_exact(f, qd)) {
                num_ = qn;
                den_ = qd;
                progress = true;
            }
        }
    }
    normalize();
    return *this;
}

MultiRat MultiRat::reduced() const {
    MultiRat r = *this;
    size_t size = r.num_.n_terms() + r.den_.n_terms();
    if (size > 24) r.reduce(default_catalog());
    return r;
}

}  // namespace mdsforge
