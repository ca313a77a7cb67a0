#include "mdsforge/series.hpp"

#include <algorithm>

namespace mdsforge {

namespace {

// Group a ZPoly's terms by their (z1,z2,z3) exponents, leaving UPoly values.
std::map<std::array<int, 3>, UPoly> group_by_z(const ZPoly& p) {
    std::map<std::array<int, 3>, UPoly> g;
    for (const auto& [k, c] : p.terms()) {
        Mono m = Mono::from_key(k);
        if (m.e[0] < 0 || m.e[1] < 0 || m.e[2] < 0 || m.e[3] < 0)
            throw std::domain_error("series_expand: Laurent input");
        std::array<int, 3> zm{m.e[0], m.e[1], m.e[2]};
        UPoly& u = g[zm];
        u.set_coeff(m.e[3], u.coeff(m.e[3]) + c);
    }
    return g;
}

struct Idx {
    int D;
    size_t operator()(int a, int b, int c) const {
        return (static_cast<size_t>(a) * (D + 1) + b) * (D + 1) + c;
    }
};

}  // namespace

TruncSeries series_expand(const MultiRat& rf, int D) {
    auto num = group_by_z(rf.num());
    auto den = group_by_z(rf.den());

    auto it0 = den.find({0, 0, 0});
    if (it0 == den.end() || it0->second.is_zero() || it0->second.degree() != 0)
        throw std::domain_error("not expandable at origin");
    Rational a0 = it0->second.coeff(0);

    std::vector<std::array<int, 3>> den_rest;
    for (const auto& [zm, u] : den)
        if (zm != std::array<int, 3>{0, 0, 0} && zm[0] + zm[1] + zm[2] <= D) den_rest.push_back(zm);

    Idx idx{D};
    std::vector<UPoly> c(static_cast<size_t>(D + 1) * (D + 1) * (D + 1));

    TruncSeries out(D);
    for (int t = 0; t <= D; ++t) {
        for (int k1 = 0; k1 <= t; ++k1) {
            for (int k2 = 0; k2 + k1 <= t; ++k2) {
                int j = t - k1 - k2;
                UPoly rhs;
                auto itn = num.find({k1, k2, j});
                if (itn != num.end()) rhs = itn->second;
                for (const auto& dm : den_rest) {
                    if (dm[0] > k1 || dm[1] > k2 || dm[2] > j) continue;
                    const UPoly& prev = c[idx(k1 - dm[0], k2 - dm[1], j - dm[2])];
                    if (prev.is_zero()) continue;
                    rhs -= den[dm] * prev;
                }
                if (!rhs.is_zero() && a0 != 1) {
                    UPoly scaled;
                    for (int k = 0; k <= rhs.degree(); ++k)
                        if (rhs.coeff(k) != 0) scaled.set_coeff(k, rhs.coeff(k) / a0);
                    rhs = scaled;
                } else if (a0 != 1) {
                    // zero stays zero
                }
                c[idx(k1, k2, j)] = rhs;
                if (!rhs.is_zero()) out.set_coeff(k1, k2, j, rhs);
            }
        }
    }
    return out;
}

bool series_times_denominator_matches(const TruncSeries& s, const MultiRat& rf) {
    int D = s.degree_bound();
    ZPoly ser;
    for (const auto& [k, u] : s.coeffs()) {
        auto [k1, k2, j] = k;
        for (int e = 0; e <= u.degree(); ++e)
            if (u.coeff(e) != 0) ser.add_term(Mono(k1, k2, j, e), u.coeff(e));
    }
    ZPoly prod = ser * rf.den();
    ZPoly diff = prod - rf.num();
    for (const auto& [k, c] : diff.terms()) {
        Mono m = Mono::from_key(k);
        if (m.total_z_degree() <= D) return false;
    }
    return true;
}

std::map<std::vector<int>, MultiRat> series_in_vars(const MultiRat& rf,
                                                    const std::vector<int>& vars, int D) {
    const int nv = static_cast<int>(vars.size());
    auto split = [&](const ZPoly& p) {
        std::map<std::vector<int>, ZPoly> g;
        for (const auto& [k, c] : p.terms()) {
            Mono m = Mono::from_key(k);
            std::vector<int> key(nv);
            Mono rest = m;
            for (int i = 0; i < nv; ++i) {
                key[i] = m.e[vars[i]];
                if (key[i] < 0) throw std::domain_error("series_in_vars: Laurent input");
                rest.e[vars[i]] = 0;
            }
            g[key].add_term(rest, c);
        }
        return g;
    };
    auto num = split(rf.num());
    auto den = split(rf.den());

    std::vector<int> zero(nv, 0);
    auto it0 = den.find(zero);
    if (it0 == den.end() || it0->second.is_zero())
        throw std::domain_error("not expandable at origin");
    MultiRat d0(it0->second);

    std::vector<std::pair<std::vector<int>, MultiRat>> den_rest;
    for (const auto& [k, p] : den) {
        int t = 0;
        for (int e : k) t += e;
        if (k != zero && t <= D) den_rest.emplace_back(k, MultiRat(p));
    }

    // enumerate exponent tuples by total degree
    std::vector<std::vector<int>> order;
    if (nv == 1) {
        for (int a = 0; a <= D; ++a) order.push_back({a});
    } else if (nv == 2) {
        for (int t = 0; t <= D; ++t)
            for (int a = 0; a <= t; ++a) order.push_back({a, t - a});
    } else {
        throw std::domain_error("series_in_vars: supports 1 or 2 variables");
    }

    std::map<std::vector<int>, MultiRat> out;
    for (const auto& key : order) {
        MultiRat rhs;
        auto itn = num.find(key);
        if (itn != num.end()) rhs = MultiRat(itn->second);
        for (const auto& [dk, dp] : den_rest) {
            std::vector<int> prev(nv);
            bool ok = true;
            for (int i = 0; i < nv; ++i) {
                prev[i] = key[i] - dk[i];
                if (prev[i] < 0) ok = false;
            }
            if (!ok) continue;
            auto itp = out.find(prev);
            if (itp == out.end() || itp->second.is_zero()) continue;
            rhs -= dp * itp->second;
        }
        rhs = rhs / d0;
        rhs.reduce(MultiRat::default_catalog());
        out[key] = rhs;
    }
    return out;
}

}  // namespace mdsforge
