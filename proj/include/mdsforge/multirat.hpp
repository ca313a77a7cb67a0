#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mdsforge/zpoly.hpp"

namespace mdsforge {

// Per-variable image of a coordinate map: z_i -> sign * u^{upow} * z-monomial.
// The epsilon_i and sigma_i maps of the Weyl action are all of this shape
// (sigma_i sends z_i to 1/(q z_i), i.e. upow = -2, exponent -1).
struct MonomialMap {
    std::array<std::pair<Rational, Mono>, 3> images;

    MonomialMap() {
        for (int i = 0; i < 3; ++i) {
            Mono m;
            m.e[i] = 1;
            images[i] = {Rational(1), m};
        }
    }
    // Compose: (this ∘ other)(z) = other applied first, then this substituted
    // into the result.  As substitution maps m1.then(m2) means "substitute m1,
    // then substitute m2 into what remains".
    MonomialMap then(const MonomialMap& next) const {
        MonomialMap r;
        for (int i = 0; i < 3; ++i) {
            const auto& [sc, im] = images[i];
            Rational c = sc;
            Mono out(0, 0, 0, im.e[3]);
            for (int j = 0; j < 3; ++j) {
                int ej = im.e[j];
                if (ej == 0) continue;
                const auto& [sc2, im2] = next.images[j];
                for (int t = 0; t < 4; ++t) out.e[t] += ej * im2.e[t];
                if (sc2 != 1) {
                    Rational sp = 1;
                    int a = ej >= 0 ? ej : -ej;
                    for (int t = 0; t < a; ++t) sp *= sc2;
                    c *= (ej >= 0) ? sp : Rational(1) / sp;
                }
            }
            r.images[i] = {c, out};
        }
        return r;
    }
    bool is_identity() const {
        for (int i = 0; i < 3; ++i) {
            const auto& [sc, im] = images[i];
            if (sc != 1) return false;
            Mono want;
            want.e[i] = 1;
            if (im.key() != want.key()) return false;
        }
        return true;
    }
};

// Exact rational function in (z1,z2,z3) with UPoly coefficients, stored as a
// quotient of ZPolys.  Canonical form: integer-content-stripped with the
// denominator's leading coefficient positive.  No multivariate GCD is taken;
// equality goes through cross multiplication.
class MultiRat {
public:
    MultiRat() : num_(0L), den_(1L) {}
    MultiRat(long c) : num_(c), den_(1L) { normalize(); }
    MultiRat(const Rational& c) : num_(c), den_(Rational(1)) { normalize(); }
    MultiRat(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("MultiRat: zero denominator");
        normalize();
    }
    explicit MultiRat(ZPoly num) : num_(std::move(num)), den_(1L) { normalize(); }

    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    MultiRat operator+(const MultiRat& o) const {
        return MultiRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_).reduced();
    }
    MultiRat operator-(const MultiRat& o) const {
        return MultiRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_).reduced();
    }
    MultiRat operator*(const MultiRat& o) const {
        return MultiRat(num_ * o.num_, den_ * o.den_).reduced();
    }
    MultiRat operator/(const MultiRat& o) const {
        if (o.is_zero()) throw std::domain_error("MultiRat: division by zero rational function");
        return MultiRat(num_ * o.den_, den_ * o.num_).reduced();
    }
    MultiRat operator-() const { return MultiRat(-num_, den_); }
    MultiRat& operator+=(const MultiRat& o) { *this = *this + o; return *this; }
    MultiRat& operator-=(const MultiRat& o) { *this = *this - o; return *this; }
    MultiRat& operator*=(const MultiRat& o) { *this = *this * o; return *this; }
    MultiRat& operator/=(const MultiRat& o) { *this = *this / o; return *this; }

    // Exact cross-multiplied equality.
    bool equals(const MultiRat& o) const { return (num_ * o.den_) == (o.num_ * den_); }

    // Apply a coordinate map; Laurent intermediates are cleared into
    // numerator/denominator by a common monomial.
    MultiRat substituted(const MonomialMap& map) const {
        ZPoly n = num_.substitute_monomials(map.images);
        ZPoly d = den_.substitute_monomials(map.images);
        clear_laurent(n, d);
        return MultiRat(std::move(n), std::move(d)).reduced();
    }

    // Exact evaluation at a rational point (u included).
    Rational eval(const Rational& z1, const Rational& z2, const Rational& z3, const Rational& u) const {
        Rational d = den_.eval(z1, z2, z3, u);
        if (d == 0) throw std::domain_error("MultiRat: evaluation at pole");
        return num_.eval(z1, z2, z3, u) / d;
    }

    // Zero derivative test in variable i (quotient rule numerator).
    bool derivative_is_zero(int i) const {
        return (num_.derivative(i) * den_ - num_ * den_.derivative(i)).is_zero();
    }

    // Trial-divide num and den by common small factors drawn from a catalog of
    // shapes seen in the g_{A3} machinery, plus monomial and integer content.
    // This is not a GCD: it just keeps intermediates small.
    MultiRat& reduce(const std::vector<ZPoly>& catalog);
    MultiRat reduced() const;

    std::string str() const { return "(" + num_.str() + ") / (" + den_.str() + ")"; }

    static const std::vector<ZPoly>& default_catalog();

private:
    static void clear_laurent(ZPoly& n, ZPoly& d) {
        auto mn = n.min_exponents();
        auto md = d.min_exponents();
        Mono shift;
        bool any = false;
        for (int i = 0; i < 4; ++i) {
            int m = std::min(mn[i], md[i]);
            if (m < 0) {
                shift.e[i] = -m;
                any = true;
            }
        }
        if (any) {
            n = n.mul_monomial(shift);
            d = d.mul_monomial(shift);
        }
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = ZPoly(1L);
            return;
        }
        Rational c = den_.content();
        if (den_.leading_coeff() < 0) c = -c;
        if (c != 1) {
            ZPoly cn, cd;
            ZPoly cpol(c);
            // dividing by a constant always succeeds
            num_.divide_exact(cpol, cn);
            den_.divide_exact(cpol, cd);
            num_ = std::move(cn);
            den_ = std::move(cd);
        }
        Rational cn = num_.content();
        if (cn != 1 && cn != 0) {
            // keep numerator integer-content-stripped too, tracking the ratio
            // in the numerator's leading rational (content goes to num).
            // We fold it back so num/den unchanged: strip from both only when
            // shared.
            Rational cd = den_.content();
            Rational g = rational_gcd(cn, cd);
            if (g != 1) {
                ZPoly q;
                ZPoly gp(g);
                num_.divide_exact(gp, q);
                num_ = q;
                den_.divide_exact(gp, q);
                den_ = q;
            }
        }
    }

    static Rational rational_gcd(const Rational& a, const Rational& b) {
        mpz_class gn, gl;
        mpz_gcd(gn.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
        mpz_lcm(gl.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
        Rational r(gn, gl);
        r.canonicalize();
        return r;
    }

    ZPoly num_, den_;
};

}  // namespace mdsforge
