#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "mdsforge/upoly.hpp"

namespace mdsforge {

// Monomial in (z1, z2, z3, u).  Exponents may go negative in Laurent
// intermediates; they are packed with a bias so that the uint64 key order is
// the lexicographic order on (e1, e2, e3, eu).
struct Mono {
    static constexpr int kBias = 1 << 14;
    int e[4]{0, 0, 0, 0};  // z1, z2, z3, u

    Mono() = default;
    Mono(int e1, int e2, int e3, int eu) : e{e1, e2, e3, eu} {}

    uint64_t key() const {
        uint64_t k = 0;
        for (int i = 0; i < 4; ++i) {
            int b = e[i] + kBias;
            if (b < 0 || b >= (1 << 16)) throw std::overflow_error("Mono exponent overflow");
            k = (k << 16) | static_cast<uint64_t>(b);
        }
        return k;
    }
    static Mono from_key(uint64_t k) {
        Mono m;
        for (int i = 3; i >= 0; --i) {
            m.e[i] = static_cast<int>(k & 0xffff) - kBias;
            k >>= 16;
        }
        return m;
    }
    Mono operator+(const Mono& o) const { return Mono(e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]); }
    int total_z_degree() const { return e[0] + e[1] + e[2]; }
};

// Sparse exact polynomial in (z1, z2, z3, u); this is the workhorse of the
// exact kernel.  Terms keyed in lexicographic order; no zero terms stored.
class ZPoly {
public:
    using Map = std::map<uint64_t, Rational>;

    ZPoly() = default;
    explicit ZPoly(const Rational& c) { add_term(Mono(0, 0, 0, 0), c); }
    ZPoly(long c) : ZPoly(Rational(c)) {}
    static ZPoly monomial(const Mono& m, const Rational& c = 1) {
        ZPoly p;
        p.add_term(m, c);
        return p;
    }
    static ZPoly var(int i, int exp = 1) {  // i in {0,1,2} for z's, 3 for u
        Mono m;
        m.e[i] = exp;
        return monomial(m);
    }

    bool is_zero() const { return terms_.empty(); }
    size_t n_terms() const { return terms_.size(); }
    const Map& terms() const { return terms_; }

    void add_term(const Mono& m, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m.key(), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    bool operator==(const ZPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ZPoly& o) const { return !(*this == o); }

    ZPoly operator-() const {
        ZPoly r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    ZPoly operator+(const ZPoly& o) const {
        ZPoly r = *this;
        for (const auto& [k, c] : o.terms_) {
            auto [it, fresh] = r.terms_.emplace(k, c);
            if (!fresh) {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }
    ZPoly operator-(const ZPoly& o) const { return *this + (-o); }
    ZPoly operator*(const ZPoly& o) const {
        ZPoly r;
        if (is_zero() || o.is_zero()) return r;
        for (const auto& [ka, ca] : terms_) {
            Mono ma = Mono::from_key(ka);
            for (const auto& [kb, cb] : o.terms_) {
                r.add_term(ma + Mono::from_key(kb), ca * cb);
            }
        }
        return r;
    }
    ZPoly& operator+=(const ZPoly& o) { *this = *this + o; return *this; }
    ZPoly& operator-=(const ZPoly& o) { *this = *this - o; return *this; }
    ZPoly& operator*=(const ZPoly& o) { *this = *this * o; return *this; }

    ZPoly mul_monomial(const Mono& m, const Rational& c = 1) const {
        ZPoly r;
        for (const auto& [k, cc] : terms_) r.terms_.emplace((Mono::from_key(k) + m).key(), cc * c);
        return r;
    }

    Mono leading_mono() const {
        if (is_zero()) throw std::domain_error("leading term of zero polynomial");
        return Mono::from_key(terms_.rbegin()->first);
    }
    const Rational& leading_coeff() const {
        if (is_zero()) throw std::domain_error("leading term of zero polynomial");
        return terms_.rbegin()->second;
    }

    // Minimal exponent of each variable over all terms (for Laurent clearing /
    // monomial content stripping).
    std::array<int, 4> min_exponents() const {
        std::array<int, 4> mn{0, 0, 0, 0};
        bool first = true;
        for (const auto& [k, c] : terms_) {
            Mono m = Mono::from_key(k);
            for (int i = 0; i < 4; ++i) mn[i] = first ? m.e[i] : std::min(mn[i], m.e[i]);
            first = false;
        }
        return mn;
    }

    // Exact division: returns true and sets quo when div divides *this exactly.
    bool divide_exact(const ZPoly& div, ZPoly& quo) const {
        if (div.is_zero()) throw std::domain_error("division by zero polynomial");
        quo = ZPoly();
        ZPoly rem = *this;
        Mono dl = div.leading_mono();
        const Rational& dc = div.leading_coeff();
        while (!rem.is_zero()) {
            Mono rl = rem.leading_mono();
            Mono q(rl.e[0] - dl.e[0], rl.e[1] - dl.e[1], rl.e[2] - dl.e[2], rl.e[3] - dl.e[3]);
            // For ordinary (cleared) polynomials a negative quotient exponent
            // proves non-divisibility: in exact division every partial
            // quotient monomial is a monomial of the true quotient.
            if (q.e[0] < 0 || q.e[1] < 0 || q.e[2] < 0 || q.e[3] < 0) return false;
            ZPoly t = div.mul_monomial(q, rem.leading_coeff() / dc);
            ZPoly nrem = rem - t;
            if (!nrem.is_zero() && !(nrem.leading_mono().key() < rl.key())) return false;
            quo.add_term(q, rem.leading_coeff() / dc);
            rem = std::move(nrem);
        }
        return true;
    }

    // Substitute each z-variable by a signed Laurent monomial; u maps to u.
    // Result may contain negative exponents (Laurent).
    ZPoly substitute_monomials(const std::array<std::pair<Rational, Mono>, 3>& images) const {
        ZPoly r;
        for (const auto& [k, c] : terms_) {
            Mono m = Mono::from_key(k);
            Mono out(0, 0, 0, m.e[3]);
            Rational coeff = c;
            for (int i = 0; i < 3; ++i) {
                int ei = m.e[i];
                if (ei == 0) continue;
                const auto& [sc, im] = images[i];
                for (int j = 0; j < 4; ++j) out.e[j] += ei * im.e[j];
                if (sc != 1) {
                    Rational sp = 1;
                    int a = ei >= 0 ? ei : -ei;
                    for (int t = 0; t < a; ++t) sp *= sc;
                    if (ei < 0) sp = 1 / sp;
                    coeff *= sp;
                }
            }
            r.add_term(out, coeff);
        }
        return r;
    }

    // Partial derivative with respect to z_i (i in {0,1,2}) or u (i = 3).
    ZPoly derivative(int i) const {
        ZPoly r;
        for (const auto& [k, c] : terms_) {
            Mono m = Mono::from_key(k);
            if (m.e[i] == 0) continue;
            Mono d = m;
            d.e[i] -= 1;
            r.add_term(d, c * m.e[i]);
        }
        return r;
    }

    // Specialize z_i -> value 0 (drop all terms with positive exponent; terms
    // with negative exponent make the specialization undefined).
    ZPoly at_z_zero(int i) const {
        ZPoly r;
        for (const auto& [k, c] : terms_) {
            Mono m = Mono::from_key(k);
            if (m.e[i] < 0) throw std::domain_error("specialization at pole");
            if (m.e[i] > 0) continue;
            r.add_term(m, c);
        }
        return r;
    }

    // Collect the coefficient of z_i^e as a ZPoly in the remaining variables.
    ZPoly coeff_of(int i, int e) const {
        ZPoly r;
        for (const auto& [k, c] : terms_) {
            Mono m = Mono::from_key(k);
            if (m.e[i] != e) continue;
            Mono m2 = m;
            m2.e[i] = 0;
            r.add_term(m2, c);
        }
        return r;
    }

    int degree_in(int i) const {
        int d = 0;
        bool any = false;
        for (const auto& [k, c] : terms_) {
            Mono m = Mono::from_key(k);
            d = any ? std::max(d, m.e[i]) : m.e[i];
            any = true;
        }
        return any ? d : -1;
    }

    // Exact evaluation with all four variables rational.
    Rational eval(const Rational& z1, const Rational& z2, const Rational& z3, const Rational& u) const {
        Rational r = 0;
        const Rational vals[4] = {z1, z2, z3, u};
        for (const auto& [k, c] : terms_) {
            Mono m = Mono::from_key(k);
            Rational t = c;
            for (int i = 0; i < 4; ++i) {
                int e = m.e[i];
                Rational p = 1;
                int a = e >= 0 ? e : -e;
                for (int j = 0; j < a; ++j) p *= vals[i];
                t *= (e >= 0) ? p : Rational(1) / p;
            }
            r += t;
        }
        return r;
    }

    // Numeric evaluation with complex z's and real u.
    std::complex<double> eval_cd(const std::complex<double>& z1, const std::complex<double>& z2,
                                 const std::complex<double>& z3, double u) const {
        std::complex<double> r = 0;
        for (const auto& [k, c] : terms_) {
            Mono m = Mono::from_key(k);
            std::complex<double> t = c.get_d();
            t *= ipow(z1, m.e[0]);
            t *= ipow(z2, m.e[1]);
            t *= ipow(z3, m.e[2]);
            t *= ipow(std::complex<double>(u, 0.0), m.e[3]);
            r += t;
        }
        return r;
    }

    // Rational content c such that (*this)/c has coprime integer coefficients.
    Rational content() const {
        if (is_zero()) return 1;
        mpz_class g = 0, l = 1;
        for (const auto& [k, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational r(g, l);
        r.canonicalize();
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        static const char* names[4] = {"z1", "z2", "z3", "u"};
        std::string s;
        for (const auto& [k, c] : terms_) {
            Mono m = Mono::from_key(k);
            if (!s.empty()) s += " + ";
            s += c.get_str();
            for (int i = 0; i < 4; ++i) {
                if (m.e[i] == 0) continue;
                s += std::string("*") + names[i];
                if (m.e[i] != 1) s += "^" + std::to_string(m.e[i]);
            }
        }
        return s;
    }

private:
    static std::complex<double> ipow(std::complex<double> b, int e) {
        if (e == 0) return 1.0;
        bool inv = e < 0;
        unsigned a = inv ? -e : e;
        std::complex<double> r = 1.0;
        while (a) {
            if (a & 1) r *= b;
            b *= b;
            a >>= 1;
        }
        return inv ? 1.0 / r : r;
    }
    Map terms_;
};

}  // namespace mdsforge
