#pragma once

#include <gmpxx.h>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdsforge {

using Rational = mpq_class;

// Polynomial in the formal variable u, where u^2 stands for the parameter q.
// Coefficients are exact rationals; the rewrite u^2 -> q is never performed,
// so q-content lives in even u-powers.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(const Rational& c) {
        if (c != 0) coeffs_.push_back(c);
        trim();
    }
    UPoly(long num, long den = 1) : UPoly(Rational(num, den)) {}

    static UPoly u_power(int k, const Rational& c = 1) {
        UPoly p;
        if (c != 0) {
            p.coeffs_.assign(k + 1, Rational(0));
            p.coeffs_[k] = c;
        }
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& coeff(int k) const {
        static const Rational zero(0);
        if (k < 0 || k > degree()) return zero;
        return coeffs_[k];
    }
    void set_coeff(int k, const Rational& c) {
        if (k >= static_cast<int>(coeffs_.size())) coeffs_.resize(k + 1, Rational(0));
        coeffs_[k] = c;
        trim();
    }

    bool operator==(const UPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i];
        for (size_t i = 0; i < o.coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
        r.trim();
        return r;
    }
    UPoly operator-(const UPoly& o) const {
        UPoly r;
        r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i];
        for (size_t i = 0; i < o.coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
        r.trim();
        return r;
    }
    UPoly operator*(const UPoly& o) const {
        UPoly r;
        if (is_zero() || o.is_zero()) return r;
        r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            for (size_t j = 0; j < o.coeffs_.size(); ++j)
                r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
        }
        r.trim();
        return r;
    }
    UPoly& operator+=(const UPoly& o) { *this = *this + o; return *this; }
    UPoly& operator-=(const UPoly& o) { *this = *this - o; return *this; }
    UPoly& operator*=(const UPoly& o) { *this = *this * o; return *this; }

    bool even_powers_only() const {
        for (size_t i = 1; i < coeffs_.size(); i += 2)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    // Evaluate with u = sqrt(p).
    double eval_at_sqrt(double p) const {
        double u = std::sqrt(p), r = 0.0;
        for (int k = degree(); k >= 0; --k) r = r * u + coeffs_[k].get_d();
        return r;
    }

    // Exact evaluation at q with u^2 = q; requires even powers only.
    Rational eval_at_q(const Rational& q) const {
        Rational r = 0;
        for (int k = degree(); k >= 0; --k) {
            if (coeffs_[k] == 0) continue;
            if (k % 2 != 0) throw std::domain_error("UPoly: odd u-power has no exact q-value");
            Rational qk = 1;
            for (int i = 0; i < k / 2; ++i) qk *= q;
            r += coeffs_[k] * qk;
        }
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = 0; k <= degree(); ++k) {
            if (coeffs_[k] == 0) continue;
            if (!s.empty()) s += " + ";
            s += coeffs_[k].get_str();
            if (k > 0) s += "*u^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;  // coeffs_[k] multiplies u^k
};

}  // namespace mdsforge
