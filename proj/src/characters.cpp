#include "mdsforge/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace mdsforge {

int kronecker(int64_t d, int64_t n) {
    if (d == 0 && n == 0) throw std::domain_error("kronecker(0,0) undefined");
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) sign = -sign;  // (d/-1) = sign(d)
    }
    if (n % 2 == 0) {
        if (d % 2 == 0) return 0;
        // (d/2): +1 if d = +-1 mod 8, -1 if d = +-3 mod 8
        int64_t dm = ((d % 8) + 8) % 8;
        int two = (dm == 1 || dm == 7) ? 1 : -1;
        while (n % 2 == 0) {
            n /= 2;
            sign *= two;
        }
    }
    // now n odd positive; Jacobi with reciprocity
    d %= n;
    if (d < 0) d += n;
    while (d != 0) {
        while (d % 2 == 0) {
            d /= 2;
            int64_t nm = n % 8;
            if (nm == 3 || nm == 5) sign = -sign;
        }
        std::swap(d, n);
        if (d % 4 == 3 && n % 4 == 3) sign = -sign;
        d %= n;
    }
    return n == 1 ? sign : 0;
}

namespace {

void validate_spec(const CharSpec& s) {
    if (s.d0 <= 0 || s.d0 % 2 == 0) throw std::domain_error("CharSpec: d0 must be odd positive");
    if (s.a != 1 && s.a != -1 && s.a != 2 && s.a != -2)
        throw std::domain_error("CharSpec: a must be in {+-1, +-2}");
    if (s.c <= 0) throw std::domain_error("CharSpec: c must be positive");
    if (std::gcd(s.d0, s.c) != 1) throw std::domain_error("primitivity required");
    if (!is_squarefree_u32(static_cast<uint32_t>(s.d0)) ||
        !is_squarefree_u32(static_cast<uint32_t>(s.c)))
        throw std::domain_error("primitivity required");
}

int64_t dstar(int64_t core) {
    int64_t m = ((core % 4) + 4) % 4;
    return m == 1 ? core : 4 * core;
}

}  // namespace

std::string CharSpec::str() const {
    return "chi(d0=" + std::to_string(d0) + ",a=" + std::to_string(a) + ",c=" + std::to_string(c) +
           ")";
}

int chi_eval(const CharSpec& spec, int64_t n) { return kronecker(dstar(spec.core()), n); }

int64_t chi_tilde_core(int64_t n) {
    if (n <= 0 || n % 2 == 0) throw std::domain_error("chi_tilde: n must be odd positive");
    return (n % 4 == 1) ? n : -n;
}

int chi_tilde_eval(int64_t n, int64_t m) { return kronecker(chi_tilde_core(n), m); }

int64_t conductor_of_core(int64_t core) { return std::llabs(dstar(core)); }

ConductorInfo conductor(const CharSpec& spec) {
    validate_spec(spec);
    int64_t Q = conductor_of_core(spec.core());
    return {Q, std::gcd(Q, static_cast<int64_t>(8))};
}

int parity_exponent(const CharSpec& spec) { return spec.core() > 0 ? 0 : 1; }

std::vector<CharSpec> div_set(int64_t N) {
    if (N <= 0 || N % 2 == 0) throw std::domain_error("unsupported level: even");
    SpfSieve::instance().ensure(static_cast<uint32_t>(N));
    auto fac = SpfSieve::instance().factor(static_cast<uint32_t>(N));
    for (auto& [p, e] : fac)
        if (e > 2) throw std::domain_error("unsupported level: not cubefree");
    std::vector<int64_t> cs{1};
    for (auto& [p, e] : fac) {
        size_t sz = cs.size();
        for (size_t i = 0; i < sz; ++i) cs.push_back(cs[i] * p);
    }
    std::sort(cs.begin(), cs.end());
    std::vector<CharSpec> out;
    for (int a : {1, -1, 2, -2})
        for (int64_t c : cs) out.push_back(CharSpec{1, a, c});
    return out;
}

cplx gauss_sum(const CharSpec& spec) {
    validate_spec(spec);
    int64_t Q = conductor(spec).conductor;
    const double pi = std::numbers::pi;
    cplx sum = 0;
    for (int64_t x = 0; x < Q; ++x) {
        int v = chi_eval(spec, x);
        if (v == 0) continue;
        double ang = 2.0 * pi * static_cast<double>(x) / static_cast<double>(Q);
        sum += static_cast<double>(v) * cplx(std::cos(ang), std::sin(ang));
    }
    return sum / std::sqrt(static_cast<double>(Q));
}

cplx dirichlet_L_direct(cplx w, const CharSpec& spec) {
    int64_t Q = conductor(spec).conductor;
    if (Q == 1) {
        if (w == cplx(1.0, 0.0)) throw std::domain_error("pole at w=1");
        return riemann_zeta(w);
    }
    cplx sum = 0;
    for (int64_t r = 1; r <= Q; ++r) {
        int v = chi_eval(spec, r);
        if (v == 0) continue;
        sum += static_cast<double>(v) * hurwitz_zeta(w, static_cast<double>(r) / Q);
    }
    return sum * std::exp(-w * std::log(static_cast<double>(Q)));
}

cplx dirichlet_L_reflected(cplx w, const CharSpec& spec) {
    int64_t Q = conductor(spec).conductor;
    int a = parity_exponent(spec);
    cplx g = gauss_sum(spec);
    const double pi = std::numbers::pi;
    cplx ia = (a == 0) ? cplx(1, 0) : cplx(0, 1);
    cplx pref = g / ia * std::exp((0.5 - w) * std::log(static_cast<double>(Q) / pi)) *
                gamma_ratio((1.0 - w + static_cast<double>(a)) / 2.0,
                            (w + static_cast<double>(a)) / 2.0);
    return pref * dirichlet_L_direct(1.0 - w, spec);
}

DirichletLValue dirichlet_L(cplx w, const CharSpec& spec) {
    DirichletLValue out;
    out.w = w;
    out.character = spec;
    if (w.real() >= 0.5) {
        out.value = dirichlet_L_direct(w, spec);
        out.method = "direct";
    } else {
        out.value = dirichlet_L_reflected(w, spec);
        out.method = "functional-equation";
    }
    return out;
}

cplx remove_euler_factors_dirichlet(cplx L, cplx w, const CharSpec& spec, int64_t m) {
    SpfSieve::instance().ensure(static_cast<uint32_t>(m));
    for (auto& [p, e] : SpfSieve::instance().factor(static_cast<uint32_t>(m))) {
        int v = chi_eval(spec, p);
        if (v == 0) continue;
        L *= 1.0 - static_cast<double>(v) * std::exp(-w * std::log(static_cast<double>(p)));
    }
    return L;
}

int64_t dstar_of_core(int64_t core) { return dstar(core); }

std::vector<int8_t> chi_table(int64_t core, int64_t M) {
    auto table = SpfSieve::instance().snapshot(static_cast<uint32_t>(M));
    const auto& spf = *table;
    int64_t D = dstar(core);
    std::vector<int8_t> chi(M + 1, 0);
    if (M >= 1) chi[1] = 1;
    for (int64_t k = 2; k <= M; ++k) {
        uint32_t p = spf[static_cast<uint32_t>(k)];
        int64_t rest = k / p;
        // completely multiplicative in the lower argument
        chi[k] = (rest == 1) ? static_cast<int8_t>(kronecker(D, k))
                             : static_cast<int8_t>(chi[p] * chi[rest]);
    }
    return chi;
}

cplx dirichlet_L_truncated(cplx w, int64_t core, int64_t M, double* tail_est) {
    std::vector<int8_t> chi = chi_table(core, M);
    bool real_w = (w.imag() == 0.0);
    cplx sum = 0;
    double sig = w.real();
    for (int64_t k = 1; k <= M; ++k) {
        if (chi[k] == 0) continue;
        if (real_w)
            sum += static_cast<double>(chi[k]) * std::pow(static_cast<double>(k), -sig);
        else
            sum += static_cast<double>(chi[k]) *
                   std::exp(-w * std::log(static_cast<double>(k)));
    }
    if (tail_est) {
        double Q = static_cast<double>(conductor_of_core(core));
        double bound = std::min(std::sqrt(Q) * (1.0 + std::log(Q)),
                                2.0 * std::sqrt(static_cast<double>(M)) + 10.0);
        *tail_est = 2.0 * (1.0 + std::abs(w)) * bound * std::pow(static_cast<double>(M), -sig);
    }
    return sum;
}

}  // namespace mdsforge
