#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdsforge/numutil.hpp"

namespace mdsforge {

// Extended Jacobi-Kronecker symbol (d/n), defined for all integers (not both
// zero), with the standard completions at 2 and -1.
int kronecker(int64_t d, int64_t n);

// A real character chi_{d0} chi_a chi_c built from an odd squarefree d0, a
// mod-8 part a in {+-1, +-2}, and a squarefree divisor c of rad(N).  The
// trivial spec is (1, 1, 1).
struct CharSpec {
    int64_t d0 = 1;  // odd squarefree, may be 1
    int a = 1;       // in {1, -1, 2, -2}
    int64_t c = 1;   // positive squarefree (divides rad(N) in MDS use)

    static CharSpec trivial() { return {}; }
    static CharSpec quadratic(int64_t d) { return {d, 1, 1}; }

    // signed squarefree "discriminant core": a * c * d0
    int64_t core() const { return static_cast<int64_t>(a) * c * d0; }
    bool is_trivial() const { return d0 == 1 && a == 1 && c == 1; }
    bool operator==(const CharSpec& o) const { return d0 == o.d0 && a == o.a && c == o.c; }
    std::string str() const;
};

// Value of the primitive real character attached to spec at n.
int chi_eval(const CharSpec& spec, int64_t n);

// chi~_n of the reciprocity convention: chi~_n = chi_n for n = 1 mod 4,
// chi_{-n} for n = 3 mod 4 (n odd positive).
int chi_tilde_eval(int64_t n, int64_t m);
int64_t chi_tilde_core(int64_t n);  // +-n, = 1 mod 4

// conductor of the primitive character inducing the product, and (cond, 8)
struct ConductorInfo {
    int64_t conductor;
    int64_t c_tilde;  // gcd(conductor, 8)
};
ConductorInfo conductor(const CharSpec& spec);
int64_t conductor_of_core(int64_t core);  // |core| or 4|core| by core mod 4

// parity exponent: 0 if chi(-1) = 1, 1 if chi(-1) = -1
int parity_exponent(const CharSpec& spec);

// Div(N) = {a*c : a in {+-1,+-2}, c | rad(N)}, enumerated deterministically:
// a in (1,-1,2,-2) outer? No: c ascending outer... order: lexicographic in
// (a,c) with a in (1,-1,2,-2) and c ascending.
std::vector<CharSpec> div_set(int64_t N);

// normalised Gauss sum g_chi = tau(chi)/sqrt(Q); requires primitivity.
cplx gauss_sum(const CharSpec& spec);

struct DirichletLValue {
    cplx w;
    CharSpec character;
    cplx value;
    std::string method;  // "direct" or "functional-equation"
};

// Dirichlet L-function of the primitive character attached to spec.
// Direct engine: Hurwitz-zeta Euler-Maclaurin over residues mod Q (valid for
// all w != 1-pole); for Re(w) < 0.5 the reflected representation via the
// functional equation is used.  Target absolute tolerance ~1e-9 at desk
// conductors.
DirichletLValue dirichlet_L(cplx w, const CharSpec& spec);
// Force a specific method (for two-route cross-checks).
cplx dirichlet_L_direct(cplx w, const CharSpec& spec);
cplx dirichlet_L_reflected(cplx w, const CharSpec& spec);

// L^{(m)}: multiply by the factors (1 - chi(p) p^{-w}) over p | m.
cplx remove_euler_factors_dirichlet(cplx L, cplx w, const CharSpec& spec, int64_t m);

// Truncated character sum sum_{k<=M} chi(k) k^{-w} with multiplicative sieve
// (fast path for Re w comfortably > 1).
cplx dirichlet_L_truncated(cplx w, int64_t core, int64_t M, double* tail_est = nullptr);

// Sieved table of chi(k) for k <= M, where chi is the primitive real character
// with signed squarefree core (chi(k) = kronecker(D*(core), k)).
std::vector<int8_t> chi_table(int64_t core, int64_t M);
int64_t dstar_of_core(int64_t core);

}  // namespace mdsforge
