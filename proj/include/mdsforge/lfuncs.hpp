#pragma once

#include "mdsforge/newforms.hpp"

namespace mdsforge {

// gamma(s) = c^{s/2} pi^{-s} Gamma((s+(l-1)/2)/2) Gamma((s+(l+1)/2)/2)
//          = sqrt(pi) 2^{1-(l-1)/2} (sqrt(c)/(2 pi))^s Gamma(s + (l-1)/2)
// by the duplication formula; kappa = (l-1)/2.
cplx gamma_factor(cplx s, int ell, double conductor);

// Smoothing kernel of the approximate functional equation:
//   K(y) = (1/2 pi i) int_{(sigma0)} e^{u^2} Gamma(z0+u) e^{-lgref} y^{-u} du/u,
// precomputed on a log grid.  The main sum uses z0 = s+kappa with
// lgref = lgamma(s+kappa) (so K -> 1 as y -> 0); the dual sum uses
// z0 = 1-s+kappa with the same lgref, keeping the Gamma-ratio well defined
// even when 1-s+kappa sits on a Gamma pole.  AFE argument: y = 2 pi n/sqrt(c).
class VKernel {
public:
    VKernel(cplx z0, cplx lgref, double kappa);
    static VKernel main_kernel(cplx s, int ell);
    static VKernel dual_kernel(cplx s, int ell);
    cplx operator()(double y) const;
    // largest y with |K| above `thresh` (for cutoff selection)
    double support_bound(double thresh) const;

private:
    cplx eval_integral(double y) const;
    double sigma0_;
    std::vector<cplx> wk_;       // quadrature weights * integrand prefactors
    std::vector<double> tk_;
    double lymin_, lymax_, step_;
    std::vector<cplx> grid_;
};

struct LValue {
    cplx s;
    CharSpec twist;
    cplx value;          // L(s, pi_f x chi)
    int64_t cutoff = 0;
    double est_error = 0.0;
    int eps = 0;         // root number used
};

// Root numbers.
// Numeric: eps = Lambda(1/2+delta)/Lambda(1/2-delta) with Lambda from the
// smoothed direct series (Richardson-extrapolated), no functional equation
// used.  Throws "root number unresolved" if |eps| is not within 1e-3 of 1.
int root_number(const Newform& f, const CharSpec& spec, double delta = 0.1);
// Fast path via twistroot identity eps(pi x chi_d) = eps(pi) chi_d(-N),
// with eps(pi) computed numerically once and cached.
int root_number_formula(const Newform& f, const CharSpec& spec);
// Root number of the series sum lambda(n) kron(D*(core), n) n^{-s} with an
// explicitly supplied conductor (used for ramified twists by chi_{+-c1}).
int root_number_core(const Newform& f, int64_t core, double conductor, double delta = 0.1);

// Smoothed direct evaluation of L(s, pi x chi-core) by Richardson
// extrapolation in the cutoff of sum lambda chi (n) n^{-s} e^{-n/T}.
// Valid for any s (L entire); no root number needed.
// t0_per_c tunes the ladder start T0 = max(300, 35 sqrt(c), t0_per_c * c);
// 2.0 reaches ~1e-8 residuals, smaller values trade accuracy for table reach.
cplx L_direct_smoothed(const Newform& f, int64_t core, cplx s, double conductor_scale,
                       double* err_est = nullptr, double t0_per_c = 2.0);

// Approximate-functional-equation evaluation (balanced, smoothed).
LValue L_twisted(cplx s, const Newform& f, const CharSpec& spec);
// L^{(2N)}: Euler factors at p | 2N removed.
LValue L_twisted_2N(cplx s, const Newform& f, const CharSpec& spec);

// Completed Lambda(s) = gamma(s) L(s) with the exact twisted conductor.
// method: "afe" (default) or "direct" (Richardson; independent of eps).
cplx completed_Lambda(cplx s, const Newform& f, const CharSpec& spec,
                      const std::string& method = "afe");

// Nonvanishing classification at the central point.
enum class CentralClass { nonzero, structural_zero, indeterminate };
CentralClass classify_central(double absval, int eps);

// L^{(2N)}(x, Sym^2 pi_f): Euler product for x >= 1.5; smoothed coefficient
// sum (heuristic tail, no functional equation) near x = 1.  For x = 1 asserts
// positivity ("symmetric-square evaluation failed" otherwise).
double sym2_L_2N(const Newform& f, double x, int64_t cutoff = 100000,
                 double* err_est = nullptr);
inline double sym2_L1(const Newform& f, int64_t cutoff = 100000, double* err = nullptr) {
    return sym2_L_2N(f, 1.0, cutoff, err);
}

// Coefficient stream lambda_f(n) chi(n), n <= M.
std::vector<double> twisted_coefficients(const Newform& f, const CharSpec& spec, int64_t M);

// Local Euler factor of pi_f at p twisted by the real character value chip:
// inverse factor 1 - lambda(p) chip p^{-s} + [p coprime N] chip^2 p^{-2s}.
cplx local_euler_inverse(const Newform& f, int64_t p, int chip, cplx s);

}  // namespace mdsforge
