#include "mdsforge/lfuncs.hpp"

#include <cmath>
#include <cstdlib>
#include <algorithm>
#include <map>
#include <numeric>
#include <memory>
#include <tuple>
#include <mutex>
#include <numbers>

namespace mdsforge {

namespace {
constexpr double kPi = std::numbers::pi;
}

cplx gamma_factor(cplx s, int ell, double conductor) {
    double kappa = (ell - 1) / 2.0;
    double A = std::sqrt(kPi) * std::pow(2.0, 1.0 - kappa);
    cplx scale = std::exp(s * std::log(std::sqrt(conductor) / (2.0 * kPi)));
    return A * scale * gamma_cplx(s + kappa);
}

VKernel::VKernel(cplx z0, cplx lgref, double kappa) {
    // contour right of the Gamma poles (Re u > -Re z0) and far enough right
    // that the shifted Dirichlet series converges absolutely
    // (Re(z0 - kappa + u) > 1).  The integrand decays like e^{-pi |t| / 2}
    // through the Gamma factor, so |Im u| <= 30 is far past roundoff.
    sigma0_ = std::max(1.5, 1.6 + kappa - z0.real());
    const double T = 30.0, h = 0.03;
    for (double t = -T; t <= T + 1e-12; t += h) {
        cplx u(sigma0_, t);
        cplx w = std::exp(lgamma_cplx(z0 + u) - lgref) / u;
        tk_.push_back(t);
        wk_.push_back(w * (h / (2.0 * kPi)));
    }
    lymin_ = std::log(1e-6);
    lymax_ = std::log(60.0);
    step_ = 0.012;
    int n = static_cast<int>((lymax_ - lymin_) / step_) + 2;
    grid_.resize(n);
    for (int i = 0; i < n; ++i) grid_[i] = eval_integral(std::exp(lymin_ + i * step_));
}

namespace {
std::mutex g_vk_mutex;
std::map<std::tuple<double, double, int, bool>, std::shared_ptr<const VKernel>> g_vk_cache;

std::shared_ptr<const VKernel> vkernel_cached(cplx s, int ell, bool dual) {
    auto key = std::make_tuple(s.real(), s.imag(), ell, dual);
    std::lock_guard<std::mutex> lk(g_vk_mutex);
    auto it = g_vk_cache.find(key);
    if (it != g_vk_cache.end()) return it->second;
    double kappa = (ell - 1) / 2.0;
    cplx z0 = dual ? 1.0 - s + kappa : s + kappa;
    auto vk = std::make_shared<VKernel>(z0, lgamma_cplx(s + kappa), kappa);
    if (g_vk_cache.size() > 256) g_vk_cache.clear();
    g_vk_cache[key] = vk;
    return vk;
}
}  // namespace

VKernel VKernel::main_kernel(cplx s, int ell) { return *vkernel_cached(s, ell, false); }

VKernel VKernel::dual_kernel(cplx s, int ell) { return *vkernel_cached(s, ell, true); }

cplx VKernel::eval_integral(double y) const {
    // (1/2 pi i) int ... du along Re u = sigma0: du = i dt, so the i cancels
    // the 1/i and the weights already carry h/(2 pi).
    double ly = std::log(y);
    cplx sum = 0;
    for (size_t k = 0; k < wk_.size(); ++k) {
        sum += wk_[k] * std::exp(cplx(0.0, -tk_[k] * ly));
    }
    return sum * std::exp(-sigma0_ * ly);
}

cplx VKernel::operator()(double y) const {
    if (y <= 0) throw std::domain_error("VKernel: y must be positive");
    double ly = std::log(y);
    if (ly >= lymax_) return 0.0;
    if (ly < lymin_) return eval_integral(y);
    // 6-point Lagrange on the uniform log grid
    int n = static_cast<int>(grid_.size());
    double x = (ly - lymin_) / step_;
    int i = static_cast<int>(x);
    int lo = std::clamp(i - 2, 0, n - 6);
    double f = x - lo;
    cplx acc = 0;
    for (int k = 0; k < 6; ++k) {
        double w = 1.0;
        for (int m = 0; m < 6; ++m)
            if (m != k) w *= (f - m) / (k - m);
        acc += w * grid_[lo + k];
    }
    return acc;
}

double VKernel::support_bound(double thresh) const {
    for (int i = static_cast<int>(grid_.size()) - 1; i >= 0; --i) {
        if (std::abs(grid_[i]) > thresh) return std::exp(lymin_ + (i + 1) * step_);
    }
    return std::exp(lymin_);
}

std::vector<double> twisted_coefficients(const Newform& f, const CharSpec& spec, int64_t M) {
    if (M > f.M()) throw std::out_of_range("insufficient coefficients");
    std::vector<int8_t> chi = chi_table(spec.core(), M);
    std::vector<double> out(M + 1, 0.0);
    double e = -(f.ell - 1) / 2.0;
    for (int64_t n = 1; n <= M; ++n) {
        if (chi[n] == 0 || f.a[n] == 0) continue;
        out[n] = static_cast<double>(f.a[n]) * std::pow(static_cast<double>(n), e) * chi[n];
    }
    return out;
}

cplx local_euler_inverse(const Newform& f, int64_t p, int chip, cplx s) {
    cplx ps = std::exp(-s * std::log(static_cast<double>(p)));
    cplx r = 1.0 - f.lambda(p) * static_cast<double>(chip) * ps;
    if (f.N % p != 0) r += static_cast<double>(chip * chip) * ps * ps;
    return r;
}

cplx L_direct_smoothed(const Newform& f, int64_t core, cplx s, double conductor_scale,
                       double* err_est, double t0_per_c) {
    // Gaussian damping e^{-(n/T)^2}: Mellin transform (1/2) Gamma(u/2) has
    // poles only at u = -2k, so the cutoff corrections are polynomial in
    // 1/T^2 and the Neville ladder extrapolates them away.
    const double r = 1.3;
    const int J = 8;
    // the cutoff corrections carry conductor powers; starting the ladder at
    // T ~ c keeps them small and cleanly ~ 1/T^2 across the ladder
    double T0 = std::max({300.0, 35.0 * std::sqrt(conductor_scale),
                          t0_per_c * conductor_scale});
    int Juse = J;
    // at the largest node the table must reach 6 T_max (e^{-36} tail)
    while (Juse > 4 && T0 * std::pow(r, Juse - 1) * 6.0 > static_cast<double>(f.M())) --Juse;
    double Tmax = T0 * std::pow(r, Juse - 1);
    if (Tmax * 6.0 > static_cast<double>(f.M())) throw std::runtime_error("precision failure");

    std::vector<double> lam;
    {
        int64_t M = std::min<int64_t>(f.M(), static_cast<int64_t>(6.6 * Tmax) + 1);
        std::vector<int8_t> chi = chi_table(core, M);
        lam.assign(M + 1, 0.0);
        double e = -(f.ell - 1) / 2.0;
        for (int64_t n = 1; n <= M; ++n)
            if (chi[n] != 0 && f.a[n] != 0)
                lam[n] = static_cast<double>(f.a[n]) * std::pow(static_cast<double>(n), e) * chi[n];
    }
    int64_t M = static_cast<int64_t>(lam.size()) - 1;

    std::vector<double> xs;
    std::vector<cplx> ys;
    bool real_s = (s.imag() == 0.0);
    double sig = s.real();
    for (int j = 0; j < Juse; ++j) {
        double T = T0 * std::pow(r, j);
        int64_t nmax = std::min<int64_t>(M, static_cast<int64_t>(6.6 * T));
        cplx sum = 0;
        for (int64_t n = 1; n <= nmax; ++n) {
            if (lam[n] == 0.0) continue;
            double x = static_cast<double>(n) / T;
            double damp = std::exp(-x * x);
            if (real_s)
                sum += lam[n] * std::pow(static_cast<double>(n), -sig) * damp;
            else
                sum += lam[n] * std::exp(-s * std::log(static_cast<double>(n))) * damp;
        }
        xs.push_back(1.0 / (T * T));
        ys.push_back(sum);
    }
    return neville_adaptive(xs, ys, err_est);
}

namespace {

std::mutex g_eps_mutex;
std::map<std::tuple<std::string, int64_t, double>, int> g_eps_cache;

int eps_from_lambda_ratio(const Newform& f, int64_t core, double conductor, double delta,
                          double t0_per_c) {
    cplx lp = L_direct_smoothed(f, core, cplx(0.5 + delta, 0.0), conductor, nullptr, t0_per_c);
    cplx lm = L_direct_smoothed(f, core, cplx(0.5 - delta, 0.0), conductor, nullptr, t0_per_c);
    cplx num = gamma_factor(cplx(0.5 + delta, 0.0), f.ell, conductor) * lp;
    cplx den = gamma_factor(cplx(0.5 - delta, 0.0), f.ell, conductor) * lm;
    if (std::abs(den) < 1e-14) {
        // Lambda(1/2 - delta) ~ 0 can only happen accidentally; nudge delta
        return eps_from_lambda_ratio(f, core, conductor, delta * 1.5, t0_per_c);
    }
    cplx ratio = num / den;
    if (std::abs(std::abs(ratio) - 1.0) > 1e-3 || std::abs(ratio.imag()) > 1e-3)
        throw std::runtime_error("root number unresolved");
    return ratio.real() > 0 ? 1 : -1;
}

}  // namespace

int root_number_core(const Newform& f, int64_t core, double conductor, double delta) {
    auto key = std::make_tuple(f.source, core, conductor);
    {
        std::lock_guard<std::mutex> lk(g_eps_mutex);
        auto it = g_eps_cache.find(key);
        if (it != g_eps_cache.end()) return it->second;
    }
    int e = 0;
    std::string last;
    // prefer the accurate ladder; relax its start if the table is too short
    for (double t0pc : {2.0, 0.8, 0.35}) {
        for (double d : {delta, 1.8 * delta, 3.0 * delta}) {
            try {
                e = eps_from_lambda_ratio(f, core, conductor, d, t0pc);
                break;
            } catch (const std::runtime_error& ex) {
                last = ex.what();
            }
        }
        if (e != 0) break;
    }
    if (e == 0) throw std::runtime_error(last.empty() ? "root number unresolved" : last);
    std::lock_guard<std::mutex> lk(g_eps_mutex);
    g_eps_cache[key] = e;
    return e;
}

int root_number(const Newform& f, const CharSpec& spec, double delta) {
    ConductorData cd = conductor_data(f, spec);
    int e = root_number_core(f, spec.core(), static_cast<double>(cd.twisted_exact), delta);
    if (spec.is_trivial()) f.eps = e;
    return e;
}

int root_number_formula(const Newform& f, const CharSpec& spec) {
    if (!f.eps) {
        ConductorData cd = conductor_data(f, CharSpec::trivial());
        f.eps = root_number_core(f, 1, static_cast<double>(cd.twisted_exact));
    }
    // eps(pi x chi_{a c d0}) = eps(pi x chi_{+-c}) * chi_{rest}(-c(pi x chi_{+-c}))
    int64_t c1 = spec.c;
    if (c1 == 1) {
        return *f.eps * chi_eval(spec, -f.N);
    }
    int sgn = (c1 % 4 == 1) ? 1 : -1;  // chi_{-1}(c1)
    int64_t cond_base = f.N * std::gcd(c1, f.N0);
    int eps_base = root_number_core(f, sgn * c1, static_cast<double>(cond_base));
    CharSpec rest{spec.d0, spec.a * sgn, 1};
    return eps_base * chi_eval(rest, -cond_base);
}

LValue L_twisted(cplx s, const Newform& f, const CharSpec& spec) {
    ConductorData cd = conductor_data(f, spec);
    double C = static_cast<double>(cd.twisted_exact);
    int eps = root_number_formula(f, spec);

    VKernel V1 = VKernel::main_kernel(s, f.ell);
    VKernel V2 = VKernel::dual_kernel(s, f.ell);
    double scale = 2.0 * kPi / std::sqrt(C);
    double y1 = V1.support_bound(1e-14), y2 = V2.support_bound(1e-14);
    int64_t n1 = static_cast<int64_t>(y1 / scale) + 1;
    int64_t n2 = static_cast<int64_t>(y2 / scale) + 1;
    int64_t M = std::min<int64_t>(f.M(), std::max(n1, n2));

    std::vector<int8_t> chi = chi_table(spec.core(), M);
    double e = -(f.ell - 1) / 2.0;

    // dual-term prefactor (sqrt(C)/2 pi)^{1-2s}; the Gamma ratio lives in V2
    cplx pre2 = std::exp((1.0 - 2.0 * s) * std::log(std::sqrt(C) / (2.0 * kPi)));

    cplx sum1 = 0, sum2 = 0;
    bool real_s = (s.imag() == 0.0);
    for (int64_t n = 1; n <= M; ++n) {
        if (chi[n] == 0 || f.a[n] == 0) continue;
        double lam = static_cast<double>(f.a[n]) * std::pow(static_cast<double>(n), e) * chi[n];
        double y = scale * static_cast<double>(n);
        cplx v1 = (n <= n1) ? V1(y) : cplx(0.0);
        cplx v2 = (n <= n2) ? V2(y) : cplx(0.0);
        if (real_s) {
            double ns = std::pow(static_cast<double>(n), -s.real());
            double nd = std::pow(static_cast<double>(n), -(1.0 - s.real()));
            sum1 += lam * ns * v1;
            sum2 += lam * nd * v2;
        } else {
            cplx ln = std::log(static_cast<double>(n));
            sum1 += lam * std::exp(-s * ln) * v1;
            sum2 += lam * std::exp(-(1.0 - s) * ln) * v2;
        }
    }
    LValue out;
    out.s = s;
    out.twist = spec;
    out.eps = eps;
    out.cutoff = M;
    out.value = sum1 + static_cast<double>(eps) * pre2 * sum2;
    // error: kernel interpolation + truncated tail (divisor-bound envelope)
    double tail = 0.0;
    if (M < std::max(n1, n2)) {
        double yM = scale * static_cast<double>(M);
        double vM = std::max(std::abs(V1(std::min(yM, 59.0))),
                             std::abs(pre2 * V2(std::min(yM, 59.0))));
        tail = 4.0 * vM * std::log(2.0 + static_cast<double>(M)) *
               std::pow(static_cast<double>(M), -std::min(s.real(), 1.0 - s.real()));
    }
    out.est_error = 1e-11 * (std::abs(sum1) + std::abs(pre2 * sum2) + 1.0) + tail;
    return out;
}

LValue L_twisted_2N(cplx s, const Newform& f, const CharSpec& spec) {
    LValue v = L_twisted(s, f, spec);
    SpfSieve::instance().ensure(static_cast<uint32_t>(2 * f.N));
    for (auto& [p, ex] : SpfSieve::instance().factor(static_cast<uint32_t>(2 * f.N))) {
        int chip = chi_eval(spec, p);
        v.value *= local_euler_inverse(f, p, chip, s);
    }
    return v;
}

cplx completed_Lambda(cplx s, const Newform& f, const CharSpec& spec, const std::string& method) {
    ConductorData cd = conductor_data(f, spec);
    double C = static_cast<double>(cd.twisted_exact);
    cplx L;
    if (method == "direct") {
        L = L_direct_smoothed(f, spec.core(), s, C);
    } else {
        L = L_twisted(s, f, spec).value;
    }
    return gamma_factor(s, f.ell, C) * L;
}

CentralClass classify_central(double absval, int eps) {
    if (absval > 1e-4) return CentralClass::nonzero;
    if (absval < 1e-6 && eps == -1) return CentralClass::structural_zero;
    return CentralClass::indeterminate;
}

double sym2_L_2N(const Newform& f, double x, int64_t cutoff, double* err_est) {
    auto& sieve = SpfSieve::instance();
    if (x >= 1.5) {
        int64_t P = std::min<int64_t>(f.M(), 200000);
        double logv = 0.0;
        for (uint32_t p : sieve.primes_to(static_cast<uint32_t>(P))) {
            if ((2 * f.N) % p == 0) continue;
            double t = std::pow(static_cast<double>(p), -x);
            double l = f.lambda(p);
            // (1-t)(1 - (l^2-2) t + t^2) from parameters {1, alpha^2, beta^2}
            double fac = (1.0 - t) * (1.0 - (l * l - 2.0) * t + t * t);
            logv -= std::log(fac);
        }
        if (err_est) *err_est = 3.0 * std::pow(static_cast<double>(P), 1.0 - 2.0 * x);
        return std::exp(logv);
    }
    // smoothed Dirichlet series: L^(2N)(x, Sym^2) = zeta^(2N)(2x) * D(x),
    // D(x) = sum_{(n,2N)=1} lambda(n^2) n^{-x}, with exponential damping and
    // Richardson extrapolation in the damping cutoff.
    int64_t M = std::min<int64_t>(cutoff, f.M());
    sieve.ensure(static_cast<uint32_t>(M));
    std::vector<double> lam2(M + 1, 0.0);
    lam2[1] = 1.0;
    // lambda(p^{2e}) via the Hecke recursion on normalized eigenvalues
    for (uint32_t p : sieve.primes_to(static_cast<uint32_t>(M))) {
        if ((2 * f.N) % p == 0) continue;
        double lp = f.lambda(p);
        int emax = 0;
        for (int64_t pe = p; pe <= M; pe *= p) ++emax;
        std::vector<double> lpk(2 * emax + 1);
        lpk[0] = 1.0;
        if (2 * emax >= 1) lpk[1] = lp;
        for (int k = 2; k <= 2 * emax; ++k) lpk[k] = lp * lpk[k - 1] - lpk[k - 2];
        int64_t pe = p;
        for (int e2 = 1; e2 <= emax; ++e2) {
            lam2[pe] = lpk[2 * e2];
            pe *= p;
        }
    }
    auto spf_snapshot = sieve.snapshot(static_cast<uint32_t>(M));
    const auto& spf = *spf_snapshot;
    for (int64_t n = 2; n <= M; ++n) {
        uint32_t p = spf[static_cast<uint32_t>(n)];
        if ((2 * f.N) % p == 0 || lam2[n] != 0.0) continue;
        int64_t pe = p, rest = n;
        while (rest % p == 0) rest /= p;
        pe = n / rest;
        if (rest > 1 && lam2[pe] != 0.0 && lam2[rest] != 0.0) lam2[n] = lam2[pe] * lam2[rest];
    }
    const double r = 1.6;
    const int J = 3;
    double Tmax = static_cast<double>(M) / 18.0;
    std::vector<double> xs;
    std::vector<cplx> ys;
    for (int j = J - 1; j >= 0; --j) {
        double T = Tmax / std::pow(r, j);
        double sum = 0.0;
        for (int64_t n = 1; n <= M; ++n) {
            if (lam2[n] == 0.0) continue;
            sum += lam2[n] * std::pow(static_cast<double>(n), -x) *
                   std::exp(-static_cast<double>(n) / T);
        }
        xs.push_back(1.0 / T);
        ys.push_back(cplx(sum, 0.0));
    }
    double extrap_err = 0.0;
    double D = neville_adaptive(xs, ys, &extrap_err).real();
    double zeta2x = riemann_zeta(cplx(2.0 * x, 0.0)).real();
    SpfSieve::instance().ensure(static_cast<uint32_t>(2 * f.N));
    for (auto& [p, e] : sieve.factor(static_cast<uint32_t>(2 * f.N)))
        zeta2x *= 1.0 - std::pow(static_cast<double>(p), -2.0 * x);
    double value = zeta2x * D;
    if (err_est) *err_est = std::abs(zeta2x) * (extrap_err + 2.0 * std::pow(Tmax, -0.75));
    if (value <= 0.0) throw std::runtime_error("symmetric-square evaluation failed");
    return value;
}

}  // namespace mdsforge
