#include "mdsforge/mds.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace mdsforge {

namespace {
constexpr double kPi = std::numbers::pi;

cplx cpow_int(cplx b, int e) {
    cplx r = 1.0;
    bool inv = e < 0;
    for (int i = 0; i < std::abs(e); ++i) r *= b;
    return inv ? 1.0 / r : r;
}

cplx npow(int64_t n, cplx s) {  // n^{-s}
    if (s.imag() == 0.0) return std::pow(static_cast<double>(n), -s.real());
    return std::exp(-s * std::log(static_cast<double>(n)));
}

void require_coprime_odd(int64_t n, int64_t N, const char* what) {
    if (n <= 0 || n % 2 == 0 || std::gcd(n, N) != 1)
        throw std::domain_error(std::string(what) + ": argument not an odd integer coprime to 2N");
}

}  // namespace

const CGFunction& cg_tables() {
    static const CGFunction cg(16, 8, 8);
    return cg;
}

HEvaluator::HEvaluator(std::shared_ptr<const Newform> f) : f_(std::move(f)) {}

const HEvaluator::PrimeTable& HEvaluator::table(uint32_t p) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = tables_.find(p);
    if (it != tables_.end()) return it->second;
    SatakeData sd = satake(*f_, p);
    if (sd.kind != SatakeKind::unramified)
        throw std::domain_error("H: prime divides the level");
    PrimeTable t{sd.alpha, sd.beta, static_cast<double>(p)};
    return tables_.emplace(p, t).first->second;
}

cplx HEvaluator::operator()(int64_t m1, int64_t m2, int64_t d) const {
    int64_t N2 = 2 * f_->N;
    require_coprime_odd(m1 * m2 * d, N2, "H");
    const CGFunction& cg = cg_tables();
    auto spf_snapshot =
        SpfSieve::instance().snapshot(static_cast<uint32_t>(std::max({m1, m2, d})));
    const auto& spf = *spf_snapshot;
    cplx out = 1.0;
    int64_t r1 = m1, r2 = m2, rd = d;
    while (r1 * r2 * rd > 1) {
        uint32_t p = std::min({r1 > 1 ? spf[static_cast<uint32_t>(r1)] : UINT32_MAX,
                               r2 > 1 ? spf[static_cast<uint32_t>(r2)] : UINT32_MAX,
                               rd > 1 ? spf[static_cast<uint32_t>(rd)] : UINT32_MAX});
        int k1 = 0, k2 = 0, j = 0;
        while (r1 % p == 0) {
            r1 /= p;
            ++k1;
        }
        while (r2 % p == 0) {
            r2 /= p;
            ++k2;
        }
        while (rd % p == 0) {
            rd /= p;
            ++j;
        }
        const PrimeTable& t = table(p);
        double a = cg.coefficient_at(k1, k2, j, t.p);
        if (a == 0.0) return 0.0;
        out *= a * cpow_int(t.alpha, k1) * cpow_int(t.beta, k2);
        // twisted multiplicativity glue: (p^j / r1 r2) (rd / p^{k1+k2})
        if (j % 2 == 1) out *= static_cast<double>(kronecker(p, r1 * r2));
        if ((k1 + k2) % 2 == 1) out *= static_cast<double>(kronecker(rd, p));
    }
    return out;
}

cplx P_d(cplx s, const CharSpec& a1c1, const Newform& f, int64_t d) {
    require_coprime_odd(d, 2 * f.N, "P_d");
    const CGFunction& cg = cg_tables();
    cplx out = 1.0;
    for (auto& [p, j] : SpfSieve::instance().factor(static_cast<uint32_t>(d))) {
        if (j < 2) continue;
        SatakeData sd = satake(f, p);
        cplx ps = npow(p, s);
        cplx x = sd.alpha * ps, y = sd.beta * ps;
        if (j % 2 == 0) {
            int64_t rest = d;
            for (int t = 0; t < j; ++t) rest /= p;
            double chi = chi_eval(a1c1, p) * kronecker(rest, p);
            x *= chi;
            y *= chi;
        }
        out *= cg.P(j).eval(x, y, static_cast<double>(p));
    }
    return out;
}

cplx Qtilde_n(cplx w, const CharSpec& a2c2, const Newform& f, int64_t n) {
    require_coprime_odd(n, 2 * f.N, "Qtilde_n");
    const CGFunction& cg = cg_tables();
    cplx out = 1.0;
    for (auto& [p, k] : SpfSieve::instance().factor(static_cast<uint32_t>(n))) {
        // k = 1 contributes sum_{k1+k2=1} alpha^{k1} beta^{k2} Q_{(k1,k2)}
        // = lambda(p) since Q_{(1,0)} = Q_{(0,1)} = 1; the convolution over
        // m1 m2 = n forces these factors (rep2 would not match the raw series
        // at squarefree n without them).
        SatakeData sd = satake(f, p);
        cplx arg = npow(p, w);
        if (k % 2 == 0) {
            int64_t rest = n;
            for (int t = 0; t < k; ++t) rest /= p;
            arg *= chi_eval(a2c2, p) * kronecker(rest, p);
        }
        cplx inner = 0.0;
        for (int k1 = 0; k1 <= k; ++k1) {
            int k2 = k - k1;
            inner += cpow_int(sd.alpha, k1) * cpow_int(sd.beta, k2) *
                     cg.Q(k1, k2).eval(arg, static_cast<double>(p));
        }
        out *= inner;
    }
    return out;
}

namespace {

double raw_pair_tail(double Mm, double sig) {
    // sum_{m1 m2 > Mm} d(m1 m2)-weighted envelope
    double l = std::log(Mm);
    return (0.6 * l * l + 1.0) * std::pow(Mm, 1.0 - sig) / std::max(0.5, sig - 1.0);
}

double raw_d_tail(double Md, double sig) {
    double l = std::log(Md);
    return (1.1 * l + 0.5) * std::pow(Md, 1.0 - sig) / std::max(0.5, sig - 1.0);
}

}  // namespace

ZEval Z_raw(cplx s, cplx w, const CharSpec& a2c2, const CharSpec& a1c1,
            std::shared_ptr<const Newform> f, const ZOptions& opt) {
    if (s.real() < 2.0 || w.real() < 2.0)
        throw std::domain_error("Z_raw: region guard requires Re s, Re w >= 2");
    int64_t N2 = 2 * f->N;
    int64_t Mm = opt.pair_cutoff, Md = opt.cutoff;
    HEvaluator H(f);
    // warm the per-prime tables before splitting work across threads
    for (uint32_t p : SpfSieve::instance().primes_to(static_cast<uint32_t>(std::max(Mm, Md))))
        if (N2 % p != 0) (void)H(p, 1, 1);

    std::vector<int8_t> chi_d = chi_table(a2c2.core(), Md);
    std::vector<int8_t> chi_m = chi_table(a1c1.core(), Mm);

    std::vector<int64_t> ds;
    for (int64_t d = 1; d <= Md; d += 2)
        if (std::gcd(d, N2) == 1) ds.push_back(d);

    // pairs (m1, m2) with m1 m2 <= Mm, both odd and coprime to 2N
    struct Pair {
        int32_t m1, m2;
        float weight_unused;
    };
    std::vector<std::pair<int32_t, int32_t>> pairs;
    for (int64_t m1 = 1; m1 <= Mm; m1 += 2) {
        if (std::gcd(m1, N2) != 1) continue;
        for (int64_t m2 = 1; m1 * m2 <= Mm; m2 += 2) {
            if (std::gcd(m2, N2) != 1) continue;
            pairs.emplace_back(static_cast<int32_t>(m1), static_cast<int32_t>(m2));
        }
    }

    bool real_pt = (s.imag() == 0.0 && w.imag() == 0.0);
    std::vector<double> pow_m, pow_d;
    if (real_pt) {
        pow_m.resize(Mm + 1);
        for (int64_t n = 1; n <= Mm; ++n) pow_m[n] = std::pow(static_cast<double>(n), -s.real());
        pow_d.resize(Md + 1);
        for (int64_t n = 1; n <= Md; ++n) pow_d[n] = std::pow(static_cast<double>(n), -w.real());
    }

    cplx total = parallel_sum<cplx>(ds.size(), 64, [&](size_t lo, size_t hi) {
        cplx part = 0;
        for (size_t di = lo; di < hi; ++di) {
            int64_t d = ds[di];
            if (chi_d[d] == 0) continue;
            double cd = static_cast<double>(chi_d[d]);
            cplx dw = real_pt ? cplx(pow_d[d], 0.0) : npow(d, w);
            cplx inner = 0;
            for (const auto& [m1, m2] : pairs) {
                int64_t mm = static_cast<int64_t>(m1) * m2;
                int cm = chi_m[mm];
                if (cm == 0) continue;
                cplx h = H(m1, m2, d);
                if (h == cplx(0.0)) continue;
                cplx ms = real_pt ? cplx(pow_m[mm], 0.0) : npow(mm, s);
                inner += h * static_cast<double>(cm) * ms;
            }
            part += cd * dw * inner;
        }
        return part;
    });

    ZEval out;
    out.s = s;
    out.w = w;
    out.a2c2 = a2c2;
    out.a1c1 = a1c1;
    out.rep = ZRep::raw;
    out.cutoff_outer = Md;
    out.cutoff_inner = Mm;
    out.value = total;
    out.est_error = raw_pair_tail(static_cast<double>(Mm), s.real()) * 2.2 +
                    raw_d_tail(static_cast<double>(Md), w.real()) * 1.5;
    return out;
}

namespace {

// L^{(2N)}(s, pi_f x chi_{a1 c1 d0}) dispatch: plain sieved truncation in the
// absolutely convergent range, AFE otherwise.
cplx twisted_L2N(cplx s, const Newform& f, const CharSpec& spec, int64_t lcut, double* err) {
    if (s.real() >= 1.8) {
        int64_t M = std::min<int64_t>(lcut, f.M());
        std::vector<int8_t> chi = chi_table(spec.core(), M);
        double e = -(f.ell - 1) / 2.0;
        bool real_s = (s.imag() == 0.0);
        cplx sum = 0;
        for (int64_t n = 1; n <= M; ++n) {
            if (chi[n] == 0 || f.a[n] == 0) continue;
            double lam = static_cast<double>(f.a[n]) * std::pow(static_cast<double>(n), e) * chi[n];
            sum += lam * (real_s ? cplx(std::pow(static_cast<double>(n), -s.real()), 0.0)
                                 : npow(n, s));
        }
        if (err) {
            double l = std::log(static_cast<double>(M));
            *err = (0.7 * l + 0.5) * std::pow(static_cast<double>(M), 1.0 - s.real()) /
                   std::max(0.5, s.real() - 1.0);
        }
        SpfSieve::instance().ensure(static_cast<uint32_t>(2 * f.N));
        for (auto& [p, ex] : SpfSieve::instance().factor(static_cast<uint32_t>(2 * f.N)))
            sum *= local_euler_inverse(f, p, chi_eval(spec, p), s);
        return sum;
    }
    LValue v = L_twisted_2N(s, f, spec);
    if (err) *err = v.est_error;
    return v.value;
}

}  // namespace

ZEval Z_rep1(cplx s, cplx w, const CharSpec& a2c2, const CharSpec& a1c1,
             std::shared_ptr<const Newform> f, const ZOptions& opt) {
    if (!(2.0 * s.real() + w.real() > 2.0 && w.real() > 1.0))
        throw std::domain_error("Z_rep1: region guard requires (s,w) in Omega_1");
    int64_t N2 = 2 * f->N;
    int64_t Md = opt.cutoff;
    std::vector<int8_t> chi_d = chi_table(a2c2.core(), Md);

    // group d = d0 d1^2 by squarefree part; one L-value per d0
    std::vector<int64_t> ds;
    for (int64_t d = 1; d <= Md; d += 2)
        if (std::gcd(d, N2) == 1) ds.push_back(d);

    std::map<int64_t, std::pair<cplx, double>> lcache;
    std::mutex lmu;
    auto lvalue = [&](int64_t d0) {
        {
            std::lock_guard<std::mutex> lk(lmu);
            auto it = lcache.find(d0);
            if (it != lcache.end()) return it->second;
        }
        CharSpec spec{d0, a1c1.a, a1c1.c};
        double err = 0;
        cplx v = twisted_L2N(s, *f, spec, opt.lseries_cutoff, &err);
        std::lock_guard<std::mutex> lk(lmu);
        lcache[d0] = {v, err};
        return std::make_pair(v, err);
    };

    // pre-compute L-values (deterministic order), then assemble the d-sum
    std::vector<int64_t> d0s;
    {
        std::vector<bool> seen;
        for (int64_t d : ds) {
            auto [d0, d1] = squarefree_split(static_cast<uint32_t>(d));
            (void)d1;
            if (std::find(d0s.begin(), d0s.end(), static_cast<int64_t>(d0)) == d0s.end())
                d0s.push_back(d0);
        }
    }
    parallel_blocks(d0s.size(), 8, [&](size_t, size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) lvalue(d0s[i]);
    });

    cplx total = 0;
    double err_total = 0;
    for (int64_t d : ds) {
        auto [d0, d1] = squarefree_split(static_cast<uint32_t>(d));
        auto [lv, lerr] = lvalue(d0);
        cplx pd = P_d(s, a1c1, *f, d);
        double cd = static_cast<double>(chi_d[d]);
        if (cd == 0.0) continue;
        cplx term = lv * cd * pd * npow(d, w);
        total += term;
        err_total += lerr * std::abs(cd * pd * npow(d, w));
    }
    ZEval out;
    out.s = s;
    out.w = w;
    out.a2c2 = a2c2;
    out.a1c1 = a1c1;
    out.rep = ZRep::rep1;
    out.cutoff_outer = Md;
    out.cutoff_inner = opt.lseries_cutoff;
    out.value = total;
    // d-tail: |L P_d| = O(d^eps) at Re s >= 1.8; conductor growth otherwise
    double growth = (s.real() >= 1.8) ? 0.2 : 1.0 + std::abs(0.5 - s.real());
    out.est_error = err_total + 4.0 * std::pow(static_cast<double>(Md), 1.0 + growth - w.real()) /
                                    std::max(0.5, w.real() - 1.0 - growth);
    return out;
}

ZEval Z_rep2(cplx s, cplx w, const CharSpec& a2c2, const CharSpec& a1c1,
             std::shared_ptr<const Newform> f, const ZOptions& opt) {
    if (!(s.real() + w.real() > 1.5 && s.real() > 1.0))
        throw std::domain_error("Z_rep2: region guard requires (s,w) in Omega_2");
    if (a2c2.is_trivial() && w == cplx(1.0, 0.0))
        throw std::domain_error("polar hyperplane w=1");
    int64_t N2 = 2 * f->N;
    int64_t Mn = opt.cutoff;
    std::vector<int8_t> chi_n = chi_table(a1c1.core(), Mn);

    std::vector<int64_t> ns;
    for (int64_t n = 1; n <= Mn; n += 2)
        if (std::gcd(n, N2) == 1) ns.push_back(n);

    std::map<int64_t, std::pair<cplx, double>> lcache;
    std::mutex lmu;
    auto lvalue = [&](int64_t n0) {
        {
            std::lock_guard<std::mutex> lk(lmu);
            auto it = lcache.find(n0);
            if (it != lcache.end()) return it->second;
        }
        // chi_{a2 c2} chi~_{n0}: combined real character
        int sg = (n0 % 4 == 1) ? 1 : -1;
        CharSpec spec{n0, a2c2.a * sg, a2c2.c};
        cplx v;
        double err = 0;
        if (w.real() >= 1.8) {
            int64_t Mq = opt.lseries_cutoff;
            v = dirichlet_L_truncated(w, spec.core(), Mq, &err);
        } else {
            v = dirichlet_L_direct(w, spec);
            err = 1e-11 * (1.0 + std::abs(v));
        }
        v = remove_euler_factors_dirichlet(v, w, spec, N2);
        std::lock_guard<std::mutex> lk(lmu);
        lcache[n0] = {v, err};
        return std::make_pair(v, err);
    };

    std::vector<int64_t> n0s;
    for (int64_t n : ns) {
        auto [n0, n1] = squarefree_split(static_cast<uint32_t>(n));
        (void)n1;
        if (std::find(n0s.begin(), n0s.end(), static_cast<int64_t>(n0)) == n0s.end())
            n0s.push_back(n0);
    }
    parallel_blocks(n0s.size(), 16, [&](size_t, size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) lvalue(n0s[i]);
    });

    cplx total = 0;
    double err_total = 0;
    for (int64_t n : ns) {
        if (chi_n[n] == 0) continue;
        auto [n0, n1] = squarefree_split(static_cast<uint32_t>(n));
        (void)n1;
        auto [lv, lerr] = lvalue(n0);
        cplx qn = Qtilde_n(w, a2c2, *f, n);
        cplx term = lv * static_cast<double>(chi_n[n]) * qn * npow(n, s);
        total += term;
        err_total += lerr * std::abs(qn * npow(n, s));
    }
    ZEval out;
    out.s = s;
    out.w = w;
    out.a2c2 = a2c2;
    out.a1c1 = a1c1;
    out.rep = ZRep::rep2;
    out.cutoff_outer = Mn;
    out.cutoff_inner = opt.lseries_cutoff;
    out.value = total;
    double lsize = a2c2.is_trivial() ? std::abs(1.0 / (w - 1.0)) + 2.0 : 3.0;
    out.est_error = err_total + 3.0 * lsize *
                                    std::pow(static_cast<double>(Mn), 1.3 - s.real()) /
                                    std::max(0.5, s.real() - 1.3);
    return out;
}

namespace {

int64_t primitive_core(int64_t x) {
    int sgn = x < 0 ? -1 : 1;
    auto fac = SpfSieve::instance().factor(static_cast<uint32_t>(std::llabs(x)));
    int64_t k = 1;
    for (auto& [p, e] : fac)
        if (e % 2) k *= p;
    return sgn * k;
}

// c~ of the primitive character attached to a (possibly non-squarefree) core
int64_t c_tilde_of(int64_t core) {
    return std::gcd(conductor_of_core(primitive_core(core)), static_cast<int64_t>(8));
}

// local L-ratio at p = 2 for pi_{f,2} twisted by the real character of core x:
// L(1-s, pi_{f,2} x chi_x) / L(s, pi_{f,2} x chi_x)
cplx dyadic_L_ratio(cplx s, const Newform& f, int64_t x) {
    int chi2 = kronecker(x, 2);
    cplx num = 1.0 - f.lambda(2) * static_cast<double>(chi2) * npow(2, s) +
               static_cast<double>(chi2 * chi2) * npow(2, 2.0 * s);
    cplx den = 1.0 - f.lambda(2) * static_cast<double>(chi2) * npow(2, 1.0 - s) +
               static_cast<double>(chi2 * chi2) * npow(2, 2.0 * (1.0 - s));
    // L = 1/num at s; ratio L(1-s)/L(s) = num(s)/num(1-s)
    return num / den;
}

int chi_minus1(int64_t x) { return (((x % 4) + 4) % 4 == 1) ? 1 : -1; }

}  // namespace

// Phi entry assembled as the finite sum over the squarefree classes
// D in C_{8 rad(N)} of the proof of the scattering-matrix lemma:
//   Phi[a2c2, a2'c2'] = 2^{-omega-2} sum_D chi_{a2c2}(D) chi_{a2'c2'}(D)
//                       * eps(pi x chi_{+-c1}) chi_{chi_{-1}(c1) a1 D}(-c)
//                       * Lambda_N(1-s, pi x chi_{a1c1D}) / Lambda_N(s, ...),
// which carries the Gamma-ratios, the dyadic local ratios, and the Euler
// factors at the special primes; the divisibility indicator and the bracket
// structure of the evaluated closed form emerge from the class sum.
namespace {

const std::vector<int64_t>& dclass_reps(int64_t N) {
    static std::map<int64_t, std::vector<int64_t>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    auto dv = div_set(N);
    int64_t radN = static_cast<int64_t>(radical_u64(static_cast<uint64_t>(N)));
    std::vector<int64_t> reps;
    std::vector<std::vector<int>> sigs;
    for (int64_t D = 1; reps.size() < dv.size() && D < 64 * radN; D += 2) {
        if (std::gcd(D, 2 * radN) != 1 || !is_squarefree_u32(static_cast<uint32_t>(D))) continue;
        std::vector<int> sig;
        for (const auto& ch : dv) sig.push_back(chi_eval(ch, D));
        if (std::find(sigs.begin(), sigs.end(), sig) == sigs.end()) {
            reps.push_back(D);
            sigs.push_back(sig);
        }
    }
    if (reps.size() != dv.size()) throw std::runtime_error("D-class enumeration incomplete");
    return cache.emplace(N, std::move(reps)).first->second;
}

int64_t dstar_signed(int64_t core) {
    int64_t m = ((core % 4) + 4) % 4;
    return m == 1 ? core : 4 * core;
}

}  // namespace

cplx phi_entry(cplx s, const CharSpec& a1c1, const CharSpec& a2c2, const CharSpec& a2c2p,
               const Newform& f) {
    double k1 = (f.ell - 1) / 2.0, k2 = (f.ell + 1) / 2.0;
    // Gamma poles at isolated real arguments
    for (double kk : {k1, k2}) {
        double arg = (1.0 - s.real() + kk) / 2.0;
        if (s.imag() == 0.0 && arg <= 0.0 && std::abs(arg - std::round(arg)) < 1e-12)
            throw std::domain_error("entry pole");
    }
    int sg = chi_minus1(a1c1.c);
    int64_t cond_twist = f.N * std::gcd(a1c1.c, f.N0);
    int eps_base = root_number_core(f, sg * a1c1.c, static_cast<double>(cond_twist));
    cplx gratio = std::exp(lgamma_cplx((1.0 - s + k1) / 2.0) + lgamma_cplx((1.0 - s + k2) / 2.0) -
                           lgamma_cplx((s + k1) / 2.0) - lgamma_cplx((s + k2) / 2.0));
    const auto& reps = dclass_reps(f.N);
    cplx total = 0;
    for (int64_t D : reps) {
        int w_chars = chi_eval(a2c2, D) * chi_eval(a2c2p, D);
        if (w_chars == 0) continue;
        int64_t coreA = sg * static_cast<int64_t>(a1c1.a) * D;        // chi_{chi_{-1}(c1) a1 D}
        int64_t coreFull = static_cast<int64_t>(a1c1.a) * a1c1.c * D; // chi_{a1 c1 D}
        int64_t ct = std::gcd(conductor_of_core(coreA), static_cast<int64_t>(8));
        double ef = static_cast<double>(eps_base) *
                    static_cast<double>(kronecker(dstar_signed(coreA), -cond_twist));
        cplx R = std::exp((2.0 * s - 1.0) *
                          std::log(kPi / (static_cast<double>(ct) *
                                          std::sqrt(static_cast<double>(cond_twist))))) *
                 gratio;
        if (ct == 1) {  // 2 does not divide the twisting conductor
            int chi2 = kronecker(dstar_signed(coreFull), 2);
            cplx l_s = 1.0 - f.lambda(2) * static_cast<double>(chi2) * npow(2, s) +
                       static_cast<double>(chi2 * chi2) * npow(2, 2.0 * s);
            cplx l_1s = 1.0 - f.lambda(2) * static_cast<double>(chi2) * npow(2, 1.0 - s) +
                        static_cast<double>(chi2 * chi2) * npow(2, 2.0 * (1.0 - s));
            R *= l_s / l_1s;  // L(1-s, pi_{f,2} x chi)/L(s, ...)
        }
        for (auto& [p, e] : SpfSieve::instance().factor(static_cast<uint32_t>(f.N))) {
            if (a1c1.c % p == 0) continue;  // p divides the twisting conductor
            if (f.N0 % p == 0) {            // special representation
                double al = f.lambda(p);
                int chip = kronecker(dstar_signed(coreFull), static_cast<int64_t>(p));
                cplx l_s = 1.0 - al * static_cast<double>(chip) * npow(p, s);
                cplx l_1s = 1.0 - al * static_cast<double>(chip) * npow(p, 1.0 - s);
                R *= l_s / l_1s;
            }
            // supercuspidal p | N1: local L = 1 on both sides
        }
        total += static_cast<double>(w_chars) * ef * R;
    }
    return total / static_cast<double>(reps.size());
}

cplx psi_entry(cplx w, const CharSpec& a2c2, const CharSpec& a1c1, const CharSpec& a1c1p,
               const Newform& f) {
    int64_t c1 = a1c1.c, c1p = a1c1p.c;
    int64_t a1 = a1c1.a, a1p = a1c1p.a;
    int64_t g = std::gcd(c1, c1p);
    int64_t e = (c1 / g) * (c1p / g);

    cplx out = 0.25 * std::exp((0.5 - w) * std::log(static_cast<double>(a2c2.c))) *
               std::exp((w - 0.5) * std::log(kPi)) * static_cast<double>(chi_eval(a2c2, e));
    if (out == cplx(0.0)) return 0.0;

    for (auto& [p, ex] : SpfSieve::instance().factor(static_cast<uint32_t>(e))) {
        cplx num = npow(p, 1.0 - w) - npow(p, w);
        cplx den = 1.0 - npow(p, 2.0 * (1.0 - w));
        out *= num / den;
    }
    int64_t radN = static_cast<int64_t>(radical_u64(static_cast<uint64_t>(f.N)));
    for (auto& [p, ex] : SpfSieve::instance().factor(static_cast<uint32_t>(radN / std::gcd(radN, e)))) {
        if (e % p == 0) continue;
        cplx den = 1.0 - npow(p, 2.0 * (1.0 - w));
        out *= (1.0 - 1.0 / static_cast<double>(p)) / den;
    }

    // dyadic brackets with the parity-dependent Gamma pairing
    int64_t core2 = a2c2.a * a2c2.c;
    auto L2ratio = [&](int64_t x) {
        int chi2 = kronecker(x, 2);
        cplx den = 1.0 - static_cast<double>(chi2) * npow(2, 1.0 - w);
        cplx num = 1.0 - static_cast<double>(chi2) * npow(2, w);
        return num / den;  // L2(1-w)/L2(w)
    };
    double ct_a = static_cast<double>(c_tilde_of(core2));
    double ct_b = static_cast<double>(c_tilde_of(-3 * core2));
    cplx g_even = std::exp(lgamma_cplx((1.0 - w) / 2.0) - lgamma_cplx(w / 2.0));
    cplx g_odd = std::exp(lgamma_cplx((2.0 - w) / 2.0) - lgamma_cplx((1.0 + w) / 2.0));
    bool a2_pos = (a2c2.a == 1 || a2c2.a == 2);
    cplx ga = a2_pos ? g_even : g_odd;
    cplx gb = a2_pos ? g_odd : g_even;

    cplx block_a = std::exp((0.5 - w) * std::log(ct_a)) * ga *
                   (L2ratio(core2) +
                    static_cast<double>(kronecker(a1 * a1p, 5)) * L2ratio(5 * core2));
    cplx block_b = std::exp((0.5 - w) * std::log(ct_b)) * gb *
                   (static_cast<double>(kronecker(a1 * a1p, 3)) * L2ratio(-3 * core2) +
                    static_cast<double>(kronecker(a1 * a1p, 7)) * L2ratio(-7 * core2));
    return out * (block_a + block_b);
}

FeReport check_fe_gamma1(cplx s, cplx w, const CharSpec& a1c1, std::shared_ptr<const Newform> f,
                         const ZOptions& opt, bool zero_n0_product) {
    cplx s2 = 1.0 - s, w2 = w + 2.0 * s - 1.0;
    auto dv = div_set(f->N);
    FeReport rep;
    rep.s = s;
    rep.w = w;
    std::vector<cplx> z1(dv.size()), z2(dv.size());
    for (size_t i = 0; i < dv.size(); ++i) {
        z1[i] = Z_rep1(s, w, dv[i], a1c1, f, opt).value;
        z2[i] = Z_rep1(s2, w2, dv[i], a1c1, f, opt).value;
    }
    rep.lhs = z1;
    rep.rhs.assign(dv.size(), 0.0);
    for (size_t i = 0; i < dv.size(); ++i) {
        for (size_t j = 0; j < dv.size(); ++j) {
            cplx e = phi_entry(s, a1c1, dv[i], dv[j], *f);
            if (zero_n0_product) {
                // sensitivity control: Phi without the special-prime products
                // is recomputed by zeroing those factors; here simply drop e
                // when it carries a nonempty product over p | N0/(c1, N0)
                int64_t n0_over = f->N0 / std::gcd(a1c1.c, f->N0);
                if (n0_over > 1) e = 0.0;
            }
            rep.rhs[i] += e * z2[j];
        }
    }
    double num = 0, den = 0;
    for (size_t i = 0; i < dv.size(); ++i) {
        num = std::max(num, std::abs(z1[i] - rep.rhs[i]));
        den = std::max(den, std::abs(z1[i]));
    }
    rep.relative_residual = num / std::max(den, 1e-300);
    return rep;
}

ResidueReport residue_check(cplx s, const CharSpec& a1c1, std::shared_ptr<const Newform> f,
                            const ZOptions& opt) {
    std::vector<double> deltas{1e-2, 1e-3, 1e-4};
    std::vector<double> xs;
    std::vector<cplx> ys;
    for (double del : deltas) {
        ZEval z = Z_rep2(s, cplx(1.0 + del, 0.0), CharSpec::trivial(), a1c1, f, opt);
        xs.push_back(del);
        ys.push_back(del * z.value);
    }
    ResidueReport rep;
    rep.extrapolated = neville_to_zero(xs, ys).real();
    double sym2 = sym2_L_2N(*f, 2.0 * s.real());
    double euler = 1.0;
    for (auto& [p, e] : SpfSieve::instance().factor(static_cast<uint32_t>(2 * f->N)))
        euler *= 1.0 - 1.0 / static_cast<double>(p);
    rep.expected = sym2 * euler;
    rep.relative_error = std::abs(rep.extrapolated - rep.expected) / std::abs(rep.expected);
    return rep;
}

}  // namespace mdsforge
