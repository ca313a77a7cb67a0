#include "mdsforge/numutil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <thread>

namespace mdsforge {

cplx lgamma_cplx(cplx z) {
    // Lanczos, g = 7, n = 9
    static const double c[9] = {
        0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,  12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(pi) - std::log(std::sin(pi * z)) - lgamma_cplx(1.0 - z);
    }
    z -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

namespace {
// Bernoulli numbers B_2, B_4, ..., B_28
const double kBern[] = {1.0 / 6,      -1.0 / 30,     1.0 / 42,      -1.0 / 30,
                        5.0 / 66,     -691.0 / 2730, 7.0 / 6,       -3617.0 / 510,
                        43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
                        8553103.0 / 6, -23749461029.0 / 870};
}  // namespace

cplx hurwitz_zeta(cplx s, double x) {
    if (s == cplx(1.0, 0.0)) throw std::domain_error("hurwitz_zeta: pole at s=1");
    // Euler-Maclaurin: shift x up by M, then tail expansion.
    int M = std::max(24, static_cast<int>(std::abs(s.imag()) * 1.3) + 10);
    cplx sum = 0.0;
    for (int n = 0; n < M; ++n) sum += std::exp(-s * std::log(x + n));
    double y = x + M;
    cplx ly = std::log(y);
    sum += std::exp((1.0 - s) * ly) / (s - 1.0);
    sum += 0.5 * std::exp(-s * ly);
    // correction terms: sum_k B_{2k}/(2k)! * (s)_{2k-1} * y^{-s-2k+1}
    cplx poch = s;  // (s)_1
    double fact = 2.0;
    cplx ypow = std::exp((-s - 1.0) * ly);
    for (size_t k = 1; k <= sizeof(kBern) / sizeof(kBern[0]); ++k) {
        sum += kBern[k - 1] / fact * poch * ypow;
        poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        ypow /= y * y;
    }
    return sum;
}

SpfSieve& SpfSieve::instance() {
    static SpfSieve s;
    return s;
}

void SpfSieve::ensure(uint32_t n) {
    {
        auto cur = std::atomic_load(&table_);
        if (n < cur->size()) return;
    }
    std::lock_guard<std::mutex> lk(grow_mu_);
    auto cur = std::atomic_load(&table_);
    if (n < cur->size()) return;
    uint32_t m = std::max<uint32_t>(n, 1u << 16);
    auto next = std::make_shared<Table>(m + 1, 0u);
    Table& t = *next;
    t[0] = 0;
    t[1] = 1;
    for (uint32_t i = 2; i <= m; ++i) {
        if (t[i] == 0) {
            for (uint64_t j = i; j <= m; j += i)
                if (t[j] == 0) t[j] = i;
        }
    }
    std::atomic_store(&table_, std::shared_ptr<const Table>(std::move(next)));
}

std::vector<std::pair<uint32_t, int>> SpfSieve::factor(uint32_t n) {
    auto tp = snapshot(n);
    const Table& t = *tp;
    std::vector<std::pair<uint32_t, int>> f;
    while (n > 1) {
        uint32_t p = t[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    return f;
}

std::vector<uint32_t> SpfSieve::primes_to(uint32_t n) {
    auto tp = snapshot(n);
    const Table& t = *tp;
    std::vector<uint32_t> primes;
    for (uint32_t i = 2; i <= n; ++i)
        if (t[i] == i) primes.push_back(i);
    return primes;
}

std::pair<uint32_t, uint32_t> squarefree_split(uint32_t n) {
    auto f = SpfSieve::instance().factor(n);
    uint32_t n0 = 1, n1 = 1;
    for (auto& [p, e] : f) {
        if (e % 2) n0 *= p;
        for (int i = 0; i < e / 2; ++i) n1 *= p;
    }
    return {n0, n1};
}

uint64_t radical_u64(uint64_t n) {
    SpfSieve::instance().ensure(static_cast<uint32_t>(n));
    uint64_t r = 1;
    for (auto& [p, e] : SpfSieve::instance().factor(static_cast<uint32_t>(n))) r *= p;
    return r;
}

int effective_threads() {
    if (const char* env = std::getenv("MDSFORGE_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_blocks(size_t n, size_t block,
                     const std::function<void(size_t, size_t, size_t)>& work_block, size_t) {
    if (n == 0) return;
    size_t nb = (n + block - 1) / block;
    int nt = std::min<size_t>(effective_threads(), nb);
    if (nt <= 1) {
        for (size_t b = 0; b < nb; ++b)
            work_block(b, b * block, std::min(n, (b + 1) * block));
        return;
    }
    std::vector<std::thread> pool;
    std::mutex mu;
    size_t next = 0;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                size_t b;
                {
                    std::lock_guard<std::mutex> lk(mu);
                    if (next >= nb) return;
                    b = next++;
                }
                work_block(b, b * block, std::min(n, (b + 1) * block));
            }
        });
    }
    for (auto& th : pool) th.join();
}

namespace {
double simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                   double fa, double fm, double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

cplx neville_adaptive(const std::vector<double>& xs, const std::vector<cplx>& ys,
                      double* err_est) {
    size_t n = xs.size();
    // V_k = extrapolation through the last k+1 points (largest-T end)
    std::vector<cplx> best_vals;
    for (size_t k = 0; k < n; ++k) {
        std::vector<cplx> p(ys.end() - (k + 1), ys.end());
        std::vector<double> x(xs.end() - (k + 1), xs.end());
        for (size_t lvl = 1; lvl <= k; ++lvl)
            for (size_t i = 0; i + lvl <= k; ++i)
                p[i] = (x[i + lvl] * p[i] - x[i] * p[i + 1]) / (x[i + lvl] - x[i]);
        best_vals.push_back(p[0]);
    }
    size_t best = 0;
    double best_err = (n >= 2) ? std::abs(ys[n - 1] - ys[n - 2]) : std::abs(ys[0]);
    for (size_t k = 1; k < n; ++k) {
        double err = std::abs(best_vals[k] - best_vals[k - 1]);
        if (err < best_err) {
            best_err = err;
            best = k;
        }
    }
    if (err_est) *err_est = best_err;
    return best_vals[best];
}

cplx neville_to_zero(const std::vector<double>& xs, const std::vector<cplx>& ys, double* err_est) {
    size_t n = xs.size();
    std::vector<cplx> p = ys;
    cplx prev = p[0];
    for (size_t k = 1; k < n; ++k) {
        for (size_t i = 0; i + k < n; ++i) {
            // value at x=0 of the interpolant through points i..i+k
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
        if (k + 1 == n && err_est) *err_est = std::abs(p[0] - prev);
        prev = p[0];
    }
    if (n == 1 && err_est) *err_est = std::abs(p[0]);
    return p[0];
}

}  // namespace mdsforge
