#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

namespace mdsforge {

using cplx = std::complex<double>;

// log Gamma for complex argument (Lanczos; reflection for Re z < 0.5).
cplx lgamma_cplx(cplx z);
inline cplx gamma_cplx(cplx z) { return std::exp(lgamma_cplx(z)); }
// Gamma(a)/Gamma(b) computed in log space.
inline cplx gamma_ratio(cplx a, cplx b) { return std::exp(lgamma_cplx(a) - lgamma_cplx(b)); }

// Hurwitz zeta zeta(s, x) for complex s != 1, real x > 0 (Euler-Maclaurin).
cplx hurwitz_zeta(cplx s, double x);

// Riemann zeta via Hurwitz.
inline cplx riemann_zeta(cplx s) { return hurwitz_zeta(s, 1.0); }

// Shared smallest-prime-factor sieve, grown on demand.  The table is an
// immutable snapshot swapped atomically, so concurrent readers stay valid
// while another thread grows it.
class SpfSieve {
public:
    using Table = std::vector<uint32_t>;
    static SpfSieve& instance();
    void ensure(uint32_t n);
    std::shared_ptr<const Table> snapshot(uint32_t need) {
        ensure(need);
        return std::atomic_load(&table_);
    }
    uint32_t spf(uint32_t n) {
        auto t = snapshot(n);
        return (*t)[n];
    }
    bool is_prime(uint32_t n) {
        if (n < 2) return false;
        return spf(n) == n;
    }
    // factor n into (prime, exponent) pairs, ascending primes
    std::vector<std::pair<uint32_t, int>> factor(uint32_t n);
    std::vector<uint32_t> primes_to(uint32_t n);

private:
    std::shared_ptr<const Table> table_ = std::make_shared<const Table>(Table{0, 1});
    std::mutex grow_mu_;
};

inline bool is_squarefree_u32(uint32_t n) {
    auto f = SpfSieve::instance().factor(n);
    for (auto& [p, e] : f)
        if (e > 1) return false;
    return true;
}

// squarefree kernel: n = n0 * n1^2 with n0 squarefree
std::pair<uint32_t, uint32_t> squarefree_split(uint32_t n);

uint64_t radical_u64(uint64_t n);

// Deterministic parallel map-reduce over [0, n): blocks of fixed size are
// processed by a small thread pool and reduced in index order, so results do
// not depend on the thread count.  Honors MDSFORGE_THREADS.
int effective_threads();
void parallel_blocks(size_t n, size_t block,
                     const std::function<void(size_t, size_t, size_t)>& work_block,
                     size_t n_blocks_hint = 0);

template <typename T>
T parallel_sum(size_t n, size_t block, const std::function<T(size_t, size_t)>& partial) {
    size_t nb = (n + block - 1) / block;
    std::vector<T> parts(nb, T{});
    parallel_blocks(n, block, [&](size_t b, size_t lo, size_t hi) { parts[b] = partial(lo, hi); });
    T total{};
    for (const T& t : parts) total += t;  // fixed-order pairwise reduction
    return total;
}

// Adaptive Gauss-Kronrod-free Simpson on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 40);

// Neville extrapolation of (x_i, y_i) to x = 0.
cplx neville_to_zero(const std::vector<double>& xs, const std::vector<cplx>& ys,
                     double* err_est = nullptr);

// Adaptive-order variant: extrapolates through the last k+1 points for each k
// and returns the value whose successive difference is smallest (robust when
// the residual is not polynomial in x and high orders only amplify noise).
cplx neville_adaptive(const std::vector<double>& xs, const std::vector<cplx>& ys,
                      double* err_est = nullptr);

}  // namespace mdsforge
