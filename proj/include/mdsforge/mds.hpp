#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "mdsforge/lfuncs.hpp"
#include "mdsforge/weyl_cg.hpp"

namespace mdsforge {

// Shared correction-polynomial / coefficient tables (series degree 16,
// J_max = K_max = 8 cover the desk-scale cutoffs).
const CGFunction& cg_tables();

// Evaluator of the MDS coefficients H(m1, m2, d) glued from the p-parts
// a(k1,k2,j;p) alpha_p^{k1} beta_p^{k2} by twisted multiplicativity.
class HEvaluator {
public:
    explicit HEvaluator(std::shared_ptr<const Newform> f);
    cplx operator()(int64_t m1, int64_t m2, int64_t d) const;
    const Newform& form() const { return *f_; }

private:
    struct PrimeTable {
        cplx alpha, beta;
        double p;
    };
    const PrimeTable& table(uint32_t p) const;
    std::shared_ptr<const Newform> f_;
    mutable std::map<uint32_t, PrimeTable> tables_;
    mutable std::mutex mu_;
};

// Correction polynomials evaluated numerically.
cplx P_d(cplx s, const CharSpec& a1c1, const Newform& f, int64_t d);
cplx Qtilde_n(cplx w, const CharSpec& a2c2, const Newform& f, int64_t n);

enum class ZRep { raw, rep1, rep2 };

struct ZEval {
    cplx s, w;
    CharSpec a2c2, a1c1;
    ZRep rep;
    int64_t cutoff_outer = 0;  // d (raw, rep1) or n (rep2)
    int64_t cutoff_inner = 0;  // m1 m2 bound (raw) or L-series length
    cplx value;
    double est_error = 0.0;
};

struct ZOptions {
    int64_t cutoff = 10000;        // outer d/n cutoff
    int64_t pair_cutoff = 6000;    // m1 m2 <= pair_cutoff (raw)
    int64_t lseries_cutoff = 20000;  // inner L-series length (rep1/rep2, Re >= 1.8)
};

ZEval Z_raw(cplx s, cplx w, const CharSpec& a2c2, const CharSpec& a1c1,
            std::shared_ptr<const Newform> f, const ZOptions& opt = {});
ZEval Z_rep1(cplx s, cplx w, const CharSpec& a2c2, const CharSpec& a1c1,
             std::shared_ptr<const Newform> f, const ZOptions& opt = {});
ZEval Z_rep2(cplx s, cplx w, const CharSpec& a2c2, const CharSpec& a1c1,
             std::shared_ptr<const Newform> f, const ZOptions& opt = {});

// Scattering-matrix entries (Phi for gamma_1, Psi for gamma_2).
cplx phi_entry(cplx s, const CharSpec& a1c1, const CharSpec& a2c2, const CharSpec& a2c2p,
               const Newform& f);
cplx psi_entry(cplx w, const CharSpec& a2c2, const CharSpec& a1c1, const CharSpec& a1c1p,
               const Newform& f);

struct FeReport {
    cplx s, w;
    double relative_residual;
    std::vector<cplx> lhs, rhs;  // Div(N)-indexed vectors
};

// gamma_1 vector functional equation: Z(s,w) = Phi_{a1c1}(s) Z(1-s, w+2s-1),
// both sides assembled from Z_rep1 over the Div(N) character slots.
// zero_n0_product deliberately zeroes Phi's Euler products over p | N0
// (sensitivity control).
FeReport check_fe_gamma1(cplx s, cplx w, const CharSpec& a1c1, std::shared_ptr<const Newform> f,
                         const ZOptions& opt = {}, bool zero_n0_product = false);

struct ResidueReport {
    double extrapolated;
    double expected;  // L^{(2N)}(2s, Sym^2) prod_{p | 2N} (1 - 1/p)
    double relative_error;
};

// (w-1) Z_rep2(s, w) at w = 1 + 10^{-k}, k = 2..4, trivial a2c2, extrapolated
// to w = 1 and compared against the Sym^2 Euler product.
ResidueReport residue_check(cplx s, const CharSpec& a1c1, std::shared_ptr<const Newform> f,
                            const ZOptions& opt = {});

}  // namespace mdsforge
