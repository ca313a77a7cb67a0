#pragma once

#include "mdsforge/mds.hpp"

namespace mdsforge {

// Smooth bump supported on [1,2] with a Mellin-transform evaluator
// W^(w) = int_0^infty W(x) x^{w-1} dx.
class SmoothWeight {
public:
    enum class Kind { standard, secondary };
    explicit SmoothWeight(Kind kind = Kind::standard);
    double operator()(double x) const;
    double mellin(double w) const;  // adaptive quadrature on [1,2]
    const char* name() const;

private:
    Kind kind_;
    double norm_;
};

struct CentralRecord {
    int64_t d0;
    double central_value;  // L^{(2N)}(1/2, pi x chi_{d0})
    int eps;
};

struct MomentReport {
    double X;
    std::string form;
    std::string weight;
    double M_value = 0.0;
    double main_term = 0.0;
    double relative_deviation = 0.0;
    std::vector<CentralRecord> encountered;
};

// First moment M_{pi_f}(X): sum over d = d0 d1^2 in [X, 2X], (d, 2N) = 1, of
// W(d/X) d^{-1/2} L^{(2N)}(1/2, pi x chi_{d0}) P_d(1/2; trivial).
MomentReport moment_M(std::shared_ptr<const Newform> f, double X, const SmoothWeight& W);

// Main term X^{1/2} (1 + delta_{N=square} eps(pi_f)) W^(1/2) L^{(2N)}(1, Sym^2)
// prod_{p | 2N} (1 - 1/p).
double main_term(const Newform& f, double X, const SmoothWeight& W);

struct TwistSearchResult {
    bool found = false;
    int64_t least_d0 = 0;
    bool root_number_obstruction = false;  // square level with eps = -1
    std::vector<CentralRecord> skipped_structural_zeros;
    std::vector<int64_t> indeterminate;
};

// Smallest odd squarefree d0 coprime to 2N with |L(1/2, pi x chi_{d0})| above
// the nonvanishing threshold; structural zeros (eps = -1) are reported.
TwistSearchResult least_twist(std::shared_ptr<const Newform> f, int64_t d_max);

}  // namespace mdsforge
