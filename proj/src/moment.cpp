#include "mdsforge/moment.hpp"

#include <cmath>
#include <numeric>

namespace mdsforge {

SmoothWeight::SmoothWeight(Kind kind) : kind_(kind) {
    // normalize the peak to 1
    norm_ = 1.0;
    double peak = 0.0;
    for (double x = 1.001; x < 2.0; x += 0.001) peak = std::max(peak, (*this)(x));
    norm_ = peak;
}

double SmoothWeight::operator()(double x) const {
    if (x <= 1.0 || x >= 2.0) return 0.0;
    double v;
    if (kind_ == Kind::standard) {
        v = std::exp(-1.0 / ((x - 1.0) * (2.0 - x)));
    } else {
        double a = x - 1.0, b = 2.0 - x;
        v = std::exp(-1.0 / (a * a) - 1.0 / (b * b));
    }
    return v / norm_;
}

double SmoothWeight::mellin(double w) const {
    return adaptive_simpson([&](double x) { return (*this)(x)*std::pow(x, w - 1.0); }, 1.0, 2.0,
                            1e-13);
}

const char* SmoothWeight::name() const {
    return kind_ == Kind::standard ? "bump-exp" : "bump-exp2";
}

MomentReport moment_M(std::shared_ptr<const Newform> f, double X, const SmoothWeight& W) {
    if (X < 4) throw std::domain_error("moment_M: X must be at least 4");
    int64_t N2 = 2 * f->N;
    int64_t lo = static_cast<int64_t>(std::floor(X)) + 1;
    int64_t hi = static_cast<int64_t>(std::ceil(2.0 * X));

    MomentReport rep;
    rep.X = X;
    rep.form = f->source;
    rep.weight = W.name();

    // candidates grouped by squarefree part; one AFE evaluation per d0
    std::vector<int64_t> ds;
    for (int64_t d = lo | 1; d <= hi; d += 2)
        if (std::gcd(d, N2) == 1 && W(static_cast<double>(d) / X) > 0.0) ds.push_back(d);

    std::vector<int64_t> d0s;
    for (int64_t d : ds) {
        auto [d0, d1] = squarefree_split(static_cast<uint32_t>(d));
        (void)d1;
        if (std::find(d0s.begin(), d0s.end(), static_cast<int64_t>(d0)) == d0s.end())
            d0s.push_back(d0);
    }
    std::sort(d0s.begin(), d0s.end());

    std::map<int64_t, std::pair<double, int>> central;  // d0 -> (L^{(2N)}(1/2), eps)
    std::mutex mu;
    parallel_blocks(d0s.size(), 4, [&](size_t, size_t lob, size_t hib) {
        for (size_t i = lob; i < hib; ++i) {
            int64_t d0 = d0s[i];
            CharSpec spec = CharSpec::quadratic(d0);
            LValue v = L_twisted_2N(cplx(0.5, 0.0), *f, spec);
            std::lock_guard<std::mutex> lk(mu);
            central[d0] = {v.value.real(), v.eps};
        }
    });

    double M = 0.0;
    for (int64_t d : ds) {
        auto [d0u, d1] = squarefree_split(static_cast<uint32_t>(d));
        (void)d1;
        auto [lval, eps] = central.at(d0u);
        double pd = P_d(cplx(0.5, 0.0), CharSpec::trivial(), *f, d).real();
        M += W(static_cast<double>(d) / X) / std::sqrt(static_cast<double>(d)) * lval * pd;
    }
    rep.M_value = M;
    for (int64_t d0 : d0s) {
        auto [lval, eps] = central.at(d0);
        rep.encountered.push_back({d0, lval, eps});
    }
    double main = main_term(*f, X, W);
    rep.main_term = main;
    rep.relative_deviation = std::abs(M - main) / std::abs(main);
    return rep;
}

double main_term(const Newform& f, double X, const SmoothWeight& W) {
    int delta_sq = (f.N0 == 1) ? 1 : 0;  // N is a perfect square iff N0 = 1
    int eps = 1;
    if (delta_sq) {
        if (!f.eps) root_number(f, CharSpec::trivial());
        eps = *f.eps;
    }
    double sym2 = sym2_L1(f, 100000);
    double euler = 1.0;
    for (auto& [p, e] : SpfSieve::instance().factor(static_cast<uint32_t>(2 * f.N)))
        euler *= 1.0 - 1.0 / static_cast<double>(p);
    return std::sqrt(X) * (1.0 + delta_sq * eps) * W.mellin(0.5) * sym2 * euler;
}

TwistSearchResult least_twist(std::shared_ptr<const Newform> f, int64_t d_max) {
    TwistSearchResult res;
    int eps_f = root_number(*f, CharSpec::trivial());
    bool square_level = (f->N0 == 1);
    if (square_level && eps_f == -1) {
        // every even twist inherits eps = -1: the root-number obstruction of
        // the square-level remark; all central values vanish
        res.root_number_obstruction = true;
    }
    bool all_indeterminate = true;
    for (int64_t d0 = 1; d0 <= d_max; d0 += 2) {
        if (std::gcd(d0, 2 * f->N) != 1 || !is_squarefree_u32(static_cast<uint32_t>(d0)))
            continue;
        CharSpec spec = CharSpec::quadratic(d0);
        LValue v = L_twisted_2N(cplx(0.5, 0.0), *f, spec);
        double absval = std::abs(v.value);
        switch (classify_central(absval, v.eps)) {
            case CentralClass::nonzero:
                res.found = true;
                res.least_d0 = d0;
                return res;
            case CentralClass::structural_zero:
                res.skipped_structural_zeros.push_back({d0, v.value.real(), v.eps});
                all_indeterminate = false;
                break;
            case CentralClass::indeterminate:
                res.indeterminate.push_back(d0);
                break;
        }
    }
    if (all_indeterminate && res.skipped_structural_zeros.empty() && !res.indeterminate.empty())
        throw std::runtime_error("inconclusive");
    return res;
}

}  // namespace mdsforge
