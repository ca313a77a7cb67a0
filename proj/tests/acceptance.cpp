// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criteria mirror the project's verification contract; tolerances
// and runtime budgets are pinned here.

#include <chrono>
#include <cstdio>
#include <numeric>
#include <vector>

#include "mdsforge/moment.hpp"

using namespace mdsforge;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
                   .count() /
               1000.0;
    }
};

void report(int idx, const char* what, bool pass, double secs, double budget,
            const std::string& detail = "") {
    bool ok = pass && secs < budget;
    if (!ok) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.1fs / budget %.0fs)%s%s\n", ok ? "PASS" : "FAIL", idx,
                what, secs, budget, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

std::vector<CharSpec> odd_conductor_pool(const Newform& f, size_t count, double cond_max) {
    std::vector<CharSpec> out;
    for (int64_t d0 = 1; out.size() < count && d0 < 500; d0 += 2) {
        if (std::gcd(d0, 2 * f.N) != 1 || !is_squarefree_u32(static_cast<uint32_t>(d0))) continue;
        int a = (d0 % 4 == 1) ? 1 : -1;
        CharSpec s{d0, a, 1};
        if (static_cast<double>(conductor_data(f, s).twisted_exact) > cond_max) continue;
        out.push_back(s);
    }
    return out;
}

std::vector<CharSpec> mixed_pool(const Newform& f, size_t count, double cond_max) {
    std::vector<CharSpec> out;
    for (int64_t d0 = 1; out.size() < count && d0 < 500; d0 += 2) {
        if (std::gcd(d0, 2 * f.N) != 1 || !is_squarefree_u32(static_cast<uint32_t>(d0))) continue;
        for (int a : {1, -1, 2, -2}) {
            CharSpec s{d0, a, 1};
            if (static_cast<double>(conductor_data(f, s).twisted_exact) > cond_max) continue;
            out.push_back(s);
            if (out.size() >= count) break;
        }
    }
    return out;
}

}  // namespace

int main() {
    // ----- criterion 1: exact Weyl invariance, uniqueness, group relations
    {
        Timer t;
        bool ok = verify_group_relations().all_hold;
        for (int i = 1; i <= 3; ++i) {
            ok = ok && cg_act(g_A3(), i).equals(g_A3());
            ok = ok && cg_uniqueness_property(i);
        }
        report(1, "exact Weyl invariance + uniqueness + relations", ok, t.seconds(), 30);
    }

    // ----- criterion 2: formal functional equations for P_j, Q_k (<= 8)
    {
        Timer t;
        const CGFunction& cg = cg_tables();
        bool ok = true;
        for (int j = 0; j <= 8; ++j) {
            ok = ok && cg.check_formal_fe_P(j);
            const PolyZZ& p = cg.P(j);
            PolyZZ swapped;
            for (const auto& [k, c] : p.coeffs) swapped.coeffs[{k.second, k.first}] = c;
            ok = ok && (p == swapped);
            ok = ok && p.degree_in(0) <= j - (j % 2) && p.degree_in(1) <= j - (j % 2);
        }
        for (int k1 = 0; k1 <= 8; ++k1)
            for (int k2 = 0; k1 + k2 <= 8; ++k2) {
                ok = ok && cg.check_formal_fe_Q(k1, k2);
                int n = k1 + k2;
                ok = ok && cg.Q(k1, k2).degree() <= n - (n % 2);
            }
        report(2, "formal functional equations P_j / Q_k, symmetry, degrees", ok, t.seconds(), 60);
    }

    // ----- criterion 3: coefficient facts on the full cached range
    {
        Timer t;
        const CGFunction& cg = cg_tables();
        bool ok = true;
        for (int k1 = 0; k1 <= 16; ++k1)
            for (int k2 = 0; k1 + k2 <= 16; ++k2)
                for (int j = 0; k1 + k2 + j <= 16; ++j) {
                    const UPoly& a = cg.coefficient(k1, k2, j);
                    if (k1 + k2 == 0 || j == 0) {
                        if (!(a == UPoly(1))) ok = false;
                    } else if (std::min(k1 + k2, j) == 1) {
                        if (!a.is_zero()) ok = false;
                    } else if ((k1 + k2) % 2 == 1 && j % 2 == 1) {
                        if (!a.is_zero()) ok = false;
                    }
                }
        report(3, "coefficient facts (monomial / min=1 / odd-odd vanishing)", ok, t.seconds(), 30);
    }

    // ----- criterion 4: residue identity, exact and numeric
    {
        Timer t;
        bool ok = residue_factor_check() && !residue_factor_check(true);
        std::string detail;
        for (auto tag : {BuiltinForm::level11w2, BuiltinForm::level9w4}) {
            auto f = eta_form(tag, 50000);
            ZOptions opt;
            opt.cutoff = 4000;
            opt.lseries_cutoff = 20000;
            ResidueReport rr = residue_check(cplx(2.0, 0.0), CharSpec::trivial(), f, opt);
            ok = ok && rr.relative_error < 0.01;
            detail += (detail.empty() ? "" : ", ") + std::to_string(rr.relative_error);
        }
        report(4, "residue identity (exact + 1% extrapolation, both forms)", ok, t.seconds(), 300,
               "rel errs " + detail);
    }

    // ----- criterion 5: cross-representation oracle
    {
        Timer t;
        bool ok = true;
        double worst = 0;
        const std::pair<double, double> points[5] = {
            {3.0, 3.0}, {3.5, 3.0}, {3.0, 3.5}, {4.0, 3.0}, {3.0, 4.0}};
        for (auto tag : {BuiltinForm::level11w2, BuiltinForm::level9w4}) {
            auto f = eta_form(tag, 50000);
            int64_t cN = (tag == BuiltinForm::level11w2) ? 11 : 3;
            const std::pair<CharSpec, CharSpec> pairs[4] = {
                {CharSpec::trivial(), CharSpec::trivial()},
                {CharSpec{1, -1, 1}, CharSpec{1, -1, 1}},
                {CharSpec{1, 2, 1}, CharSpec{1, -2, 1}},
                {CharSpec{1, 1, cN}, CharSpec::trivial()}};
            for (const auto& [sr, wr] : points) {
                ZOptions opt;
                opt.pair_cutoff = (sr <= 3.0) ? 6000 : 2500;
                opt.cutoff = (wr <= 3.0) ? 4000 : 2000;
                opt.lseries_cutoff = 20000;
                for (const auto& [a2c2, a1c1] : pairs) {
                    cplx s(sr, 0), w(wr, 0);
                    ZEval raw = Z_raw(s, w, a2c2, a1c1, f, opt);
                    ZEval r1 = Z_rep1(s, w, a2c2, a1c1, f, opt);
                    ZEval r2 = Z_rep2(s, w, a2c2, a1c1, f, opt);
                    double d1 = std::abs(raw.value - r1.value);
                    double d2 = std::abs(raw.value - r2.value);
                    worst = std::max({worst, d1, d2});
                    ok = ok && d1 < 1e-6 && d2 < 1e-6;
                    ok = ok && d1 < raw.est_error + r1.est_error;
                    ok = ok && d2 < raw.est_error + r2.est_error;
                }
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "worst |diff| = %.2e", worst);
        report(5, "cross-representation agreement (5 pts, 4 pairs, 2 forms)", ok, t.seconds(),
               600, buf);
    }

    // ----- criterion 6: correction-polynomial functional equations (numeric)
    {
        Timer t;
        auto f = eta_form(BuiltinForm::level11w2, 20000);
        bool ok = true;
        double worst = 0;
        for (int64_t d : {9, 25, 225}) {
            auto [d0, d1] = squarefree_split(static_cast<uint32_t>(d));
            (void)d0;
            for (double x : {0.2, 0.35, 0.5, 0.65, 0.8}) {
                cplx lp = P_d(cplx(x, 0), CharSpec::trivial(), *f, d);
                cplx rp = std::pow(static_cast<double>(d1), 2.0 - 4.0 * x) *
                          P_d(cplx(1.0 - x, 0), CharSpec::trivial(), *f, d);
                cplx lq = Qtilde_n(cplx(x, 0), CharSpec::trivial(), *f, d);
                cplx rq = std::pow(static_cast<double>(d1), 1.0 - 2.0 * x) *
                          Qtilde_n(cplx(1.0 - x, 0), CharSpec::trivial(), *f, d);
                worst = std::max({worst, std::abs(lp - rp), std::abs(lq - rq)});
                ok = ok && std::abs(lp - rp) < 1e-10 && std::abs(lq - rq) < 1e-10;
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "worst residual = %.2e", worst);
        report(6, "P_d / Q~_n functional equations at d,n in {9,25,225}", ok, t.seconds(), 60,
               buf);
    }

    // ----- criterion 7: L-machinery
    {
        Timer t;
        bool ok = true;
        // (a) Dirichlet functional equation, all primitive specs Q <= 120
        double worst_dir = 0;
        int n_specs = 0;
        for (int64_t d0 = 1; d0 <= 120; d0 += 2) {
            if (!is_squarefree_u32(static_cast<uint32_t>(d0))) continue;
            for (int a : {1, -1, 2, -2}) {
                CharSpec spec{d0, a, 1};
                if (conductor(spec).conductor > 120 || spec.is_trivial()) continue;
                cplx lhs = dirichlet_L_direct(cplx(0.3, 0.0), spec);
                cplx rhs = dirichlet_L_reflected(cplx(0.3, 0.0), spec);
                worst_dir = std::max(worst_dir, std::abs(lhs - rhs));
                ++n_specs;
            }
        }
        ok = ok && worst_dir < 1e-9 && n_specs >= 40;
        // (b) completed functional equation via the independent direct engine
        double worst_fe = 0;
        for (auto tag : {BuiltinForm::level11w2, BuiltinForm::level9w4}) {
            auto f = eta_form(tag, 600000);
            auto pool = odd_conductor_pool(*f, 10, 9e3);
            ok = ok && pool.size() == 10;
            for (const auto& spec : pool) {
                int eps = root_number_formula(*f, spec);
                for (double x : {0.3, 0.45, 0.5, 0.62, 0.8}) {
                    cplx ls = completed_Lambda(cplx(x, 0), *f, spec, "direct");
                    cplx l1s = completed_Lambda(cplx(1.0 - x, 0), *f, spec, "direct");
                    worst_fe = std::max(worst_fe, std::abs(ls - static_cast<double>(eps) * l1s));
                }
            }
        }
        ok = ok && worst_fe < 1e-6;
        // (c) twistroot sign identity, 20 twists per form
        for (auto tag : {BuiltinForm::level11w2, BuiltinForm::level9w4}) {
            auto f = eta_form(tag);
            int eps_f = root_number(*f, CharSpec::trivial());
            auto pool = mixed_pool(*f, 20, 2.2e4);
            ok = ok && pool.size() == 20;
            for (const auto& spec : pool)
                ok = ok && root_number(*f, spec) == eps_f * chi_eval(spec, -f->N);
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "dirichlet %.1e (%d specs), Lambda %.1e", worst_dir,
                      n_specs, worst_fe);
        report(7, "L-machinery (Dirichlet FE, Lambda FE, twist root numbers)", ok, t.seconds(),
               600, buf);
    }

    // ----- criterion 8: scattering special values + gamma_1 vector FE
    {
        Timer t;
        auto f11 = eta_form(BuiltinForm::level11w2);
        auto f9 = eta_form(BuiltinForm::level9w4);
        CharSpec triv = CharSpec::trivial();
        bool ok = std::abs(phi_entry(cplx(0.5, 0), triv, triv, triv, *f11)) < 1e-8;
        int eps9 = root_number(*f9, triv);
        ok = ok && std::abs(phi_entry(cplx(0.5, 0), triv, triv, triv, *f9) -
                            static_cast<double>(eps9)) < 1e-8;
        double worst = 0;
        for (auto f : {f11, f9}) {
            ZOptions opt;
            opt.cutoff = 1200;
            FeReport fr = check_fe_gamma1(cplx(0.8, 0), cplx(2.5, 0), triv, f, opt);
            worst = std::max(worst, fr.relative_residual);
            ok = ok && fr.relative_residual < 1e-3;
            // sensitivity control: dropping the special-prime products breaks it
            if (f->N0 > 1) {
                FeReport broken = check_fe_gamma1(cplx(0.8, 0), cplx(2.5, 0), triv, f, opt, true);
                ok = ok && broken.relative_residual > 1e-1;
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "worst rel residual = %.2e", worst);
        report(8, "scattering values + gamma_1 vector functional equation", ok, t.seconds(), 900,
               buf);
    }

    // ----- criterion 9: moment experiment
    {
        Timer t;
        auto f = eta_form(BuiltinForm::level11w2);
        SmoothWeight W;
        bool ok = true;
        std::string detail;
        double dev256 = 0, dev2048 = 0;
        for (double X : {256.0, 512.0, 1024.0, 2048.0}) {
            MomentReport mr = moment_M(f, X, W);
            ok = ok && mr.relative_deviation < 0.5;
            if (X == 256.0) dev256 = mr.relative_deviation;
            if (X == 2048.0) dev2048 = mr.relative_deviation;
            char buf[48];
            std::snprintf(buf, sizeof buf, "%sX=%g: %.3f", detail.empty() ? "" : ", ", X,
                          mr.relative_deviation);
            detail += buf;
            for (const auto& rec : mr.encountered)
                if (rec.eps == -1) ok = ok && std::abs(rec.central_value) < 1e-6;
        }
        ok = ok && dev2048 < dev256;
        report(9, "first moment vs main term (X = 256..2048)", ok, t.seconds(), 1800, detail);
    }

    // ----- criterion 10: nonvanishing search
    {
        Timer t;
        auto f11 = eta_form(BuiltinForm::level11w2);
        auto r11 = least_twist(f11, 100);
        bool ok = r11.found && r11.least_d0 == 1;
        for (const auto& z : r11.skipped_structural_zeros) ok = ok && z.eps == -1;
        auto f9 = eta_form(BuiltinForm::level9w4);
        int eps9 = root_number(*f9, CharSpec::trivial());
        auto r9 = least_twist(f9, 60);
        if (eps9 == 1)
            ok = ok && r9.found && r9.least_d0 == 1;
        else
            ok = ok && r9.root_number_obstruction && !r9.found;
        for (const auto& z : r9.skipped_structural_zeros) ok = ok && z.eps == -1;
        report(10, "least nonvanishing twist (d0 = 1 / root-number dichotomy)", ok, t.seconds(),
               300);
    }

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
