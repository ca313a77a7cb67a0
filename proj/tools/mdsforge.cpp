// mdsforge: verification suites and computations for the quadratic-twist
// multiple Dirichlet series machinery.
//
// Subcommands: verify {weyl|cg|corr|residue}, eval-z, scatter, check-fe,
// lvalue, moment, search-twist.  Every run emits a JSON report (schema 1)
// with the fully resolved configuration; exit status 0 iff all checks pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdsforge/mds.hpp"
#include "mdsforge/moment.hpp"

using namespace mdsforge;
using nlohmann::json;

namespace {

double round_sig(double x, int digits = 15) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    double mag = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::fabs(x)))));
    return std::round(x * mag) / mag;
}

json jnum(double x) { return round_sig(x); }
json jcplx(cplx z) { return json{{"re", jnum(z.real())}, {"im", jnum(z.imag())}}; }

CharSpec parse_char(const std::string& s) {
    // "a:c" with a in {1,-1,2,-2}, c a positive divisor of rad(N)
    auto colon = s.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("character must be 'a:c'");
    CharSpec spec;
    spec.a = std::stoi(s.substr(0, colon));
    spec.c = std::stoll(s.substr(colon + 1));
    return spec;
}

struct Common {
    std::string form = "level11w2";
    int64_t coeff_count = 200000;
    std::string output;
    int threads = 0;
};

void emit(const json& report, const Common& c, int& exit_code, bool pass) {
    json out = report;
    out["schema"] = 1;
    out["pass"] = pass;
    std::string text = out.dump(2);
    if (!c.output.empty()) {
        std::ofstream f(c.output);
        f << text << "\n";
    }
    std::cout << text << std::endl;
    if (!pass) exit_code = 1;
}

json config_json(const Common& c) {
    return json{{"form", c.form},
                {"coeff_count", c.coeff_count},
                {"threads", effective_threads()},
                {"output", c.output}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic-twist multiple Dirichlet series toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--form", c.form, "builtin tag (level11w2|level9w4) or coefficient CSV path");
    app.add_option("--coeff-count", c.coeff_count, "coefficient table length for builtin forms");
    app.add_option("--output", c.output, "write the JSON report to this path");
    app.add_option("--threads", c.threads, "worker threads (also env MDSFORGE_THREADS)");

    // verify
    auto* verify = app.add_subcommand("verify", "run an exact verification suite");
    std::string suite;
    verify->add_option("suite", suite, "weyl|cg|corr|residue")->required();

    // eval-z
    auto* evalz = app.add_subcommand("eval-z", "evaluate Z^{(N)}(s,w) in one representation");
    double zs = 3.0, zw = 3.0;
    std::string rep = "raw", a2c2_str = "1:1", a1c1_str = "1:1";
    int64_t cutoff = 10000, pair_cutoff = 6000, lcut = 20000;
    evalz->add_option("--s", zs, "Re(s)");
    evalz->add_option("--w", zw, "Re(w)");
    evalz->add_option("--rep", rep, "raw|rep1|rep2");
    evalz->add_option("--a2c2", a2c2_str, "character a:c weighting d");
    evalz->add_option("--a1c1", a1c1_str, "character a:c weighting m1 m2");
    evalz->add_option("--cutoff", cutoff, "outer cutoff (d or n)");
    evalz->add_option("--pair-cutoff", pair_cutoff, "m1 m2 cutoff (raw)");
    evalz->add_option("--lseries-cutoff", lcut, "inner L-series cutoff");

    // scatter
    auto* scatter = app.add_subcommand("scatter", "scattering-matrix entries");
    std::string which = "phi";
    double point = 0.5;
    std::string row_str = "1:1";
    scatter->add_option("matrix", which, "phi|psi")->required();
    scatter->add_option("--point", point, "argument s (phi) or w (psi)");
    scatter->add_option("--row", row_str, "row context character a:c");

    // check-fe
    auto* checkfe = app.add_subcommand("check-fe", "gamma_1 vector functional equation residual");
    double fs = 0.8, fw = 2.5;
    std::string fe_row = "1:1";
    int64_t fe_cutoff = 400;
    checkfe->add_option("--s", fs, "Re(s)");
    checkfe->add_option("--w", fw, "Re(w)");
    checkfe->add_option("--row", fe_row, "fixed a1c1 character a:c");
    checkfe->add_option("--cutoff", fe_cutoff, "rep1 d-cutoff");

    // lvalue
    auto* lvalue = app.add_subcommand("lvalue", "twisted central or off-center L-value");
    int64_t ld0 = 1;
    double ls = 0.5;
    lvalue->add_option("--d0", ld0, "odd squarefree twist");
    lvalue->add_option("--s", ls, "evaluation point");

    // moment
    auto* moment = app.add_subcommand("moment", "first-moment experiment");
    double mX = 512;
    std::string weight = "standard";
    std::string csv_dump;
    moment->add_option("--X", mX, "window [X, 2X]");
    moment->add_option("--weight", weight, "standard|secondary bump");
    moment->add_option("--csv", csv_dump, "optional CSV dump of (d0, L, eps)");

    // search-twist
    auto* search = app.add_subcommand("search-twist", "least nonvanishing twist search");
    int64_t max_d = 100;
    search->add_option("--max-d", max_d, "largest candidate d0");

    CLI11_PARSE(app, argc, argv);
    if (c.threads > 0) setenv("MDSFORGE_THREADS", std::to_string(c.threads).c_str(), 1);

    auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;
    json report;
    report["config"] = config_json(c);
    bool pass = true;

    try {
        auto f = form_by_name(c.form, c.coeff_count);

        if (verify->parsed()) {
            report["command"] = "verify " + suite;
            json res;
            if (suite == "weyl") {
                auto rel = verify_group_relations();
                res["group_relations_hold"] = rel.all_hold;
                res["violations"] = rel.violations;
                pass &= rel.all_hold;
                for (int i = 1; i <= 3; ++i) {
                    bool inv = cg_act(g_A3(), i).equals(g_A3());
                    res["invariance_sigma_" + std::to_string(i)] = inv;
                    pass &= inv;
                    bool uniq = cg_uniqueness_property(i);
                    res["uniqueness_property_" + std::to_string(i)] = uniq;
                    pass &= uniq;
                }
            } else if (suite == "cg") {
                const CGFunction& cg = cg_tables();
                bool facts = true;
                for (int k1 = 0; k1 <= 8; ++k1)
                    for (int k2 = 0; k1 + k2 <= 8; ++k2)
                        for (int j = 0; j <= 8 && k1 + k2 + j <= 16; ++j) {
                            const UPoly& a = cg.coefficient(k1, k2, j);
                            if (k1 + k2 == 0 || j == 0) {
                                if (a != UPoly(1)) facts = false;
                            } else if (std::min(k1 + k2, j) == 1 && !a.is_zero()) {
                                facts = false;
                            } else if ((k1 + k2) % 2 == 1 && j % 2 == 1 && !a.is_zero()) {
                                facts = false;
                            }
                        }
                res["coefficient_facts"] = facts;
                pass &= facts;
                bool fes = true, sym = true, deg = true;
                for (int j = 0; j <= 8; ++j) {
                    fes &= cg.check_formal_fe_P(j);
                    const PolyZZ& p = cg.P(j);
                    PolyZZ swapped;
                    for (const auto& [k, cc] : p.coeffs) swapped.coeffs[{k.second, k.first}] = cc;
                    sym &= (p == swapped);
                    deg &= p.degree_in(0) <= j - (j % 2);
                }
                for (int k1 = 0; k1 <= 8; ++k1)
                    for (int k2 = 0; k1 + k2 <= 8; ++k2) {
                        fes &= cg.check_formal_fe_Q(k1, k2);
                        int n = k1 + k2;
                        deg &= cg.Q(k1, k2).degree() <= n - (n % 2);
                    }
                res["formal_functional_equations"] = fes;
                res["P_symmetric"] = sym;
                res["degree_bounds"] = deg;
                pass &= fes && sym && deg;
            } else if (suite == "corr") {
                bool ok = true;
                json grid = json::array();
                for (int64_t d : {9, 25, 225}) {
                    auto [d0, d1] = squarefree_split(static_cast<uint32_t>(d));
                    (void)d0;
                    for (double sr : {0.2, 0.35, 0.5, 0.65, 0.8}) {
                        cplx lhs = P_d(cplx(sr, 0), CharSpec::trivial(), *f, d);
                        cplx rhs = std::pow(static_cast<double>(d1), 2.0 - 4.0 * sr) *
                                   P_d(cplx(1.0 - sr, 0), CharSpec::trivial(), *f, d);
                        double r = std::abs(lhs - rhs);
                        ok &= r < 1e-10 * (1.0 + std::abs(lhs));
                        grid.push_back(json{{"kind", "P"}, {"index", d}, {"s", sr},
                                            {"residual", jnum(r)}});
                        cplx ql = Qtilde_n(cplx(sr, 0), CharSpec::trivial(), *f, d);
                        cplx qr = std::pow(static_cast<double>(d1), 1.0 - 2.0 * sr) *
                                  Qtilde_n(cplx(1.0 - sr, 0), CharSpec::trivial(), *f, d);
                        double rq = std::abs(ql - qr);
                        ok &= rq < 1e-10 * (1.0 + std::abs(ql));
                        grid.push_back(json{{"kind", "Q"}, {"index", d}, {"w", sr},
                                            {"residual", jnum(rq)}});
                    }
                }
                res["grid"] = grid;
                res["all_within_1e-10"] = ok;
                pass &= ok;
            } else if (suite == "residue") {
                bool exact = residue_factor_check();
                bool control = !residue_factor_check(true);
                res["exact_identity"] = exact;
                res["perturbed_identity_fails"] = control;
                ZOptions opt;
                opt.cutoff = 4000;
                ResidueReport rr = residue_check(cplx(2.0, 0), CharSpec::trivial(), f, opt);
                res["extrapolated"] = jnum(rr.extrapolated);
                res["expected"] = jnum(rr.expected);
                res["relative_error"] = jnum(rr.relative_error);
                pass &= exact && control && rr.relative_error < 0.01;
            } else {
                throw CLI::ValidationError("unknown verify suite: " + suite);
            }
            report["results"] = res;
        } else if (evalz->parsed()) {
            report["command"] = "eval z";
            ZOptions opt;
            opt.cutoff = cutoff;
            opt.pair_cutoff = pair_cutoff;
            opt.lseries_cutoff = lcut;
            CharSpec s2 = parse_char(a2c2_str), s1 = parse_char(a1c1_str);
            ZEval z;
            if (rep == "raw")
                z = Z_raw(cplx(zs, 0), cplx(zw, 0), s2, s1, f, opt);
            else if (rep == "rep1")
                z = Z_rep1(cplx(zs, 0), cplx(zw, 0), s2, s1, f, opt);
            else if (rep == "rep2")
                z = Z_rep2(cplx(zs, 0), cplx(zw, 0), s2, s1, f, opt);
            else
                throw CLI::ValidationError("unknown representation: " + rep);
            report["results"] = json{{"s", jnum(zs)},
                                     {"w", jnum(zw)},
                                     {"representation", rep},
                                     {"a2c2", a2c2_str},
                                     {"a1c1", a1c1_str},
                                     {"cutoff_outer", z.cutoff_outer},
                                     {"cutoff_inner", z.cutoff_inner},
                                     {"value", jcplx(z.value)},
                                     {"est_error", jnum(z.est_error)}};
        } else if (scatter->parsed()) {
            report["command"] = "scatter " + which;
            CharSpec row = parse_char(row_str);
            auto dv = div_set(f->N);
            json entries = json::array();
            for (const auto& i : dv)
                for (const auto& j : dv) {
                    cplx e = (which == "phi") ? phi_entry(cplx(point, 0), row, i, j, *f)
                                              : psi_entry(cplx(point, 0), row, i, j, *f);
                    entries.push_back(json{{"row", i.str()}, {"col", j.str()}, {"value", jcplx(e)}});
                }
            report["results"] = json{{"point", jnum(point)}, {"entries", entries}};
        } else if (checkfe->parsed()) {
            report["command"] = "check-fe";
            ZOptions opt;
            opt.cutoff = fe_cutoff;
            FeReport fr = check_fe_gamma1(cplx(fs, 0), cplx(fw, 0), parse_char(fe_row), f, opt);
            report["results"] = json{{"s", jnum(fs)},
                                     {"w", jnum(fw)},
                                     {"relative_residual", jnum(fr.relative_residual)}};
            pass &= fr.relative_residual < 1e-3;
        } else if (lvalue->parsed()) {
            report["command"] = "lvalue";
            CharSpec spec = CharSpec::quadratic(ld0);
            LValue v = L_twisted_2N(cplx(ls, 0), *f, spec);
            report["results"] = json{{"d0", ld0},
                                     {"s", jnum(ls)},
                                     {"value", jcplx(v.value)},
                                     {"eps", v.eps},
                                     {"cutoff", v.cutoff},
                                     {"est_error", jnum(v.est_error)}};
        } else if (moment->parsed()) {
            report["command"] = "moment";
            SmoothWeight W(weight == "secondary" ? SmoothWeight::Kind::secondary
                                                 : SmoothWeight::Kind::standard);
            MomentReport mr = moment_M(f, mX, W);
            json recs = json::array();
            for (const auto& r : mr.encountered)
                recs.push_back(json{{"d0", r.d0}, {"L", jnum(r.central_value)}, {"eps", r.eps}});
            report["results"] = json{{"X", jnum(mX)},
                                     {"weight", mr.weight},
                                     {"M", jnum(mr.M_value)},
                                     {"main_term", jnum(mr.main_term)},
                                     {"relative_deviation", jnum(mr.relative_deviation)},
                                     {"twists", recs}};
            if (!csv_dump.empty()) {
                std::ofstream csv(csv_dump);
                csv << "d0,L,eps\n";
                for (const auto& r : mr.encountered)
                    csv << r.d0 << "," << round_sig(r.central_value) << "," << r.eps << "\n";
            }
        } else if (search->parsed()) {
            report["command"] = "search-twist";
            auto res = least_twist(f, max_d);
            json zeros = json::array();
            for (const auto& r : res.skipped_structural_zeros)
                zeros.push_back(json{{"d0", r.d0}, {"L", jnum(r.central_value)}, {"eps", r.eps}});
            report["results"] = json{{"found", res.found},
                                     {"least_d0", res.least_d0},
                                     {"root_number_obstruction", res.root_number_obstruction},
                                     {"skipped_structural_zeros", zeros},
                                     {"indeterminate", res.indeterminate},
                                     {"d0_convention", "odd squarefree, coprime to 2N"}};
            pass &= res.found || res.root_number_obstruction;
        }
    } catch (const std::exception& ex) {
        report["error"] = ex.what();
        pass = false;
    }

    auto t1 = std::chrono::steady_clock::now();
    report["wall_time_seconds"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0;
    emit(report, c, exit_code, pass);
    return exit_code;
}
