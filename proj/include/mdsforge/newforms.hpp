#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mdsforge/characters.hpp"

namespace mdsforge {

// Hecke eigenvalue data for an arithmetically normalised newform of odd
// cubefree level N = N0 N1^2, even weight ell, trivial nebentypus.
class Newform {
public:
    int64_t N = 1;
    int ell = 2;
    int64_t N0 = 1, N1 = 1;
    std::vector<int64_t> a;  // a[n] for 1 <= n <= M, a[0] unused
    std::string source;
    // epsilon(pi_f), computed numerically by lfuncs::root_number and cached
    mutable std::optional<int> eps;

    int64_t M() const { return static_cast<int64_t>(a.size()) - 1; }
    int64_t an(int64_t n) const {
        if (n < 1 || n > M()) throw std::out_of_range("insufficient coefficients");
        return a[n];
    }
    // normalized lambda_f(n) = a(n) / n^{(ell-1)/2}
    double lambda(int64_t n) const {
        return static_cast<double>(an(n)) * std::pow(static_cast<double>(n), -(ell - 1) / 2.0);
    }
};

enum class SatakeKind { unramified, special, supercuspidal };

struct SatakeData {
    int64_t p;
    SatakeKind kind;
    cplx alpha{0.0, 0.0}, beta{0.0, 0.0};  // beta unused for special; both unused supercuspidal
};

enum class BuiltinForm { level11w2, level9w4 };

// Built-in eta-product newforms:
//   level11w2: q prod (1-q^n)^2 (1-q^{11n})^2, N = 11, ell = 2
//   level9w4:  eta(3 tau)^8 = q prod (1-q^{3n})^8, N = 9, ell = 4
std::shared_ptr<const Newform> eta_form(BuiltinForm tag, int64_t M = 200000);
std::shared_ptr<const Newform> form_by_name(const std::string& name, int64_t M = 200000);

// Coefficient CSV ingestion.  Format: first line "# level=<N> weight=<l>
// count=<M>", then lines "n,a_n" with strictly increasing gap-free n from 1.
std::shared_ptr<const Newform> load_coefficients(const std::string& path);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::string assumptions = "twist-minimality assumed (not tested)";
    void flag(const std::string& v) {
        ok = false;
        violations.push_back(v);
    }
};

// Multiplicativity, Hecke recursion, divisor bound, ramified constraints.
ValidationReport validate(const Newform& f, int64_t n_limit = 10000);

SatakeData satake(const Newform& f, int64_t p);

struct ConductorData {
    int64_t N0, N1;
    int64_t sym2_conductor;         // N0^2 N1^3
    int64_t twisted_proxy;          // 8 N c d0^2 (divisor bound of the paper)
    int64_t twisted_exact;          // c~(chi)^2 d0^2 N gcd(c, N0) from local data
};
ConductorData conductor_data(const Newform& f, const CharSpec& spec = CharSpec::trivial());

// Euler-function coefficients prod_{n>=1}(1-q^n) by two independent orderings
// (pentagonal-number expansion / sequential by modulus), for cross-tests.
std::vector<int64_t> euler_product_pentagonal(int64_t M);
std::vector<int64_t> euler_product_by_modulus(int64_t M);

}  // namespace mdsforge
