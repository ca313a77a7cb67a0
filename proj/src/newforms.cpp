#include "mdsforge/newforms.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace mdsforge {

std::vector<int64_t> euler_product_pentagonal(int64_t M) {
    // prod (1-q^n) = sum_k (-1)^k q^{k(3k-1)/2}
    std::vector<int64_t> e(M + 1, 0);
    for (int64_t k = 0;; ++k) {
        int64_t g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
        if (g1 > M && g2 > M) break;
        int64_t s = (k % 2 == 0) ? 1 : -1;
        if (g1 <= M) e[g1] += s;
        if (g2 <= M && k > 0) e[g2] += s;
    }
    return e;
}

std::vector<int64_t> euler_product_by_modulus(int64_t M) {
    std::vector<int64_t> e(M + 1, 0);
    e[0] = 1;
    for (int64_t n = 1; n <= M; ++n) {
        for (int64_t i = M; i >= n; --i) e[i] -= e[i - n];
    }
    return e;
}

namespace {

// dense *= sparse (list of (exp, coeff)), truncated at M
void mul_sparse(std::vector<int64_t>& dense, const std::vector<std::pair<int64_t, int64_t>>& sp,
                int64_t M) {
    std::vector<int64_t> out(M + 1, 0);
    for (const auto& [e, c] : sp) {
        if (c == 0) continue;
        for (int64_t i = 0; i + e <= M; ++i) {
            if (dense[i]) out[i + e] += c * dense[i];
        }
    }
    dense = std::move(out);
}

std::vector<std::pair<int64_t, int64_t>> pentagonal_sparse(int64_t M, int64_t scale) {
    std::vector<std::pair<int64_t, int64_t>> sp;
    auto e = euler_product_pentagonal(M / scale);
    for (int64_t i = 0; i < static_cast<int64_t>(e.size()); ++i)
        if (e[i]) sp.emplace_back(i * scale, e[i]);
    return sp;
}

void split_level(Newform& f) {
    SpfSieve::instance().ensure(static_cast<uint32_t>(f.N));
    auto fac = SpfSieve::instance().factor(static_cast<uint32_t>(f.N));
    f.N0 = f.N1 = 1;
    for (auto& [p, e] : fac) {
        if (e == 1)
            f.N0 *= p;
        else if (e == 2)
            f.N1 *= p;
        else
            throw std::domain_error("unsupported level: not cubefree");
    }
}

void check_level(int64_t N) {
    if (N % 2 == 0) throw std::domain_error("unsupported level: even");
    SpfSieve::instance().ensure(static_cast<uint32_t>(N));
    for (auto& [p, e] : SpfSieve::instance().factor(static_cast<uint32_t>(N)))
        if (e > 2) throw std::domain_error("unsupported level: not cubefree");
}

}  // namespace

std::shared_ptr<const Newform> eta_form(BuiltinForm tag, int64_t M) {
    static std::map<std::pair<int, int64_t>, std::shared_ptr<const Newform>> cache;
    auto key = std::make_pair(static_cast<int>(tag), M);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    auto f = std::make_shared<Newform>();
    std::vector<int64_t> c(M + 1, 0);
    c[0] = 1;
    if (tag == BuiltinForm::level11w2) {
        f->N = 11;
        f->ell = 2;
        f->source = "builtin:level11w2";
        auto e1 = pentagonal_sparse(M, 1);
        auto e11 = pentagonal_sparse(M, 11);
        mul_sparse(c, e1, M);
        mul_sparse(c, e1, M);
        mul_sparse(c, e11, M);
        mul_sparse(c, e11, M);
    } else {
        f->N = 9;
        f->ell = 4;
        f->source = "builtin:level9w4";
        auto e3 = pentagonal_sparse(M, 3);
        for (int i = 0; i < 8; ++i) mul_sparse(c, e3, M);
    }
    f->a.assign(M + 1, 0);
    for (int64_t n = 1; n <= M; ++n) f->a[n] = c[n - 1];  // leading factor q
    split_level(*f);
    cache[key] = f;
    return f;
}

std::shared_ptr<const Newform> form_by_name(const std::string& name, int64_t M) {
    if (name == "level11w2") return eta_form(BuiltinForm::level11w2, M);
    if (name == "level9w4") return eta_form(BuiltinForm::level9w4, M);
    return load_coefficients(name);
}

std::shared_ptr<const Newform> load_coefficients(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient file: " + path);
    std::string header;
    std::getline(in, header);
    int64_t N = 0, M = 0;
    int ell = 0;
    {
        std::istringstream hs(header);
        std::string tok;
        hs >> tok;  // '#'
        if (tok != "#") throw std::runtime_error("malformed header: " + header);
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::runtime_error("malformed header token: " + tok);
            std::string k = tok.substr(0, eq);
            int64_t v = std::stoll(tok.substr(eq + 1));
            if (k == "level")
                N = v;
            else if (k == "weight")
                ell = static_cast<int>(v);
            else if (k == "count")
                M = v;
            else
                throw std::runtime_error("unknown header key: " + k);
        }
    }
    if (N <= 0 || ell <= 0 || M <= 0) throw std::runtime_error("incomplete header");
    check_level(N);
    if (ell % 2 != 0) throw std::runtime_error("unsupported weight: odd");

    auto f = std::make_shared<Newform>();
    f->N = N;
    f->ell = ell;
    f->source = "file:" + path;
    f->a.assign(M + 1, 0);
    std::string line;
    int64_t expect = 1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed line: " + line);
        int64_t n = std::stoll(line.substr(0, comma));
        int64_t an = std::stoll(line.substr(comma + 1));
        if (n != expect) throw std::runtime_error("coefficient rows must be 1..M without gaps");
        if (n > M) throw std::runtime_error("row index beyond declared count");
        f->a[n] = an;
        ++expect;
    }
    if (expect != M + 1) throw std::runtime_error("missing coefficient rows");
    if (f->a[1] != 1) throw std::runtime_error("a(1) must be 1");
    split_level(*f);
    return f;
}

ValidationReport validate(const Newform& f, int64_t n_limit) {
    ValidationReport rep;
    int64_t M = std::min(n_limit, f.M());
    if (f.a.size() < 2 || f.a[1] != 1) rep.flag("a(1) must be 1");
    // multiplicativity for coprime pairs
    for (int64_t m = 2; m * m <= M; ++m) {
        for (int64_t n = m + 1; m * n <= M; ++n) {
            if (std::gcd(m, n) != 1) continue;
            if (f.a[m * n] != f.a[m] * f.a[n]) {
                rep.flag("multiplicativity fails at (" + std::to_string(m) + "," +
                         std::to_string(n) + ")");
                if (rep.violations.size() > 8) return rep;
            }
        }
    }
    auto& sieve = SpfSieve::instance();
    sieve.ensure(static_cast<uint32_t>(M));
    // Hecke recursion at p not dividing N; ramified constraints at p | N
    for (uint32_t p : sieve.primes_to(static_cast<uint32_t>(M))) {
        if (f.N % p == 0) {
            bool special = (f.N0 % p == 0);
            if (special) {
                // lambda(p)^2 = 1/p  <=>  a(p)^2 = p^{ell-2}
                int64_t want = 1;
                for (int i = 0; i < f.ell - 2; ++i) want *= p;
                if (f.a[p] * f.a[p] != want)
                    rep.flag("special constraint fails at p=" + std::to_string(p));
            } else if (f.a[p] != 0) {
                rep.flag("supercuspidal constraint fails at p=" + std::to_string(p));
            }
            continue;
        }
        __int128 pl = 1;
        for (int i = 0; i < f.ell - 1; ++i) pl *= p;
        for (int64_t pk = p; pk * p <= M; pk *= p) {
            __int128 lhs = static_cast<__int128>(f.a[p]) * f.a[pk];
            __int128 rhs = static_cast<__int128>(f.a[pk * p]) + pl * f.a[pk / p];
            if (lhs != rhs) {
                rep.flag("Hecke recursion fails at p=" + std::to_string(p) +
                         ", p^k=" + std::to_string(pk));
                break;
            }
        }
    }
    // divisor bound on normalized eigenvalues
    std::vector<int> d(M + 1, 0);
    for (int64_t i = 1; i <= M; ++i)
        for (int64_t j = i; j <= M; j += i) d[j]++;
    for (int64_t n = 1; n <= M; ++n) {
        if (std::abs(f.lambda(n)) > d[n] + 1e-9) {
            rep.flag("divisor bound fails at n=" + std::to_string(n));
            break;
        }
    }
    return rep;
}

SatakeData satake(const Newform& f, int64_t p) {
    if (p > f.M()) throw std::out_of_range("insufficient coefficients");
    SatakeData s;
    s.p = p;
    if (f.N % p == 0) {
        if (f.N0 % p == 0) {
            s.kind = SatakeKind::special;
            s.alpha = f.lambda(p);
        } else {
            s.kind = SatakeKind::supercuspidal;
        }
        return s;
    }
    s.kind = SatakeKind::unramified;
    double l = f.lambda(p);
    // roots of x^2 - lambda x + 1; |lambda| < 2 for newforms (Deligne)
    double disc = 1.0 - 0.25 * l * l;
    if (disc < 0) throw std::runtime_error("Satake discriminant negative: divisor bound violated");
    s.alpha = cplx(0.5 * l, std::sqrt(disc));
    s.beta = std::conj(s.alpha);
    return s;
}

ConductorData conductor_data(const Newform& f, const CharSpec& spec) {
    if (std::gcd(spec.d0, 2 * f.N) != 1)
        throw std::domain_error("character not coprime to level");
    ConductorData cd;
    cd.N0 = f.N0;
    cd.N1 = f.N1;
    cd.sym2_conductor = f.N0 * f.N0 * f.N1 * f.N1 * f.N1;
    cd.twisted_proxy = 8 * f.N * spec.c * spec.d0 * spec.d0;
    int64_t ct = conductor(spec).c_tilde;
    cd.twisted_exact = ct * ct * spec.d0 * spec.d0 * f.N * std::gcd(spec.c, f.N0);
    return cd;
}

}  // namespace mdsforge
