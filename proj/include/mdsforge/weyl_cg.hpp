#pragma once

#include <map>
#include <string>
#include <vector>

#include "mdsforge/series.hpp"

namespace mdsforge {

// A word in the simple reflections sigma_1, sigma_2, sigma_3 of W(A3).
// alpha_3 is the central node of the Dynkin diagram: adjacency {1-3, 2-3}.
struct WeylWord {
    std::vector<int> letters;  // values in {1,2,3}

    WeylWord() = default;
    WeylWord(std::initializer_list<int> l) : letters(l) { check(); }
    explicit WeylWord(std::vector<int> l) : letters(std::move(l)) { check(); }

    void check() const {
        for (int i : letters)
            if (i < 1 || i > 3) throw std::domain_error("WeylWord: generator index out of range");
    }
    bool empty() const { return letters.empty(); }
};

bool weyl_adjacent(int i, int j);

// Coordinate maps of eps_i and sigma_i (1-based indices).
MonomialMap epsilon_map(int i);
MonomialMap sigma_map(int i);
MonomialMap word_map(const WeylWord& w);

// Chinta-Gunnells action of a single reflection / of a word on a rational
// function, exactly.
MultiRat cg_act(const MultiRat& h, int i);
MultiRat cg_act(const MultiRat& h, const WeylWord& w);

// The invariant function g_{A3}(z; q) in closed form (q = u^2).
const MultiRat& g_A3();

struct RelationReport {
    bool all_hold = true;
    std::vector<std::string> violations;
};

// Checks (sigma_i sigma_j)^{r_ij} = 1 on coordinate maps, r_12 = 2,
// r_13 = r_23 = 3, r_ii = 1.
RelationReport verify_group_relations();

// Polynomial in (z1, z2) over UPoly (used for P_j) or in z3 (for Q_k).
struct PolyZZ {
    // key (e1, e2) -> UPoly coefficient
    std::map<std::pair<int, int>, UPoly> coeffs;
    bool operator==(const PolyZZ& o) const { return coeffs == o.coeffs; }
    int degree_in(int which) const;  // 0 -> z1, 1 -> z2
    ZPoly to_zpoly(int var1, int var2) const;
    std::complex<double> eval(std::complex<double> x, std::complex<double> y, double p) const;
};

struct PolyZ {
    std::map<int, UPoly> coeffs;  // e3 -> UPoly
    bool operator==(const PolyZ& o) const { return coeffs == o.coeffs; }
    int degree() const;
    ZPoly to_zpoly(int var) const;
    std::complex<double> eval(std::complex<double> x, double p) const;
};

// Cached g_{A3} expansion and the correction-polynomial tables.
class CGFunction {
public:
    explicit CGFunction(int series_degree = 16, int j_max = 8, int k_max = 8);

    int series_degree() const { return degree_; }
    int j_max() const { return j_max_; }
    int k_max() const { return k_max_; }

    // a(k1, k2, j; q) as an exact polynomial in u (even powers only).
    const UPoly& coefficient(int k1, int k2, int j) const;

    // P_j(z1, z2; q), j <= j_max.
    const PolyZZ& P(int j) const;
    // Q_{(k1,k2)}(z3; q), k1 + k2 <= k_max.
    const PolyZ& Q(int k1, int k2) const;

    // Formal functional equations (exact identity checks).
    // P: (sqrt(q) z1)^{j - a_j} P_j(1/(q z1), z2; q) = P_j(z1, z2; q), and the
    // z2 analogue.  Q: (sqrt(q) z3)^{|k| - a_{|k|}} Q_k(1/(q z3); q) = Q_k(z3; q).
    bool check_formal_fe_P(int j) const;
    bool check_formal_fe_Q(int k1, int k2) const;

    // a(k1,k2,j;p) with q specialized to the prime p (exact even-power eval).
    double coefficient_at(int k1, int k2, int j, double p) const;

    const TruncSeries& series() const { return series_; }

private:
    int degree_, j_max_, k_max_;
    TruncSeries series_;
    std::map<int, PolyZZ> p_table_;
    std::map<std::pair<int, int>, PolyZ> q_table_;
};

// Local residue identity of Lemma-level exactness: as rational functions in
// (alpha, t, u) with beta = 1/alpha and q = u^2,
//   (1 - q^{-1}) g3+(alpha t, t/alpha, q^{-1}; q)
//     = (1 - t^2)^{-1} (1 - alpha^2 t^2)^{-1} (1 - alpha^{-2} t^2)^{-1}.
// drop_prefactor perturbs the left side (sensitivity control).
bool residue_factor_check(bool drop_prefactor = false);

// Uniqueness property: for each i, (1 - z_i) * g with z_j = 0 for all j
// adjacent to i is independent of z_i (zero z_i-derivative), exactly.
bool cg_uniqueness_property(int i);

}  // namespace mdsforge
