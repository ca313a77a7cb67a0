#pragma once

#include <map>
#include <tuple>

#include "mdsforge/multirat.hpp"

namespace mdsforge {

// Truncated power series of a rational function about z = 0: exact Taylor
// coefficients up to total degree D, each a UPoly in u.
class TruncSeries {
public:
    using Key = std::tuple<int, int, int>;  // (k1, k2, j)

    explicit TruncSeries(int degree_bound = 0) : bound_(degree_bound) {}

    int degree_bound() const { return bound_; }

    const UPoly& coeff(int k1, int k2, int j) const {
        static const UPoly zero;
        if (k1 < 0 || k2 < 0 || j < 0) return zero;
        if (k1 + k2 + j > bound_) throw std::out_of_range("expand further");
        auto it = coeffs_.find({k1, k2, j});
        return it == coeffs_.end() ? zero : it->second;
    }
    void set_coeff(int k1, int k2, int j, UPoly c) {
        if (k1 + k2 + j > bound_) throw std::out_of_range("coefficient beyond degree bound");
        if (c.is_zero()) return;
        coeffs_[{k1, k2, j}] = std::move(c);
    }
    const std::map<Key, UPoly>& coeffs() const { return coeffs_; }

    TruncSeries restricted(int smaller_bound) const {
        TruncSeries r(smaller_bound);
        for (const auto& [k, c] : coeffs_) {
            auto [k1, k2, j] = k;
            if (k1 + k2 + j <= smaller_bound) r.coeffs_[k] = c;
        }
        return r;
    }

    bool operator==(const TruncSeries& o) const { return bound_ == o.bound_ && coeffs_ == o.coeffs_; }

private:
    int bound_;
    std::map<Key, UPoly> coeffs_;
};

// Exact Taylor expansion of rf about z = 0 up to total degree D.
// Requires the denominator's constant z-term to be a unit (nonzero rational,
// u-degree 0); otherwise throws "not expandable at origin".
TruncSeries series_expand(const MultiRat& rf, int D);

// Check: series * den == num up to total degree D (implementation-independent
// consistency oracle).
bool series_times_denominator_matches(const TruncSeries& s, const MultiRat& rf);

// Coefficients of rf as a power series in a subset of the z-variables, with
// coefficients exact rational functions in the remaining variables.
// vars: list of variable indices (subset of {0,1,2}) to expand in.
// Returns map from exponent tuple (aligned with vars) to MultiRat coefficient.
std::map<std::vector<int>, MultiRat> series_in_vars(const MultiRat& rf,
                                                    const std::vector<int>& vars, int D);

}  // namespace mdsforge
