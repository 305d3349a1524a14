#pragma once

#include <cstdint>
#include <vector>

#include "ccm/library.hpp"

namespace ccm {

/// Distribution of the number of distinct files among n i.i.d. uniform
/// requests from m files. pmf[j] for j in [1, min(n, m)];
/// p_at_least(ell) = P(#distinct >= ell).
class DistinctDemandPmf {
public:
    DistinctDemandPmf(int n, int m);

    double pmf(int j) const { return pmf_.at(static_cast<size_t>(j)); }
    double p_at_least(int ell) const;
    int max_distinct() const { return static_cast<int>(pmf_.size()) - 1; }

private:
    std::vector<double> pmf_;  // index 0 unused
};

/// Cut-set lower bound on the rate-memory function for uniform demands:
///   max over ell in [1, min(n,m)] of
///     P_ell * [H_lib - ell*M*F]^+ / (floor(m/ell) * F)
double lower_bound(int n, int m, double memory, int64_t h_lib_units, int64_t f_units);

/// lambda_ell(p) = (pM)^(ell-1) * (1 - pM)^(n - ell + 1), with 0^0 := 1.
double lambda_ell(double p, double memory, int n, int ell);

/// psi(delta, p_I, p_P, M) = sum_{ell=1}^n C(n,ell) (lambda_ell(p_I) + delta*lambda_ell(p_P))
double psi(double delta, double p_i, double p_p, double memory, int n);

/// Expected number of distinct files in a uniform demand: m(1 - (1 - 1/m)^n).
double m_bar(int m, int n);

/// Optimized caching distribution for a uniform-demand grouped library.
struct PlacementOptimum {
    double p_i = 0.0;
    double p_p = 0.0;
    double objective = 0.0;  // min{psi(p_i*, p_p*), m_bar}
    bool feasible = true;
    bool saturated = false;  // memory covers the whole compressed library
    std::vector<std::pair<double, double>> trace;  // (p_p, psi) when requested
};

/// Minimizes min{psi, m_bar} over the constraint segment
///   p_I + delta*(kappa-1)*p_P = kappa/m,  0 <= p_I, p_P <= 1/M
/// by a dense grid plus golden-section refinement. When the memory exceeds
/// the compressed library size the constraint is unsatisfiable with
/// p <= 1/M; everything fits, so p_I = p_P = 1/M is returned (rate 0).
PlacementOptimum optimize_distribution_uniform(int n, int m, double memory, double delta,
                                               int kappa, bool want_trace = false);

/// Rate-memory upper bound: infimum over the library's candidate
/// correlation levels (its generating delta, plus the uncorrelated kappa=1
/// fallback) of min{psi(delta, p_I*, p_P*, M), m_bar}.
double upper_bound(int n, int m, double memory, const GroupedLibrary& lib);

}  // namespace ccm
