#include "ccm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccm {

DistinctDemandPmf::DistinctDemandPmf(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("distinct_pmf: n, m must be >= 1");
    const int jmax = std::min(n, m);
    // DP over draws: after k draws with j distinct, the next draw repeats
    // with probability j/m and hits a fresh file with probability (m-j)/m.
    std::vector<long double> cur(static_cast<size_t>(jmax) + 1, 0.0L);
    cur[1] = 1.0L;
    for (int k = 2; k <= n; ++k) {
        std::vector<long double> next(cur.size(), 0.0L);
        for (int j = 1; j <= jmax; ++j) {
            if (cur[static_cast<size_t>(j)] == 0.0L) continue;
            next[static_cast<size_t>(j)] += cur[static_cast<size_t>(j)] * static_cast<long double>(j) / m;
            if (j + 1 <= jmax)
                next[static_cast<size_t>(j) + 1] +=
                    cur[static_cast<size_t>(j)] * static_cast<long double>(m - j) / m;
        }
        cur = std::move(next);
    }
    pmf_.resize(cur.size());
    for (size_t j = 0; j < cur.size(); ++j) pmf_[j] = static_cast<double>(cur[j]);
}

double DistinctDemandPmf::p_at_least(int ell) const {
    if (ell <= 1) return 1.0;
    double s = 0.0;
    for (int j = ell; j <= max_distinct(); ++j) s += pmf(j);
    return s;
}

double lower_bound(int n, int m, double memory, int64_t h_lib_units, int64_t f_units) {
    if (memory < 0.0) throw std::invalid_argument("lower_bound: memory must be >= 0");
    const DistinctDemandPmf pmf(n, m);
    const double h = static_cast<double>(h_lib_units);
    const double f = static_cast<double>(f_units);
    double best = 0.0;
    for (int ell = 1; ell <= std::min(n, m); ++ell) {
        const double positive = std::max(h - ell * memory * f, 0.0);
        const double term = pmf.p_at_least(ell) * positive / (std::floor(m / static_cast<double>(ell)) * f);
        best = std::max(best, term);
    }
    return best;
}

namespace {
// pow with the 0^0 := 1 convention, so pM = 0 and M = 0 are well-defined.
double pow0(double base, int exp) {
    if (exp == 0) return 1.0;
    return std::pow(base, exp);
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}
}  // namespace

double lambda_ell(double p, double memory, int n, int ell) {
    const double pm = p * memory;
    if (pm < -1e-12 || pm > 1.0 + 1e-12)
        throw std::invalid_argument("lambda_ell: pM must be in [0, 1]");
    if (ell < 1 || ell > n) throw std::invalid_argument("lambda_ell: ell out of range");
    const double x = std::clamp(pm, 0.0, 1.0);
    return pow0(x, ell - 1) * pow0(1.0 - x, n - ell + 1);
}

double psi(double delta, double p_i, double p_p, double memory, int n) {
    double total = 0.0;
    for (int ell = 1; ell <= n; ++ell) {
        double term = lambda_ell(p_i, memory, n, ell);
        if (delta > 0.0) term += delta * lambda_ell(p_p, memory, n, ell);
        total += binomial(n, ell) * term;
    }
    return total;
}

double m_bar(int m, int n) {
    return m * (1.0 - std::pow(1.0 - 1.0 / m, n));
}

namespace {
// Golden-section minimization of a unimodal-ish 1-D slice; used only to
// polish the best grid point, the grid guards against local minima.
template <typename Fn>
double golden_section(Fn fn, double lo, double hi, int iters = 80) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = fn(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = fn(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}
}  // namespace

PlacementOptimum optimize_distribution_uniform(int n, int m, double memory, double delta,
                                               int kappa, bool want_trace) {
    if (kappa < 1) throw std::invalid_argument("optimize_distribution: kappa must be >= 1");
    if (memory < 0.0 || memory > m)
        throw std::invalid_argument("optimize_distribution: memory must be in [0, m]");

    PlacementOptimum opt;
    const double mbar = m_bar(m, n);
    const double target = static_cast<double>(kappa) / m;
    const double p_cap = memory > 0.0 ? 1.0 / memory : std::numeric_limits<double>::infinity();

    if (kappa == 1) {
        // Constraint degenerates to p_I = 1/m; no delta term.
        opt.p_i = 1.0 / m;
        opt.p_p = 0.0;
        opt.objective = std::min(psi(0.0, opt.p_i, 0.0, memory, n), mbar);
        return opt;
    }

    // Memory covers the compressed library: caching everything is feasible
    // and optimal even though the equality constraint cannot hold.
    if ((1.0 + delta * (kappa - 1)) * p_cap <= target + 1e-12) {
        opt.p_i = p_cap;
        opt.p_p = p_cap;
        opt.saturated = true;
        opt.objective = 0.0;
        return opt;
    }

    const double coef = delta * (kappa - 1);
    double p_p_max = std::min(p_cap, target / coef);
    // p_I = target - coef*p_P must stay within [0, 1/M].
    double p_p_min = std::max(0.0, (target - p_cap) / coef);
    if (p_p_min > p_p_max + 1e-15) {
        opt.feasible = false;
        return opt;
    }
    p_p_max = std::max(p_p_min, p_p_max);

    auto objective = [&](double p_p) {
        const double p_i = std::clamp(target - coef * p_p, 0.0, p_cap);
        return psi(delta, p_i, p_p, memory, n);
    };

    const int grid = 10000;
    double best_pp = p_p_min, best_val = objective(p_p_min);
    if (want_trace) opt.trace.emplace_back(p_p_min, best_val);
    for (int i = 1; i <= grid; ++i) {
        const double p_p = p_p_min + (p_p_max - p_p_min) * static_cast<double>(i) / grid;
        const double v = objective(p_p);
        if (want_trace) opt.trace.emplace_back(p_p, v);
        if (v < best_val) {
            best_val = v;
            best_pp = p_p;
        }
    }
    const double step = (p_p_max - p_p_min) / grid;
    if (step > 0.0) {
        const double lo = std::max(p_p_min, best_pp - step);
        const double hi = std::min(p_p_max, best_pp + step);
        const double refined = golden_section(objective, lo, hi);
        if (objective(refined) < best_val) {
            best_pp = refined;
            best_val = objective(refined);
        }
    }
    opt.p_p = best_pp;
    opt.p_i = std::clamp(target - coef * best_pp, 0.0, p_cap);
    opt.objective = std::min(best_val, mbar);
    return opt;
}

double upper_bound(int n, int m, double memory, const GroupedLibrary& lib) {
    double best = m_bar(m, n);
    // Candidate correlation levels of the grouped model: its generating
    // delta (when groups are nontrivial) and the uncorrelated fallback.
    if (lib.group_size() > 1) {
        const double d = lib.delta();
        const int kappa = lib.kappa_at(d);
        const auto opt = optimize_distribution_uniform(n, m, memory, d, kappa);
        if (opt.feasible) best = std::min(best, opt.objective);
    }
    const auto fallback = optimize_distribution_uniform(n, m, memory, 0.0, 1);
    if (fallback.feasible) best = std::min(best, fallback.objective);
    return best;
}

}  // namespace ccm
