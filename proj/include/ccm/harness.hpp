#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccm/library.hpp"

namespace ccm {

struct ExperimentConfig {
    int n = 10;
    int m = 100;
    int kappa = 2;
    double delta = 0.2;
    int64_t file_units = 200;
    int64_t packets_per_ifile = 200;  // L; packet length b = file_units / L
    std::vector<double> sweep;        // M values; default 0..m step m/50
    std::vector<std::string> schemes = {"comp-cacm", "rap-cm", "lc-u", "lc-nm"};
    bool lower_bound = true;
    bool upper_bound = true;
    int trials = 500;
    uint64_t master_seed = 1;
    std::string q_mode = "uniform";
    bool verify_decode = true;  // bit-exact decode check on every trial

    int64_t b_units() const { return file_units / packets_per_ifile; }

    /// Throws std::invalid_argument with a field-level diagnostic.
    void validate() const;

    /// Flat key=value file; '#' starts a comment. Unknown keys are errors.
    static ExperimentConfig load(const std::string& path);
    void save(const std::string& path) const;

    static std::vector<double> parse_sweep(const std::string& spec);  // "start:step:stop"
};

struct RateMemoryRow {
    double memory = 0.0;
    std::string series;
    double mean_rate = 0.0;
    double stderr_rate = 0.0;
    int trials = 0;
};

struct RateMemoryTable {
    std::vector<RateMemoryRow> rows;
};

/// Runs the full Monte-Carlo sweep. Deterministic for a given config,
/// independent of the number of workers (override via CCM_WORKERS).
RateMemoryTable run_experiment(const ExperimentConfig& config);

/// Analytic bound curves only (no simulation).
RateMemoryTable bound_curves(const ExperimentConfig& config);

/// Header "M,series,mean_rate,stderr,trials"; rows sorted by (M, series);
/// values printed with 6 decimal places so re-runs are byte-identical.
void emit_csv(const RateMemoryTable& table, const std::string& path);

RateMemoryTable load_csv(const std::string& path);

/// Self-contained SVG: one polyline per series over M in [0, m], legend,
/// axis labels in file-size-normalized units.
void plot_svg(const RateMemoryTable& table, const std::string& path);

}  // namespace ccm
