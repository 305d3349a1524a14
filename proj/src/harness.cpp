#include "ccm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ccm/bounds.hpp"
#include "ccm/compressor.hpp"
#include "ccm/delivery.hpp"
#include "ccm/placement.hpp"
#include "ccm/rng.hpp"
#include "ccm/schemes.hpp"

namespace ccm {

namespace {

const std::set<std::string> kKnownSchemes = {"comp-cacm", "rap-cm", "lc-u", "lc-nm"};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int worker_count() {
    if (const char* env = std::getenv("CCM_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (m < 1) throw std::invalid_argument("config: m must be >= 1");
    if (kappa < 1 || m % kappa != 0)
        throw std::invalid_argument("config: kappa must be >= 1 and divide m");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (packets_per_ifile < 1 || file_units % packets_per_ifile != 0)
        throw std::invalid_argument("config: packets_per_ifile must divide file_units");
    if (kappa > 1) {
        const double du = delta * static_cast<double>(file_units);
        const auto delta_units = static_cast<int64_t>(std::llround(du));
        if (std::abs(du - static_cast<double>(delta_units)) > 1e-9)
            throw std::invalid_argument("config: delta * file_units must be an integer");
        if (delta_units % b_units() != 0)
            throw std::invalid_argument(
                "config: packet length must divide the P-file size delta*file_units");
    }
    for (double mem : sweep)
        if (mem < 0.0 || mem > m)
            throw std::invalid_argument("config: sweep values must lie in [0, m]");
    for (const auto& s : schemes)
        if (!kKnownSchemes.count(s))
            throw std::invalid_argument("config: unknown scheme '" + s + "'");
    if (q_mode != "uniform")
        throw std::invalid_argument("config: only q_mode=uniform is supported");
}

std::vector<double> ExperimentConfig::parse_sweep(const std::string& spec) {
    std::vector<double> out;
    const auto parts = split(spec, ':');
    if (parts.size() == 3) {
        const double start = std::stod(parts[0]);
        const double step = std::stod(parts[1]);
        const double stop = std::stod(parts[2]);
        if (step <= 0.0) throw std::invalid_argument("sweep: step must be > 0");
        for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
        return out;
    }
    for (const auto& tok : split(spec, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw std::invalid_argument("sweep: empty specification");
    return out;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    ExperimentConfig cfg;
    bool sweep_set = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "n") cfg.n = std::stoi(val);
        else if (key == "m") cfg.m = std::stoi(val);
        else if (key == "kappa") cfg.kappa = std::stoi(val);
        else if (key == "delta") cfg.delta = std::stod(val);
        else if (key == "file_units") cfg.file_units = std::stoll(val);
        else if (key == "packets_per_ifile") cfg.packets_per_ifile = std::stoll(val);
        else if (key == "sweep") { cfg.sweep = parse_sweep(val); sweep_set = true; }
        else if (key == "schemes") cfg.schemes = split(val, ',');
        else if (key == "bounds") {
            cfg.lower_bound = val.find("lower") != std::string::npos;
            cfg.upper_bound = val.find("upper") != std::string::npos;
        }
        else if (key == "trials") cfg.trials = std::stoi(val);
        else if (key == "seed") cfg.master_seed = std::stoull(val);
        else if (key == "q_mode") cfg.q_mode = val;
        else if (key == "verify") cfg.verify_decode = val != "0" && val != "false";
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (!sweep_set) {
        const double step = std::max(1.0, cfg.m / 50.0);
        for (double v = 0.0; v <= cfg.m + 1e-9; v += step) cfg.sweep.push_back(v);
    }
    return cfg;
}

void ExperimentConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("config: cannot write " + path);
    out << "n = " << n << "\nm = " << m << "\nkappa = " << kappa << "\ndelta = " << delta
        << "\nfile_units = " << file_units << "\npackets_per_ifile = " << packets_per_ifile
        << "\ntrials = " << trials << "\nseed = " << master_seed << "\nq_mode = " << q_mode
        << "\nverify = " << (verify_decode ? 1 : 0) << "\n";
    out << "schemes = ";
    for (size_t i = 0; i < schemes.size(); ++i) out << (i ? "," : "") << schemes[i];
    out << "\nbounds = ";
    if (lower_bound) out << "lower";
    if (lower_bound && upper_bound) out << ",";
    if (upper_bound) out << "upper";
    if (!lower_bound && !upper_bound) out << "none";
    out << "\nsweep = ";
    for (size_t i = 0; i < sweep.size(); ++i) out << (i ? "," : "") << sweep[i];
    out << "\n";
}

namespace {

struct TrialResult {
    std::map<std::string, double> rates;
};

struct PerMemorySetup {
    double memory = 0.0;
    std::vector<double> p_comp;  // per-file distribution for comp-cacm
    std::vector<double> p_unif;  // uniform 1/m for the baselines
};

Demand draw_demand(const GroupedLibrary& lib, int n, uint64_t seed) {
    Demand d;
    d.files.resize(static_cast<size_t>(n));
    auto rng = make_rng(seed);
    std::uniform_int_distribution<int> pick(1, lib.m());
    for (auto& f : d.files) f = pick(rng);
    return d;
}

}  // namespace

RateMemoryTable run_experiment(const ExperimentConfig& config) {
    config.validate();
    const GroupedLibrary lib =
        GroupedLibrary::build(config.m, config.kappa, config.delta, config.file_units);
    const CompressedLibrary clib_comp =
        config.kappa > 1 ? partition_library(lib, config.n, config.delta)
                         : CompressedLibrary::identity(lib);
    const CompressedLibrary clib_unif = CompressedLibrary::identity(lib);
    const PacketizedLibrary plib_comp = packetize(clib_comp, config.b_units());
    const PacketizedLibrary plib_unif = packetize(clib_unif, config.b_units());

    const bool want_comp = std::count(config.schemes.begin(), config.schemes.end(), "comp-cacm");
    const bool want_rap = std::count(config.schemes.begin(), config.schemes.end(), "rap-cm");
    const bool want_lcu = std::count(config.schemes.begin(), config.schemes.end(), "lc-u");
    const bool want_lcnm = std::count(config.schemes.begin(), config.schemes.end(), "lc-nm");

    std::vector<PerMemorySetup> setups;
    setups.reserve(config.sweep.size());
    for (double memory : config.sweep) {
        PerMemorySetup s;
        s.memory = memory;
        const auto opt = optimize_distribution_uniform(config.n, config.m, memory,
                                                       lib.group_size() > 1 ? lib.delta() : 0.0,
                                                       lib.group_size(), false);
        if (!opt.feasible)
            throw std::runtime_error("placement optimizer infeasible at M = " +
                                     std::to_string(memory));
        s.p_comp = per_file_distribution(clib_comp, opt.p_i, opt.p_p);
        s.p_unif.assign(static_cast<size_t>(config.m), 1.0 / config.m);
        setups.push_back(std::move(s));
    }

    // One task per (memory point, trial); results are written by index so
    // aggregation does not depend on worker scheduling.
    const size_t n_mem = setups.size();
    const size_t n_trials = static_cast<size_t>(config.trials);
    std::vector<TrialResult> results(n_mem * n_trials);

    auto run_trial = [&](size_t mi, size_t t) {
        const auto& setup = setups[mi];
        TrialResult res;
        const uint64_t lib_seed = derive_seed(config.master_seed, 101, mi, t);
        const uint64_t cache_seed = derive_seed(config.master_seed, 102, mi, t);
        const uint64_t demand_seed = derive_seed(config.master_seed, 103, mi, t);
        const Demand demand = draw_demand(lib, config.n, demand_seed);

        if (want_comp) {
            const auto caches =
                fill_caches(plib_comp, setup.p_comp, setup.memory, config.n, cache_seed);
            const auto graph = ConflictGraph::build(demand, caches, clib_comp, plib_comp);
            const auto coloring = greedy_color(graph);
            res.rates["comp-cacm"] = static_cast<double>(coloring.num_colors) *
                                     static_cast<double>(plib_comp.b_units) /
                                     static_cast<double>(config.file_units);
            if (config.verify_decode) {
                const BitLibrary bits = realize_bits(lib, lib_seed);
                const PacketStore store(clib_comp, plib_comp, bits, lib);
                const auto codeword = encode(graph, coloring, store);
                for (int u = 1; u <= config.n; ++u) {
                    const auto decoded = decode(u, demand.of(u), codeword, caches, clib_comp,
                                                plib_comp, store, lib);
                    if (decoded != bits.file_bits(demand.of(u), lib))
                        throw std::runtime_error(
                            "decode mismatch at (M index, trial) = (" + std::to_string(mi) +
                            ", " + std::to_string(t) + "), seed " +
                            std::to_string(config.master_seed));
                }
            }
        }
        if (want_rap || want_lcu || want_lcnm) {
            const auto caches =
                fill_caches(plib_unif, setup.p_unif, setup.memory, config.n, cache_seed);
            if (want_rap)
                res.rates["rap-cm"] =
                    coded_multicast_rate(demand, caches, clib_unif, plib_unif, config.file_units);
            if (want_lcu)
                res.rates["lc-u"] = rate_lcu(demand, caches, plib_unif, config.file_units);
            if (want_lcnm)
                res.rates["lc-nm"] = rate_lcnm(demand, caches, plib_unif, config.file_units);
        }
        results[mi * n_trials + t] = std::move(res);
    };

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const size_t total = n_mem * n_trials;
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            try {
                run_trial(i / n_trials, i % n_trials);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    const int workers = std::min<int>(worker_count(), static_cast<int>(total));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    RateMemoryTable table;
    for (size_t mi = 0; mi < n_mem; ++mi) {
        for (const auto& scheme : config.schemes) {
            double sum = 0.0, sumsq = 0.0;
            for (size_t t = 0; t < n_trials; ++t) {
                const double r = results[mi * n_trials + t].rates.at(scheme);
                sum += r;
                sumsq += r * r;
            }
            const double mean = sum / static_cast<double>(n_trials);
            double stderr_rate = 0.0;
            if (n_trials > 1) {
                const double var =
                    std::max(0.0, (sumsq - sum * mean) / static_cast<double>(n_trials - 1));
                stderr_rate = std::sqrt(var / static_cast<double>(n_trials));
            }
            table.rows.push_back({setups[mi].memory, scheme, mean, stderr_rate,
                                  static_cast<int>(n_trials)});
        }
    }
    const auto analytic = bound_curves(config);
    table.rows.insert(table.rows.end(), analytic.rows.begin(), analytic.rows.end());
    return table;
}

RateMemoryTable bound_curves(const ExperimentConfig& config) {
    config.validate();
    const GroupedLibrary lib =
        GroupedLibrary::build(config.m, config.kappa, config.delta, config.file_units);
    RateMemoryTable table;
    for (double memory : config.sweep) {
        if (config.lower_bound)
            table.rows.push_back({memory, "lower-bound",
                                  lower_bound(config.n, config.m, memory, lib.library_entropy(),
                                              lib.file_units()),
                                  0.0, 0});
        if (config.upper_bound)
            table.rows.push_back(
                {memory, "upper-bound", upper_bound(config.n, config.m, memory, lib), 0.0, 0});
    }
    return table;
}

void emit_csv(const RateMemoryTable& table, const std::string& path) {
    if (table.rows.empty()) throw std::invalid_argument("emit_csv: empty table");
    auto rows = table.rows;
    std::sort(rows.begin(), rows.end(), [](const RateMemoryRow& a, const RateMemoryRow& b) {
        if (a.memory != b.memory) return a.memory < b.memory;
        return a.series < b.series;
    });
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_csv: cannot write " + path);
    out << "M,series,mean_rate,stderr,trials\n";
    out << std::fixed << std::setprecision(6);
    for (const auto& r : rows)
        out << r.memory << ',' << r.series << ',' << r.mean_rate << ',' << r.stderr_rate << ','
            << r.trials << '\n';
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

RateMemoryTable load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);
    RateMemoryTable table;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        RateMemoryRow row;
        std::string tok;
        std::getline(ss, tok, ',');
        row.memory = std::stod(tok);
        std::getline(ss, row.series, ',');
        std::getline(ss, tok, ',');
        row.mean_rate = std::stod(tok);
        std::getline(ss, tok, ',');
        row.stderr_rate = std::stod(tok);
        std::getline(ss, tok, ',');
        row.trials = std::stoi(tok);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace ccm
