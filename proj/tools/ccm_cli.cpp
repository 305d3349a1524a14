#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ccm/bounds.hpp"
#include "ccm/compressor.hpp"
#include "ccm/delivery.hpp"
#include "ccm/harness.hpp"
#include "ccm/library.hpp"
#include "ccm/placement.hpp"
#include "ccm/schemes.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string sweep;
    int trials = -1;
    int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
    auto* c = cmd->add_option("--config", flags.config_path, "experiment config file");
    if (config_required) c->required();
    cmd->add_option("--out", flags.out_path, "output path");
    cmd->add_option("--seed", flags.seed, "master seed override");
    cmd->add_option("--trials", flags.trials, "trial count override");
    cmd->add_option("--sweep", flags.sweep, "memory sweep, start:step:stop or comma list");
}

ccm::ExperimentConfig make_config(const CommonFlags& flags) {
    ccm::ExperimentConfig cfg;
    if (!flags.config_path.empty()) cfg = ccm::ExperimentConfig::load(flags.config_path);
    if (flags.seed >= 0) cfg.master_seed = static_cast<uint64_t>(flags.seed);
    if (flags.trials >= 1) cfg.trials = flags.trials;
    if (!flags.sweep.empty()) cfg.sweep = ccm::ExperimentConfig::parse_sweep(flags.sweep);
    if (cfg.sweep.empty()) {
        const double step = std::max(1.0, cfg.m / 50.0);
        for (double v = 0.0; v <= cfg.m + 1e-9; v += step) cfg.sweep.push_back(v);
    }
    return cfg;
}

// Examples walkthrough: m=4 library with two correlated pairs, n=2, M=1,
// packet length F/4, and the reference cache configuration.
int run_demo() {
    using namespace ccm;
    const auto lib = GroupedLibrary::build(4, 2, 0.25, 8);

    // Partition with files 2 and 4 as the references (any choice within a
    // group is popularity-equivalent here).
    CompressedLibrary clib;
    clib.is_ifile = {false, true, false, true};
    clib.reference = {2, 0, 4, 0};
    clib.comp_units = {lib.private_units(), lib.file_units(), lib.private_units(),
                       lib.file_units()};
    clib.delta_used = 0.25;

    const auto plib = packetize(clib, lib.file_units() / 4);
    const double memory = 1.0;
    CacheConfiguration caches(2, plib);
    caches.insert(1, 1, 1); caches.insert(1, 2, 1); caches.insert(1, 3, 1); caches.insert(1, 4, 1);
    caches.insert(2, 1, 1); caches.insert(2, 2, 2); caches.insert(2, 3, 1); caches.insert(2, 4, 2);

    std::cout << "library: m=4, groups {1,2} {3,4}, H(W_f)=F, H(W_f|W_f')=F/4\n";
    std::cout << "compressed library: I-files {2,4}, P-files {1,3} (one packet each)\n";
    std::cout << "cache configuration (file:packet):\n";
    caches.dump(std::cout);

    const Demand demand{{1, 2}};
    const auto graph = ConflictGraph::build(demand, caches, clib, plib);
    const auto coloring = greedy_color(graph);
    const auto bits = realize_bits(lib, 7);
    const PacketStore store(clib, plib, bits, lib);
    const auto codeword = encode(graph, coloring, store);

    std::cout << "demand (1,2): " << coloring.num_colors << " coded transmissions:";
    for (const auto& cls : codeword.classes) {
        std::cout << ' ';
        for (size_t i = 0; i < cls.packets.size(); ++i)
            std::cout << (i ? "^" : "") << 'W' << cls.packets[i].file << cls.packets[i].index;
    }
    std::cout << "\ncomp-cacm rate " << codeword.rate(lib.file_units()) << "\n";

    for (int u = 1; u <= 2; ++u) {
        const auto decoded = decode(u, demand.of(u), codeword, caches, clib, plib, store, lib);
        if (decoded != bits.file_bits(demand.of(u), lib)) {
            std::cerr << "demo: decode mismatch at receiver " << u << "\n";
            return 1;
        }
    }
    std::cout << "both receivers decoded their files bit-exactly\n";

    // Correlation-unaware counterpart: every file kept at entropy F, one
    // of four packets of each file cached per receiver.
    const auto clib_u = CompressedLibrary::identity(lib);
    const auto plib_u = packetize(clib_u, lib.file_units() / 4);
    CacheConfiguration caches_u(2, plib_u);
    for (int f = 1; f <= 4; ++f) {
        caches_u.insert(1, f, 1);
        caches_u.insert(2, f, 2);
    }
    const double rap = coded_multicast_rate(demand, caches_u, clib_u, plib_u, lib.file_units());
    std::cout << "rap-cm rate " << rap << "\n";
    (void)memory;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlation-aware coded caching simulator"};
    app.require_subcommand(1);

    CommonFlags gen_flags, sim_flags, bounds_flags;
    std::string plot_in, plot_out, gen_manifest;

    auto* gen = app.add_subcommand("gen", "write a config (and optional library manifest)");
    add_common(gen, gen_flags, false);
    gen->add_option("--manifest", gen_manifest, "also write the compressed-library manifest");

    auto* sim = app.add_subcommand("simulate", "run the Monte-Carlo sweep and emit CSV");
    add_common(sim, sim_flags, true);

    auto* bnd = app.add_subcommand("bounds", "emit analytic bound curves as CSV");
    add_common(bnd, bounds_flags, true);

    auto* plt = app.add_subcommand("plot", "render a results CSV as SVG");
    plt->add_option("--in", plot_in, "input CSV")->required();
    plt->add_option("--out", plot_out, "output SVG")->required();

    app.add_subcommand("demo", "walk through the 4-file example end to end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (gen->parsed()) {
            const auto cfg = make_config(gen_flags);
            cfg.validate();
            const std::string out = gen_flags.out_path.empty() ? "experiment.cfg" : gen_flags.out_path;
            cfg.save(out);
            if (!gen_manifest.empty()) {
                const auto lib =
                    ccm::GroupedLibrary::build(cfg.m, cfg.kappa, cfg.delta, cfg.file_units);
                const auto clib = cfg.kappa > 1
                                      ? ccm::partition_library(lib, cfg.n, cfg.delta)
                                      : ccm::CompressedLibrary::identity(lib);
                std::ofstream mf(gen_manifest);
                if (!mf) throw std::runtime_error("cannot write " + gen_manifest);
                clib.write_manifest(mf);
            }
            std::cout << "wrote " << out << "\n";
        } else if (sim->parsed()) {
            const auto cfg = make_config(sim_flags);
            const auto table = ccm::run_experiment(cfg);
            const std::string out = sim_flags.out_path.empty() ? "results.csv" : sim_flags.out_path;
            ccm::emit_csv(table, out);
            std::cout << "wrote " << out << "\n";
        } else if (bnd->parsed()) {
            const auto cfg = make_config(bounds_flags);
            const auto table = ccm::bound_curves(cfg);
            const std::string out =
                bounds_flags.out_path.empty() ? "bounds.csv" : bounds_flags.out_path;
            ccm::emit_csv(table, out);
            std::cout << "wrote " << out << "\n";
        } else if (plt->parsed()) {
            ccm::plot_svg(ccm::load_csv(plot_in), plot_out);
            std::cout << "wrote " << plot_out << "\n";
        } else {
            return run_demo();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
