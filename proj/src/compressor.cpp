#include "ccm/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ccm {

int64_t CompressedLibrary::total_units() const {
    return std::accumulate(comp_units.begin(), comp_units.end(), int64_t{0});
}

std::vector<FileId> CompressedLibrary::i_files() const {
    std::vector<FileId> v;
    for (int f = 1; f <= m(); ++f)
        if (is_i(f)) v.push_back(f);
    return v;
}

std::vector<FileId> CompressedLibrary::p_files() const {
    std::vector<FileId> v;
    for (int f = 1; f <= m(); ++f)
        if (!is_i(f)) v.push_back(f);
    return v;
}

CompressedLibrary CompressedLibrary::identity(const GroupedLibrary& lib) {
    CompressedLibrary c;
    c.is_ifile.assign(lib.m(), true);
    c.reference.assign(lib.m(), 0);
    c.comp_units.assign(lib.m(), lib.file_units());
    c.delta_used = 0.0;
    return c;
}

void CompressedLibrary::write_manifest(std::ostream& os) const {
    for (int f = 1; f <= m(); ++f)
        os << f << ' ' << (is_i(f) ? 'I' : 'P') << ' ' << ref(f) << ' ' << units(f) << '\n';
}

double aggregate_popularity(const GroupedLibrary& lib, int n, double delta_thresh,
                            const std::vector<FileId>& active_set, FileId f) {
    if (n < 1) throw std::invalid_argument("aggregate_popularity: n must be >= 1");
    const auto ensemble = lib.delta_ensemble(f, delta_thresh, active_set);
    double mass = 0.0;
    for (FileId g : ensemble) mass += lib.demand_q()[g - 1];
    return 1.0 - std::pow(1.0 - mass, n);
}

CompressedLibrary partition_library(const GroupedLibrary& lib, int n, double delta_thresh) {
    if (!(delta_thresh > 0.0 && delta_thresh <= 1.0))
        throw std::invalid_argument("partition_library: delta_thresh must be in (0, 1]");

    CompressedLibrary out;
    out.is_ifile.assign(lib.m(), false);
    out.reference.assign(lib.m(), 0);
    out.comp_units.assign(lib.m(), 0);
    out.delta_used = delta_thresh;

    std::vector<FileId> active = lib.all_files();
    while (!active.empty()) {
        FileId best = 0;
        double best_pop = -1.0;
        for (FileId f : active) {
            const double pop = aggregate_popularity(lib, n, delta_thresh, active, f);
            // Ties go to the lowest index; active is kept sorted.
            if (pop > best_pop + 1e-15) {
                best_pop = pop;
                best = f;
            }
        }
        const auto ensemble = lib.delta_ensemble(best, delta_thresh, active);
        out.is_ifile[best - 1] = true;
        out.comp_units[best - 1] = lib.file_units();
        for (FileId g : ensemble) {
            if (g == best) continue;
            out.reference[g - 1] = best;
            out.comp_units[g - 1] = lib.private_units();
        }
        std::vector<FileId> next;
        next.reserve(active.size());
        std::set_difference(active.begin(), active.end(), ensemble.begin(), ensemble.end(),
                            std::back_inserter(next));
        active = std::move(next);
    }
    return out;
}

std::vector<uint8_t> compressed_bits(const CompressedLibrary& clib, const BitLibrary& bits,
                                     const GroupedLibrary& lib, FileId f) {
    if (clib.is_i(f)) return bits.file_bits(f, lib);
    return bits.private_[f - 1];
}

}  // namespace ccm
