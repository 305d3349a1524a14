#include "ccm/schemes.hpp"

#include <set>

namespace ccm {

double coded_multicast_rate(const Demand& demand, const CacheConfiguration& caches,
                            const CompressedLibrary& clib, const PacketizedLibrary& plib,
                            int64_t f_units) {
    const auto graph = ConflictGraph::build(demand, caches, clib, plib);
    const auto coloring = greedy_color(graph);
    return static_cast<double>(coloring.num_colors) * static_cast<double>(plib.b_units) /
           static_cast<double>(f_units);
}

double rate_lcu(const Demand& demand, const CacheConfiguration& caches,
                const PacketizedLibrary& plib, int64_t f_units) {
    int64_t packets = 0;
    for (int u = 1; u <= demand.receivers(); ++u) {
        const FileId f = demand.of(u);
        for (int i = 1; i <= plib.count(f); ++i)
            if (!caches.cached(u, f, i)) ++packets;
    }
    return static_cast<double>(packets) * static_cast<double>(plib.b_units) /
           static_cast<double>(f_units);
}

double rate_lcnm(const Demand& demand, const CacheConfiguration& caches,
                 const PacketizedLibrary& plib, int64_t f_units) {
    std::set<PacketId> needed;
    for (int u = 1; u <= demand.receivers(); ++u) {
        const FileId f = demand.of(u);
        for (int i = 1; i <= plib.count(f); ++i)
            if (!caches.cached(u, f, i)) needed.insert({f, i});
    }
    return static_cast<double>(needed.size()) * static_cast<double>(plib.b_units) /
           static_cast<double>(f_units);
}

}  // namespace ccm
