#include "ccm/placement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ccm/rng.hpp"

namespace ccm {

int64_t PacketizedLibrary::total_packets() const {
    return std::accumulate(packet_count.begin(), packet_count.end(), int64_t{0});
}

PacketizedLibrary packetize(const CompressedLibrary& clib, int64_t b_units) {
    if (b_units < 1) throw std::invalid_argument("packetize: b_units must be >= 1");
    PacketizedLibrary plib;
    plib.b_units = b_units;
    plib.packet_count.resize(static_cast<size_t>(clib.m()));
    for (int f = 1; f <= clib.m(); ++f) {
        const int64_t units = clib.units(f);
        if (units % b_units != 0)
            throw std::invalid_argument("packetize: b_units does not divide file " +
                                        std::to_string(f));
        plib.packet_count[f - 1] = units / b_units;
    }
    return plib;
}

DistributionReport validate_distribution(const std::vector<double>& p,
                                         const CompressedLibrary& clib, double memory) {
    DistributionReport rep;
    if (static_cast<int>(p.size()) != clib.m()) {
        rep.ok = false;
        rep.detail = "distribution has " + std::to_string(p.size()) + " entries, expected " +
                     std::to_string(clib.m());
        return rep;
    }
    const double cap = memory > 0.0 ? 1.0 / memory : std::numeric_limits<double>::infinity();
    for (int f = 1; f <= clib.m(); ++f) {
        const double v = p[f - 1];
        if (v < -1e-12 || v > cap + 1e-9) {
            rep.ok = false;
            rep.detail = "p_" + std::to_string(f) + " = " + std::to_string(v) +
                         " outside [0, 1/M]";
            return rep;
        }
    }
    double sum = 0.0;
    for (int f = 1; f <= clib.m(); ++f)
        sum += clib.is_i(f) ? p[f - 1] : clib.delta_used * p[f - 1];
    if (std::abs(sum - 1.0) > 1e-9) {
        rep.ok = false;
        rep.detail = "cache constraint sum = " + std::to_string(sum) + ", expected 1";
    }
    return rep;
}

std::vector<double> per_file_distribution(const CompressedLibrary& clib, double p_i, double p_p) {
    std::vector<double> p(static_cast<size_t>(clib.m()));
    for (int f = 1; f <= clib.m(); ++f) p[f - 1] = clib.is_i(f) ? p_i : p_p;
    return p;
}

CacheConfiguration::CacheConfiguration(int n, const PacketizedLibrary& plib) {
    masks_.resize(static_cast<size_t>(n));
    for (auto& per_file : masks_) {
        per_file.resize(static_cast<size_t>(plib.m()));
        for (int f = 1; f <= plib.m(); ++f)
            per_file[f - 1].assign(static_cast<size_t>(plib.count(f)), 0);
    }
}

int64_t CacheConfiguration::cached_units(int u, const PacketizedLibrary& plib) const {
    int64_t packets = 0;
    for (const auto& mask : masks_[static_cast<size_t>(u) - 1])
        packets += std::count(mask.begin(), mask.end(), uint8_t{1});
    return packets * plib.b_units;
}

void CacheConfiguration::dump(std::ostream& os) const {
    for (size_t u = 0; u < masks_.size(); ++u) {
        os << "u" << (u + 1) << ':';
        for (size_t f = 0; f < masks_[u].size(); ++f)
            for (size_t i = 0; i < masks_[u][f].size(); ++i)
                if (masks_[u][f][i]) os << ' ' << (f + 1) << ':' << (i + 1);
        os << '\n';
    }
}

CacheConfiguration fill_caches(const PacketizedLibrary& plib, const std::vector<double>& p,
                               double memory, int n, uint64_t seed) {
    if (static_cast<int>(p.size()) != plib.m())
        throw std::invalid_argument("fill_caches: distribution size mismatch");
    CacheConfiguration caches(n, plib);
    for (int u = 1; u <= n; ++u) {
        for (int f = 1; f <= plib.m(); ++f) {
            const int64_t total = plib.count(f);
            const double frac = p[f - 1] * memory;
            int64_t take = static_cast<int64_t>(
                std::floor(frac * static_cast<double>(total) + 1e-9));
            take = std::clamp<int64_t>(take, 0, total);
            if (take == 0) continue;
            // Partial Fisher-Yates over the packet indices.
            std::vector<int> idx(static_cast<size_t>(total));
            std::iota(idx.begin(), idx.end(), 1);
            auto rng = make_rng(derive_seed(seed, static_cast<uint64_t>(u),
                                            static_cast<uint64_t>(f)));
            for (int64_t i = 0; i < take; ++i) {
                std::uniform_int_distribution<int64_t> pick(i, total - 1);
                std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(pick(rng))]);
                caches.insert(u, f, idx[static_cast<size_t>(i)]);
            }
        }
    }
    return caches;
}

}  // namespace ccm
