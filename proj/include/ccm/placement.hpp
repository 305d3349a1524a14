#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ccm/compressor.hpp"
#include "ccm/library.hpp"

namespace ccm {

struct PacketId {
    FileId file = 0;
    int index = 0;  // 1-based within the file

    friend auto operator<=>(const PacketId&, const PacketId&) = default;
};

/// The compressed library split into equal-length packets of b_units each.
struct PacketizedLibrary {
    int64_t b_units = 0;
    std::vector<int64_t> packet_count;  // index f-1

    int m() const { return static_cast<int>(packet_count.size()); }
    int64_t count(FileId f) const { return packet_count[f - 1]; }
    int64_t total_packets() const;
};

/// Splits every compressed file into comp_units(f) / b_units packets.
/// Throws std::invalid_argument naming the first file whose size b_units
/// does not divide.
PacketizedLibrary packetize(const CompressedLibrary& clib, int64_t b_units);

struct DistributionReport {
    bool ok = true;
    std::string detail;  // empty when ok
};

/// Checks the per-file range 0 <= p_f <= 1/M and the cache constraint
///   sum_{f in F_I} p_f + delta * sum_{f in F_P} p_f = 1  (within 1e-9).
/// p is indexed f-1.
DistributionReport validate_distribution(const std::vector<double>& p,
                                         const CompressedLibrary& clib, double memory);

/// Expands a per-role optimum (p_I for I-files, p_P for P-files) into a
/// per-file vector.
std::vector<double> per_file_distribution(const CompressedLibrary& clib, double p_i, double p_p);

/// Per-receiver cached packet sets, stored as one membership mask per file.
class CacheConfiguration {
public:
    CacheConfiguration(int n, const PacketizedLibrary& plib);

    int receivers() const { return static_cast<int>(masks_.size()); }
    bool cached(int u, FileId f, int index) const {
        return masks_[static_cast<size_t>(u) - 1][static_cast<size_t>(f) - 1]
                     [static_cast<size_t>(index) - 1] != 0;
    }
    bool cached(int u, const PacketId& p) const { return cached(u, p.file, p.index); }
    void insert(int u, FileId f, int index) {
        masks_[static_cast<size_t>(u) - 1][static_cast<size_t>(f) - 1]
              [static_cast<size_t>(index) - 1] = 1;
    }
    /// Cached bit-units at receiver u.
    int64_t cached_units(int u, const PacketizedLibrary& plib) const;

    /// Per receiver, sorted "file:packet" tokens, one receiver per line.
    void dump(std::ostream& os) const;

private:
    // masks_[u-1][f-1][i-1] in {0,1}
    std::vector<std::vector<std::vector<uint8_t>>> masks_;
};

/// Random fractional placement: each receiver independently caches
/// floor(p_f * M * packet_count(f)) packets of every file, selected
/// uniformly without replacement from a substream keyed by
/// (seed, receiver, file). Deterministic and order-independent.
CacheConfiguration fill_caches(const PacketizedLibrary& plib, const std::vector<double>& p,
                               double memory, int n, uint64_t seed);

}  // namespace ccm
