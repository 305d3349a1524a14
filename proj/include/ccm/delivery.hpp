#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ccm/compressor.hpp"
#include "ccm/library.hpp"
#include "ccm/placement.hpp"

namespace ccm {

struct Demand {
    std::vector<FileId> files;  // files[u-1] = request of receiver u

    int receivers() const { return static_cast<int>(files.size()); }
    FileId of(int u) const { return files[static_cast<size_t>(u) - 1]; }
};

/// Packets receiver u must obtain over the multicast link to recover f_u:
/// the uncached packets of f_u's compressed file, plus (for a P-file) the
/// uncached packets of its reference I-file. Sorted ascending.
std::vector<PacketId> required_packets(int u, FileId f_u, const CompressedLibrary& clib,
                                       const PacketizedLibrary& plib,
                                       const CacheConfiguration& caches);

/// Index-coding conflict graph: one vertex per (required packet, receiver).
/// Two vertices conflict iff their packets differ and at least one packet
/// is missing from the other vertex's cache. Vertices carrying the same
/// packet never conflict, so a coloring may serve them with one transmission.
class ConflictGraph {
public:
    struct Vertex {
        PacketId packet;
        int receiver = 0;
    };

    static ConflictGraph build(const Demand& demand, const CacheConfiguration& caches,
                               const CompressedLibrary& clib, const PacketizedLibrary& plib);

    int size() const { return static_cast<int>(vertices_.size()); }
    const Vertex& vertex(int i) const { return vertices_[static_cast<size_t>(i)]; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    bool conflicts(int i, int j) const {
        return (adj_[static_cast<size_t>(i) * words_ + static_cast<size_t>(j >> 6)] >>
                (j & 63)) & 1u;
    }
    int degree(int i) const { return degree_[static_cast<size_t>(i)]; }
    size_t row_words() const { return words_; }
    uint64_t adj_word(int i, size_t w) const { return adj_[static_cast<size_t>(i) * words_ + w]; }

    void dump(std::ostream& os) const;

private:
    std::vector<Vertex> vertices_;
    std::vector<uint64_t> adj_;  // row-major bit matrix, words_ per row
    std::vector<int> degree_;
    size_t words_ = 0;
};

enum class ColoringPolicy {
    kLargestDegreeFirst,  // deterministic; ties by packet id then receiver
    kRandomOrder,         // seeded random vertex order
};

struct Coloring {
    std::vector<int> color;  // per vertex
    int num_colors = 0;
};

Coloring greedy_color(const ConflictGraph& graph, ColoringPolicy policy = ColoringPolicy::kLargestDegreeFirst,
                      uint64_t seed = 0);

bool is_proper(const ConflictGraph& graph, const Coloring& coloring);

/// Packet payload access for a (possibly compressed) packetized library.
class PacketStore {
public:
    PacketStore(const CompressedLibrary& clib, const PacketizedLibrary& plib,
                const BitLibrary& bits, const GroupedLibrary& lib);

    int64_t b_units() const { return b_units_; }
    /// Bits of packet (f, i); one byte per bit-unit.
    std::vector<uint8_t> payload(const PacketId& id) const;

private:
    std::vector<std::vector<uint8_t>> comp_bits_;  // per file
    int64_t b_units_ = 0;
};

/// One XOR-coded multicast transmission per color class.
struct MulticastCodeword {
    struct ColorClass {
        std::vector<PacketId> packets;  // distinct, sorted
        std::vector<uint8_t> payload;   // XOR of the member packets
    };
    std::vector<ColorClass> classes;
    int64_t b_units = 0;

    int64_t length_units() const { return static_cast<int64_t>(classes.size()) * b_units; }
    double rate(int64_t f_units) const {
        return static_cast<double>(length_units()) / static_cast<double>(f_units);
    }
};

/// Rejects improper colorings with std::invalid_argument.
MulticastCodeword encode(const ConflictGraph& graph, const Coloring& coloring,
                         const PacketStore& store);

/// Recovers receiver u's original file bits (exactly F units) from the
/// codeword plus its cache. Throws std::runtime_error if a side-information
/// packet needed to strip a color class is not cached (unreachable for a
/// proper coloring).
std::vector<uint8_t> decode(int u, FileId f_u, const MulticastCodeword& codeword,
                            const CacheConfiguration& caches, const CompressedLibrary& clib,
                            const PacketizedLibrary& plib, const PacketStore& store,
                            const GroupedLibrary& lib);

}  // namespace ccm
