#include "ccm/delivery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ccm/rng.hpp"

namespace ccm {

std::vector<PacketId> required_packets(int u, FileId f_u, const CompressedLibrary& clib,
                                       const PacketizedLibrary& plib,
                                       const CacheConfiguration& caches) {
    std::vector<PacketId> out;
    auto add_uncached = [&](FileId f) {
        for (int i = 1; i <= plib.count(f); ++i)
            if (!caches.cached(u, f, i)) out.push_back({f, i});
    };
    add_uncached(f_u);
    if (!clib.is_i(f_u)) add_uncached(clib.ref(f_u));
    std::sort(out.begin(), out.end());
    return out;
}

ConflictGraph ConflictGraph::build(const Demand& demand, const CacheConfiguration& caches,
                                   const CompressedLibrary& clib,
                                   const PacketizedLibrary& plib) {
    ConflictGraph g;
    for (int u = 1; u <= demand.receivers(); ++u)
        for (const PacketId& p : required_packets(u, demand.of(u), clib, plib, caches))
            g.vertices_.push_back({p, u});

    const size_t n = g.vertices_.size();
    g.words_ = (n + 63) / 64;
    g.adj_.assign(n * g.words_, 0);
    g.degree_.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        const auto& vi = g.vertices_[i];
        for (size_t j = i + 1; j < n; ++j) {
            const auto& vj = g.vertices_[j];
            if (vi.packet == vj.packet) continue;
            if (!caches.cached(vj.receiver, vi.packet) || !caches.cached(vi.receiver, vj.packet)) {
                g.adj_[i * g.words_ + (j >> 6)] |= uint64_t{1} << (j & 63);
                g.adj_[j * g.words_ + (i >> 6)] |= uint64_t{1} << (i & 63);
                ++g.degree_[i];
                ++g.degree_[j];
            }
        }
    }
    return g;
}

void ConflictGraph::dump(std::ostream& os) const {
    for (int i = 0; i < size(); ++i) {
        const auto& v = vertex(i);
        os << 'v' << i << " pkt " << v.packet.file << ':' << v.packet.index << " u"
           << v.receiver << '\n';
    }
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (conflicts(i, j)) os << 'e' << ' ' << i << ' ' << j << '\n';
}

Coloring greedy_color(const ConflictGraph& graph, ColoringPolicy policy, uint64_t seed) {
    const int n = graph.size();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    if (policy == ColoringPolicy::kRandomOrder) {
        auto rng = make_rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
    } else {
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (graph.degree(a) != graph.degree(b)) return graph.degree(a) > graph.degree(b);
            const auto& va = graph.vertex(a);
            const auto& vb = graph.vertex(b);
            if (va.packet != vb.packet) return va.packet < vb.packet;
            return va.receiver < vb.receiver;
        });
    }

    Coloring c;
    c.color.assign(static_cast<size_t>(n), -1);
    const size_t words = graph.row_words();
    std::vector<std::vector<uint64_t>> members;  // per color, vertex bitset
    for (int v : order) {
        int chosen = -1;
        for (size_t col = 0; col < members.size(); ++col) {
            bool clash = false;
            for (size_t w = 0; w < words; ++w) {
                if (members[col][w] & graph.adj_word(v, w)) {
                    clash = true;
                    break;
                }
            }
            if (!clash) {
                chosen = static_cast<int>(col);
                break;
            }
        }
        if (chosen < 0) {
            chosen = static_cast<int>(members.size());
            members.emplace_back(words, 0);
        }
        members[static_cast<size_t>(chosen)][static_cast<size_t>(v) >> 6] |=
            uint64_t{1} << (v & 63);
        c.color[static_cast<size_t>(v)] = chosen;
    }
    c.num_colors = static_cast<int>(members.size());
    return c;
}

bool is_proper(const ConflictGraph& graph, const Coloring& coloring) {
    for (int i = 0; i < graph.size(); ++i)
        for (int j = i + 1; j < graph.size(); ++j)
            if (coloring.color[static_cast<size_t>(i)] == coloring.color[static_cast<size_t>(j)] &&
                graph.conflicts(i, j))
                return false;
    return true;
}

PacketStore::PacketStore(const CompressedLibrary& clib, const PacketizedLibrary& plib,
                         const BitLibrary& bits, const GroupedLibrary& lib)
    : b_units_(plib.b_units) {
    comp_bits_.resize(static_cast<size_t>(clib.m()));
    for (int f = 1; f <= clib.m(); ++f)
        comp_bits_[f - 1] = compressed_bits(clib, bits, lib, f);
}

std::vector<uint8_t> PacketStore::payload(const PacketId& id) const {
    const auto& file = comp_bits_[static_cast<size_t>(id.file) - 1];
    const size_t begin = static_cast<size_t>((id.index - 1) * b_units_);
    return {file.begin() + static_cast<ptrdiff_t>(begin),
            file.begin() + static_cast<ptrdiff_t>(begin + static_cast<size_t>(b_units_))};
}

MulticastCodeword encode(const ConflictGraph& graph, const Coloring& coloring,
                         const PacketStore& store) {
    if (!is_proper(graph, coloring)) throw std::invalid_argument("encode: improper coloring");
    MulticastCodeword cw;
    cw.b_units = store.b_units();
    cw.classes.resize(static_cast<size_t>(coloring.num_colors));
    for (int v = 0; v < graph.size(); ++v) {
        auto& cls = cw.classes[static_cast<size_t>(coloring.color[static_cast<size_t>(v)])];
        cls.packets.push_back(graph.vertex(v).packet);
    }
    for (auto& cls : cw.classes) {
        std::sort(cls.packets.begin(), cls.packets.end());
        cls.packets.erase(std::unique(cls.packets.begin(), cls.packets.end()), cls.packets.end());
        cls.payload.assign(static_cast<size_t>(cw.b_units), 0);
        for (const PacketId& p : cls.packets) {
            const auto bits = store.payload(p);
            for (size_t i = 0; i < bits.size(); ++i) cls.payload[i] ^= bits[i];
        }
    }
    return cw;
}

std::vector<uint8_t> decode(int u, FileId f_u, const MulticastCodeword& codeword,
                            const CacheConfiguration& caches, const CompressedLibrary& clib,
                            const PacketizedLibrary& plib, const PacketStore& store,
                            const GroupedLibrary& lib) {
    const auto needed = required_packets(u, f_u, clib, plib, caches);
    std::map<PacketId, std::vector<uint8_t>> recovered;
    for (const PacketId& want : needed) {
        bool found = false;
        for (const auto& cls : codeword.classes) {
            if (!std::binary_search(cls.packets.begin(), cls.packets.end(), want)) continue;
            // The same packet can sit in several classes when other receivers
            // also miss it; only a class whose remaining packets are all in
            // this receiver's cache is usable as side information.
            const bool usable =
                std::all_of(cls.packets.begin(), cls.packets.end(), [&](const PacketId& other) {
                    return other == want || caches.cached(u, other);
                });
            if (!usable) continue;
            std::vector<uint8_t> bits = cls.payload;
            for (const PacketId& other : cls.packets) {
                if (other == want) continue;
                const auto side = store.payload(other);
                for (size_t i = 0; i < bits.size(); ++i) bits[i] ^= side[i];
            }
            recovered[want] = std::move(bits);
            found = true;
            break;
        }
        if (!found) throw std::runtime_error("decode: required packet missing from codeword");
    }

    auto assemble = [&](FileId f) {
        std::vector<uint8_t> bits;
        bits.reserve(static_cast<size_t>(clib.units(f)));
        for (int i = 1; i <= plib.count(f); ++i) {
            const PacketId id{f, i};
            if (caches.cached(u, id)) {
                const auto p = store.payload(id);
                bits.insert(bits.end(), p.begin(), p.end());
            } else {
                const auto& p = recovered.at(id);
                bits.insert(bits.end(), p.begin(), p.end());
            }
        }
        return bits;
    };

    if (clib.is_i(f_u)) return assemble(f_u);
    // P-file: original bits are the reference's shared prefix followed by
    // this file's private segment (its compressed form).
    const auto ref_bits = assemble(clib.ref(f_u));
    std::vector<uint8_t> out(ref_bits.begin(),
                             ref_bits.begin() + static_cast<ptrdiff_t>(lib.shared_units()));
    const auto own = assemble(f_u);
    out.insert(out.end(), own.begin(), own.end());
    return out;
}

}  // namespace ccm
