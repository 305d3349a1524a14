#pragma once

#include <cstdint>
#include <vector>

#include "ccm/compressor.hpp"
#include "ccm/delivery.hpp"
#include "ccm/library.hpp"
#include "ccm/placement.hpp"

namespace ccm {

/// Coded multicast rate of one delivery instance: build the conflict graph,
/// greedy-color it, and normalize num_colors * b to the file size. Works for
/// both the inter-compressed library and the identity (correlation-unaware)
/// one.
double coded_multicast_rate(const Demand& demand, const CacheConfiguration& caches,
                            const CompressedLibrary& clib, const PacketizedLibrary& plib,
                            int64_t f_units);

/// Local caching with unicast delivery: every receiver is sent its own
/// uncached packets, no sharing, no coding.
double rate_lcu(const Demand& demand, const CacheConfiguration& caches,
                const PacketizedLibrary& plib, int64_t f_units);

/// Local caching with naive multicast: each packet needed by anyone is sent
/// once, uncoded (union over requesters per distinct file).
double rate_lcnm(const Demand& demand, const CacheConfiguration& caches,
                 const PacketizedLibrary& plib, int64_t f_units);

}  // namespace ccm
