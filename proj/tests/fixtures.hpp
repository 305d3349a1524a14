#pragma once

// Shared 4-file fixture: two correlated pairs {1,2} and {3,4}, F = 8 units,
// conditional entropy F/4 within a pair, with files 2 and 4 as references
// (the mirror-image of what partition_library's lowest-index tie-break
// picks; either choice is popularity-equivalent).

#include "ccm/compressor.hpp"
#include "ccm/library.hpp"
#include "ccm/placement.hpp"

namespace fixtures {

inline ccm::GroupedLibrary example_lib() { return ccm::GroupedLibrary::build(4, 2, 0.25, 8); }

inline ccm::CompressedLibrary paper_partition(const ccm::GroupedLibrary& lib) {
    ccm::CompressedLibrary clib;
    clib.is_ifile = {false, true, false, true};
    clib.reference = {2, 0, 4, 0};
    clib.comp_units = {lib.private_units(), lib.file_units(), lib.private_units(),
                       lib.file_units()};
    clib.delta_used = 0.25;
    return clib;
}

// Reference cache configuration: receiver 1 holds {P1, W2:1, P3, W4:1},
// receiver 2 holds {P1, W2:2, P3, W4:2}.
inline ccm::CacheConfiguration fig_caches(const ccm::PacketizedLibrary& plib) {
    ccm::CacheConfiguration caches(2, plib);
    caches.insert(1, 1, 1); caches.insert(1, 2, 1); caches.insert(1, 3, 1); caches.insert(1, 4, 1);
    caches.insert(2, 1, 1); caches.insert(2, 2, 2); caches.insert(2, 3, 1); caches.insert(2, 4, 2);
    return caches;
}

}  // namespace fixtures
