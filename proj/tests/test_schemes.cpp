#include <doctest.h>

#include "ccm/rng.hpp"
#include "ccm/schemes.hpp"
#include "fixtures.hpp"

using namespace ccm;

namespace {

struct UnawareInstance {
    GroupedLibrary lib = fixtures::example_lib();
    CompressedLibrary clib = CompressedLibrary::identity(lib);
    PacketizedLibrary plib = packetize(clib, 2);
    CacheConfiguration caches{2, plib};

    UnawareInstance() {
        for (int f = 1; f <= 4; ++f) {
            caches.insert(1, f, 1);
            caches.insert(2, f, 2);
        }
    }
};

}  // namespace

TEST_CASE("rap-cm on the 4-file instance with distinct demands") {
    UnawareInstance in;
    int at_125 = 0;
    for (FileId f1 = 1; f1 <= 4; ++f1)
        for (FileId f2 = 1; f2 <= 4; ++f2) {
            const double r =
                coded_multicast_rate(Demand{{f1, f2}}, in.caches, in.clib, in.plib, 8);
            if (f1 != f2) {
                // One coded pair plus four solo packets.
                CHECK(r == doctest::Approx(1.25));
                ++at_125;
            } else {
                // Both receivers miss three packets of the same file: the two
                // shared misses are multicast once and the disjoint misses
                // form one coded pair, so three transmissions suffice.
                CHECK(r == doctest::Approx(0.75));
            }
        }
    CHECK(at_125 == 12);
}

TEST_CASE("unicast and naive multicast baselines") {
    UnawareInstance in;

    // Each receiver misses 3 of 4 packets of its request.
    CHECK(rate_lcu(Demand{{1, 2}}, in.caches, in.plib, 8) == doctest::Approx(1.5));
    CHECK(rate_lcnm(Demand{{1, 2}}, in.caches, in.plib, 8) == doctest::Approx(1.5));

    // Identical requests: the union collapses for naive multicast only.
    CHECK(rate_lcu(Demand{{3, 3}}, in.caches, in.plib, 8) == doctest::Approx(1.5));
    CHECK(rate_lcnm(Demand{{3, 3}}, in.caches, in.plib, 8) == doctest::Approx(1.0));

    // Single receiver: the two coincide.
    CHECK(rate_lcu(Demand{{4}}, in.caches, in.plib, 8) ==
          rate_lcnm(Demand{{4}}, in.caches, in.plib, 8));
}

TEST_CASE("zero and full memory endpoints") {
    const auto lib = GroupedLibrary::build(6, 1, 0.0, 4);
    const auto clib = CompressedLibrary::identity(lib);
    const auto plib = packetize(clib, 1);

    const auto empty = fill_caches(plib, std::vector<double>(6, 0.0), 0.0, 3, 1);
    CHECK(rate_lcu(Demand{{1, 2, 3}}, empty, plib, 4) == doctest::Approx(3.0));
    CHECK(rate_lcnm(Demand{{5, 5, 5}}, empty, plib, 4) == doctest::Approx(1.0));
    CHECK(coded_multicast_rate(Demand{{1, 2, 3}}, empty, clib, plib, 4) == doctest::Approx(3.0));

    const auto full = fill_caches(plib, std::vector<double>(6, 1.0 / 6.0), 6.0, 3, 1);
    CHECK(rate_lcu(Demand{{1, 2, 3}}, full, plib, 4) == doctest::Approx(0.0));
    CHECK(coded_multicast_rate(Demand{{1, 2, 3}}, full, clib, plib, 4) == doctest::Approx(0.0));
}

TEST_CASE("scheme ordering on random instances") {
    auto rng = make_rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 8;
        const int n = 2 + static_cast<int>(rng() % 3);
        const auto lib = GroupedLibrary::build(m, 2, 0.25, 16);
        const auto clib = CompressedLibrary::identity(lib);
        const auto plib = packetize(clib, 1);
        const double memory = 1.0 + static_cast<double>(rng() % 6);
        const auto caches =
            fill_caches(plib, std::vector<double>(m, 1.0 / m), memory, n, rng());
        Demand demand;
        for (int u = 0; u < n; ++u) demand.files.push_back(1 + static_cast<int>(rng() % m));

        const double coded = coded_multicast_rate(demand, caches, clib, plib, 16);
        const double naive = rate_lcnm(demand, caches, plib, 16);
        const double unicast = rate_lcu(demand, caches, plib, 16);
        CHECK(coded <= naive + 1e-12);
        CHECK(naive <= unicast + 1e-12);
    }
}
