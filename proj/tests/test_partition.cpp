#include "doctest.h"

#include <map>
#include <stdexcept>

#include "seqlab/partition.hpp"
#include "seqlab/rng.hpp"

using namespace seqlab;

TEST_SUITE("partition") {

TEST_CASE("dyadic encode/decode on pinned values") {
    const auto scheme = dyadic_partition();
    CHECK(scheme.encode(1, 1) == 1);
    CHECK(scheme.encode(1, 2) == 3);
    CHECK(scheme.encode(2, 3) == 10);
    CHECK(scheme.decode(10) == BlockPos{2, 3});
    CHECK(scheme.decode(12) == BlockPos{3, 2});
}

TEST_CASE("block prefixes enumerate blocks in increasing order") {
    const auto scheme = dyadic_partition();
    CHECK(block_prefix(scheme, 1, 4) == std::vector<Index>{1, 3, 5, 7});
    CHECK(block_prefix(scheme, 3, 3) == std::vector<Index>{4, 12, 20});
    CHECK(block_prefix(scheme, 5, 0).empty());
    CHECK(block_prefix(cantor_partition(), 2, 0).empty());
}

TEST_CASE("round trips cover every index exactly once") {
    for (const auto& scheme : {dyadic_partition(), cantor_partition()}) {
        CAPTURE(scheme.name());
        for (Index n = 1; n <= 100'000; ++n) {
            const auto bp = scheme.decode(n);
            REQUIRE(bp.block >= 1);
            REQUIRE(bp.pos >= 1);
            REQUIRE(scheme.encode(bp.block, bp.pos) == n);
        }
    }
}

TEST_CASE("encode then decode is the identity on a grid") {
    for (const auto& scheme : {dyadic_partition(), cantor_partition()}) {
        for (Index i = 1; i <= 40; ++i)
            for (Index j = 1; j <= 40; ++j)
                REQUIRE(scheme.decode(scheme.encode(i, j)) == BlockPos{i, j});
    }
}

TEST_CASE("block enumerations are strictly increasing") {
    SplitMix rng(7);
    for (const auto& scheme : {dyadic_partition(), cantor_partition()}) {
        for (int t = 0; t < 2000; ++t) {
            const Index i = rng.range(1, 40);
            const Index j = rng.range(1, 100'000);
            REQUIRE(scheme.encode(i, j + 1) > scheme.encode(i, j));
        }
    }
}

TEST_CASE("blocks are disjoint up to a bound") {
    // every n <= N lands in exactly one (block, pos) cell and no cell repeats
    for (const auto& scheme : {dyadic_partition(), cantor_partition()}) {
        std::map<std::pair<Index, Index>, Index> seen;
        for (Index n = 1; n <= 20'000; ++n) {
            const auto bp = scheme.decode(n);
            const auto [it, inserted] = seen.insert({{bp.block, bp.pos}, n});
            REQUIRE(inserted);
        }
    }
}

TEST_CASE("invalid arguments are rejected") {
    const auto scheme = dyadic_partition();
    CHECK_THROWS_AS(scheme.encode(0, 1), std::domain_error);
    CHECK_THROWS_AS(scheme.encode(1, 0), std::domain_error);
    CHECK_THROWS_AS(scheme.decode(0), std::domain_error);
    CHECK_THROWS_AS(scheme.decode(-5), std::domain_error);
    CHECK_THROWS_AS(block_prefix(scheme, 1, -1), std::domain_error);
    CHECK_THROWS_AS(partition_by_name("triadic"), std::invalid_argument);
}

TEST_CASE("coordinate upper bounds dominate the exact encoding") {
    for (const auto& scheme : {dyadic_partition(), cantor_partition()}) {
        for (Index i = 1; i <= 12; ++i)
            for (Index j : {Index{1}, Index{7}, Index{1000}, Index{65536}}) {
                const double bound = scheme.coordinate_upper_bound(i, static_cast<double>(j));
                REQUIRE(bound >= static_cast<double>(scheme.encode(i, j)));
            }
    }
}

}  // TEST_SUITE
