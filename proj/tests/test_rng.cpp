#include <doctest.h>

#include <cmath>
#include <set>

#include "akucb/rng.hpp"

using namespace akucb;

TEST_CASE("streams are reproducible and independent of creation order") {
    Rng a(derive_seed(42, 1, 2, 3));
    Rng b(derive_seed(42, 1, 2, 3));
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // Different key paths give different streams.
    Rng c(derive_seed(42, 1, 2, 4));
    bool all_equal = true;
    Rng a2(derive_seed(42, 1, 2, 3));
    for (int i = 0; i < 10; ++i) all_equal = all_equal && (a2.next_u64() == c.next_u64());
    CHECK_FALSE(all_equal);
}

TEST_CASE("next_below is unbiased enough and in range") {
    Rng r(123);
    int counts[7] = {0};
    for (int i = 0; i < 70000; ++i) {
        const int x = r.next_below(7);
        REQUIRE(x >= 0);
        REQUIRE(x < 7);
        counts[x]++;
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("bernoulli and uniform ranges") {
    Rng r(5);
    int hits = 0;
    for (int i = 0; i < 100000; ++i)
        if (r.next_bernoulli(0.3)) ++hits;
    CHECK(std::abs(hits / 100000.0 - 0.3) < 0.01);

    for (int i = 0; i < 1000; ++i) {
        const double x = r.next_uniform(0.25, 0.75);
        CHECK(x >= 0.25);
        CHECK(x < 0.75);
    }
}
