#include <catch2/catch_amalgamated.hpp>

#include "smpath/rng.hpp"

#include <cmath>
#include <vector>

using namespace smpath;

TEST_CASE("identical streams give bit-identical sequences", "[rng]") {
    rng_engine a({12345, 7});
    rng_engine b({12345, 7});
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(a.next_u64() == b.next_u64());
    }
    rng_engine c({12345, 7});
    rng_engine d({12345, 7});
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(c.gaussian() == d.gaussian());
        REQUIRE(c.uniform01() == d.uniform01());
    }
}

TEST_CASE("substream seeds separate streams", "[rng]") {
    rng_stream base{999, 0};
    REQUIRE(base.engine_seed() != base.substream(1).engine_seed());
    REQUIRE(base.substream(1).engine_seed() != base.substream(2).engine_seed());
    // changing the master seed moves every substream
    REQUIRE(rng_stream{1000, 1}.engine_seed() != rng_stream{999, 1}.engine_seed());
}

TEST_CASE("mix64 has no collisions on a small consecutive range", "[rng]") {
    std::vector<std::uint64_t> seen;
    seen.reserve(100000);
    for (std::uint64_t i = 0; i < 100000; ++i) seen.push_back(mix64(i));
    std::sort(seen.begin(), seen.end());
    REQUIRE(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("uniform01 stays in [0,1)", "[rng]") {
    rng_engine eng({4, 0});
    for (int i = 0; i < 100000; ++i) {
        const double u = eng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("gaussian moments", "[rng]") {
    rng_engine eng({2024, 3});
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = eng.gaussian();
        s += g;
        s2 += g * g;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    REQUIRE(std::abs(mean) < 0.01);
    REQUIRE(var == Catch::Approx(1.0).margin(0.02));
}

TEST_CASE("signs are fair", "[rng]") {
    rng_engine eng({77, 0});
    int sum = 0;
    for (int i = 0; i < 100000; ++i) {
        const int s = eng.sign();
        REQUIRE((s == 1 || s == -1));
        sum += s;
    }
    REQUIRE(std::abs(sum) < 1200); // ~3.8 sigma for 1e5 fair signs
}
