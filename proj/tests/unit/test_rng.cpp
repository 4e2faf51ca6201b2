#include "doctest.h"

#include <cmath>

#include "lipband/rng.hpp"

using namespace lipband;

TEST_CASE("identical seeds give identical streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("derived streams are independent of sibling consumption") {
    Rng noise1 = derive_stream(7, StreamTag::Noise);
    Rng adv = derive_stream(7, StreamTag::Adversary);
    for (int i = 0; i < 100; ++i) adv.uniform();  // burn the adversary stream
    Rng noise2 = derive_stream(7, StreamTag::Noise);
    for (int i = 0; i < 100; ++i) {
        CHECK(noise1.next_u64() == noise2.next_u64());
    }
}

TEST_CASE("uniform lies in [0,1) and is roughly uniform") {
    Rng rng(3);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // 3-sigma band around 1/2, sd = 1/sqrt(12 n)
    CHECK(std::fabs(sum / n - 0.5) < 3.0 / std::sqrt(12.0 * n));
}

TEST_CASE("gaussian moments") {
    Rng rng(11);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sumsq += g * g;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::fabs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
