#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <set>

#include "lipband/metric_space.hpp"

using namespace lipband;

namespace {

Arm random_arm(int d, Rng& rng) {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (double& x : c) x = rng.uniform();
    return Arm(std::move(c));
}

Region random_dyadic_box(int d, Rng& rng, int max_depth = 6) {
    Region r;
    r.depth = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_depth + 1)));
    r.index.resize(static_cast<std::size_t>(d));
    for (auto& k : r.index) {
        k = static_cast<std::uint32_t>(rng.uniform_index(std::uint64_t{1} << r.depth));
    }
    return r;
}

}  // namespace

TEST_CASE("distance basics") {
    CHECK(distance(Arm{0.2, 0.4}, Arm{0.5, 0.1}, Metric::LInf) == doctest::Approx(0.3));
    CHECK(distance(Arm{0.7}, Arm{0.7}, Metric::LInf) == 0.0);
    CHECK(distance(Arm{0.3, 0.9}, Arm{0.3, 0.9}, Metric::L2) == 0.0);
    CHECK(distance(Arm{0.0, 0.0}, Arm{0.3, 0.4}, Metric::L2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(distance(Arm{0.1}, Arm{0.1, 0.2}, Metric::LInf), std::invalid_argument);
}

TEST_CASE("metric axioms on random triples") {
    Rng rng(5);
    for (Metric m : {Metric::LInf, Metric::L2}) {
        for (int i = 0; i < 10000; ++i) {
            const Arm a = random_arm(2, rng), b = random_arm(2, rng), c = random_arm(2, rng);
            const double ab = distance(a, b, m);
            const double ba = distance(b, a, m);
            CHECK(ab == ba);
            CHECK(ab >= 0.0);
            CHECK(distance(a, a, m) == 0.0);
            CHECK(distance(a, c, m) <= ab + distance(b, c, m) + 1e-12);
        }
    }
}

TEST_CASE("uniform_grid_covering shapes") {
    const Covering c1 = uniform_grid_covering(1, 1);
    REQUIRE(c1.regions.size() == 2);
    CHECK(c1.regions[0].lo(0) == 0.0);
    CHECK(c1.regions[0].hi(0) == 0.5);
    CHECK(c1.regions[1].lo(0) == 0.5);
    CHECK(c1.regions[1].hi(0) == 1.0);

    const Covering c2 = uniform_grid_covering(2, 1);
    REQUIRE(c2.regions.size() == 4);
    CHECK(c2.regions[0].lo(0) == 0.0);
    CHECK(c2.regions[0].hi(0) == 0.5);
    CHECK(c2.regions[0].lo(1) == 0.0);
    CHECK(c2.regions[0].hi(1) == 0.5);

    CHECK_THROWS_AS(uniform_grid_covering(3, 10, /*region_cap=*/1 << 20), std::runtime_error);
}

TEST_CASE("coverings partition exactly: probe-grid membership") {
    // Every probe point of a 2^-(depth+2) grid lies in exactly one region.
    for (int d = 1; d <= 2; ++d) {
        for (int depth : {1, 3}) {
            const Covering cov = uniform_grid_covering(d, depth);
            const int probe_per_axis = 1 << (depth + 2);
            std::vector<int> idx(static_cast<std::size_t>(d), 0);
            while (true) {
                Arm p;
                p.coords.resize(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) {
                    p.coords[static_cast<std::size_t>(i)] =
                        (idx[static_cast<std::size_t>(i)] + 0.5) / probe_per_axis;
                }
                int owners = 0;
                for (const Region& r : cov.regions) owners += r.contains(p) ? 1 : 0;
                CHECK(owners == 1);
                int axis = d - 1;
                for (; axis >= 0; --axis) {
                    if (++idx[static_cast<std::size_t>(axis)] < probe_per_axis) break;
                    idx[static_cast<std::size_t>(axis)] = 0;
                }
                if (axis < 0) break;
            }
        }
    }
}

TEST_CASE("refine_region splits exactly and deterministically") {
    Rng rng(17);
    for (int d = 1; d <= 3; ++d) {
        for (int trial = 0; trial < 50; ++trial) {
            const Region r = random_dyadic_box(d, rng);
            const auto kids = refine_region(r);
            REQUIRE(kids.size() == (std::size_t{1} << d));
            // Deterministic: second call gives the identical list.
            CHECK(refine_region(r) == kids);
            double total = 0.0;
            for (const Region& k : kids) {
                CHECK(k.depth == r.depth + 1);
                CHECK(region_contains(r, k));
                total += k.measure();
            }
            CHECK(total == doctest::Approx(r.measure()));
            // Children pairwise disjoint, union is the parent: probe points.
            for (int probe = 0; probe < 64; ++probe) {
                Arm p;
                p.coords.resize(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) {
                    p.coords[static_cast<std::size_t>(i)] =
                        r.lo(i) + rng.uniform() * r.side();
                }
                int owners = 0;
                for (const Region& k : kids) owners += k.contains(p) ? 1 : 0;
                CHECK(owners == 1);
            }
        }
    }
}

TEST_CASE("1d refinement example") {
    Region r;
    r.depth = 1;
    r.index = {0};
    const auto kids = refine_region(r);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].lo(0) == 0.0);
    CHECK(kids[0].hi(0) == 0.25);
    CHECK(kids[1].lo(0) == 0.25);
    CHECK(kids[1].hi(0) == 0.5);
}

TEST_CASE("refining the unit box equals the depth-1 covering") {
    Region unit;
    unit.depth = 0;
    unit.index = {0, 0};
    CHECK(refine_region(unit) == uniform_grid_covering(2, 1).regions);
}

TEST_CASE("region_contains cases") {
    Region outer{{0}, 1};          // [0, 0.5)
    Region inner{{2}, 3};          // [0.25, 0.375)
    CHECK(region_contains(outer, inner));
    CHECK(region_contains(outer, outer));
    Region straddle{{1}, 2};       // [0.25, 0.5) is inside
    CHECK(region_contains(outer, straddle));
    Region outside{{1}, 1};        // [0.5, 1)
    CHECK_FALSE(region_contains(outer, outside));
    // A strictly coarser box is never contained in a finer one.
    CHECK_FALSE(region_contains(inner, outer));
}

TEST_CASE("region_contains is a partial order on sampled dyadic boxes") {
    Rng rng(23);
    std::vector<Region> boxes;
    for (int i = 0; i < 60; ++i) boxes.push_back(random_dyadic_box(2, rng, 4));
    for (const Region& a : boxes) {
        CHECK(region_contains(a, a));  // reflexive
        for (const Region& b : boxes) {
            if (region_contains(a, b) && region_contains(b, a)) {
                CHECK(a == b);  // antisymmetric
            }
            for (const Region& c : boxes) {
                if (region_contains(a, b) && region_contains(b, c)) {
                    CHECK(region_contains(a, c));  // transitive
                }
            }
        }
    }
}

TEST_CASE("region ids are lexicographic and unique per covering") {
    const Covering cov = uniform_grid_covering(2, 3);
    std::set<std::uint64_t> seen;
    std::uint64_t prev = 0;
    bool first = true;
    for (const Region& r : cov.regions) {
        const std::uint64_t id = r.id();
        CHECK(seen.insert(id).second);
        if (!first) CHECK(id > prev);
        prev = id;
        first = false;
    }
}

TEST_CASE("sample_arm_in_region center mode") {
    Region r{{0}, 1};
    Rng rng(1);
    const Arm c = sample_arm_in_region(r, rng, /*center_mode=*/true);
    CHECK(c[0] == doctest::Approx(0.25));
}

TEST_CASE("sample_arm_in_region uniform mode stays inside and centers") {
    Region r{{1, 2}, 2};  // [0.25,0.5) x [0.5,0.75)
    Rng rng(9);
    const int n = 100000;
    double sum0 = 0.0, sum1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const Arm a = sample_arm_in_region(r, rng);
        REQUIRE(r.contains(a));
        sum0 += a[0];
        sum1 += a[1];
    }
    // CLT: per-axis mean within 3 sigma of the box center; sd = side/sqrt(12 n).
    const double tol = 3.0 * r.side() / std::sqrt(12.0 * n);
    CHECK(std::fabs(sum0 / n - 0.375) < tol);
    CHECK(std::fabs(sum1 / n - 0.625) < tol);
}
