#pragma once

#include <cstdint>
#include <vector>

#include "lipband/rng.hpp"

namespace lipband {

// A point in [0,1]^d.
struct Arm {
    std::vector<double> coords;

    Arm() = default;
    explicit Arm(std::vector<double> c) : coords(std::move(c)) {}
    Arm(std::initializer_list<double> c) : coords(c) {}

    int dim() const { return static_cast<int>(coords.size()); }
    double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
    bool operator==(const Arm& other) const { return coords == other.coords; }
};

enum class Metric { LInf, L2 };

// L_INF: max over axes; L2: Euclidean norm. Throws on dimension mismatch.
double distance(const Arm& a, const Arm& b, Metric metric);

// Half-open dyadic box: axis i spans [index[i]/2^depth, (index[i]+1)/2^depth).
// Stored as integer corner coordinates so refinement and containment are exact.
struct Region {
    std::vector<std::uint32_t> index;
    int depth = 0;

    int dim() const { return static_cast<int>(index.size()); }
    double side() const;
    double lo(int axis) const;
    double hi(int axis) const;
    Arm center() const;
    bool contains(const Arm& a) const;
    double measure() const;

    // Lexicographic index of the lower corner among all boxes of this depth.
    std::uint64_t id() const;

    bool operator==(const Region& other) const {
        return depth == other.depth && index == other.index;
    }
};

// True iff inner's box is a subset of outer's box (exact dyadic arithmetic).
bool region_contains(const Region& outer, const Region& inner);

// The 2^d children of depth+1 partitioning r, ordered lexicographically.
// Children are a function of r alone, so equal boxes refine identically.
std::vector<Region> refine_region(const Region& r);

struct Covering {
    std::vector<Region> regions;
    int depth = 0;
};

inline constexpr std::size_t kDefaultRegionCap = std::size_t{1} << 20;

// The 2^{d*depth} dyadic boxes of side 2^-depth tiling [0,1)^d, ordered
// lexicographically by lower corner. Throws if the count exceeds the cap.
Covering uniform_grid_covering(int d, int depth, std::size_t region_cap = kDefaultRegionCap);

// Uniform sample inside the box, or its center when center_mode is set.
Arm sample_arm_in_region(const Region& r, Rng& rng, bool center_mode = false);

}  // namespace lipband
