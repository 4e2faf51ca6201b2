#include "lipband/metric_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lipband {

double distance(const Arm& a, const Arm& b, Metric metric) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("distance: dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }
    if (metric == Metric::LInf) {
        double m = 0.0;
        for (int i = 0; i < a.dim(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
        return m;
    }
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return std::sqrt(s);
}

double Region::side() const { return std::ldexp(1.0, -depth); }

double Region::lo(int axis) const {
    return std::ldexp(static_cast<double>(index[static_cast<std::size_t>(axis)]), -depth);
}

double Region::hi(int axis) const {
    return std::ldexp(static_cast<double>(index[static_cast<std::size_t>(axis)]) + 1.0, -depth);
}

Arm Region::center() const {
    std::vector<double> c(index.size());
    for (int i = 0; i < dim(); ++i) {
        c[static_cast<std::size_t>(i)] =
            std::ldexp(static_cast<double>(index[static_cast<std::size_t>(i)]) + 0.5, -depth);
    }
    return Arm(std::move(c));
}

bool Region::contains(const Arm& a) const {
    if (a.dim() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        if (a[i] < lo(i) || a[i] >= hi(i)) return false;
    }
    return true;
}

double Region::measure() const {
    double m = 1.0;
    for (int i = 0; i < dim(); ++i) m *= side();
    return m;
}

std::uint64_t Region::id() const {
    if (static_cast<long long>(depth) * dim() > 62) {
        throw std::overflow_error("Region::id: depth too large for a 64-bit index");
    }
    std::uint64_t id = 0;
    for (std::size_t i = 0; i < index.size(); ++i) {
        id = (id << depth) | index[i];
    }
    return id;
}

bool region_contains(const Region& outer, const Region& inner) {
    if (outer.dim() != inner.dim()) {
        throw std::invalid_argument("region_contains: dimension mismatch");
    }
    if (inner.depth < outer.depth) {
        // A strictly coarser box can never be a subset of a finer one.
        return false;
    }
    const int shift = inner.depth - outer.depth;
    for (std::size_t i = 0; i < outer.index.size(); ++i) {
        if ((inner.index[i] >> shift) != outer.index[i]) return false;
    }
    return true;
}

std::vector<Region> refine_region(const Region& r) {
    const int d = r.dim();
    const std::size_t n_children = std::size_t{1} << d;
    std::vector<Region> children;
    children.reserve(n_children);
    for (std::size_t bits = 0; bits < n_children; ++bits) {
        Region child;
        child.depth = r.depth + 1;
        child.index.resize(r.index.size());
        for (int i = 0; i < d; ++i) {
            const std::uint32_t bit =
                static_cast<std::uint32_t>((bits >> (d - 1 - i)) & 1U);
            child.index[static_cast<std::size_t>(i)] =
                (r.index[static_cast<std::size_t>(i)] << 1) | bit;
        }
        children.push_back(std::move(child));
    }
    return children;
}

Covering uniform_grid_covering(int d, int depth, std::size_t region_cap) {
    if (d < 1) throw std::invalid_argument("uniform_grid_covering: d must be >= 1");
    if (depth < 0) throw std::invalid_argument("uniform_grid_covering: depth must be >= 0");
    const long long bits = static_cast<long long>(d) * depth;
    if (bits > 62 || (std::size_t{1} << bits) > region_cap) {
        throw std::runtime_error("uniform_grid_covering: 2^(d*depth) exceeds region cap");
    }
    const std::size_t count = std::size_t{1} << bits;
    const std::uint32_t per_axis = std::uint32_t{1} << depth;

    Covering cov;
    cov.depth = depth;
    cov.regions.reserve(count);
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t n = 0; n < count; ++n) {
        Region r;
        r.depth = depth;
        r.index = idx;
        cov.regions.push_back(std::move(r));
        // Advance the lexicographic counter (last axis fastest).
        for (int axis = d - 1; axis >= 0; --axis) {
            if (++idx[static_cast<std::size_t>(axis)] < per_axis) break;
            idx[static_cast<std::size_t>(axis)] = 0;
        }
    }
    return cov;
}

Arm sample_arm_in_region(const Region& r, Rng& rng, bool center_mode) {
    if (center_mode) return r.center();
    std::vector<double> c(r.index.size());
    for (int i = 0; i < r.dim(); ++i) {
        double u = rng.uniform();
        c[static_cast<std::size_t>(i)] = r.lo(i) + u * r.side();
        // Guard the half-open upper boundary against rounding.
        if (c[static_cast<std::size_t>(i)] >= r.hi(i)) {
            c[static_cast<std::size_t>(i)] = std::nextafter(r.hi(i), r.lo(i));
        }
    }
    return Arm(std::move(c));
}

}  // namespace lipband
