#include "lipband/zooming.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lipband {

double robust_radius(long long n, long long horizon, double delta, double known_budget,
                     bool capped, double sigma, double corruption_scale) {
    if (n <= 0) {
        throw std::domain_error("robust_radius: undefined before the first pull (n = 0)");
    }
    if (delta <= 0.0 || delta >= 1.0) {
        throw std::invalid_argument("robust_radius: delta must be in (0,1)");
    }
    const double numerator =
        4.0 * std::log(static_cast<double>(horizon)) + 2.0 * std::log(2.0 / delta);
    const double deviation = sigma * std::sqrt(numerator / static_cast<double>(n));
    double corruption = known_budget / static_cast<double>(n);
    if (capped) corruption = std::min(1.0, corruption);
    return deviation + corruption_scale * corruption;
}

ZoomingPolicy::ZoomingPolicy(ZoomingParams params) : params_(params) {
    if (params_.dim < 1 || params_.dim > 3) {
        throw std::invalid_argument("ZoomingPolicy: dim must be 1, 2 or 3");
    }
    if (params_.grid_depth < 1 || params_.grid_depth > 20) {
        throw std::invalid_argument("ZoomingPolicy: grid_depth out of range");
    }
    deviation_numerator_ = 4.0 * std::log(static_cast<double>(params_.horizon)) +
                           2.0 * std::log(2.0 / params_.delta);

    points_per_axis_ = (std::uint64_t{1} << params_.grid_depth) + 1;
    num_points_ = 1;
    for (int i = 0; i < params_.dim; ++i) num_points_ *= points_per_axis_;
    if (num_points_ > (std::uint64_t{1} << 24)) {
        throw std::runtime_error("ZoomingPolicy: candidate grid too large");
    }

    dead_.assign(num_points_, 0);
    for (std::uint64_t id = 0; id < num_points_; ++id) {
        uncovered_.insert(uncovered_.end(), id);
    }
}

Arm ZoomingPolicy::point_coords(std::uint64_t id) const {
    std::vector<double> c(static_cast<std::size_t>(params_.dim));
    for (int axis = params_.dim - 1; axis >= 0; --axis) {
        const std::uint64_t k = id % points_per_axis_;
        id /= points_per_axis_;
        c[static_cast<std::size_t>(axis)] =
            std::ldexp(static_cast<double>(k), -params_.grid_depth);
    }
    return Arm(std::move(c));
}

void ZoomingPolicy::set_known_budget(double c) {
    if (c == params_.known_budget) return;
    params_.known_budget = c;
    if (!params_.coverage_uses_corruption) return;  // coverage is budget-free
    for (auto& lst : cover_) lst.clear();
    uncovered_.clear();
    for (std::uint64_t id = 0; id < num_points_; ++id) {
        if (dead_[id]) continue;
        const Arm p = point_coords(id);
        bool covered = false;
        for (std::size_t j = 0; j < arms_.size() && !covered; ++j) {
            const double dist = distance(p, arms_[j].center, params_.metric);
            if (dist <= cover_radius_of(arms_[j])) {
                cover_[j].push_back({id, dist});
                covered = true;
            }
        }
        if (!covered) uncovered_.insert(uncovered_.end(), id);
    }
    for (auto& lst : cover_) {
        std::sort(lst.begin(), lst.end(),
                  [](const CoveredPoint& a, const CoveredPoint& b) { return a.dist < b.dist; });
    }
}

double ZoomingPolicy::radius_of(const ActiveArm& arm) const {
    return robust_radius(arm.n, params_.horizon, params_.delta, params_.known_budget,
                         params_.capped, params_.sigma, params_.corruption_scale);
}

double ZoomingPolicy::cover_radius_of(const ActiveArm& arm) const {
    if (params_.coverage_uses_corruption) return radius_of(arm);
    return robust_radius(arm.n, params_.horizon, params_.delta, 0.0, params_.capped,
                         params_.sigma, 0.0);
}

bool ZoomingPolicy::point_removed(const Arm& p) const {
    for (const auto& ball : removed_) {
        if (distance(p, ball.center, params_.metric) <= ball.radius) return true;
    }
    return false;
}

void ZoomingPolicy::rehome_or_mark_uncovered(std::uint64_t point_id) {
    if (dead_[point_id]) return;
    const Arm p = point_coords(point_id);
    for (std::size_t j = 0; j < arms_.size(); ++j) {
        const double dist = distance(p, arms_[j].center, params_.metric);
        if (dist <= cover_radius_of(arms_[j])) {
            cover_[j].push_back({point_id, dist});
            // Keep the per-arm list sorted ascending by distance.
            auto& lst = cover_[j];
            std::size_t i = lst.size() - 1;
            while (i > 0 && lst[i - 1].dist > lst[i].dist) {
                std::swap(lst[i - 1], lst[i]);
                --i;
            }
            return;
        }
    }
    uncovered_.insert(point_id);
}

void ZoomingPolicy::shrink_cover(std::size_t arm_idx) {
    const double r = cover_radius_of(arms_[arm_idx]);
    auto& lst = cover_[arm_idx];
    std::vector<std::uint64_t> evicted;
    while (!lst.empty() && lst.back().dist > r) {
        evicted.push_back(lst.back().point_id);
        lst.pop_back();
    }
    for (std::uint64_t id : evicted) rehome_or_mark_uncovered(id);
}

void ZoomingPolicy::remove_arm(std::size_t arm_idx) {
    const ActiveArm arm = arms_[arm_idx];
    const double r = radius_of(arm);
    removed_.push_back({arm.center, r});

    std::vector<CoveredPoint> orphans = std::move(cover_[arm_idx]);
    arms_.erase(arms_.begin() + static_cast<std::ptrdiff_t>(arm_idx));
    cover_.erase(cover_.begin() + static_cast<std::ptrdiff_t>(arm_idx));

    // Mark every grid point inside the removed ball dead. Iterate the
    // bounding box of integer coordinates; filter by distance for L2.
    const std::uint64_t g = std::uint64_t{1} << params_.grid_depth;
    std::vector<std::uint64_t> lo(static_cast<std::size_t>(params_.dim));
    std::vector<std::uint64_t> hi(static_cast<std::size_t>(params_.dim));
    bool box_empty = false;
    for (int i = 0; i < params_.dim; ++i) {
        const double c = arm.center[i];
        const double lo_f = std::ceil((c - r) * static_cast<double>(g));
        const double hi_f = std::floor((c + r) * static_cast<double>(g));
        if (lo_f > hi_f || lo_f > static_cast<double>(g) || hi_f < 0.0) {
            box_empty = true;  // ball narrower than the grid spacing
            break;
        }
        lo[static_cast<std::size_t>(i)] =
            lo_f <= 0.0 ? 0 : static_cast<std::uint64_t>(lo_f);
        hi[static_cast<std::size_t>(i)] =
            hi_f >= static_cast<double>(g) ? g : static_cast<std::uint64_t>(hi_f);
    }
    std::vector<std::uint64_t> idx = lo;
    while (!box_empty) {
        std::uint64_t id = 0;
        for (int i = 0; i < params_.dim; ++i) {
            id = id * points_per_axis_ + idx[static_cast<std::size_t>(i)];
        }
        bool inside = true;
        if (params_.metric == Metric::L2) {
            inside = distance(point_coords(id), arm.center, Metric::L2) <= r;
        }
        if (inside && !dead_[id]) {
            dead_[id] = 1;
            uncovered_.erase(id);
        }
        int axis = params_.dim - 1;
        for (; axis >= 0; --axis) {
            if (++idx[static_cast<std::size_t>(axis)] <= hi[static_cast<std::size_t>(axis)]) break;
            idx[static_cast<std::size_t>(axis)] = lo[static_cast<std::size_t>(axis)];
        }
        if (axis < 0) break;
    }

    for (const auto& pt : orphans) rehome_or_mark_uncovered(pt.point_id);
}

void ZoomingPolicy::run_removal() {
    if (!params_.removal_enabled) return;
    while (true) {
        if (arms_.size() < 2) return;
        std::vector<double> radii(arms_.size());
        for (std::size_t i = 0; i < arms_.size(); ++i) radii[i] = radius_of(arms_[i]);

        std::vector<std::size_t> to_remove;
        for (std::size_t u = 0; u < arms_.size(); ++u) {
            for (std::size_t v = 0; v < arms_.size(); ++v) {
                if (u == v) continue;
                if (arms_[v].f - arms_[u].f >= radii[v] + 2.0 * radii[u]) {
                    to_remove.push_back(u);
                    break;
                }
            }
        }
        if (to_remove.empty()) return;
        for (auto it = to_remove.rbegin(); it != to_remove.rend(); ++it) {
            remove_arm(*it);
        }
    }
}

Arm ZoomingPolicy::choose(Rng& /*policy_rng*/, Rng& region_rng) {
    if (pending_ >= 0) {
        throw std::logic_error("ZoomingPolicy: choose() called twice without observe()");
    }
    run_removal();

    if (!uncovered_.empty()) {
        // Activation: lexicographically first live point outside every ball,
        // or a uniformly random uncovered point in random-activation mode.
        auto it = uncovered_.begin();
        if (params_.random_activation) {
            std::advance(it, static_cast<std::ptrdiff_t>(
                                 region_rng.uniform_index(uncovered_.size())));
        }
        const std::uint64_t id = *it;
        ActiveArm arm;
        arm.point_id = id;
        arm.center = point_coords(id);
        arms_.push_back(arm);
        cover_.emplace_back();

        const std::size_t new_idx = arms_.size() - 1;
        const double r1 = robust_radius(
            1, params_.horizon, params_.delta,
            params_.coverage_uses_corruption ? params_.known_budget : 0.0, params_.capped,
            params_.sigma,
            params_.coverage_uses_corruption ? params_.corruption_scale : 0.0);
        std::vector<CoveredPoint> claimed;
        for (auto it = uncovered_.begin(); it != uncovered_.end();) {
            const double dist = distance(point_coords(*it), arm.center, params_.metric);
            if (dist <= r1) {
                claimed.push_back({*it, dist});
                it = uncovered_.erase(it);
            } else {
                ++it;
            }
        }
        std::sort(claimed.begin(), claimed.end(),
                  [](const CoveredPoint& a, const CoveredPoint& b) { return a.dist < b.dist; });
        cover_[new_idx] = std::move(claimed);
        pending_ = static_cast<std::ptrdiff_t>(new_idx);
        return arms_[new_idx].center;
    }

    if (arms_.empty()) {
        throw std::logic_error("ZoomingPolicy: no live candidate points and no active arms");
    }

    // Selection: argmax f(v) + 2 r(v), ties to the smallest point id.
    std::size_t best = 0;
    double best_index = -1e300;
    for (std::size_t i = 0; i < arms_.size(); ++i) {
        const double value = arms_[i].f + 2.0 * radius_of(arms_[i]);
        if (value > best_index ||
            (value == best_index && arms_[i].point_id < arms_[best].point_id)) {
            best = i;
            best_index = value;
        }
    }
    pending_ = static_cast<std::ptrdiff_t>(best);
    return arms_[best].center;
}

void ZoomingPolicy::observe(double y) {
    if (pending_ < 0) {
        throw std::logic_error("ZoomingPolicy: observe() without a pending pull");
    }
    ActiveArm& arm = arms_[static_cast<std::size_t>(pending_)];
    arm.n += 1;
    arm.f = (arm.f * static_cast<double>(arm.n - 1) + y) / static_cast<double>(arm.n);
    shrink_cover(static_cast<std::size_t>(pending_));
    pending_ = -1;
}

}  // namespace lipband
