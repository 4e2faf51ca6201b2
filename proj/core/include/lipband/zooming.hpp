#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "lipband/policy.hpp"

namespace lipband {

// Confidence radius sigma * sqrt((4 ln T + 2 ln(2/delta)) / n) plus the
// corruption allowance C/n (optionally capped at 1). The baseline Zooming
// algorithm is the C = 0 case. In sigma-adjusted runs the policy also scales
// the corruption term by sigma via corruption_scale; a saturated unscaled cap
// keeps the radius above the space's diameter and freezes activation on a
// single arm. Throws for n = 0: the radius is undefined before the first
// pull.
double robust_radius(long long n, long long horizon, double delta, double known_budget,
                     bool capped, double sigma, double corruption_scale = 1.0);

struct ZoomingParams {
    long long horizon = 50000;
    double delta = 0.01;
    double known_budget = 0.0;  // C used in the radius; 0 = baseline Zooming
    bool capped = true;         // min{1, C/n} variant of the corruption term
    double sigma = 1.0;         // deviation scale; 1 = paper scale
    double corruption_scale = 1.0;  // scale on the C/n term
    int dim = 1;
    int grid_depth = 12;  // candidate grid resolution 2^-g
    Metric metric = Metric::LInf;
    bool removal_enabled = true;  // the removal step is an efficiency add-on
    bool random_activation = false;  // activate a random uncovered point
    // When false, the coverage/activation test uses only the deviation part
    // of the radius. A saturated corruption term otherwise keeps every ball
    // wider than the space and freezes activation on the first arm.
    bool coverage_uses_corruption = true;
};

// Zooming / Robust Zooming on a finite dyadic candidate grid. Each round runs
// removal to a fixed point, then either activates the lexicographically first
// uncovered live grid point or pulls argmax f(v) + 2 r(v).
class ZoomingPolicy : public Policy {
public:
    explicit ZoomingPolicy(ZoomingParams params);

    Arm choose(Rng& policy_rng, Rng& region_rng) override;
    void observe(double y) override;
    int dim() const override { return params_.dim; }

    struct ActiveArm {
        std::uint64_t point_id = 0;
        Arm center;
        long long n = 0;
        double f = 0.0;
    };

    struct RemovedBall {
        Arm center;
        double radius = 0.0;
    };

    const std::vector<ActiveArm>& active_arms() const { return arms_; }
    const std::vector<RemovedBall>& removed_balls() const { return removed_; }
    double radius_of(const ActiveArm& arm) const;
    double cover_radius_of(const ActiveArm& arm) const;
    bool point_removed(const Arm& p) const;
    const ZoomingParams& params() const { return params_; }

    // Budget guess swap used by the bandit-over-bandit top layer when the
    // base is kept alive across batches. Radii jump with C, so the coverage
    // bookkeeping is rebuilt from scratch.
    void set_known_budget(double c);

private:
    struct CoveredPoint {
        std::uint64_t point_id;
        double dist;  // to the covering arm's center
    };

    Arm point_coords(std::uint64_t id) const;
    void remove_arm(std::size_t arm_idx);
    void rehome_or_mark_uncovered(std::uint64_t point_id);
    void shrink_cover(std::size_t arm_idx);
    void run_removal();

    ZoomingParams params_;
    double deviation_numerator_;  // 4 ln T + 2 ln(2/delta)

    std::uint64_t points_per_axis_;
    std::uint64_t num_points_;

    std::vector<ActiveArm> arms_;
    std::vector<std::vector<CoveredPoint>> cover_;  // per arm, sorted by dist desc
    std::vector<RemovedBall> removed_;
    std::vector<char> dead_;            // grid point inside a removed ball
    std::set<std::uint64_t> uncovered_; // live points outside every confidence ball
    std::ptrdiff_t pending_ = -1;       // arm pulled this round, awaiting observe()
};

}  // namespace lipband
