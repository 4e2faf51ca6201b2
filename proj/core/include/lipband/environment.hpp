#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lipband/metric_space.hpp"
#include "lipband/rng.hpp"

namespace lipband {

enum class RewardKind { Triangle, Sine, TwoDim, LowerBound, Custom };

// Expected-reward function on [0,1]^dim.
//
// Triangle:   0.9 - 0.95|x - 1/3|                      (d=1)
// Sine:       2/(3pi) * sin(3pi x / 2)                 (d=1)
// TwoDim:     1 - 0.8|x - (0.75,0.75)|_2 - 0.4|x - (0,1)|_2   (d=2)
// LowerBound: eps/2 - |x - c_k|_inf on cell A_k, 0 elsewhere
struct RewardFunction {
    RewardKind kind = RewardKind::Triangle;
    int dim = 1;

    // Lower-bound instance parameters.
    double lb_epsilon = 0.0;
    int lb_cell = 0;  // 1-based cell index k
    int lb_cells_per_axis = 0;
    std::vector<double> lb_lo;      // lower corner of A_k
    std::vector<double> lb_center;  // c_k

    // Custom functions declare their own Lipschitz constant.
    std::function<double(const Arm&)> custom;
    double declared_lipschitz = 1.0;

    static RewardFunction triangle();
    static RewardFunction sine();
    static RewardFunction two_dim();
    static RewardFunction lower_bound(int d, double epsilon, int k);
    static RewardFunction custom_fn(int d, std::function<double(const Arm&)> f,
                                    double lipschitz);
};

double mean_reward(const RewardFunction& f, const Arm& a);

struct NoiseModel {
    double sigma = 0.1;
};

// Eq-style stochastic channel: mu(a) + N(0, sigma^2).
double draw_stochastic_reward(const RewardFunction& f, const NoiseModel& noise,
                              const Arm& a, Rng& rng);

enum class OptimumMethod { ClosedForm, GridSearch };

struct OptimumCertificate {
    Arm arm_star;
    double mu_star = 0.0;
    OptimumMethod method = OptimumMethod::ClosedForm;
    double resolution = 0.0;  // grid step when method == GridSearch
    double tolerance() const { return resolution; }
};

// Closed form where available, otherwise grid search at 1e-4 per axis (d=1)
// or 1e-3 (d=2, d=3).
OptimumCertificate optimal_value(const RewardFunction& f, Metric metric);

// Grid-oracle extrema of mu, optionally restricted by a point filter.
struct RewardExtrema {
    double min_value = 0.0;
    double max_value = 0.0;
};
RewardExtrema reward_extrema(
    const RewardFunction& f,
    const std::function<bool(const Arm&)>& filter = nullptr);

double min_value(const RewardFunction& f);

double grid_resolution_for_dim(int dim);

}  // namespace lipband
