#include "lipband/environment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lipband {

namespace {

constexpr double kPi = 3.14159265358979323846;

double l2_dist(const Arm& a, double x, double y) {
    const double dx = a[0] - x;
    const double dy = a[1] - y;
    return std::sqrt(dx * dx + dy * dy);
}

// Walk a uniform grid over [0,1]^dim (endpoints included) and fold each point.
void for_each_grid_point(int dim, double resolution,
                         const std::function<void(const Arm&)>& fn) {
    const int per_axis = static_cast<int>(std::llround(1.0 / resolution)) + 1;
    std::vector<double> coords(static_cast<std::size_t>(dim), 0.0);
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    Arm probe;
    probe.coords.resize(static_cast<std::size_t>(dim));
    while (true) {
        for (int i = 0; i < dim; ++i) {
            probe.coords[static_cast<std::size_t>(i)] =
                std::min(1.0, idx[static_cast<std::size_t>(i)] * resolution);
        }
        fn(probe);
        int axis = dim - 1;
        for (; axis >= 0; --axis) {
            if (++idx[static_cast<std::size_t>(axis)] < per_axis) break;
            idx[static_cast<std::size_t>(axis)] = 0;
        }
        if (axis < 0) break;
    }
}

}  // namespace

double grid_resolution_for_dim(int dim) { return dim <= 1 ? 1e-4 : 1e-3; }

RewardFunction RewardFunction::triangle() {
    RewardFunction f;
    f.kind = RewardKind::Triangle;
    f.dim = 1;
    return f;
}

RewardFunction RewardFunction::sine() {
    RewardFunction f;
    f.kind = RewardKind::Sine;
    f.dim = 1;
    return f;
}

RewardFunction RewardFunction::two_dim() {
    RewardFunction f;
    f.kind = RewardKind::TwoDim;
    f.dim = 2;
    return f;
}

RewardFunction RewardFunction::lower_bound(int d, double epsilon, int k) {
    if (d < 1) throw std::invalid_argument("lower_bound: d must be >= 1");
    if (epsilon <= 0.0 || epsilon > 0.5) {
        throw std::invalid_argument("lower_bound: epsilon must be in (0, 0.5]");
    }
    const int cells_per_axis = static_cast<int>(std::floor(1.0 / epsilon + 1e-12));
    double n_cells = 1.0;
    for (int i = 0; i < d; ++i) n_cells *= cells_per_axis;
    if (k < 1 || static_cast<double>(k) > n_cells) {
        throw std::invalid_argument("lower_bound: cell index k out of range [1, " +
                                    std::to_string(static_cast<long long>(n_cells)) + "]");
    }

    RewardFunction f;
    f.kind = RewardKind::LowerBound;
    f.dim = d;
    f.lb_epsilon = epsilon;
    f.lb_cell = k;
    f.lb_cells_per_axis = cells_per_axis;
    f.lb_lo.resize(static_cast<std::size_t>(d));
    f.lb_center.resize(static_cast<std::size_t>(d));
    // Decode the 1-based cell index lexicographically (last axis fastest).
    long long rem = k - 1;
    for (int i = d - 1; i >= 0; --i) {
        const long long axis_idx = rem % cells_per_axis;
        rem /= cells_per_axis;
        f.lb_lo[static_cast<std::size_t>(i)] = static_cast<double>(axis_idx) * epsilon;
        f.lb_center[static_cast<std::size_t>(i)] =
            f.lb_lo[static_cast<std::size_t>(i)] + epsilon / 2.0;
    }
    return f;
}

RewardFunction RewardFunction::custom_fn(int d, std::function<double(const Arm&)> fn,
                                         double lipschitz) {
    RewardFunction f;
    f.kind = RewardKind::Custom;
    f.dim = d;
    f.custom = std::move(fn);
    f.declared_lipschitz = lipschitz;
    return f;
}

double mean_reward(const RewardFunction& f, const Arm& a) {
    if (a.dim() != f.dim) {
        throw std::invalid_argument("mean_reward: arm dimension " +
                                    std::to_string(a.dim()) + " does not match reward dimension " +
                                    std::to_string(f.dim));
    }
    switch (f.kind) {
        case RewardKind::Triangle:
            return 0.9 - 0.95 * std::fabs(a[0] - 1.0 / 3.0);
        case RewardKind::Sine:
            return 2.0 / (3.0 * kPi) * std::sin(3.0 * kPi * a[0] / 2.0);
        case RewardKind::TwoDim:
            return 1.0 - 0.8 * l2_dist(a, 0.75, 0.75) - 0.4 * l2_dist(a, 0.0, 1.0);
        case RewardKind::LowerBound: {
            double linf = 0.0;
            for (int i = 0; i < f.dim; ++i) {
                const double lo = f.lb_lo[static_cast<std::size_t>(i)];
                if (a[i] < lo || a[i] >= lo + f.lb_epsilon) return 0.0;
                linf = std::max(linf,
                                std::fabs(a[i] - f.lb_center[static_cast<std::size_t>(i)]));
            }
            return f.lb_epsilon / 2.0 - linf;
        }
        case RewardKind::Custom:
            return f.custom(a);
    }
    throw std::logic_error("mean_reward: unknown reward kind");
}

double draw_stochastic_reward(const RewardFunction& f, const NoiseModel& noise,
                              const Arm& a, Rng& rng) {
    const double mu = mean_reward(f, a);
    if (noise.sigma == 0.0) return mu;
    return mu + noise.sigma * rng.gaussian();
}

OptimumCertificate optimal_value(const RewardFunction& f, Metric /*metric*/) {
    OptimumCertificate cert;
    switch (f.kind) {
        case RewardKind::Triangle:
            cert.arm_star = Arm{1.0 / 3.0};
            cert.mu_star = 0.9;
            return cert;
        case RewardKind::Sine:
            cert.arm_star = Arm{1.0 / 3.0};
            cert.mu_star = 2.0 / (3.0 * kPi);
            return cert;
        case RewardKind::LowerBound:
            cert.arm_star = Arm(f.lb_center);
            cert.mu_star = f.lb_epsilon / 2.0;
            return cert;
        default:
            break;
    }
    cert.method = OptimumMethod::GridSearch;
    cert.resolution = grid_resolution_for_dim(f.dim);
    double best = -std::numeric_limits<double>::infinity();
    Arm best_arm;
    for_each_grid_point(f.dim, cert.resolution, [&](const Arm& probe) {
        const double v = mean_reward(f, probe);
        if (v > best) {
            best = v;
            best_arm = probe;
        }
    });
    cert.arm_star = best_arm;
    cert.mu_star = best;
    return cert;
}

RewardExtrema reward_extrema(const RewardFunction& f,
                             const std::function<bool(const Arm&)>& filter) {
    RewardExtrema ext;
    ext.min_value = std::numeric_limits<double>::infinity();
    ext.max_value = -std::numeric_limits<double>::infinity();
    for_each_grid_point(f.dim, grid_resolution_for_dim(f.dim), [&](const Arm& probe) {
        if (filter && !filter(probe)) return;
        const double v = mean_reward(f, probe);
        ext.min_value = std::min(ext.min_value, v);
        ext.max_value = std::max(ext.max_value, v);
    });
    if (ext.min_value > ext.max_value) {
        throw std::runtime_error("reward_extrema: filter excluded every probe point");
    }
    return ext;
}

double min_value(const RewardFunction& f) { return reward_extrema(f).min_value; }

}  // namespace lipband
