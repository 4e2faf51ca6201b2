#include "lipband/rmel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lipband {

int RMELPolicy::compute_num_layers(long long horizon, double delta, double base) {
    const double log_term = std::log(4.0 * static_cast<double>(horizon) / delta);
    int l = 1;
    double tolerance = log_term;
    while (tolerance < static_cast<double>(horizon)) {
        tolerance *= base;
        ++l;
        if (l > 200) throw std::runtime_error("RMEL: layer count diverged");
    }
    return l;
}

RMELPolicy::RMELPolicy(RMELParams params) : params_(params) {
    if (params_.base <= 1.0) throw std::invalid_argument("RMEL: base B must exceed 1");
    if (params_.delta <= 0.0 || params_.delta >= 1.0) {
        throw std::invalid_argument("RMEL: delta must be in (0,1)");
    }
    if (params_.horizon < 1) throw std::invalid_argument("RMEL: horizon must be >= 1");

    log_4t_delta_ = std::log(4.0 * static_cast<double>(params_.horizon) / params_.delta);
    dev_numerator_ = 4.0 * std::log(static_cast<double>(params_.horizon)) +
                     2.0 * std::log(4.0 / params_.delta);

    const int l_star = compute_num_layers(params_.horizon, params_.delta, params_.base);
    double sum_inv = 0.0;
    for (int l = 2; l <= l_star; ++l) {
        sum_inv += 1.0 / (log_4t_delta_ * std::pow(params_.base, l - 1));
    }
    if (sum_inv >= 1.0) {
        throw std::invalid_argument("RMEL: layer sampling probabilities are infeasible");
    }

    const Covering initial = uniform_grid_covering(params_.dim, 1, params_.region_cap);
    layers_.resize(static_cast<std::size_t>(l_star));
    for (int l = 1; l <= l_star; ++l) {
        Layer& layer = layers_[static_cast<std::size_t>(l - 1)];
        layer.tolerance = log_4t_delta_ * std::pow(params_.base, l - 1);
        layer.epoch = 1;
        layer.rounds_in_epoch = 0;
        layer.regions.reserve(initial.regions.size());
        for (const Region& r : initial.regions) layer.regions.push_back({r, 0, 0.0});
    }
}

double RMELPolicy::epoch_quota(int epoch) const {
    const double paper = 6.0 * log_4t_delta_ * std::pow(4.0, epoch);
    if (!params_.sigma_adjust) return std::ceil(paper);
    const double scaled =
        paper * params_.sigma * params_.sigma * params_.quota_mult;
    return std::max(1.0, std::ceil(scaled));
}

double RMELPolicy::elim_threshold(int epoch) const {
    if (!params_.sigma_adjust) return 4.0 / std::pow(2.0, epoch);
    // Sigma-adjusted gate: region-diameter bias plus a quantile of the noise
    // on a quota-sized mean. Region centers are at most half a diameter from
    // any point of the region, so the bias floor is half the paper's.
    const double q = epoch_quota(epoch);
    const double bias = params_.bias_mult / std::pow(2.0, epoch);
    const double noise = params_.noise_mult * params_.sigma / std::sqrt(q);
    return bias + noise;
}

double RMELPolicy::round_elim_threshold(int epoch, long long n_star) const {
    if (n_star <= 0) return std::numeric_limits<double>::infinity();
    const double sigma_eff = params_.sigma_adjust ? params_.sigma : 1.0;
    const double t = static_cast<double>(params_.horizon);
    return 2.0 / std::pow(2.0, epoch) +
           sigma_eff * std::sqrt(8.0 * std::log(4.0 * t * t / params_.delta) /
                                 static_cast<double>(n_star)) +
           2.0 * log_4t_delta_ / static_cast<double>(n_star);
}

int RMELPolicy::sample_raw_layer(Rng& rng) const {
    const double u = rng.uniform();
    double acc = 0.0;
    for (int l = 2; l <= num_layers(); ++l) {
        acc += 1.0 / layers_[static_cast<std::size_t>(l - 1)].tolerance;
        if (u < acc) return l;
    }
    return 1;
}

Arm RMELPolicy::choose(Rng& policy_rng, Rng& region_rng) {
    if (pending_layer_ >= 0) {
        throw std::logic_error("RMELPolicy: choose() called twice without observe()");
    }
    const int raw = sample_raw_layer(policy_rng);
    int l_t = -1;
    for (int l = raw; l <= num_layers(); ++l) {
        if (!layers_[static_cast<std::size_t>(l - 1)].regions.empty()) {
            l_t = l;
            break;
        }
    }
    if (l_t < 0) {
        throw std::logic_error("RMELPolicy: top layer emptied, invariant violated");
    }

    Layer& layer = layers_[static_cast<std::size_t>(l_t - 1)];
    std::size_t best = 0;
    for (std::size_t i = 1; i < layer.regions.size(); ++i) {
        if (layer.regions[i].n < layer.regions[best].n) best = i;
    }
    pending_layer_ = l_t - 1;
    pending_region_ = static_cast<int>(best);
    return sample_arm_in_region(layer.regions[best].region, region_rng,
                                params_.center_mode);
}

void RMELPolicy::observe(double y) {
    if (pending_layer_ < 0) {
        throw std::logic_error("RMELPolicy: observe() without a pending pull");
    }
    const int layer_idx = pending_layer_;
    pending_layer_ = -1;
    layer_round_update(layer_idx, y);
}

void RMELPolicy::layer_round_update(int layer_idx, double y) {
    Layer& layer = layers_[static_cast<std::size_t>(layer_idx)];
    RegionStat& stat = layer.regions[static_cast<std::size_t>(pending_region_)];
    pending_region_ = -1;

    layer.rounds_in_epoch += 1;
    stat.n += 1;
    stat.f = (stat.f * static_cast<double>(stat.n - 1) + y) / static_cast<double>(stat.n);

    if (params_.variant == RMELVariant::EpochElim) {
        if (epoch_complete(layer)) maybe_advance_epoch(layer_idx, /*eliminate_first=*/true);
    } else {
        round_elimination(layer_idx);
        if (!layer.regions.empty() && epoch_complete(layer)) {
            maybe_advance_epoch(layer_idx, /*eliminate_first=*/false);
        }
    }
}

bool RMELPolicy::epoch_complete(const Layer& layer) const {
    const double quota = epoch_quota(layer.epoch);
    for (const RegionStat& s : layer.regions) {
        if (static_cast<double>(s.n) < quota) return false;
    }
    return !layer.regions.empty();
}

void RMELPolicy::epoch_elimination(int layer_idx) {
    Layer& layer = layers_[static_cast<std::size_t>(layer_idx)];
    double f_star = -std::numeric_limits<double>::infinity();
    for (const RegionStat& s : layer.regions) f_star = std::max(f_star, s.f);
    const double threshold = elim_threshold(layer.epoch);

    // Single pass over the pre-elimination set; all removals are simultaneous.
    std::vector<RegionStat> survivors;
    survivors.reserve(layer.regions.size());
    std::vector<Region> eliminated;
    for (RegionStat& s : layer.regions) {
        if (f_star - s.f > threshold) {
            eliminated.push_back(s.region);
        } else {
            survivors.push_back(std::move(s));
        }
    }
    layer.regions = std::move(survivors);
    for (const Region& r : eliminated) cross_layer_eliminate(r, layer_idx);
}

void RMELPolicy::round_elimination(int layer_idx) {
    Layer& layer = layers_[static_cast<std::size_t>(layer_idx)];
    long long n_star = std::numeric_limits<long long>::max();
    double f_star = -std::numeric_limits<double>::infinity();
    for (const RegionStat& s : layer.regions) {
        n_star = std::min(n_star, s.n);
        f_star = std::max(f_star, s.f);
    }
    // No elimination until every region has been pulled since the refresh.
    if (n_star < 1) return;
    const double threshold = round_elim_threshold(layer.epoch, n_star);

    std::vector<RegionStat> survivors;
    survivors.reserve(layer.regions.size());
    std::vector<Region> eliminated;
    for (RegionStat& s : layer.regions) {
        if (f_star - s.f > threshold) {
            eliminated.push_back(s.region);
        } else {
            survivors.push_back(std::move(s));
        }
    }
    layer.regions = std::move(survivors);
    for (const Region& r : eliminated) cross_layer_eliminate(r, layer_idx);
}

void RMELPolicy::maybe_advance_epoch(int layer_idx, bool eliminate_first) {
    if (eliminate_first) epoch_elimination(layer_idx);
    refine_layer(layer_idx);
}

void RMELPolicy::refine_layer(int layer_idx) {
    Layer& layer = layers_[static_cast<std::size_t>(layer_idx)];
    std::vector<RegionStat> next;
    next.reserve(layer.regions.size() << params_.dim);
    for (const RegionStat& s : layer.regions) {
        for (Region& child : refine_region(s.region)) {
            next.push_back({std::move(child), 0, 0.0});
        }
    }
    if (next.size() > params_.region_cap) {
        throw std::runtime_error("RMEL: refinement exceeds region cap");
    }
    layer.regions = std::move(next);
    layer.rounds_in_epoch = 0;
    layer.epoch += 1;
}

void RMELPolicy::cross_layer_eliminate(const Region& removed, int from_layer_idx) {
    for (int l = 0; l < from_layer_idx; ++l) {
        auto& regions = layers_[static_cast<std::size_t>(l)].regions;
        regions.erase(std::remove_if(regions.begin(), regions.end(),
                                     [&](const RegionStat& s) {
                                         return region_contains(removed, s.region);
                                     }),
                      regions.end());
    }
}

}  // namespace lipband
