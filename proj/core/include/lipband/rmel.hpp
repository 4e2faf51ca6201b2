#pragma once

#include <vector>

#include "lipband/policy.hpp"

namespace lipband {

enum class RMELVariant { EpochElim, RoundElim };

struct RMELParams {
    long long horizon = 50000;
    double delta = 0.01;
    double base = 2.0;  // tolerance ratio B between adjacent layers
    int dim = 1;
    RMELVariant variant = RMELVariant::EpochElim;

    // When set, the deviation terms in the epoch quota and elimination
    // threshold are scaled to the known noise level instead of the paper's
    // sigma = 1 convention. The unadjusted forms are exactly
    // quota = ceil(6 ln(4T/delta) 4^m) and threshold = 4/2^m.
    bool sigma_adjust = true;
    double sigma = 0.1;
    double quota_mult = 1.0;  // extra factor on the sigma-adjusted quota
    double bias_mult = 0.5;   // coefficient of the 2^-m bias term in the threshold
    double noise_mult = 2.0;  // noise quantile in the sigma-adjusted threshold

    bool center_mode = false;  // pull region centers instead of uniform samples
    std::size_t region_cap = kDefaultRegionCap;
};

// Multi-layer elimination policy. Layers run in parallel with geometrically
// increasing corruption tolerance v_l = ln(4T/delta) B^(l-1); a round samples
// layer l with probability 1/v_l (remaining mass to layer 1), pulls the
// least-pulled region of the first nonempty layer at or above it, and at
// epoch boundaries eliminates regions whose mean falls too far below the
// layer's best, propagating each elimination to all lower layers.
class RMELPolicy : public Policy {
public:
    explicit RMELPolicy(RMELParams params);

    Arm choose(Rng& policy_rng, Rng& region_rng) override;
    void observe(double y) override;
    int dim() const override { return params_.dim; }

    struct RegionStat {
        Region region;
        long long n = 0;
        double f = 0.0;
    };

    struct Layer {
        double tolerance = 0.0;       // v_l
        int epoch = 1;                // m_l
        long long rounds_in_epoch = 0;  // n_l
        std::vector<RegionStat> regions;  // sorted by region id, common depth
    };

    static int compute_num_layers(long long horizon, double delta, double base);

    int num_layers() const { return static_cast<int>(layers_.size()); }
    const std::vector<Layer>& layers() const { return layers_; }
    const RMELParams& params() const { return params_; }

    double epoch_quota(int epoch) const;
    double elim_threshold(int epoch) const;
    double round_elim_threshold(int epoch, long long n_star) const;

    // Index drawn from {1..l*} with p(l) = 1/v_l for l >= 2 and the remaining
    // mass on l = 1; exposed for distribution tests.
    int sample_raw_layer(Rng& rng) const;

private:
    void layer_round_update(int layer_idx, double y);
    void epoch_elimination(int layer_idx);
    void round_elimination(int layer_idx);
    void maybe_advance_epoch(int layer_idx, bool eliminate_first);
    void refine_layer(int layer_idx);
    void cross_layer_eliminate(const Region& removed, int from_layer_idx);
    bool epoch_complete(const Layer& layer) const;

    RMELParams params_;
    std::vector<Layer> layers_;
    double log_4t_delta_;   // ln(4T/delta)
    double dev_numerator_;  // 4 ln T + 2 ln(4/delta)

    int pending_layer_ = -1;
    int pending_region_ = -1;
};

}  // namespace lipband
