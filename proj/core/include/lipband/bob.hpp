#pragma once

#include <memory>
#include <vector>

#include "lipband/policy.hpp"
#include "lipband/zooming.hpp"

namespace lipband {

// EXP3.P weights over the budget guesses. Probabilities mix the normalized
// weights with gamma/N uniform exploration, so every p_i >= gamma/N.
class Exp3PState {
public:
    Exp3PState(int num_arms, long long horizon, double delta);

    std::vector<double> probs() const;

    // Only the played index's weight changes. The exponent is clamped to
    // +-50 before exponentiation to keep the weights finite.
    void update(int index, double normalized_reward, double prob_of_index);

    int num_arms() const { return static_cast<int>(weights_.size()); }
    double alpha() const { return alpha_; }
    double gamma() const { return gamma_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
    double alpha_ = 0.0;
    double gamma_ = 0.0;
    long long horizon_ = 0;
};

struct BoBParams {
    long long horizon = 50000;
    double delta = 0.01;
    int dim = 1;
    // On: a fresh Robust Zooming instance per batch, as written in the
    // pseudocode. Off (the experiment setting): one persistent instance whose
    // budget parameter swaps at batch boundaries, keeping its arm statistics.
    bool restart_each_batch = true;
    // Template for the base Robust Zooming instances; known_budget and delta
    // are overridden per base.
    ZoomingParams base;
};

// Bandit-over-bandit: an EXP3.P top layer picks one of N = ceil(log2 T)
// corruption-budget guesses {2^i} at the start of every batch of length
// H = floor(T^((d+2)/(d+4))); the chosen Robust Zooming base plays the batch
// and the batch's reward sum, normalized to [-1, 1] range, feeds the weight
// update.
class BoBPolicy : public Policy {
public:
    explicit BoBPolicy(BoBParams params);

    Arm choose(Rng& policy_rng, Rng& region_rng) override;
    void observe(double y) override;
    int dim() const override { return params_.dim; }

    int num_bases() const { return num_bases_; }
    long long batch_length() const { return batch_length_; }
    double reward_normalizer() const { return normalizer_; }
    const Exp3PState& exp3p() const { return exp3p_; }
    int current_base() const { return current_; }
    const ZoomingPolicy* base() const { return base_.get(); }

private:
    std::unique_ptr<ZoomingPolicy> make_base(int index) const;

    BoBParams params_;
    int num_bases_ = 0;
    long long batch_length_ = 1;
    double normalizer_ = 1.0;

    Exp3PState exp3p_;
    std::unique_ptr<ZoomingPolicy> base_;

    long long t_ = 0;  // completed rounds
    int current_ = -1;
    double current_prob_ = 0.0;
    double batch_reward_ = 0.0;
};

}  // namespace lipband
