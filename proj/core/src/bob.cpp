#include "lipband/bob.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lipband {

Exp3PState::Exp3PState(int num_arms, long long horizon, double delta)
    : weights_(static_cast<std::size_t>(num_arms), 1.0), horizon_(horizon) {
    if (num_arms < 1) throw std::invalid_argument("Exp3PState: need at least one arm");
    const double n = static_cast<double>(num_arms);
    const double t = static_cast<double>(horizon);
    alpha_ = 2.0 * std::sqrt(std::log(3.0 * n * t / delta));
    gamma_ = std::min(3.0 / 5.0, 2.0 * std::sqrt(3.0 * n * std::log(n) / (5.0 * t)));
}

std::vector<double> Exp3PState::probs() const {
    const double n = static_cast<double>(weights_.size());
    double sum = 0.0;
    for (double w : weights_) sum += w;
    std::vector<double> p(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        p[i] = (1.0 - gamma_) * (weights_[i] / sum) + gamma_ / n;
    }
    return p;
}

void Exp3PState::update(int index, double normalized_reward, double prob_of_index) {
    const double n = static_cast<double>(weights_.size());
    const double t = static_cast<double>(horizon_);
    const double bonus = alpha_ / (prob_of_index * std::sqrt(n * t));
    double exponent = gamma_ / (3.0 * n) * (normalized_reward + bonus);
    exponent = std::clamp(exponent, -50.0, 50.0);
    weights_[static_cast<std::size_t>(index)] *= std::exp(exponent);
    // Rescale when weights grow large; probabilities are scale-invariant.
    double max_w = 0.0;
    for (double w : weights_) max_w = std::max(max_w, w);
    if (max_w > 1e100) {
        for (double& w : weights_) w /= max_w;
    }
}

BoBPolicy::BoBPolicy(BoBParams params)
    : params_(params),
      num_bases_(static_cast<int>(
          std::ceil(std::log2(static_cast<double>(std::max<long long>(2, params.horizon)))))),
      exp3p_(static_cast<int>(std::ceil(
                 std::log2(static_cast<double>(std::max<long long>(2, params.horizon))))),
             params.horizon, params.delta) {
    if (params_.horizon < 2) throw std::invalid_argument("BoBPolicy: horizon must be >= 2");
    const double t = static_cast<double>(params_.horizon);
    const double exponent =
        (static_cast<double>(params_.dim) + 2.0) / (static_cast<double>(params_.dim) + 4.0);
    batch_length_ = std::max<long long>(1, static_cast<long long>(std::floor(std::pow(t, exponent))));
    const double h = static_cast<double>(batch_length_);
    normalizer_ = 2.0 * h + std::sqrt(2.0 * h * std::log(12.0 * t / (h * params_.delta)));
}

std::unique_ptr<ZoomingPolicy> BoBPolicy::make_base(int index) const {
    ZoomingParams base = params_.base;
    base.horizon = params_.horizon;
    base.delta = params_.delta / 3.0;
    base.dim = params_.dim;
    base.known_budget = std::ldexp(1.0, index + 1);  // budgets {2^i}, i = 1..N
    return std::make_unique<ZoomingPolicy>(base);
}

Arm BoBPolicy::choose(Rng& policy_rng, Rng& region_rng) {
    if (t_ % batch_length_ == 0) {
        // Batch start: recompute probabilities and draw the base index.
        const std::vector<double> p = exp3p_.probs();
        const double u = policy_rng.uniform();
        double acc = 0.0;
        current_ = num_bases_ - 1;
        for (int i = 0; i < num_bases_; ++i) {
            acc += p[static_cast<std::size_t>(i)];
            if (u < acc) {
                current_ = i;
                break;
            }
        }
        current_prob_ = p[static_cast<std::size_t>(current_)];
        batch_reward_ = 0.0;
        if (params_.restart_each_batch || !base_) {
            base_ = make_base(current_);
        } else {
            base_->set_known_budget(std::ldexp(1.0, current_ + 1));
        }
    }
    return base_->choose(policy_rng, region_rng);
}

void BoBPolicy::observe(double y) {
    base_->observe(y);
    batch_reward_ += y;
    t_ += 1;
    if (t_ % batch_length_ == 0 || t_ == params_.horizon) {
        const double s = batch_reward_ / (current_prob_ * normalizer_);
        exp3p_.update(current_, s, current_prob_);
    }
}

}  // namespace lipband
