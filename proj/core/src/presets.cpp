#include "lipband/config.hpp"

#include <stdexcept>

namespace lipband {

namespace {

std::vector<ExperimentConfig> grid(AdversaryMode adversary, long long horizon_override,
                                   int reps, double budget_scale) {
    const RewardKind rewards[] = {RewardKind::Triangle, RewardKind::Sine,
                                  RewardKind::TwoDim};
    const AttackKind attacks[] = {AttackKind::Oracle, AttackKind::Garcelon};
    const double budgets[] = {0.0, 3000.0, 4500.0};
    const AlgoKind algos[] = {AlgoKind::Zooming, AlgoKind::RMEL, AlgoKind::BoB};

    std::vector<ExperimentConfig> out;
    for (RewardKind reward : rewards) {
        for (AttackKind attack : attacks) {
            for (double budget : budgets) {
                for (AlgoKind algo : algos) {
                    ExperimentConfig cfg;
                    cfg.algo = algo;
                    cfg.reward = reward;
                    cfg.attack = attack;
                    cfg.adversary = adversary;
                    cfg.budget = budget * budget_scale;
                    cfg.horizon = horizon_override;  // 0 keeps the per-dim default
                    cfg.delta = 0.01;
                    cfg.sigma = 0.1;
                    cfg.reps = reps;
                    cfg.stride = 50;
                    cfg.bob_restart = false;   // experiment setting: keep base state
                    cfg.center_mode = true;    // experiment setting: pull region centers
                    out.push_back(cfg);
                }
            }
        }
    }
    return out;
}

}  // namespace

std::vector<ExperimentConfig> preset(const std::string& name) {
    if (name == "paper-strong") {
        return grid(AdversaryMode::Strong, 0, 20, 1.0);
    }
    if (name == "paper-weak") {
        return grid(AdversaryMode::Weak, 0, 20, 1.0);
    }
    if (name == "smoke") {
        // Downscaled grid; budgets shrink with T to keep C <= T.
        return grid(AdversaryMode::Strong, 2000, 3, 2000.0 / 50000.0);
    }
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected paper-strong, paper-weak or smoke)");
}

}  // namespace lipband
