#pragma once

#include <memory>

#include "lipband/config.hpp"
#include "lipband/policy.hpp"

namespace lipband {

// Per-round regret and budget accounting for one seeded run, thinned to the
// configured stride (a row at every stride-th round plus the final round).
struct RegretTrace {
    std::vector<long long> ts;
    std::vector<double> cum_regret;
    std::vector<double> budget_spent;
    double final_regret = 0.0;
    double final_spent = 0.0;

    // Filled only when cfg.keep_round_log is set.
    std::vector<Arm> pulled_arms;
    std::vector<double> raw_observations;
    std::vector<double> corrupted_observations;
};

struct AggregateResult {
    int reps = 0;
    double mean_final_regret = 0.0;
    double std_final_regret = 0.0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> final_regrets;       // per rep
    std::vector<RegretTrace> traces;         // per rep
    std::vector<long long> ts;               // shared stride grid
    std::vector<double> mean_cum_regret;     // pointwise mean over reps
};

RewardFunction make_reward(const ExperimentConfig& cfg);
AttackSpec make_attack_spec(const ExperimentConfig& cfg);
std::unique_ptr<Policy> make_policy(const ExperimentConfig& cfg);

RegretTrace run_once(const ExperimentConfig& cfg, std::uint64_t seed);

// Runs reps seeds base_seed .. base_seed + reps - 1, possibly across threads;
// the aggregation is a deterministic reduction in rep order.
AggregateResult run_experiment(const ExperimentConfig& cfg);

}  // namespace lipband
