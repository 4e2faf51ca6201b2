#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lipband/adversary.hpp"
#include "lipband/environment.hpp"
#include "lipband/metric_space.hpp"
#include "lipband/rmel.hpp"

namespace lipband {

enum class AlgoKind { Zooming, RobustZooming, RMEL, RMELAlt, BoB };

struct ExperimentConfig {
    AlgoKind algo = AlgoKind::RMEL;
    RewardKind reward = RewardKind::Triangle;
    AttackKind attack = AttackKind::None;
    AdversaryMode adversary = AdversaryMode::Strong;
    double budget = 0.0;        // adversary's total budget C
    double known_budget = 0.0;  // C assumed by Robust Zooming
    long long horizon = 0;      // 0 = default for the reward's dimension
    double delta = 0.01;
    double sigma = 0.1;
    int reps = 20;
    std::uint64_t base_seed = 20240601;
    long long stride = 50;

    double rmel_base = 2.0;  // B
    RMELVariant rmel_variant = RMELVariant::EpochElim;
    bool bob_restart = true;
    int grid_depth = 0;  // 0 = default for the dimension
    bool capped = true;
    bool sigma_adjust = true;
    Metric metric = Metric::LInf;
    bool center_mode = false;

    double lb_epsilon = 0.25;
    int lb_cell = 1;
    int lb_dim = 1;

    double rmel_quota_mult = 1.0;
    double rmel_bias_mult = 0.5;
    double rmel_noise_mult = 2.0;

    std::string out_dir = "out";
    std::string preset;

    bool keep_round_log = false;

    int dim() const;
    long long horizon_resolved() const;
    int grid_depth_resolved() const;

    bool operator==(const ExperimentConfig&) const = default;
};

// Throws std::invalid_argument with a descriptive message on bad values or
// invalid combinations.
void validate(const ExperimentConfig& cfg);

// Flags override file values override defaults. `args` holds "--key value"
// pairs; "--config <path>" loads a flat "key = value" file first. Unknown
// keys are errors.
ExperimentConfig parse_config(const std::vector<std::string>& args);

// Resolved "key = value" lines covering every parameter, defaults included.
// parse_config on these lines reproduces the config exactly.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);
std::string emit_config_file(const ExperimentConfig& cfg);

std::string to_string(AlgoKind a);
std::string to_string(RewardKind r);
std::string to_string(Metric m);
std::string to_string(RMELVariant v);

// Experiment grids: "paper-strong", "paper-weak", "smoke".
std::vector<ExperimentConfig> preset(const std::string& name);

// Subdirectory name identifying a preset cell.
std::string cell_name(const ExperimentConfig& cfg);

}  // namespace lipband
