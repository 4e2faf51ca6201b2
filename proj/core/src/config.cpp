#include "lipband/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lipband {

int ExperimentConfig::dim() const {
    switch (reward) {
        case RewardKind::Triangle:
        case RewardKind::Sine:
            return 1;
        case RewardKind::TwoDim:
            return 2;
        case RewardKind::LowerBound:
            return lb_dim;
        case RewardKind::Custom:
            return lb_dim;
    }
    return 1;
}

long long ExperimentConfig::horizon_resolved() const {
    if (horizon > 0) return horizon;
    return dim() >= 2 ? 60000 : 50000;
}

int ExperimentConfig::grid_depth_resolved() const {
    if (grid_depth > 0) return grid_depth;
    return dim() >= 2 ? 7 : 12;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.delta <= 0.0 || cfg.delta >= 1.0) {
        throw std::invalid_argument("delta must be in (0,1), got " + std::to_string(cfg.delta));
    }
    if (cfg.sigma < 0.0 || !std::isfinite(cfg.sigma)) {
        throw std::invalid_argument("sigma must be finite and >= 0");
    }
    if (cfg.reps < 1) throw std::invalid_argument("reps must be >= 1");
    if (cfg.stride < 1) throw std::invalid_argument("stride must be >= 1");
    if (cfg.horizon_resolved() < 1) throw std::invalid_argument("horizon must be >= 1");
    if (cfg.budget < 0.0) throw std::invalid_argument("budget must be >= 0");
    if (cfg.budget > static_cast<double>(cfg.horizon_resolved())) {
        throw std::invalid_argument("budget C must not exceed the horizon T");
    }
    if (cfg.known_budget < 0.0) throw std::invalid_argument("known-budget must be >= 0");
    if (cfg.rmel_base <= 1.0) throw std::invalid_argument("B must exceed 1");
    if (cfg.attack == AttackKind::Garcelon && cfg.dim() > 2) {
        throw std::invalid_argument("garcelon attack with d = " + std::to_string(cfg.dim()) +
                                    ": no target region defined");
    }
    if (cfg.attack == AttackKind::LowerBound) {
        if (cfg.adversary == AdversaryMode::Weak) {
            throw std::invalid_argument("the lower-bound attack is strong-only");
        }
        if (cfg.reward != RewardKind::LowerBound) {
            throw std::invalid_argument(
                "the lower-bound attack requires --reward lower-bound");
        }
    }
    if (cfg.reward == RewardKind::LowerBound) {
        if (cfg.lb_epsilon <= 0.0 || cfg.lb_epsilon > 0.5) {
            throw std::invalid_argument("lb-epsilon must be in (0, 0.5]");
        }
        if (cfg.lb_dim < 1 || cfg.lb_dim > 3) {
            throw std::invalid_argument("lb-dim must be 1, 2 or 3");
        }
    }
    if (cfg.metric == Metric::L2 && cfg.dim() > 2) {
        throw std::invalid_argument("the L2 metric is supported for d <= 2 only");
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw std::invalid_argument(key + ": expected on/off, got '" + v + "'");
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw std::invalid_argument(key + ": expected a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw std::invalid_argument(key + ": expected an integer, got '" + v + "'");
    }
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "algo") {
        if (value == "zooming") cfg.algo = AlgoKind::Zooming;
        else if (value == "robust-zooming") cfg.algo = AlgoKind::RobustZooming;
        else if (value == "rmel") cfg.algo = AlgoKind::RMEL;
        else if (value == "rmel-alt") cfg.algo = AlgoKind::RMELAlt;
        else if (value == "bob") cfg.algo = AlgoKind::BoB;
        else throw std::invalid_argument("algo: unknown algorithm '" + value + "'");
    } else if (key == "reward") {
        if (value == "triangle") cfg.reward = RewardKind::Triangle;
        else if (value == "sine") cfg.reward = RewardKind::Sine;
        else if (value == "twodim") cfg.reward = RewardKind::TwoDim;
        else if (value == "lower-bound") cfg.reward = RewardKind::LowerBound;
        else throw std::invalid_argument("reward: unknown reward '" + value + "'");
    } else if (key == "attack") {
        if (value == "none") cfg.attack = AttackKind::None;
        else if (value == "oracle") cfg.attack = AttackKind::Oracle;
        else if (value == "garcelon") cfg.attack = AttackKind::Garcelon;
        else if (value == "lower-bound") cfg.attack = AttackKind::LowerBound;
        else throw std::invalid_argument("attack: unknown attack '" + value + "'");
    } else if (key == "adversary") {
        if (value == "weak") cfg.adversary = AdversaryMode::Weak;
        else if (value == "strong") cfg.adversary = AdversaryMode::Strong;
        else throw std::invalid_argument("adversary: expected weak or strong");
    } else if (key == "metric") {
        if (value == "linf") cfg.metric = Metric::LInf;
        else if (value == "l2") cfg.metric = Metric::L2;
        else throw std::invalid_argument("metric: expected linf or l2");
    } else if (key == "rmel-variant") {
        if (value == "epoch") cfg.rmel_variant = RMELVariant::EpochElim;
        else if (value == "round") cfg.rmel_variant = RMELVariant::RoundElim;
        else throw std::invalid_argument("rmel-variant: expected epoch or round");
    } else if (key == "arm-mode") {
        if (value == "uniform") cfg.center_mode = false;
        else if (value == "center") cfg.center_mode = true;
        else throw std::invalid_argument("arm-mode: expected uniform or center");
    } else if (key == "budget") {
        cfg.budget = parse_double(key, value);
    } else if (key == "known-budget") {
        cfg.known_budget = parse_double(key, value);
    } else if (key == "horizon") {
        cfg.horizon = parse_int(key, value);
    } else if (key == "delta") {
        cfg.delta = parse_double(key, value);
    } else if (key == "sigma") {
        cfg.sigma = parse_double(key, value);
    } else if (key == "reps") {
        cfg.reps = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
        cfg.base_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "stride") {
        cfg.stride = parse_int(key, value);
    } else if (key == "B") {
        cfg.rmel_base = parse_double(key, value);
    } else if (key == "bob-restart") {
        cfg.bob_restart = parse_bool(key, value);
    } else if (key == "grid-depth") {
        cfg.grid_depth = static_cast<int>(parse_int(key, value));
    } else if (key == "capped") {
        cfg.capped = parse_bool(key, value);
    } else if (key == "sigma-adjust") {
        cfg.sigma_adjust = parse_bool(key, value);
    } else if (key == "lb-epsilon") {
        cfg.lb_epsilon = parse_double(key, value);
    } else if (key == "lb-cell") {
        cfg.lb_cell = static_cast<int>(parse_int(key, value));
    } else if (key == "lb-dim") {
        cfg.lb_dim = static_cast<int>(parse_int(key, value));
    } else if (key == "rmel-quota-mult") {
        cfg.rmel_quota_mult = parse_double(key, value);
    } else if (key == "rmel-bias-mult") {
        cfg.rmel_bias_mult = parse_double(key, value);
    } else if (key == "rmel-noise-mult") {
        cfg.rmel_noise_mult = parse_double(key, value);
    } else if (key == "out") {
        cfg.out_dir = value;
    } else if (key == "preset") {
        cfg.preset = value;
    } else {
        throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        }
        kv[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
    }
    return kv;
}

}  // namespace

ExperimentConfig parse_config(const std::vector<std::string>& args) {
    std::vector<std::pair<std::string, std::string>> flag_kv;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string key = args[i];
        if (key.rfind("--", 0) != 0) {
            throw std::invalid_argument("expected a --flag, got '" + key + "'");
        }
        key = key.substr(2);
        if (i + 1 >= args.size()) {
            throw std::invalid_argument("flag --" + key + " is missing a value");
        }
        const std::string value = args[++i];
        if (key == "config") {
            config_path = value;
        } else {
            flag_kv.emplace_back(key, value);
        }
    }

    ExperimentConfig cfg;
    if (!config_path.empty()) {
        for (const auto& [k, v] : read_config_file(config_path)) apply_key(cfg, k, v);
    }
    for (const auto& [k, v] : flag_kv) apply_key(cfg, k, v);
    validate(cfg);
    return cfg;
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("algo", to_string(cfg.algo));
    kv.emplace_back("reward", to_string(cfg.reward));
    kv.emplace_back("attack", to_string(cfg.attack));
    kv.emplace_back("adversary", to_string(cfg.adversary));
    kv.emplace_back("budget", fmt_double(cfg.budget));
    kv.emplace_back("known-budget", fmt_double(cfg.known_budget));
    kv.emplace_back("horizon", std::to_string(cfg.horizon));
    kv.emplace_back("delta", fmt_double(cfg.delta));
    kv.emplace_back("sigma", fmt_double(cfg.sigma));
    kv.emplace_back("reps", std::to_string(cfg.reps));
    kv.emplace_back("seed", std::to_string(cfg.base_seed));
    kv.emplace_back("stride", std::to_string(cfg.stride));
    kv.emplace_back("B", fmt_double(cfg.rmel_base));
    kv.emplace_back("rmel-variant", to_string(cfg.rmel_variant));
    kv.emplace_back("bob-restart", cfg.bob_restart ? "on" : "off");
    kv.emplace_back("grid-depth", std::to_string(cfg.grid_depth));
    kv.emplace_back("capped", cfg.capped ? "on" : "off");
    kv.emplace_back("sigma-adjust", cfg.sigma_adjust ? "on" : "off");
    kv.emplace_back("metric", to_string(cfg.metric));
    kv.emplace_back("arm-mode", cfg.center_mode ? "center" : "uniform");
    kv.emplace_back("lb-epsilon", fmt_double(cfg.lb_epsilon));
    kv.emplace_back("lb-cell", std::to_string(cfg.lb_cell));
    kv.emplace_back("lb-dim", std::to_string(cfg.lb_dim));
    kv.emplace_back("rmel-quota-mult", fmt_double(cfg.rmel_quota_mult));
    kv.emplace_back("rmel-bias-mult", fmt_double(cfg.rmel_bias_mult));
    kv.emplace_back("rmel-noise-mult", fmt_double(cfg.rmel_noise_mult));
    kv.emplace_back("out", cfg.out_dir);
    if (!cfg.preset.empty()) kv.emplace_back("preset", cfg.preset);
    return kv;
}

std::string emit_config_file(const ExperimentConfig& cfg) {
    std::ostringstream out;
    for (const auto& [k, v] : config_entries(cfg)) out << k << " = " << v << "\n";
    return out.str();
}

std::string to_string(AlgoKind a) {
    switch (a) {
        case AlgoKind::Zooming: return "zooming";
        case AlgoKind::RobustZooming: return "robust-zooming";
        case AlgoKind::RMEL: return "rmel";
        case AlgoKind::RMELAlt: return "rmel-alt";
        case AlgoKind::BoB: return "bob";
    }
    return "?";
}

std::string to_string(RewardKind r) {
    switch (r) {
        case RewardKind::Triangle: return "triangle";
        case RewardKind::Sine: return "sine";
        case RewardKind::TwoDim: return "twodim";
        case RewardKind::LowerBound: return "lower-bound";
        case RewardKind::Custom: return "custom";
    }
    return "?";
}

std::string to_string(Metric m) { return m == Metric::LInf ? "linf" : "l2"; }

std::string to_string(RMELVariant v) {
    return v == RMELVariant::EpochElim ? "epoch" : "round";
}

std::string cell_name(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << to_string(cfg.algo) << "_" << to_string(cfg.reward) << "_"
        << to_string(cfg.attack) << "_" << to_string(cfg.adversary) << "_C"
        << static_cast<long long>(cfg.budget);
    return out.str();
}

}  // namespace lipband
