#include "lipband/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lipband/bob.hpp"
#include "lipband/zooming.hpp"

namespace lipband {

RewardFunction make_reward(const ExperimentConfig& cfg) {
    switch (cfg.reward) {
        case RewardKind::Triangle: return RewardFunction::triangle();
        case RewardKind::Sine: return RewardFunction::sine();
        case RewardKind::TwoDim: return RewardFunction::two_dim();
        case RewardKind::LowerBound:
            return RewardFunction::lower_bound(cfg.lb_dim, cfg.lb_epsilon, cfg.lb_cell);
        case RewardKind::Custom:
            throw std::invalid_argument("make_reward: custom rewards are in-process only");
    }
    throw std::logic_error("make_reward: unknown reward kind");
}

AttackSpec make_attack_spec(const ExperimentConfig& cfg) {
    AttackSpec spec;
    spec.kind = cfg.attack;
    spec.adversary = cfg.adversary;
    spec.budget = cfg.budget;
    const int d = cfg.dim();
    if (cfg.attack == AttackKind::Garcelon) {
        if (d == 1) {
            spec.target_lo = {0.5};
            spec.target_hi = {1.0};
        } else if (d == 2) {
            spec.target_lo = {0.0, 0.0};
            spec.target_hi = {0.5, 0.5};
        } else {
            throw std::invalid_argument(
                "Garcelon attack: no target region defined for d = " + std::to_string(d));
        }
    }
    if (cfg.attack == AttackKind::LowerBound) {
        const RewardFunction f = make_reward(cfg);
        if (f.kind != RewardKind::LowerBound) {
            throw std::invalid_argument(
                "lower-bound attack requires the lower-bound reward instance");
        }
        spec.lb_lo = f.lb_lo;
        spec.lb_epsilon = f.lb_epsilon;
        spec.fire_prob = 1.0;
    }
    return spec;
}

std::unique_ptr<Policy> make_policy(const ExperimentConfig& cfg) {
    const double sigma_scale = cfg.sigma_adjust ? cfg.sigma : 1.0;
    switch (cfg.algo) {
        case AlgoKind::Zooming:
        case AlgoKind::RobustZooming: {
            ZoomingParams p;
            p.horizon = cfg.horizon_resolved();
            p.delta = cfg.delta;
            p.known_budget = cfg.algo == AlgoKind::RobustZooming ? cfg.known_budget : 0.0;
            p.capped = cfg.capped;
            p.sigma = sigma_scale;
            p.corruption_scale = sigma_scale;
            p.dim = cfg.dim();
            p.grid_depth = cfg.grid_depth_resolved();
            p.metric = cfg.metric;
            return std::make_unique<ZoomingPolicy>(p);
        }
        case AlgoKind::RMEL:
        case AlgoKind::RMELAlt: {
            RMELParams p;
            p.horizon = cfg.horizon_resolved();
            p.delta = cfg.delta;
            p.base = cfg.rmel_base;
            p.dim = cfg.dim();
            p.variant = cfg.algo == AlgoKind::RMELAlt ? RMELVariant::RoundElim
                                                      : cfg.rmel_variant;
            p.sigma_adjust = cfg.sigma_adjust;
            p.sigma = cfg.sigma;
            p.quota_mult = cfg.rmel_quota_mult;
            p.bias_mult = cfg.rmel_bias_mult;
            p.noise_mult = cfg.rmel_noise_mult;
            p.center_mode = cfg.center_mode;
            return std::make_unique<RMELPolicy>(p);
        }
        case AlgoKind::BoB: {
            BoBParams p;
            p.horizon = cfg.horizon_resolved();
            p.delta = cfg.delta;
            p.dim = cfg.dim();
            p.restart_each_batch = cfg.bob_restart;
            p.base.capped = cfg.capped;
            p.base.sigma = sigma_scale;
            p.base.corruption_scale = sigma_scale;
            p.base.coverage_uses_corruption = false;
            p.base.grid_depth = cfg.grid_depth_resolved();
            p.base.metric = cfg.metric;
            return std::make_unique<BoBPolicy>(p);
        }
    }
    throw std::logic_error("make_policy: unknown algorithm");
}

namespace {

struct RunContext {
    RewardFunction reward;
    AdversaryContext adv_ctx;
    AttackSpec attack_spec;
    double mu_star = 0.0;
};

RunContext build_run_context(const ExperimentConfig& cfg) {
    RunContext ctx;
    ctx.reward = make_reward(cfg);
    ctx.attack_spec = make_attack_spec(cfg);
    ctx.adv_ctx = make_adversary_context(ctx.reward, cfg.metric, cfg.sigma, ctx.attack_spec);
    ctx.mu_star = ctx.adv_ctx.mu_star;
    return ctx;
}

RegretTrace run_once_with_context(const ExperimentConfig& cfg, const RunContext& ctx,
                                  std::uint64_t seed) {
    const long long horizon = cfg.horizon_resolved();
    auto policy = make_policy(cfg);
    if (policy->dim() != ctx.reward.dim) {
        throw std::invalid_argument("run_once: policy/reward dimension mismatch");
    }

    Rng noise_rng = derive_stream(seed, StreamTag::Noise);
    Rng adversary_rng = derive_stream(seed, StreamTag::Adversary);
    Rng policy_rng = derive_stream(seed, StreamTag::Policy);
    Rng region_rng = derive_stream(seed, StreamTag::RegionSampling);

    const Adversary adversary(ctx.attack_spec, ctx.adv_ctx);
    BudgetLedger ledger;
    ledger.total = cfg.budget;
    ledger.mode = cfg.adversary;

    const bool attacked = cfg.attack != AttackKind::None;
    const bool weak = cfg.adversary == AdversaryMode::Weak;

    RegretTrace trace;
    trace.ts.reserve(static_cast<std::size_t>((horizon + cfg.stride - 1) / cfg.stride));
    double cum = 0.0;
    for (long long t = 1; t <= horizon; ++t) {
        WeakRoundPlan plan;
        if (attacked && weak) {
            // The weak adversary commits its corruption map before the pull.
            plan = adversary.weak_round(ledger, adversary_rng);
        }

        const Arm x = policy->choose(policy_rng, region_rng);
        const double mu_x = mean_reward(ctx.reward, x);
        const double raw =
            cfg.sigma > 0.0 ? mu_x + cfg.sigma * noise_rng.gaussian() : mu_x;

        double obs = raw;
        if (attacked && weak) {
            obs = raw + plan.corruption_at(x, mu_x);
        } else if (attacked) {
            obs = adversary.strong_round(x, mu_x, raw, ledger, adversary_rng).observation;
        }
        policy->observe(obs);

        // Regret always uses the true, uncorrupted mean reward.
        cum += std::max(0.0, ctx.mu_star - mu_x);

        if (cfg.keep_round_log) {
            trace.pulled_arms.push_back(x);
            trace.raw_observations.push_back(raw);
            trace.corrupted_observations.push_back(obs);
        }
        if (t % cfg.stride == 0 || t == horizon) {
            trace.ts.push_back(t);
            trace.cum_regret.push_back(cum);
            trace.budget_spent.push_back(ledger.spent);
        }
    }
    trace.final_regret = cum;
    trace.final_spent = ledger.spent;
    return trace;
}

}  // namespace

RegretTrace run_once(const ExperimentConfig& cfg, std::uint64_t seed) {
    validate(cfg);
    const RunContext ctx = build_run_context(cfg);
    return run_once_with_context(cfg, ctx, seed);
}

AggregateResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const RunContext ctx = build_run_context(cfg);

    AggregateResult out;
    out.reps = cfg.reps;
    out.seeds.resize(static_cast<std::size_t>(cfg.reps));
    out.traces.resize(static_cast<std::size_t>(cfg.reps));
    for (int r = 0; r < cfg.reps; ++r) {
        out.seeds[static_cast<std::size_t>(r)] = cfg.base_seed + static_cast<std::uint64_t>(r);
    }

    // At least two workers whenever there is more than one rep, so the
    // parallel path is always exercised; determinism comes from slot-indexed
    // writes, not scheduling.
    unsigned hw = std::thread::hardware_concurrency();
    if (hw < 2) hw = 2;
    const unsigned n_threads = std::min<unsigned>(hw, static_cast<unsigned>(cfg.reps));
    if (n_threads <= 1) {
        for (int r = 0; r < cfg.reps; ++r) {
            out.traces[static_cast<std::size_t>(r)] =
                run_once_with_context(cfg, ctx, out.seeds[static_cast<std::size_t>(r)]);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) {
            pool.emplace_back([&, w]() {
                for (int r = static_cast<int>(w); r < cfg.reps;
                     r += static_cast<int>(n_threads)) {
                    out.traces[static_cast<std::size_t>(r)] =
                        run_once_with_context(cfg, ctx, out.seeds[static_cast<std::size_t>(r)]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    out.final_regrets.resize(static_cast<std::size_t>(cfg.reps));
    double sum = 0.0;
    for (int r = 0; r < cfg.reps; ++r) {
        out.final_regrets[static_cast<std::size_t>(r)] =
            out.traces[static_cast<std::size_t>(r)].final_regret;
        sum += out.final_regrets[static_cast<std::size_t>(r)];
    }
    out.mean_final_regret = sum / cfg.reps;
    if (cfg.reps > 1) {
        double ss = 0.0;
        for (double v : out.final_regrets) {
            const double d = v - out.mean_final_regret;
            ss += d * d;
        }
        out.std_final_regret = std::sqrt(ss / (cfg.reps - 1));
    }

    out.ts = out.traces.front().ts;
    out.mean_cum_regret.assign(out.ts.size(), 0.0);
    for (const RegretTrace& tr : out.traces) {
        for (std::size_t i = 0; i < out.ts.size(); ++i) {
            out.mean_cum_regret[i] += tr.cum_regret[i];
        }
    }
    for (double& v : out.mean_cum_regret) v /= cfg.reps;
    return out;
}

}  // namespace lipband
