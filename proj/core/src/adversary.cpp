#include "lipband/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lipband {

namespace {

double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

bool point_in_closed_box(const Arm& x, const std::vector<double>& lo,
                         const std::vector<double>& hi) {
    for (int i = 0; i < x.dim(); ++i) {
        if (x[i] < lo[static_cast<std::size_t>(i)] ||
            x[i] > hi[static_cast<std::size_t>(i)])
            return false;
    }
    return true;
}

}  // namespace

double WeakRoundPlan::corruption_at(const Arm& x, double mu_x) const {
    if (!fired) return 0.0;
    switch (kind) {
        case AttackKind::Oracle:
            if (distance(x, arm_star, metric) <= benign_radius) {
                return clamp_unit(push_target - mu_x);
            }
            return 0.0;
        case AttackKind::Garcelon:
            if (!point_in_closed_box(x, target_lo, target_hi)) {
                return clamp_unit(replacement - mu_x);
            }
            return 0.0;
        default:
            return 0.0;
    }
}

AdversaryContext make_adversary_context(const RewardFunction& f, Metric metric,
                                        double noise_sigma, const AttackSpec& spec) {
    AdversaryContext ctx;
    ctx.metric = metric;
    ctx.noise_sigma = noise_sigma;
    const OptimumCertificate cert = optimal_value(f, metric);
    ctx.arm_star = cert.arm_star;
    ctx.mu_star = cert.mu_star;
    const RewardExtrema global = reward_extrema(f);
    ctx.mu_min = global.min_value;
    ctx.mu_min_outside = global.min_value;
    ctx.mu_max_outside = global.max_value;
    if (spec.kind == AttackKind::Garcelon) {
        const RewardExtrema outside = reward_extrema(f, [&](const Arm& a) {
            return !point_in_closed_box(a, spec.target_lo, spec.target_hi);
        });
        ctx.mu_min_outside = outside.min_value;
        ctx.mu_max_outside = outside.max_value;
    }
    return ctx;
}

Adversary::Adversary(AttackSpec spec, AdversaryContext ctx)
    : spec_(std::move(spec)), ctx_(std::move(ctx)) {
    if (spec_.kind == AttackKind::Garcelon &&
        (spec_.target_lo.empty() || spec_.target_hi.empty())) {
        throw std::invalid_argument("Adversary: Garcelon attack needs a target region");
    }
    if (spec_.kind == AttackKind::LowerBound && spec_.lb_lo.empty()) {
        throw std::invalid_argument("Adversary: lower-bound attack needs a target cell");
    }
    if (spec_.kind == AttackKind::LowerBound && spec_.adversary == AdversaryMode::Weak) {
        throw std::invalid_argument("Adversary: the lower-bound attack is strong-only");
    }
    if (spec_.fire_prob < 0.0 || spec_.fire_prob > 1.0) {
        throw std::invalid_argument("Adversary: fire probability must be in [0,1]");
    }
}

bool Adversary::arm_is_benign(const Arm& x) const {
    return distance(x, ctx_.arm_star, ctx_.metric) <= spec_.benign_radius;
}

bool Adversary::arm_in_target(const Arm& x) const {
    return point_in_closed_box(x, spec_.target_lo, spec_.target_hi);
}

bool Adversary::arm_in_lb_cell(const Arm& x) const {
    for (int i = 0; i < x.dim(); ++i) {
        const double lo = spec_.lb_lo[static_cast<std::size_t>(i)];
        if (x[i] < lo || x[i] >= lo + spec_.lb_epsilon) return false;
    }
    return true;
}

RoundCorruption Adversary::strong_round(const Arm& x, double mu_x, double raw,
                                        BudgetLedger& ledger, Rng& rng) const {
    RoundCorruption out;
    out.observation = raw;
    if (spec_.kind == AttackKind::None || spec_.budget <= 0.0) {
        ledger.log_zero();
        return out;
    }

    double desired = raw;
    bool condition = false;
    switch (spec_.kind) {
        case AttackKind::Oracle:
            condition = arm_is_benign(x) && rng.bernoulli(spec_.fire_prob);
            if (condition) {
                desired = (ctx_.mu_min - spec_.margin) + ctx_.noise_sigma * rng.gaussian();
            }
            break;
        case AttackKind::Garcelon:
            condition = !arm_in_target(x) && rng.bernoulli(spec_.fire_prob);
            if (condition) {
                desired = spec_.garcelon_sigma * rng.gaussian();
            }
            break;
        case AttackKind::LowerBound:
            condition = arm_in_lb_cell(x);
            if (condition) {
                // App-A.5 accounting: observation forced to zero, charged the
                // expected shift mu(x) <= eps/2.
                const double charge = std::fabs(mu_x);
                if (ledger.try_charge(charge)) {
                    out.applies = true;
                    out.observation = 0.0;
                    out.charge = charge;
                } else {
                    ledger.log_zero();
                }
                return out;
            }
            break;
        default:
            break;
    }
    if (!condition) {
        ledger.log_zero();
        return out;
    }

    const double corruption = clamp_unit(desired - raw);
    const double charge = std::fabs(corruption);
    if (!ledger.try_charge(charge)) {
        ledger.log_zero();
        return out;
    }
    out.applies = true;
    out.observation = raw + corruption;
    out.charge = charge;
    return out;
}

WeakRoundPlan Adversary::weak_round(BudgetLedger& ledger, Rng& rng) const {
    WeakRoundPlan plan;
    plan.kind = spec_.kind;
    plan.metric = ctx_.metric;
    plan.arm_star = ctx_.arm_star;
    plan.benign_radius = spec_.benign_radius;
    plan.target_lo = spec_.target_lo;
    plan.target_hi = spec_.target_hi;

    if (spec_.kind == AttackKind::None || spec_.budget <= 0.0 ||
        !rng.bernoulli(spec_.fire_prob)) {
        ledger.log_zero();
        return plan;
    }

    double charge = 0.0;
    switch (spec_.kind) {
        case AttackKind::Oracle: {
            plan.push_target = ctx_.mu_min - spec_.margin;
            // Sup over the benign set is attained at x*: mu is largest there.
            charge = std::min(1.0, std::fabs(plan.push_target - ctx_.mu_star));
            break;
        }
        case AttackKind::Garcelon: {
            const double clip = 3.0 * spec_.garcelon_sigma;
            const double g = std::clamp(spec_.garcelon_sigma * rng.gaussian(), -clip, clip);
            plan.replacement = g;
            // The map is clamped pointwise to +-1, so the sup is exact from the
            // mu extrema outside the target.
            charge = std::min(1.0, std::max(std::fabs(g - ctx_.mu_min_outside),
                                            std::fabs(g - ctx_.mu_max_outside)));
            break;
        }
        default:
            ledger.log_zero();
            return plan;
    }

    if (!ledger.try_charge(charge)) {
        // Not enough budget for the full sup charge: skip the round entirely.
        ledger.log_zero();
        return plan;
    }
    plan.fired = true;
    plan.charge = charge;
    return plan;
}

std::pair<RewardFunction, AttackSpec> make_lower_bound_instance(int d, double epsilon,
                                                                int k, double budget) {
    RewardFunction f = RewardFunction::lower_bound(d, epsilon, k);
    AttackSpec spec;
    spec.kind = AttackKind::LowerBound;
    spec.adversary = AdversaryMode::Strong;
    spec.budget = budget;
    spec.fire_prob = 1.0;
    spec.lb_lo = f.lb_lo;
    spec.lb_epsilon = epsilon;
    return {std::move(f), std::move(spec)};
}

std::string to_string(AttackKind k) {
    switch (k) {
        case AttackKind::None: return "none";
        case AttackKind::Oracle: return "oracle";
        case AttackKind::Garcelon: return "garcelon";
        case AttackKind::LowerBound: return "lower-bound";
    }
    return "?";
}

std::string to_string(AdversaryMode m) {
    return m == AdversaryMode::Weak ? "weak" : "strong";
}

}  // namespace lipband
