#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipband/environment.hpp"
#include "lipband/metric_space.hpp"
#include "lipband/rng.hpp"

namespace lipband {

enum class AttackKind { None, Oracle, Garcelon, LowerBound };
enum class AdversaryMode { Weak, Strong };

struct AttackSpec {
    AttackKind kind = AttackKind::None;
    AdversaryMode adversary = AdversaryMode::Strong;
    double budget = 0.0;  // total corruption budget C

    double benign_radius = 0.2;  // Oracle: arms within this distance of x* are hit
    double margin = 0.1;         // Oracle: push below the worst arm by this much
    double fire_prob = 0.5;
    double garcelon_sigma = 0.1;  // replacement noise std dev

    // Garcelon target box (closed); attacks fire outside it.
    std::vector<double> target_lo;
    std::vector<double> target_hi;

    // Lower-bound attack target cell A_k (half-open box [lb_lo, lb_lo + eps)).
    std::vector<double> lb_lo;
    double lb_epsilon = 0.0;
};

// Tracks the adversary's spend. Every accepted charge is in [0,1] and the
// running total never exceeds the budget.
struct BudgetLedger {
    double total = 0.0;
    double spent = 0.0;
    AdversaryMode mode = AdversaryMode::Strong;
    bool keep_log = false;
    std::vector<double> per_round_log;

    double remaining() const { return total - spent; }

    // Accepts the charge if it fits, returns whether it was applied.
    bool try_charge(double charge) {
        if (charge < 0.0 || charge > total - spent + 1e-12) return false;
        spent += charge;
        if (keep_log) per_round_log.push_back(charge);
        return true;
    }

    void log_zero() {
        if (keep_log) per_round_log.push_back(0.0);
    }
};

struct RoundCorruption {
    bool applies = false;
    double observation = 0.0;  // equals the raw observation when !applies
    double charge = 0.0;
};

// A weak adversary's precommitted corruption map c_t(.) for one round,
// built before the policy picks its arm. Evaluation depends only on the
// queried arm, never on the pull that follows.
struct WeakRoundPlan {
    bool fired = false;
    AttackKind kind = AttackKind::None;
    double charge = 0.0;

    double push_target = 0.0;   // Oracle: corrupted expected value
    double replacement = 0.0;   // Garcelon: clipped Gaussian replacement value
    double benign_radius = 0.2;
    Arm arm_star;
    Metric metric = Metric::LInf;
    std::vector<double> target_lo;
    std::vector<double> target_hi;

    // c_t(x) given mu(x); every value is clamped to the per-instance cap 1.
    double corruption_at(const Arm& x, double mu_x) const;
};

// Environment facts the attacks depend on, computed once per run.
struct AdversaryContext {
    Arm arm_star;
    double mu_star = 0.0;
    double mu_min = 0.0;  // global minimum of mu (grid oracle)
    // Extrema of mu outside the Garcelon target region.
    double mu_min_outside = 0.0;
    double mu_max_outside = 0.0;
    double noise_sigma = 0.1;
    Metric metric = Metric::LInf;
};

AdversaryContext make_adversary_context(const RewardFunction& f, Metric metric,
                                        double noise_sigma, const AttackSpec& spec);

class Adversary {
public:
    Adversary(AttackSpec spec, AdversaryContext ctx);

    const AttackSpec& spec() const { return spec_; }

    // Strong adversary: sees the pulled arm and the raw observation.
    RoundCorruption strong_round(const Arm& x, double mu_x, double raw,
                                 BudgetLedger& ledger, Rng& rng) const;

    // Weak adversary: commits the round's corruption map before the pull and is
    // charged the sup of |c_t| over all arms.
    WeakRoundPlan weak_round(BudgetLedger& ledger, Rng& rng) const;

    bool arm_is_benign(const Arm& x) const;
    bool arm_in_target(const Arm& x) const;
    bool arm_in_lb_cell(const Arm& x) const;

private:
    AttackSpec spec_;
    AdversaryContext ctx_;
};

// App-A.5-style hard instance: reward f_k on the epsilon-grid of [0,1]^d plus
// a strong adversary that zeroes observations inside cell A_k while budget
// remains.
std::pair<RewardFunction, AttackSpec> make_lower_bound_instance(int d, double epsilon,
                                                                int k, double budget);

std::string to_string(AttackKind k);
std::string to_string(AdversaryMode m);

}  // namespace lipband
