#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "lipband/adversary.hpp"

using namespace lipband;

namespace {

AttackSpec oracle_strong(double budget) {
    AttackSpec s;
    s.kind = AttackKind::Oracle;
    s.adversary = AdversaryMode::Strong;
    s.budget = budget;
    return s;
}

Adversary make_oracle(const RewardFunction& f, AttackSpec spec) {
    return Adversary(spec, make_adversary_context(f, Metric::LInf, 0.1, spec));
}

}  // namespace

TEST_CASE("oracle strong never fires outside the benign set") {
    const RewardFunction f = RewardFunction::triangle();
    Adversary adv = make_oracle(f, oracle_strong(1000));
    BudgetLedger ledger{1000, 0.0, AdversaryMode::Strong, true, {}};
    Rng rng(4);
    // x = 0.9 is 0.566 > 0.2 away from x* = 1/3.
    const Arm x{0.9};
    for (int i = 0; i < 200; ++i) {
        const RoundCorruption rc = adv.strong_round(x, mean_reward(f, x), 0.5, ledger, rng);
        CHECK_FALSE(rc.applies);
        CHECK(rc.charge == 0.0);
        CHECK(rc.observation == 0.5);
    }
    CHECK(ledger.spent == 0.0);
}

TEST_CASE("oracle strong pushes to the worst arm minus the margin") {
    // Worst triangle value is mu(1) = 0.2667; target mean = 0.1667.
    const RewardFunction f = RewardFunction::triangle();
    Adversary adv = make_oracle(f, oracle_strong(50000));
    BudgetLedger ledger{50000, 0.0, AdversaryMode::Strong, false, {}};
    Rng rng(7);
    const Arm apex{1.0 / 3.0};
    double sum = 0.0;
    long long fired = 0, total = 20000;
    for (long long i = 0; i < total; ++i) {
        const RoundCorruption rc =
            adv.strong_round(apex, 0.9, 0.9, ledger, rng);
        if (rc.applies) {
            ++fired;
            sum += rc.observation;
            CHECK(rc.charge <= 1.0);
        }
    }
    // Fires with probability ~0.5 and the corrupted mean is ~0.166667,
    // with the applied shift clamped to 1 (0.9 -> at least -0.1).
    CHECK(std::fabs(static_cast<double>(fired) / total - 0.5) < 0.02);
    CHECK(sum / fired == doctest::Approx(std::max(0.9 - 1.0, 0.2666667 - 0.1)).epsilon(0.05));
}

TEST_CASE("garcelon strong only fires outside the target region") {
    AttackSpec s;
    s.kind = AttackKind::Garcelon;
    s.adversary = AdversaryMode::Strong;
    s.budget = 3000;
    s.target_lo = {0.5};
    s.target_hi = {1.0};
    const RewardFunction f = RewardFunction::triangle();
    Adversary adv(s, make_adversary_context(f, Metric::LInf, 0.1, s));
    BudgetLedger ledger{3000, 0.0, AdversaryMode::Strong, false, {}};
    Rng rng(12);

    const Arm inside{0.7};
    for (int i = 0; i < 100; ++i) {
        CHECK_FALSE(adv.strong_round(inside, mean_reward(f, inside), 0.5, ledger, rng).applies);
    }
    CHECK(ledger.spent == 0.0);

    const Arm outside{0.2};
    double sum = 0.0;
    int fired = 0;
    for (int i = 0; i < 20000; ++i) {
        const RoundCorruption rc =
            adv.strong_round(outside, mean_reward(f, outside), mean_reward(f, outside),
                             ledger, rng);
        if (rc.applies) {
            ++fired;
            sum += rc.observation;
        }
    }
    // Each replacement costs ~|0 - mu(0.2)| = 0.77, so the 3000 budget buys
    // roughly 3900 fires before the skip rule stops the attack.
    CHECK(fired > 3000);
    CHECK(fired < 5000);
    CHECK(ledger.spent <= 3000.0 + 1e-9);
    CHECK(ledger.spent > 2999.0 - 1.0);
    // Replacement draws are N(0, 0.01): corrupted mean near zero.
    CHECK(std::fabs(sum / fired) < 0.02);
}

TEST_CASE("budget exhaustion skips whole attacks and never overspends") {
    const RewardFunction f = RewardFunction::triangle();
    Adversary adv = make_oracle(f, oracle_strong(2.0));
    BudgetLedger ledger{2.0, 0.0, AdversaryMode::Strong, true, {}};
    Rng rng(3);
    const Arm apex{1.0 / 3.0};
    for (int i = 0; i < 5000; ++i) {
        adv.strong_round(apex, 0.9, 0.9, ledger, rng);
    }
    CHECK(ledger.spent <= 2.0 + 1e-12);
    double total = 0.0;
    for (double c : ledger.per_round_log) {
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        total += c;
    }
    CHECK(total == doctest::Approx(ledger.spent));
}

TEST_CASE("weak oracle plan: precommitment, sup charge, no-fire rounds") {
    AttackSpec s;
    s.kind = AttackKind::Oracle;
    s.adversary = AdversaryMode::Weak;
    s.budget = 3000;
    const RewardFunction f = RewardFunction::triangle();
    Adversary adv(s, make_adversary_context(f, Metric::LInf, 0.1, s));
    BudgetLedger ledger{3000, 0.0, AdversaryMode::Weak, false, {}};
    Rng rng(21);

    int fired = 0;
    for (int i = 0; i < 4000 && fired < 50; ++i) {
        const WeakRoundPlan plan = adv.weak_round(ledger, rng);
        if (!plan.fired) {
            const Arm benign{1.0 / 3.0};
            CHECK(plan.corruption_at(benign, 0.9) == 0.0);
            continue;
        }
        ++fired;
        // Sup over the benign set is attained at the apex: |0.166667 - 0.9|.
        CHECK(plan.charge == doctest::Approx(0.7333333).epsilon(1e-3));
        // The map is a function of the arm alone; corruption outside is zero.
        const Arm apex{1.0 / 3.0};
        const Arm boundary{0.52};
        const Arm outside{0.9};
        const double c_apex = plan.corruption_at(apex, mean_reward(f, apex));
        CHECK(c_apex == doctest::Approx(0.1666667 - 0.9).epsilon(1e-3));
        CHECK(plan.corruption_at(boundary, mean_reward(f, boundary)) < 0.0);
        CHECK(plan.corruption_at(outside, mean_reward(f, outside)) == 0.0);
        // Re-evaluation gives the same map values (precommitted).
        CHECK(plan.corruption_at(apex, mean_reward(f, apex)) == c_apex);
    }
    CHECK(fired == 50);
}

TEST_CASE("weak garcelon plan: clipped replacement and exact ledger sup") {
    AttackSpec s;
    s.kind = AttackKind::Garcelon;
    s.adversary = AdversaryMode::Weak;
    s.budget = 3000;
    s.target_lo = {0.5};
    s.target_hi = {1.0};
    const RewardFunction f = RewardFunction::triangle();
    const AdversaryContext ctx = make_adversary_context(f, Metric::LInf, 0.1, s);
    Adversary adv(s, ctx);
    BudgetLedger ledger{3000, 0.0, AdversaryMode::Weak, false, {}};
    Rng rng(31);

    int fired = 0;
    for (int i = 0; i < 2000 && fired < 100; ++i) {
        const WeakRoundPlan plan = adv.weak_round(ledger, rng);
        if (!plan.fired) continue;
        ++fired;
        CHECK(std::fabs(plan.replacement) <= 0.3 + 1e-12);  // 3-sigma clip
        const double expected = std::min(
            1.0, std::max(std::fabs(plan.replacement - ctx.mu_min_outside),
                          std::fabs(plan.replacement - ctx.mu_max_outside)));
        CHECK(plan.charge == doctest::Approx(expected));
        CHECK(plan.charge <= 1.0);
        // Arms inside the target are untouched.
        CHECK(plan.corruption_at(Arm{0.75}, mean_reward(f, Arm{0.75})) == 0.0);
        // Outside arms are replaced (corruption moves the mean to the
        // replacement, through the per-instance +-1 clamp).
        const Arm out{0.2};
        const double mu = mean_reward(f, out);
        const double expected_obs =
            mu + std::clamp(plan.replacement - mu, -1.0, 1.0);
        CHECK(mu + plan.corruption_at(out, mu) == doctest::Approx(expected_obs));
    }
    CHECK(fired == 100);
}

TEST_CASE("weak attack skips entirely when the sup charge does not fit") {
    AttackSpec s;
    s.kind = AttackKind::Oracle;
    s.adversary = AdversaryMode::Weak;
    s.budget = 0.5;  // below the 0.733 sup charge
    const RewardFunction f = RewardFunction::triangle();
    Adversary adv(s, make_adversary_context(f, Metric::LInf, 0.1, s));
    BudgetLedger ledger{0.5, 0.0, AdversaryMode::Weak, false, {}};
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
        CHECK_FALSE(adv.weak_round(ledger, rng).fired);
    }
    CHECK(ledger.spent == 0.0);
}

TEST_CASE("lower-bound instance and attack") {
    auto [f, spec] = make_lower_bound_instance(1, 0.5, 2, 10.0);
    CHECK(f.lb_cells_per_axis == 2);
    CHECK(f.lb_center[0] == doctest::Approx(0.75));
    CHECK(spec.fire_prob == 1.0);

    auto [f2, spec2] = make_lower_bound_instance(2, 0.25, 5, 10.0);
    CHECK(f2.lb_cells_per_axis == 4);  // 16 cells

    Adversary adv(spec, make_adversary_context(f, Metric::LInf, 0.0, spec));
    BudgetLedger ledger{10.0, 0.0, AdversaryMode::Strong, false, {}};
    Rng rng(2);
    const Arm in_cell{0.75};
    const RoundCorruption rc = adv.strong_round(in_cell, 0.25, 0.25, ledger, rng);
    CHECK(rc.applies);
    CHECK(rc.observation == 0.0);
    CHECK(rc.charge == doctest::Approx(0.25));  // mu(x_t) = eps/2 at the center

    const Arm out_cell{0.2};
    CHECK_FALSE(adv.strong_round(out_cell, 0.05, 0.05, ledger, rng).applies);

    CHECK_THROWS_AS(make_lower_bound_instance(1, 0.5, 3, 1.0), std::invalid_argument);
}

TEST_CASE("weak lower-bound attack is rejected") {
    auto [f, spec] = make_lower_bound_instance(1, 0.5, 1, 10.0);
    spec.adversary = AdversaryMode::Weak;
    CHECK_THROWS_AS(Adversary(spec, make_adversary_context(f, Metric::LInf, 0.0, spec)),
                    std::invalid_argument);
}
