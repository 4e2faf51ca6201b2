#include "doctest.h"

#include <cstdio>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lipband/harness.hpp"
#include "lipband/io.hpp"

using namespace lipband;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n' ? 1 : 0;
    return n;
}

}  // namespace

TEST_CASE("flag parsing covers the paper's moderate-corruption cell") {
    const ExperimentConfig cfg = parse_config(
        {"--algo", "rmel", "--reward", "triangle", "--attack", "oracle", "--adversary",
         "strong", "--budget", "3000", "--horizon", "50000", "--delta", "0.01", "--reps",
         "20"});
    CHECK(cfg.algo == AlgoKind::RMEL);
    CHECK(cfg.reward == RewardKind::Triangle);
    CHECK(cfg.attack == AttackKind::Oracle);
    CHECK(cfg.adversary == AdversaryMode::Strong);
    CHECK(cfg.budget == 3000.0);
    CHECK(cfg.horizon_resolved() == 50000);
    CHECK(cfg.reps == 20);
}

TEST_CASE("valid and invalid combinations") {
    CHECK_NOTHROW(parse_config({"--attack", "none", "--budget", "0"}));
    CHECK_THROWS_AS(parse_config({"--delta", "1.5"}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config({"--no-such-flag", "1"}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config({"--algo", "ucb"}), std::invalid_argument);
    // Garcelon with d = 3: no target region defined.
    CHECK_THROWS_AS(parse_config({"--reward", "lower-bound", "--lb-dim", "3", "--lb-epsilon",
                                  "0.25", "--attack", "garcelon"}),
                    std::invalid_argument);
    // Budget above the horizon violates C <= T.
    CHECK_THROWS_AS(parse_config({"--horizon", "100", "--budget", "200"}),
                    std::invalid_argument);
    // The lower-bound attack needs its instance reward and a strong adversary.
    CHECK_THROWS_AS(parse_config({"--attack", "lower-bound", "--reward", "triangle"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config({"--attack", "lower-bound", "--reward", "lower-bound",
                                  "--adversary", "weak"}),
                    std::invalid_argument);
}

TEST_CASE("defaults resolve by dimension") {
    ExperimentConfig one = parse_config({"--reward", "sine"});
    CHECK(one.horizon_resolved() == 50000);
    CHECK(one.grid_depth_resolved() == 12);
    ExperimentConfig two = parse_config({"--reward", "twodim"});
    CHECK(two.horizon_resolved() == 60000);
    CHECK(two.grid_depth_resolved() == 7);
}

TEST_CASE("config file round-trips through emit, flags override file") {
    ExperimentConfig cfg;
    cfg.algo = AlgoKind::BoB;
    cfg.reward = RewardKind::TwoDim;
    cfg.attack = AttackKind::Garcelon;
    cfg.adversary = AdversaryMode::Weak;
    cfg.budget = 4500;
    cfg.horizon = 60000;
    cfg.sigma = 0.05;
    cfg.reps = 7;
    cfg.base_seed = 99;
    cfg.stride = 25;
    cfg.bob_restart = false;
    cfg.capped = false;
    cfg.center_mode = true;
    cfg.out_dir = "somewhere";

    const auto tmp = std::filesystem::temp_directory_path() / "lipband_cfg_test.txt";
    {
        std::ofstream out(tmp);
        out << emit_config_file(cfg);
    }
    const ExperimentConfig parsed = parse_config({"--config", tmp.string()});
    CHECK(parsed == cfg);

    const ExperimentConfig overridden =
        parse_config({"--config", tmp.string(), "--reps", "3"});
    CHECK(overridden.reps == 3);
    CHECK(overridden.budget == 4500);
    std::filesystem::remove(tmp);
}

TEST_CASE("presets") {
    const auto strong = preset("paper-strong");
    CHECK(strong.size() == 54);  // 3 rewards x 2 attacks x 3 budgets x 3 algos
    for (const auto& cfg : strong) {
        CHECK(cfg.adversary == AdversaryMode::Strong);
        CHECK(cfg.reps == 20);
        CHECK_NOTHROW(validate(cfg));
    }
    const auto weak = preset("paper-weak");
    CHECK(weak.size() == 54);
    CHECK(weak.front().adversary == AdversaryMode::Weak);

    const auto smoke = preset("smoke");
    CHECK(smoke.size() == 54);
    for (const auto& cfg : smoke) {
        CHECK(cfg.horizon == 2000);
        CHECK(cfg.reps == 3);
        CHECK(cfg.budget <= 2000.0);
    }
    CHECK_THROWS_AS(preset("nope"), std::invalid_argument);
}

TEST_CASE("emit_results writes the documented files") {
    ExperimentConfig cfg;
    cfg.algo = AlgoKind::Zooming;
    cfg.horizon = 10;
    cfg.stride = 1;
    cfg.reps = 1;
    cfg.grid_depth = 6;
    const AggregateResult result = run_experiment(cfg);
    const RunManifest manifest = make_manifest(cfg, result, 0.0);

    const auto dir = std::filesystem::temp_directory_path() / "lipband_emit_test";
    std::filesystem::remove_all(dir);
    emit_results(cfg, result, manifest, dir.string());

    const std::string trace = slurp(dir / "trace.csv");
    CHECK(count_lines(trace) == 1 + 10);  // header + reps * ceil(T/stride)
    CHECK(trace.rfind("rep,t,cum_regret,budget_spent\n", 0) == 0);

    const std::string summary = slurp(dir / "summary.csv");
    CHECK(summary.rfind(
              "algo,reward,attack,adversary,C,T,reps,mean_final_regret,std_final_regret\n",
              0) == 0);
    CHECK(count_lines(summary) == 2);
    CHECK(summary.find("zooming,triangle,none,strong,0,10,1,") != std::string::npos);

    const std::string mf = slurp(dir / "manifest.json");
    CHECK(mf.find("\"tool_version\"") != std::string::npos);
    CHECK(mf.find("\"seeds\"") != std::string::npos);
    CHECK(mf.find("\"algo\": \"zooming\"") != std::string::npos);

    // Re-running the same manifest produces byte-identical CSVs.
    const auto dir2 = std::filesystem::temp_directory_path() / "lipband_emit_test2";
    std::filesystem::remove_all(dir2);
    emit_results(cfg, run_experiment(cfg), manifest, dir2.string());
    CHECK(slurp(dir2 / "trace.csv") == trace);
    CHECK(slurp(dir2 / "summary.csv") == summary);

    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("trace rows equal reps x ceil(T/stride)") {
    ExperimentConfig cfg;
    cfg.algo = AlgoKind::RMEL;
    cfg.horizon = 105;
    cfg.stride = 10;
    cfg.reps = 3;
    const AggregateResult result = run_experiment(cfg);
    const RunManifest manifest = make_manifest(cfg, result, 0.0);
    const auto dir = std::filesystem::temp_directory_path() / "lipband_rows_test";
    std::filesystem::remove_all(dir);
    emit_results(cfg, result, manifest, dir.string());
    const std::string trace = slurp(dir / "trace.csv");
    CHECK(count_lines(trace) == 1 + 3 * 11);  // header + reps * ceil(105/10)
    std::filesystem::remove_all(dir);
}

TEST_CASE("emit_results rejects unwritable paths") {
    ExperimentConfig cfg;
    cfg.horizon = 5;
    cfg.reps = 1;
    cfg.grid_depth = 6;
    const AggregateResult result = run_experiment(cfg);
    const RunManifest manifest = make_manifest(cfg, result, 0.0);
    CHECK_THROWS_AS(emit_results(cfg, result, manifest, "/proc/definitely/not/writable"),
                    std::runtime_error);
}

TEST_CASE("numeric formatting keeps at least six significant digits") {
    CHECK(format_number(10883.51) == "10883.51");
    CHECK(format_number(0.73400101) == "0.73400101");
    CHECK(format_number(1.0 / 3.0).size() >= 7);
}
