#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "lipband/harness.hpp"
#include "lipband/io.hpp"

namespace {

void usage() {
    std::cout <<
        "lipband - Lipschitz bandit simulations under adversarial reward corruption\n"
        "\n"
        "Usage: lipband [--flag value]...\n"
        "       lipband --preset {paper-strong|paper-weak|smoke} [--out DIR] [--reps N]\n"
        "\n"
        "Flags:\n"
        "  --algo {zooming|robust-zooming|rmel|rmel-alt|bob}\n"
        "  --reward {triangle|sine|twodim|lower-bound}\n"
        "  --attack {none|oracle|garcelon|lower-bound}\n"
        "  --adversary {weak|strong}\n"
        "  --budget C          adversary's total corruption budget\n"
        "  --known-budget C    budget assumed by robust-zooming's radius\n"
        "  --horizon T         rounds (default 50000, or 60000 for d=2)\n"
        "  --delta D           failure probability rate (default 0.01)\n"
        "  --sigma S           Gaussian noise std dev (default 0.1)\n"
        "  --reps N            repetitions (default 20)\n"
        "  --seed S            base seed; rep r uses seed S+r\n"
        "  --stride K          trace thinning stride (default 50)\n"
        "  --B X               RMEL tolerance ratio between layers (default 2)\n"
        "  --rmel-variant {epoch|round}\n"
        "  --bob-restart {on|off}\n"
        "  --grid-depth G      zooming candidate grid resolution 2^-G\n"
        "  --capped {on|off}   min{1, C/n} corruption term (default on)\n"
        "  --sigma-adjust {on|off}  scale deviation terms by sigma (default on)\n"
        "  --metric {linf|l2}\n"
        "  --arm-mode {uniform|center}\n"
        "  --lb-epsilon E --lb-cell K --lb-dim D   lower-bound instance\n"
        "  --out DIR           output directory (trace.csv, summary.csv, manifest.json)\n"
        "  --config FILE       flat 'key = value' file; flags override it\n";
}

int run_single(const lipband::ExperimentConfig& cfg, const std::string& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    const lipband::AggregateResult result = lipband::run_experiment(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const lipband::RunManifest manifest = lipband::make_manifest(cfg, result, secs);
    lipband::emit_results(cfg, result, manifest, out_dir);

    std::cout << lipband::cell_name(cfg) << ": mean_final_regret="
              << lipband::format_number(result.mean_final_regret)
              << " std=" << lipband::format_number(result.std_final_regret)
              << " reps=" << result.reps << " (" << lipband::format_number(secs)
              << "s) -> " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (const std::string& a : args) {
        if (a == "-h" || a == "--help" || a == "help") {
            usage();
            return 0;
        }
    }
    try {
        lipband::ExperimentConfig cfg = lipband::parse_config(args);
        if (!cfg.preset.empty()) {
            const lipband::ExperimentConfig defaults;
            std::vector<lipband::ExperimentConfig> cells = lipband::preset(cfg.preset);
            for (lipband::ExperimentConfig& cell : cells) {
                // Grid-wide overrides for flags the user set explicitly.
                if (cfg.reps != defaults.reps) cell.reps = cfg.reps;
                if (cfg.base_seed != defaults.base_seed) cell.base_seed = cfg.base_seed;
                if (cfg.stride != defaults.stride) cell.stride = cfg.stride;
                cell.out_dir = cfg.out_dir;
                const std::string dir =
                    (std::filesystem::path(cfg.out_dir) / lipband::cell_name(cell)).string();
                run_single(cell, dir);
            }
            return 0;
        }
        return run_single(cfg, cfg.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
