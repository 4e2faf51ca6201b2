#pragma once

#include <string>
#include <vector>

#include "lipband/harness.hpp"

namespace lipband {

inline constexpr const char* kToolVersion = "0.1.0";

// Flat key/value manifest; enough to bit-reproduce the run. Values are stored
// pre-formatted; entries keep insertion order.
struct RunManifest {
    struct Entry {
        std::string key;
        std::string value;
        bool quoted = false;
    };
    std::vector<Entry> entries;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value);
    void add(const std::string& key, double value);
    void add(const std::string& key, long long value);
    void add(const std::string& key, bool value);
    void add_raw(const std::string& key, const std::string& json_value);

    std::string to_json() const;
};

RunManifest make_manifest(const ExperimentConfig& cfg, const AggregateResult& result,
                          double wall_clock_seconds);

// Writes trace.csv (rep,t,cum_regret,budget_spent), summary.csv and
// manifest.json under out_dir. Throws std::runtime_error if the directory
// cannot be created or a file cannot be written.
void emit_results(const ExperimentConfig& cfg, const AggregateResult& result,
                  const RunManifest& manifest, const std::string& out_dir);

// Decimal formatting with at least 6 significant digits.
std::string format_number(double v);

}  // namespace lipband
