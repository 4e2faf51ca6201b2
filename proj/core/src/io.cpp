#include "lipband/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lipband {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void RunManifest::add(const std::string& key, const std::string& value) {
    entries.push_back({key, value, true});
}
void RunManifest::add(const std::string& key, const char* value) {
    entries.push_back({key, value, true});
}
void RunManifest::add(const std::string& key, double value) {
    entries.push_back({key, format_number(value), false});
}
void RunManifest::add(const std::string& key, long long value) {
    entries.push_back({key, std::to_string(value), false});
}
void RunManifest::add(const std::string& key, bool value) {
    entries.push_back({key, value ? "true" : "false", false});
}
void RunManifest::add_raw(const std::string& key, const std::string& json_value) {
    entries.push_back({key, json_value, false});
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string RunManifest::to_json() const {
    std::ostringstream out;
    out << "{\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Entry& e = entries[i];
        out << "  \"" << json_escape(e.key) << "\": ";
        if (e.quoted) {
            out << '"' << json_escape(e.value) << '"';
        } else {
            out << e.value;
        }
        if (i + 1 < entries.size()) out << ',';
        out << '\n';
    }
    out << "}\n";
    return out.str();
}

RunManifest make_manifest(const ExperimentConfig& cfg, const AggregateResult& result,
                          double wall_clock_seconds) {
    RunManifest m;
    m.add("tool_version", kToolVersion);
    for (const auto& [k, v] : config_entries(cfg)) m.add(k, v);
    m.add("horizon_resolved", cfg.horizon_resolved());
    m.add("grid_depth_resolved", static_cast<long long>(cfg.grid_depth_resolved()));
    m.add("dim", static_cast<long long>(cfg.dim()));
    {
        std::ostringstream seeds;
        seeds << '[';
        for (std::size_t i = 0; i < result.seeds.size(); ++i) {
            if (i) seeds << ", ";
            seeds << result.seeds[i];
        }
        seeds << ']';
        m.add_raw("seeds", seeds.str());
    }
    m.add("mean_final_regret", result.mean_final_regret);
    m.add("std_final_regret", result.std_final_regret);
    m.add("wall_clock_seconds", wall_clock_seconds);
    return m;
}

namespace {

std::ofstream open_or_throw(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    return out;
}

}  // namespace

void emit_results(const ExperimentConfig& cfg, const AggregateResult& result,
                  const RunManifest& manifest, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + out_dir +
                                 "': " + ec.message());
    }

    {
        std::ofstream out = open_or_throw(fs::path(out_dir) / "trace.csv");
        out << "rep,t,cum_regret,budget_spent\n";
        for (std::size_t r = 0; r < result.traces.size(); ++r) {
            const RegretTrace& tr = result.traces[r];
            for (std::size_t i = 0; i < tr.ts.size(); ++i) {
                out << r << ',' << tr.ts[i] << ',' << format_number(tr.cum_regret[i])
                    << ',' << format_number(tr.budget_spent[i]) << '\n';
            }
        }
    }
    {
        std::ofstream out = open_or_throw(fs::path(out_dir) / "summary.csv");
        out << "algo,reward,attack,adversary,C,T,reps,mean_final_regret,std_final_regret\n";
        out << to_string(cfg.algo) << ',' << to_string(cfg.reward) << ','
            << to_string(cfg.attack) << ',' << to_string(cfg.adversary) << ','
            << format_number(cfg.budget) << ',' << cfg.horizon_resolved() << ','
            << cfg.reps << ',' << format_number(result.mean_final_regret) << ','
            << format_number(result.std_final_regret) << '\n';
    }
    {
        std::ofstream out = open_or_throw(fs::path(out_dir) / "manifest.json");
        out << manifest.to_json();
    }
}

}  // namespace lipband
