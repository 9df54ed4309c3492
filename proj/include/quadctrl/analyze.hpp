#pragma once

#include "quadctrl/json_io.hpp"
#include "quadctrl/verdict.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace quadctrl {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

struct AnalyzeOptions {
    bool oracle = false;
    std::size_t oracle_depth = 8;
    std::size_t oracle_bracket_cap = 100000;
    bool simulate = false;
    double sim_horizon = 0.5;
    std::size_t sim_samples = 2000;
    double sim_bound = 1.0;
    std::size_t sim_segments = 4;
    std::uint64_t sim_seed = 1;
    double sim_dt = 1e-3;
};

struct AnalysisReport {
    Json system;
    Mode mode = Mode::Rational;
    Json chain;  // dims, stationary_at, degree_of_reachability, bases
    Verdict accessibility;
    Verdict stlc;
    std::optional<Json> oracle;
    std::optional<Json> simulation;
    std::vector<std::string> warnings;

    bool decisive() const { return stlc.decisive(); }
    Json to_json() const;
    std::string to_text() const;
};

AnalysisReport analyze(const AnySystem& sys, const AnalyzeOptions& opt = {});

}  // namespace quadctrl
