#pragma once

// Check reports: run parameters, outcome, detail, and JSON rendering.
//
// A report carries {name, mode, status, detail, params, runtime_ms}. The
// params object echoes only the knobs relevant to the mode: exact checks
// report the expansion order, sampled checks report samples/seed/tol.
// A failing report's detail ends with a reproduction command line.

#include "json.hpp"

#include <string>
#include <vector>

namespace mockforms {

enum class CheckMode { Exact, Numeric, Shadow, Transform };

inline const char* to_string(CheckMode m) {
    switch (m) {
        case CheckMode::Exact: return "exact";
        case CheckMode::Numeric: return "numeric";
        case CheckMode::Shadow: return "shadow";
        case CheckMode::Transform: return "transform";
    }
    return "?";
}

inline bool parse_check_mode(const std::string& s, CheckMode& out) {
    if (s == "exact") out = CheckMode::Exact;
    else if (s == "numeric") out = CheckMode::Numeric;
    else if (s == "shadow") out = CheckMode::Shadow;
    else if (s == "transform") out = CheckMode::Transform;
    else return false;
    return true;
}

struct CheckParams {
    long long order = 0;
    int samples = 0;
    unsigned long long seed = 0;
    double tol = 0.0;
};

enum class CheckStatus { Pass, Fail, Error };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Error: return "error";
    }
    return "?";
}

struct IdentityReport {
    std::string name;
    CheckMode mode = CheckMode::Exact;
    CheckStatus status = CheckStatus::Error;
    std::string detail;
    CheckParams params;
    long long runtime_ms = 0;
};

inline nlohmann::json report_params_json(CheckMode mode, const CheckParams& p) {
    nlohmann::json j = nlohmann::json::object();
    if (mode == CheckMode::Exact) {
        j["order"] = p.order;
    } else {
        j["samples"] = p.samples;
        j["seed"] = p.seed;
        j["tol"] = p.tol;
    }
    return j;
}

inline nlohmann::json report_json(const IdentityReport& r) {
    nlohmann::json j = nlohmann::json::object();
    j["name"] = r.name;
    j["mode"] = to_string(r.mode);
    j["status"] = to_string(r.status);
    j["detail"] = r.detail;
    j["params"] = report_params_json(r.mode, r.params);
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

inline nlohmann::json report_array_json(const std::vector<IdentityReport>& rs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rs) arr.push_back(report_json(r));
    return arr;
}

// Reproduction command for a failed sampled or exact check.
inline std::string repro_command(const std::string& name, CheckMode mode, const CheckParams& p) {
    std::string cmd = "mockforms verify " + name;
    if (mode == CheckMode::Exact) {
        cmd += " --order " + std::to_string(p.order);
    } else {
        cmd += " --samples " + std::to_string(p.samples);
        cmd += " --seed " + std::to_string(p.seed);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", p.tol);
        cmd += " --tol " + std::string(buf);
    }
    return cmd;
}

}  // namespace mockforms
