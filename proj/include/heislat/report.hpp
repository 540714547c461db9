#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace heislat {

struct Estimate {
    std::string label;
    double value = 0;
    double se = 0;
};

struct Target {
    std::string label;
    double value = 0;
    bool is_bound = false;  // upper bound rather than an exact target
};

struct Verdict {
    std::string label;
    bool pass = false;
    std::string detail;
};

/// Result of one statistical experiment; reproducible from (seed, trials,
/// params).
struct ExperimentReport {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
    std::vector<Estimate> estimates;
    std::vector<Target> targets;
    std::vector<Verdict> verdicts;
    std::uint64_t seed = 0;
    long long trials = 0;
    double elapsed_ms = 0;

    bool passed() const {
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }

    void add_estimate(std::string label, double value, double se) {
        estimates.push_back({std::move(label), value, se});
    }
    void add_target(std::string label, double value, bool is_bound = false) {
        targets.push_back({std::move(label), value, is_bound});
    }
    void add_verdict(std::string label, bool pass, std::string detail = {}) {
        verdicts.push_back({std::move(label), pass, std::move(detail)});
    }
};

inline nlohmann::json report_to_json(const ExperimentReport& r) {
    nlohmann::json estimates = nlohmann::json::array();
    for (const auto& e : r.estimates)
        estimates.push_back({{"label", e.label}, {"value", e.value}, {"se", e.se}});
    nlohmann::json targets = nlohmann::json::array();
    for (const auto& t : r.targets)
        targets.push_back({{"label", t.label}, {"value", t.value}, {"is_bound", t.is_bound}});
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back({{"label", v.label}, {"pass", v.pass}, {"detail", v.detail}});
    return {{"name", r.name},       {"params", r.params},   {"estimates", estimates},
            {"targets", targets},   {"verdicts", verdicts}, {"seed", r.seed},
            {"trials", r.trials},   {"elapsed_ms", r.elapsed_ms}};
}

/// Flattened projection: one row per estimate (name.label), matched to
/// targets and verdicts by label.
inline std::string report_to_csv(const ExperimentReport& r, bool header = true) {
    std::ostringstream os;
    os.precision(17);
    if (header) os << "name,estimate,se,target_or_bound,verdict,seed,trials\n";
    for (const auto& e : r.estimates) {
        os << r.name << '.' << e.label << ',' << e.value << ',' << e.se << ',';
        bool found = false;
        for (const auto& t : r.targets)
            if (t.label == e.label) {
                os << t.value;
                found = true;
                break;
            }
        if (!found) os << "";
        os << ',';
        found = false;
        for (const auto& v : r.verdicts)
            if (v.label == e.label) {
                os << (v.pass ? "pass" : "fail");
                found = true;
                break;
            }
        if (!found) os << "";
        os << ',' << r.seed << ',' << r.trials << '\n';
    }
    return os.str();
}

}  // namespace heislat
