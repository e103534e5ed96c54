#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "detect.hpp"
#include "series.hpp"

namespace rankcp {

inline constexpr int kReportSchemaVersion = 1;

// Where the analysed series came from; echoed into the report.
struct InputInfo {
    std::string source;
    bool returns = false;
};

namespace detail {
// Label of the first observation after the split.
inline nlohmann::ordered_json change_point_label(const std::optional<std::vector<std::string>>& labels,
                                                 std::size_t index) {
    if (!labels || index >= labels->size()) return nullptr;
    return (*labels)[index];
}
}  // namespace detail

inline nlohmann::ordered_json report_to_json(const DetectionReport& report, const InputInfo& input = {},
                                             const std::optional<std::vector<std::string>>& labels = std::nullopt) {
    using nlohmann::ordered_json;
    const auto& cfg = report.config;

    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["config"] = {
        {"alpha", cfg.stat.alpha},
        {"min_size", cfg.stat.min_size},
        {"mode", std::string(to_string(cfg.stat.mode))},
        {"permutations", cfg.permutations},
        {"sig_level", cfg.sig_level},
        {"max_changepoints", cfg.max_changepoints ? ordered_json(*cfg.max_changepoints) : ordered_json(nullptr)},
        {"seed", cfg.seed},
    };
    j["input"] = {
        {"source", input.source},
        {"returns", input.returns},
        {"length", report.series_length},
        {"dim", report.dim},
    };

    j["change_points"] = ordered_json::array();
    for (const auto& cp : report.change_points)
        j["change_points"].push_back({{"index", cp.index},
                                      {"label", detail::change_point_label(labels, cp.index)},
                                      {"p_value", cp.p_value},
                                      {"q_value", cp.q_value},
                                      {"order_found", cp.order_found}});

    j["segments"] = ordered_json::array();
    for (const auto& s : report.segments) j["segments"].push_back({{"start", s.start}, {"end", s.end}});

    j["trace"] = ordered_json::array();
    for (const auto& t : report.trace)
        j["trace"].push_back({{"iteration", t.iteration},
                              {"segment", {{"start", t.segment.start}, {"end", t.segment.end}}},
                              {"tau", t.tau},
                              {"kappa", t.kappa},
                              {"q_value", t.q_value},
                              {"p_value", t.p_value},
                              {"accepted", t.accepted}});
    return j;
}

inline std::string report_to_string(const DetectionReport& report, const InputInfo& input = {},
                                    const std::optional<std::vector<std::string>>& labels = std::nullopt) {
    return report_to_json(report, input, labels).dump(2) + "\n";
}

}  // namespace rankcp
