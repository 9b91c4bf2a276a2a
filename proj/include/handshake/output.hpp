#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "handshake/harness.hpp"
#include "handshake/scenarios.hpp"
#include "handshake/version.hpp"

// Machine-readable result records. JSON is the canonical format and
// round-trips losslessly; CSV covers the frequency table for spreadsheet use
// and is byte-stable for equal inputs.

namespace handshake::harness {

inline void to_json(nlohmann::json& j, const ComparisonRow& row) {
    j = nlohmann::json{{"outcome", row.outcome},   {"expected", row.expected_p},
                       {"observed", row.observed_freq}, {"tolerance", row.tolerance},
                       {"count", row.count},       {"pass", row.pass}};
}

inline void from_json(const nlohmann::json& j, ComparisonRow& row) {
    j.at("outcome").get_to(row.outcome);
    j.at("expected").get_to(row.expected_p);
    j.at("observed").get_to(row.observed_freq);
    j.at("tolerance").get_to(row.tolerance);
    j.at("count").get_to(row.count);
    j.at("pass").get_to(row.pass);
}

inline void to_json(nlohmann::json& j, const ComparisonReport& report) {
    j = nlohmann::json{
        {"rows", report.rows}, {"pass", report.pass}, {"chi_square", report.chi_square}};
}

inline void from_json(const nlohmann::json& j, ComparisonReport& report) {
    j.at("rows").get_to(report.rows);
    j.at("pass").get_to(report.pass);
    j.at("chi_square").get_to(report.chi_square);
}

inline void to_json(nlohmann::json& j, const ChshSetting& setting) {
    j = nlohmann::json{{"name", setting.name},
                       {"angle_a", setting.angle_a},
                       {"angle_b", setting.angle_b},
                       {"e", setting.correlation},
                       {"trials", setting.trials}};
}

inline void from_json(const nlohmann::json& j, ChshSetting& setting) {
    j.at("name").get_to(setting.name);
    j.at("angle_a").get_to(setting.angle_a);
    j.at("angle_b").get_to(setting.angle_b);
    j.at("e").get_to(setting.correlation);
    j.at("trials").get_to(setting.trials);
}

}  // namespace handshake::harness

namespace handshake::output {

/// One scenario run, complete enough to re-check or re-plot later.
struct OutputRecord {
    std::string scenario;
    std::map<std::string, double> parameters;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::map<std::string, std::uint64_t> counts;
    std::map<std::string, double> frequencies;
    std::map<std::string, double> expected;
    harness::ComparisonReport report;
    std::string engine_version;

    bool operator==(const OutputRecord&) const = default;
};

inline OutputRecord make_record(const scenarios::ScenarioDefinition& scenario,
                                const harness::RunConfig& config,
                                const harness::FrequencyTable& table,
                                const harness::ComparisonReport& report) {
    OutputRecord record;
    record.scenario = scenario.name;
    record.parameters = scenario.parameters;
    record.seed = config.master_seed;
    record.trials = table.trials;
    record.counts = table.counts;
    record.frequencies = table.frequencies();
    record.expected = scenario.expected;
    record.report = report;
    record.engine_version = kEngineVersion;
    return record;
}

inline void to_json(nlohmann::json& j, const OutputRecord& record) {
    j = nlohmann::json{{"scenario", record.scenario},
                       {"parameters", record.parameters},
                       {"seed", record.seed},
                       {"trials", record.trials},
                       {"counts", record.counts},
                       {"frequencies", record.frequencies},
                       {"expected", record.expected},
                       {"report", record.report},
                       {"engine_version", record.engine_version}};
}

inline void from_json(const nlohmann::json& j, OutputRecord& record) {
    j.at("scenario").get_to(record.scenario);
    j.at("parameters").get_to(record.parameters);
    j.at("seed").get_to(record.seed);
    j.at("trials").get_to(record.trials);
    j.at("counts").get_to(record.counts);
    j.at("frequencies").get_to(record.frequencies);
    j.at("expected").get_to(record.expected);
    j.at("report").get_to(record.report);
    j.at("engine_version").get_to(record.engine_version);
}

/// Shortest round-trip decimal form; deterministic across runs.
inline std::string format_double(double value) {
    std::array<char, 32> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

inline constexpr const char* kCsvHeader = "outcome,count,frequency,expected,pass";

/// Frequency-table CSV: one row per compared outcome, sorted by label.
inline std::string to_csv(const OutputRecord& record) {
    std::string csv = kCsvHeader;
    csv += '\n';
    for (const auto& row : record.report.rows) {
        csv += row.outcome;
        csv += ',';
        csv += std::to_string(row.count);
        csv += ',';
        csv += format_double(row.observed_freq);
        csv += ',';
        csv += format_double(row.expected_p);
        csv += ',';
        csv += row.pass ? "true" : "false";
        csv += '\n';
    }
    return csv;
}

/// A CHSH run: the four per-setting correlations and the S combination.
struct ChshRecord {
    harness::ChshResult result;
    std::uint64_t seed = 0;
    std::uint64_t trials_per_setting = 0;
    double check_target = 2.828;
    double check_tolerance = 0.05;
    bool check_pass = false;
    std::string engine_version;
};

inline ChshRecord make_chsh_record(const harness::ChshResult& result, std::uint64_t seed,
                                   std::uint64_t trials_per_setting) {
    ChshRecord record;
    record.result = result;
    record.seed = seed;
    record.trials_per_setting = trials_per_setting;
    record.check_pass = std::abs(result.s - record.check_target) <= record.check_tolerance;
    record.engine_version = kEngineVersion;
    return record;
}

inline void to_json(nlohmann::json& j, const ChshRecord& record) {
    j = nlohmann::json{
        {"s", record.result.s},
        {"settings",
         std::vector<harness::ChshSetting>(record.result.settings.begin(),
                                           record.result.settings.end())},
        {"seed", record.seed},
        {"trials_per_setting", record.trials_per_setting},
        {"check",
         {{"target", record.check_target},
          {"tolerance", record.check_tolerance},
          {"pass", record.check_pass}}},
        {"engine_version", record.engine_version}};
}

/// CHSH CSV: quantity/value pairs (four correlations, then s).
inline std::string to_csv(const ChshRecord& record) {
    std::string csv = "quantity,value\n";
    for (const auto& setting : record.result.settings) {
        csv += "e_";
        csv += setting.name;
        csv += ',';
        csv += format_double(setting.correlation);
        csv += '\n';
    }
    csv += "s,";
    csv += format_double(record.result.s);
    csv += '\n';
    return csv;
}

}  // namespace handshake::output
