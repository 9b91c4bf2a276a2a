#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "handshake/engine.hpp"
#include "handshake/errors.hpp"
#include "handshake/rng.hpp"
#include "handshake/scenarios.hpp"

// Deterministic Monte Carlo runner. Trial i always draws from the stream
// keyed (master_seed, i), so a run's counts are bit-identical whether the
// trials execute serially, in parallel, or in any order.

namespace handshake::harness {

using engine::kNoTransactionLabel;

struct RunConfig {
    std::string scenario_name;
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 0;
    std::map<std::string, double> parameter_overrides;
};

struct FrequencyTable {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t trials = 0;

    std::map<std::string, double> frequencies() const {
        std::map<std::string, double> out;
        for (const auto& [label, count] : counts) {
            out[label] = static_cast<double>(count) / static_cast<double>(trials);
        }
        return out;
    }

    bool operator==(const FrequencyTable&) const = default;
};

namespace detail {

inline std::string outcome_label(const engine::TrialOutcome& outcome) {
    return outcome.actualized ? outcome.actualized->outcome_label
                              : std::string(kNoTransactionLabel);
}

inline void run_range(const engine::Cascade& cascade, std::uint64_t master_seed,
                      std::uint64_t begin, std::uint64_t end,
                      std::map<std::string, std::uint64_t>& counts) {
    for (std::uint64_t i = begin; i < end; ++i) {
        rng::RandomStream stream(master_seed, i);
        counts[outcome_label(engine::resolve_cascade(cascade, stream))] += 1;
    }
}

}  // namespace detail

/// Run the configured scenario. The result depends only on the config, never
/// on the worker count: per-trial streams are keyed by trial index and count
/// merging is commutative.
inline FrequencyTable run(const RunConfig& config, unsigned workers = 1) {
    if (config.trials < 1) {
        throw ParameterError("trials must be at least 1");
    }
    const auto scenario =
        scenarios::make_scenario(config.scenario_name, config.parameter_overrides);

    FrequencyTable table;
    table.trials = config.trials;
    if (workers <= 1 || config.trials < 2 * workers) {
        detail::run_range(scenario.cascade, config.master_seed, 0, config.trials, table.counts);
        return table;
    }

    std::vector<std::map<std::string, std::uint64_t>> partials(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t chunk = (config.trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
        const std::uint64_t end = std::min(config.trials, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end, w] {
            detail::run_range(scenario.cascade, config.master_seed, begin, end, partials[w]);
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& partial : partials) {
        for (const auto& [label, count] : partial) table.counts[label] += count;
    }
    return table;
}

/// Serial run that keeps the per-trial outcome sequence (test support).
inline std::vector<std::string> trial_labels(const RunConfig& config) {
    if (config.trials < 1) {
        throw ParameterError("trials must be at least 1");
    }
    const auto scenario =
        scenarios::make_scenario(config.scenario_name, config.parameter_overrides);
    std::vector<std::string> labels;
    labels.reserve(config.trials);
    for (std::uint64_t i = 0; i < config.trials; ++i) {
        rng::RandomStream stream(config.master_seed, i);
        labels.push_back(detail::outcome_label(engine::resolve_cascade(scenario.cascade, stream)));
    }
    return labels;
}

struct ComparisonRow {
    std::string outcome;
    double expected_p = 0.0;
    double observed_freq = 0.0;
    double tolerance = 0.0;
    std::uint64_t count = 0;
    bool pass = false;

    bool operator==(const ComparisonRow&) const = default;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    bool pass = false;
    /// Informational only; the gate is the per-outcome binomial bound.
    double chi_square = 0.0;

    bool operator==(const ComparisonReport&) const = default;
};

/// Per-outcome binomial check at 4 standard errors. Outcomes absent from the
/// expected table count as p = 0 (observing them at all fails); the reserved
/// NoTransaction row defaults to whatever mass the expected table leaves
/// unclaimed.
inline ComparisonReport compare(const FrequencyTable& table,
                                const std::map<std::string, double>& expected) {
    double claimed = 0.0;
    for (const auto& [label, p] : expected) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ParameterError("expected probability for '" + label + "' is outside [0, 1]");
        }
        if (label != kNoTransactionLabel) claimed += p;
    }

    std::map<std::string, double> targets = expected;
    if (!targets.count(kNoTransactionLabel)) {
        const double remainder = 1.0 - claimed;
        if (remainder > 1e-12 || table.counts.count(kNoTransactionLabel)) {
            targets[kNoTransactionLabel] = std::max(0.0, remainder);
        }
    }
    for (const auto& [label, count] : table.counts) {
        targets.emplace(label, 0.0);
    }

    const double n = static_cast<double>(table.trials);
    ComparisonReport report;
    report.pass = true;
    for (const auto& [label, p] : targets) {
        ComparisonRow row;
        row.outcome = label;
        row.expected_p = p;
        auto it = table.counts.find(label);
        row.count = it == table.counts.end() ? 0 : it->second;
        row.observed_freq = static_cast<double>(row.count) / n;
        row.tolerance = 4.0 * std::sqrt(p * (1.0 - p) / n);
        row.pass = std::abs(row.observed_freq - p) <= row.tolerance;
        report.pass = report.pass && row.pass;
        if (p > 0.0) {
            const double expected_count = n * p;
            const double delta = static_cast<double>(row.count) - expected_count;
            report.chi_square += delta * delta / expected_count;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

/// One CHSH measurement setting and its estimated correlation.
struct ChshSetting {
    std::string name;
    double angle_a = 0.0;
    double angle_b = 0.0;
    double correlation = 0.0;
    std::uint64_t trials = 0;
};

struct ChshResult {
    double s = 0.0;
    std::array<ChshSetting, 4> settings;
};

/// Run the four canonical settings a=0, a'=pi/2, b=pi/4, b'=3pi/4 and return
/// S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')|. Each setting runs under its
/// own derived seed so the four estimates are independent.
inline ChshResult chsh_run(std::uint64_t master_seed, std::uint64_t trials_per_setting) {
    if (trials_per_setting < 1) {
        throw ParameterError("trials_per_setting must be at least 1");
    }
    const double a = 0.0;
    const double ap = 1.57079632679489661923;   // pi/2
    const double b = 0.78539816339744830962;    // pi/4
    const double bp = 2.35619449019234492885;   // 3pi/4

    ChshResult result;
    result.settings = {ChshSetting{"ab", a, b, 0.0, trials_per_setting},
                       ChshSetting{"ab'", a, bp, 0.0, trials_per_setting},
                       ChshSetting{"a'b", ap, b, 0.0, trials_per_setting},
                       ChshSetting{"a'b'", ap, bp, 0.0, trials_per_setting}};

    for (std::size_t s = 0; s < result.settings.size(); ++s) {
        auto& setting = result.settings[s];
        RunConfig config;
        config.scenario_name = "epr_bohm";
        config.trials = trials_per_setting;
        config.master_seed = rng::RandomStream(master_seed, s).next_u64();
        config.parameter_overrides = {{"angle_a", setting.angle_a},
                                      {"angle_b", setting.angle_b}};
        const FrequencyTable table = run(config);
        const auto count = [&](const char* label) -> double {
            auto it = table.counts.find(label);
            return it == table.counts.end() ? 0.0 : static_cast<double>(it->second);
        };
        setting.correlation = (count("++") + count("--") - count("+-") - count("-+")) /
                              static_cast<double>(trials_per_setting);
    }
    result.s = std::abs(result.settings[0].correlation - result.settings[1].correlation +
                        result.settings[2].correlation + result.settings[3].correlation);
    return result;
}

}  // namespace handshake::harness
