#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "handshake/errors.hpp"
#include "handshake/harness.hpp"
#include "handshake/output.hpp"
#include "handshake/scenarios.hpp"
#include "handshake/version.hpp"

// Command-line front end. Exit status contract: 0 success (and --check
// passed), 1 a --check comparison failed statistically, 2 usage or
// configuration error.

namespace handshake::cli {

namespace detail {

inline std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, double> params;
    for (const auto& item : raw) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
            throw ParameterError("--param expects name=value, got '" + item + "'");
        }
        const std::string name = item.substr(0, eq);
        const std::string text = item.substr(eq + 1);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(text, &used);
        } catch (const std::exception&) {
            throw ParameterError("--param " + name + ": '" + text + "' is not a number");
        }
        if (used != text.size()) {
            throw ParameterError("--param " + name + ": '" + text + "' is not a number");
        }
        params[name] = value;
    }
    return params;
}

inline int emit(const std::string& payload, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    if (out_path.empty()) {
        out << payload;
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return 2;
    }
    file << payload;
    return file ? 0 : 2;
}

inline void print_catalog(std::ostream& out) {
    for (const auto& info : scenarios::scenario_catalog()) {
        out << info.name << "  -  " << info.description << "\n";
        for (const auto& param : info.parameters) {
            out << "    --param " << param.name << "=" << output::format_double(param.default_value)
                << "  (" << param.description << ")\n";
        }
    }
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"handshake: a one-actual-world transactional quantum event simulator"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "List scenarios with parameters and defaults");

    std::string scenario_name;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::vector<std::string> raw_params;
    std::string format = "json";
    std::string out_path;
    bool check = false;

    auto* run_cmd = app.add_subcommand("run", "Run a scenario and emit its frequency record");
    run_cmd->add_option("scenario", scenario_name, "Scenario name (see `list`)")->required();
    run_cmd->add_option("--trials", trials, "Number of trials")->capture_default_str();
    run_cmd->add_option("--seed", seed, "Master seed (env HANDSHAKE_SEED when omitted)")
        ->envname("HANDSHAKE_SEED")
        ->capture_default_str();
    run_cmd->add_option("--param", raw_params, "Scenario parameter override, name=value");
    run_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    run_cmd->add_option("--out", out_path, "Write the record to this path instead of stdout");
    run_cmd->add_flag("--check", check, "Gate the exit status on the statistical comparison");

    std::uint64_t trials_per_setting = 100000;
    auto* chsh_cmd =
        app.add_subcommand("chsh", "Run the four canonical settings and report S");
    chsh_cmd->add_option("--trials-per-setting", trials_per_setting, "Trials per setting")
        ->capture_default_str();
    chsh_cmd->add_option("--seed", seed, "Master seed (env HANDSHAKE_SEED when omitted)")
        ->envname("HANDSHAKE_SEED")
        ->capture_default_str();
    chsh_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    chsh_cmd->add_option("--out", out_path, "Write the record to this path instead of stdout");
    chsh_cmd->add_flag("--check", check, "Gate the exit status on |S - 2.828| <= 0.05");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list_cmd->parsed()) {
            detail::print_catalog(out);
            return 0;
        }

        if (run_cmd->parsed()) {
            harness::RunConfig config;
            config.scenario_name = scenario_name;
            config.trials = trials;
            config.master_seed = seed;
            config.parameter_overrides = detail::parse_params(raw_params);

            const auto scenario =
                scenarios::make_scenario(config.scenario_name, config.parameter_overrides);
            const auto table = harness::run(config);
            const auto report = harness::compare(table, scenario.expected);
            const auto record = output::make_record(scenario, config, table, report);

            std::string payload;
            if (format == "csv") {
                payload = output::to_csv(record);
            } else {
                payload = nlohmann::json(record).dump(2) + "\n";
            }
            const int emit_status = detail::emit(payload, out_path, out, err);
            if (emit_status != 0) return emit_status;
            if (check && !report.pass) {
                err << "check failed: observed frequencies outside tolerance\n";
                return 1;
            }
            return 0;
        }

        // chsh
        const auto result = harness::chsh_run(seed, trials_per_setting);
        const auto record = output::make_chsh_record(result, seed, trials_per_setting);
        std::string payload;
        if (format == "csv") {
            payload = output::to_csv(record);
        } else {
            payload = nlohmann::json(record).dump(2) + "\n";
        }
        const int emit_status = detail::emit(payload, out_path, out, err);
        if (emit_status != 0) return emit_status;
        if (check && !record.check_pass) {
            err << "check failed: S = " << output::format_double(result.s)
                << " outside 2.828 +/- 0.05\n";
            return 1;
        }
        return 0;
    } catch (const NotFoundError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace handshake::cli
