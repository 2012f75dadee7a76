// coauthor-sim: command-line driver for the co-authorship ultimatum simulator.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coauthor/orchestrate.hpp"

int main(int argc, char** argv) {
    using namespace coauthor;

    CLI::App app{"Monte Carlo simulator of authorship-order ultimatums in co-authored projects"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::optional<std::string> out_dir;
    std::optional<unsigned> workers;
    bool log_events = false;
    std::string input;
    std::string case_name;

    app.add_option("--config", config_path, "Config file (key = value, [model], [grid])")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Master seed (u64); drawn from entropy and recorded if absent");
    app.add_option("--reps", reps, "Replications per cell")->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--workers", workers, "Worker threads (0 = all cores)");
    app.add_flag("--log-events", log_events, "Also write events.csv (run and case only)");

    app.add_subcommand("run", "Replicate the configured scenario");
    app.add_subcommand("fig1", "Rate over the utility x contribution spectrum grid");
    app.add_subcommand("fig2", "Duration, progress and position sweeps");
    app.add_subcommand("fig3", "Rates for the SA1..SA8 and P1..P4 cases");
    auto* case_cmd = app.add_subcommand("case", "Replicate one special case");
    case_cmd->add_option("id", case_name, "SA1..SA8 or P1..P4")->required();
    auto* fit_cmd = app.add_subcommand("fit", "Regressions over a fig1.csv file");
    fit_cmd->add_option("--input", input, "fig1-schema CSV")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    RunSpec spec;
    try {
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            std::stringstream text;
            text << file.rdbuf();
            spec = parse_config(text.str());
        }
        const auto* sub = app.get_subcommands().front();
        spec.command = *parse_command(sub->get_name());
        if (spec.command == Command::Case) {
            const auto id = parse_case_id(case_name);
            if (!id || *id == CaseId::Default || *id == CaseId::Custom) {
                throw ConfigError("case", "unknown case '" + case_name + "'");
            }
            if (spec.case_id != id) {
                // Behavioural settings from the config carry over to the case.
                const auto base = spec.scenario;
                spec.case_id = id;
                spec.scenario = case_scenario(*id);
                spec.scenario.discount_rate = base.discount_rate;
                spec.scenario.withdrawal_penalty = base.withdrawal_penalty;
                spec.scenario.contribution_std_ratio = base.contribution_std_ratio;
            }
        }
        if (seed) spec.seed = *seed;
        if (reps) spec.reps = *reps;
        if (out_dir) spec.output_dir = *out_dir;
        if (workers) spec.workers = *workers;
        if (log_events) spec.log_events = true;
        if (!input.empty()) spec.input = input;
        validate(spec);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return orchestrate(spec, std::cout, std::cerr);
}
