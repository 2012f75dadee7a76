#include "coauthor/orchestrate.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <random>

#include "json.hpp"

namespace coauthor {

namespace {

ResultTable make_table(const std::string& schema, const ResolvedRun& run) {
    ResultTable table;
    table.schema = schema;
    table.columns = schema_columns(schema);
    table.provenance = {std::string(to_string(run.spec.command)), run.seed, run.reps,
                        provenance_config(run)};
    return table;
}

std::int64_t as_cell(std::size_t v) { return static_cast<std::int64_t>(v); }

std::vector<SimulationOutcome> simulate(const ScenarioSpec& scenario, const ResolvedRun& run) {
    return simulate_replications(make_sampler(scenario), run.seed, run.reps, run.spec.workers);
}

ResultTable events_table(const std::vector<SimulationOutcome>& outcomes, const ResolvedRun& run) {
    auto table = make_table("events", run);
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        for (const auto& e : outcomes[r].events) {
            table.rows.push_back({as_cell(r), std::int64_t{e.round}, as_cell(e.issuer),
                                  std::int64_t{e.from_position}, std::int64_t{e.to_position},
                                  std::string(to_string(e.outcome))});
        }
    }
    return table;
}

void print_fit(std::ostream& out, const std::string& label, const RegressionResult& fit) {
    out << label << ":";
    for (const auto& [name, value] : fit.coefficients) out << " " << name << "=" << format_number(value);
    out << " r2=" << format_number(fit.r_squared) << " n=" << fit.n_points << "\n";
}

nlohmann::ordered_json fit_to_json(const RegressionResult& fit) {
    nlohmann::ordered_json j;
    for (const auto& [name, value] : fit.coefficients) j["coefficients"][name] = value;
    j["r_squared"] = fit.r_squared;
    j["n_points"] = fit.n_points;
    return j;
}

}  // namespace

ResolvedRun resolve(const RunSpec& spec) {
    ResolvedRun run;
    run.spec = spec;
    if (!spec.seed) {
        std::random_device entropy;
        run.spec.seed = (static_cast<std::uint64_t>(entropy()) << 32) | entropy();
    }
    if (!spec.reps) run.spec.reps = default_reps(spec.command);
    run.seed = *run.spec.seed;
    run.reps = *run.spec.reps;
    return run;
}

std::string provenance_config(const ResolvedRun& run) {
    auto spec = run.spec;
    spec.workers = 0;
    spec.output_dir = ".";
    return render_config(spec);
}

ResultTable fig1_table(const ResolvedRun& run) {
    auto table = make_table("fig1", run);
    const auto grid = fig1_grid(run.spec.grid_authors, run.spec.grid_points, run.reps,
                                run.spec.scenario);
    for (const auto& cell : grid.cells) {
        const auto stats = summarize(simulate(cell.scenario, run));
        table.rows.push_back({std::int64_t{cell.authors}, cell.u_width, cell.c_width,
                              stats.iau_rate, as_cell(stats.n)});
    }
    return table;
}

std::vector<ResultTable> fig2_tables(const ResolvedRun& run) {
    auto duration = make_table("fig2a", run);
    for (const auto& cell : fig2_sweep(SweepKind::Duration, run.reps, run.spec.scenario).cells) {
        const auto stats = summarize(simulate(cell.scenario, run));
        duration.rows.push_back({std::int64_t{cell.authors}, std::int64_t{cell.duration},
                                 stats.iau_rate, stats.rate_std, as_cell(stats.n)});
    }
    auto progress = make_table("fig2b", run);
    for (const auto& cell : fig2_sweep(SweepKind::Progress, run.reps, run.spec.scenario).cells) {
        const auto stats = summarize(simulate(cell.scenario, run));
        progress.rows.push_back({std::int64_t{cell.authors}, cell.progress, stats.iau_rate,
                                 stats.rate_std, as_cell(stats.n)});
    }
    auto positions = make_table("fig2c", run);
    for (const auto& cell :
         fig2_sweep(SweepKind::PositionMatrix, run.reps, run.spec.scenario).cells) {
        const auto stats = summarize(simulate(cell.scenario, run));
        for (std::size_t p = 0; p < stats.per_position_rates.size(); ++p) {
            positions.rows.push_back({std::int64_t{cell.authors}, as_cell(p + 1),
                                      stats.per_position_rates[p], as_cell(stats.n)});
        }
    }
    return {duration, progress, positions};
}

ResultTable fig3_table(const ResolvedRun& run) {
    auto table = make_table("fig3", run);
    const auto& model = run.spec.scenario;
    for (auto id : special_cases()) {
        auto scenario = case_scenario(id);
        scenario.discount_rate = model.discount_rate;
        scenario.withdrawal_penalty = model.withdrawal_penalty;
        scenario.contribution_std_ratio = model.contribution_std_ratio;
        const auto stats = summarize(simulate(scenario, run));
        table.rows.push_back(
            {std::string(to_string(id)), stats.iau_rate, stats.rate_std, as_cell(stats.n)});
    }
    return table;
}

SingleRun single_run(const ResolvedRun& run) {
    const auto outcomes = simulate(run.spec.scenario, run);
    const auto stats = summarize(outcomes);
    SingleRun result;
    if (run.spec.command == Command::Case) {
        result.summary = make_table("case", run);
        result.summary.rows.push_back({std::string(to_string(*run.spec.case_id)), stats.iau_rate,
                                       stats.rate_std, as_cell(stats.n)});
    } else {
        result.summary = make_table("run", run);
        result.summary.rows.push_back({stats.iau_rate, stats.rate_std, as_cell(stats.n)});
    }
    if (run.spec.log_events) result.events = events_table(outcomes, run);
    return result;
}

FitReport fit_fig1_csv(const std::filesystem::path& path) {
    const auto csv = read_csv(path);
    if (csv.header != schema_columns("fig1")) {
        throw std::invalid_argument("'" + path.string() + "' does not match schema fig1 (" +
                                    "authors,u_width,c_width,iau_rate,n)");
    }
    std::vector<PlanarPoint> all;
    std::map<int, std::vector<PlanarPoint>> by_authors;
    for (const auto& row : csv.rows) {
        const int authors = std::stoi(row[0]);
        const PlanarPoint p{std::stod(row[1]), std::stod(row[2]), std::stod(row[3])};
        all.push_back(p);
        by_authors[authors].push_back(p);
    }
    FitReport report;
    report.planar = ols_fit_planar(all);
    std::vector<LogPoint> means;
    for (const auto& [authors, points] : by_authors) {
        report.per_authors.emplace_back(authors, ols_fit_planar(points));
        double sum = 0.0;
        for (const auto& p : points) sum += p.p;
        means.push_back({static_cast<double>(authors), sum / static_cast<double>(points.size())});
    }
    if (means.size() >= 3) report.log = log_fit(means);
    return report;
}

std::string fit_json(const FitReport& report) {
    nlohmann::ordered_json j;
    j["tool_version"] = std::string(kToolVersion);
    j["planar"] = fit_to_json(report.planar);
    j["per_authors"] = nlohmann::ordered_json::array();
    for (const auto& [authors, fit] : report.per_authors) {
        auto entry = fit_to_json(fit);
        entry["authors"] = authors;
        j["per_authors"].push_back(entry);
    }
    if (report.log) j["log"] = fit_to_json(*report.log);
    return j.dump(2) + "\n";
}

int orchestrate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        validate(spec);
        const auto run = resolve(spec);
        const std::filesystem::path dir = run.spec.output_dir;
        auto emit = [&](const ResultTable& table) {
            out << "wrote " << write_results(table, dir).string() << " (" << table.rows.size()
                << " rows)\n";
        };

        switch (spec.command) {
            case Command::Fig1: emit(fig1_table(run)); break;
            case Command::Fig2:
                for (const auto& t : fig2_tables(run)) emit(t);
                break;
            case Command::Fig3: emit(fig3_table(run)); break;
            case Command::Run:
            case Command::Case: {
                const auto result = single_run(run);
                emit(result.summary);
                if (result.events) emit(*result.events);
                break;
            }
            case Command::Fit: {
                const auto report = fit_fig1_csv(run.spec.input);
                print_fit(out, "planar", report.planar);
                for (const auto& [authors, fit] : report.per_authors) {
                    print_fit(out, "planar[authors=" + std::to_string(authors) + "]", fit);
                }
                if (report.log) print_fit(out, "log", *report.log);
                std::filesystem::create_directories(dir);
                const auto path = dir / "fit.json";
                std::ofstream file(path, std::ios::binary | std::ios::trunc);
                file << fit_json(report);
                if (!file) throw IoError("failed writing '" + path.string() + "'");
                out << "wrote " << path.string() << "\n";
                return 0;
            }
        }
        out << "seed " << run.seed << ", reps " << run.reps << "\n";
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace coauthor
