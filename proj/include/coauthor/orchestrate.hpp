// Command dispatch: builds the experiments for a RunSpec, runs them and
// emits the result tables.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "coauthor/config.hpp"
#include "coauthor/results.hpp"
#include "coauthor/stats.hpp"

namespace coauthor {

/// Seed and replication count after defaults are applied.
struct ResolvedRun {
    RunSpec spec;  ///< seed and reps always set
    std::uint64_t seed = 0;
    std::size_t reps = 0;
};

/// Fills in the command's default reps and, when no seed was given, one drawn
/// from std::random_device. The drawn seed ends up in every provenance file.
ResolvedRun resolve(const RunSpec& spec);

/// Config text stored in provenance: the resolved spec minus settings that
/// cannot change results (worker count, output directory).
std::string provenance_config(const ResolvedRun& run);

ResultTable fig1_table(const ResolvedRun& run);
/// fig2a (duration), fig2b (progress) and fig2c (position matrix).
std::vector<ResultTable> fig2_tables(const ResolvedRun& run);
/// One row per special case, SA1..SA8 then P1..P4.
ResultTable fig3_table(const ResolvedRun& run);

struct SingleRun {
    ResultTable summary;
    std::optional<ResultTable> events;  ///< when log_events is set
};
/// `run` (scenario from the config) and `case <ID>`.
SingleRun single_run(const ResolvedRun& run);

struct FitReport {
    RegressionResult planar;                              ///< all rows
    std::vector<std::pair<int, RegressionResult>> per_authors;  ///< one planar fit per author count
    std::optional<RegressionResult> log;                  ///< mean rate vs ln(authors)
};

/// Fits a fig1-schema CSV. Throws std::invalid_argument naming the expected
/// schema if the header does not match.
FitReport fit_fig1_csv(const std::filesystem::path& path);
std::string fit_json(const FitReport& report);

/// Runs the command, writing files into spec.output_dir and a short report to
/// `out`. Returns 0 on success; on failure prints a diagnostic to `err` and
/// returns nonzero.
int orchestrate(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace coauthor
