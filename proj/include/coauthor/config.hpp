// Run specifications and their text form.
//
// The config file is a small TOML-like format: `key = value` lines, optional
// `[model]` and `[grid]` sections, `#` comments. Values are integers, reals,
// booleans, double-quoted strings, or bracketed lists of numbers. Unknown or
// repeated keys are errors.
//
//     command = "fig1"
//     seed = 7
//     reps = 2000
//
//     [model]
//     n_authors = [2, 8]        # or a single integer
//     discount_rate = 0.01
//
//     [grid]
//     authors = [2, 5, 8]
//     points = 5
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coauthor/scenario.hpp"

namespace coauthor {

enum class Command { Run, Fig1, Fig2, Fig3, Fit, Case };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view text);

/// Author counts used by the figure experiments.
inline constexpr Range<int> kFigureAuthorRange{2, 8};

struct RunSpec {
    Command command = Command::Run;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;  ///< unset: the command's default
    std::string output_dir = ".";
    unsigned workers = 0;  ///< 0 = hardware concurrency
    bool log_events = false;
    std::optional<CaseId> case_id;  ///< required by `case`
    std::string input;              ///< required by `fit`
    ScenarioSpec scenario = default_scenario();
    std::vector<int> grid_authors{2, 5, 8};
    int grid_points = 5;

    friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

/// Default replication count: 10,000 for fig1/run/case, 100,000 for fig2/fig3.
std::size_t default_reps(Command command);

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Parses and validates. Throws ConfigError naming the offending key.
RunSpec parse_config(std::string_view text);

/// Checks cross-field constraints (required fields per command, figure author
/// range for the figure commands). Throws ConfigError.
void validate(const RunSpec& spec);

/// Canonical text form; parse_config(render_config(s)) == s.
std::string render_config(const RunSpec& spec);

}  // namespace coauthor
