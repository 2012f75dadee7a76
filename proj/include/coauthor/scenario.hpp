// Configuration samplers: the default parameter ranges, the student/advisor
// and two-group special cases, and the experiment sweeps built on them.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coauthor/engine.hpp"
#include "coauthor/rng.hpp"

namespace coauthor {

inline constexpr double kDefaultDiscountRate = 0.01;
inline constexpr double kDefaultWithdrawalPenalty = 0.1;
/// w_std as a fraction of w_mean.
inline constexpr double kDefaultContributionStdRatio = 0.1;

template <typename T>
struct Range {
    T low{};
    T high{};
    friend bool operator==(const Range&, const Range&) = default;
};

enum class SpectrumMode { SampledWidth, FixedWidth };

/// Spread between the largest and smallest per-author value. SampledWidth
/// draws the width uniformly from [low, high]; FixedWidth uses `low`.
struct SpectrumSpec {
    double low = 1.0;
    double high = 5.0;
    SpectrumMode mode = SpectrumMode::SampledWidth;

    static SpectrumSpec fixed(double width) { return {width, width, SpectrumMode::FixedWidth}; }
    friend bool operator==(const SpectrumSpec&, const SpectrumSpec&) = default;
};

enum class CaseId { SA1, SA2, SA3, SA4, SA5, SA6, SA7, SA8, P1, P2, P3, P4, Default, Custom };

std::string_view to_string(CaseId id);
/// Accepts "SA1".."SA8", "P1".."P4", "default", "custom" (case-insensitive).
std::optional<CaseId> parse_case_id(std::string_view text);
/// SA1..SA8 then P1..P4.
const std::vector<CaseId>& special_cases();

/// How sampled spectrum values map onto authors.
enum class RoleAssignment {
    Ranked,        ///< i-th largest utility goes with the i-th largest contribution
    Independent,   ///< utilities in a random permutation, unrelated to contribution
    PairedGroups,  ///< authors {0,1} share the high endpoints, {2,3} the low ones
};

std::string_view to_string(RoleAssignment roles);
std::optional<RoleAssignment> parse_role_assignment(std::string_view text);

struct ScenarioSpec {
    CaseId case_id = CaseId::Default;
    Range<int> n_authors{2, 8};
    SpectrumSpec contribution;
    SpectrumSpec utility;
    Range<int> duration{8, 88};
    Range<double> start_progress{0.0, 1.0};
    RoleAssignment roles = RoleAssignment::Ranked;
    double discount_rate = kDefaultDiscountRate;
    double withdrawal_penalty = kDefaultWithdrawalPenalty;
    double contribution_std_ratio = kDefaultContributionStdRatio;

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ScenarioSpec& spec);

ScenarioSpec default_scenario();
/// Throws std::invalid_argument for Default/Custom.
ScenarioSpec case_scenario(CaseId id);

/// Values spanning a spectrum: width S per the mode; for n = 1 just [S],
/// otherwise endpoints 1 and S with n-2 interior values uniform in [1, S].
/// Sorted descending.
std::vector<double> sample_spectrum_values(const SpectrumSpec& spec, int n, RandomStream& rng);

ProjectConfig sample_config(const ScenarioSpec& spec, RandomStream& rng);
ProjectConfig default_config(RandomStream& rng);
ProjectConfig case_config(CaseId id, RandomStream& rng);

ConfigSampler make_sampler(ScenarioSpec spec);

enum class SweepKind { Duration, Progress, PositionMatrix };

/// One experiment cell. Only the fields meaningful for the grid's kind are set.
struct GridCell {
    int authors = 0;
    double u_width = 0.0;
    double c_width = 0.0;
    int duration = 0;
    double progress = 0.0;
    ScenarioSpec scenario;
};

enum class GridKind { Fig1, Duration, Progress, PositionMatrix };

struct ExperimentGrid {
    GridKind kind = GridKind::Fig1;
    std::vector<GridCell> cells;
    std::size_t reps = 1;
};

/// Evenly spaced points from `low` to `high` inclusive.
std::vector<double> lattice(double low, double high, int points);

/// One cell per (authors, utility width, contribution width) with both
/// spectra fixed on a `points` x `points` lattice over [1, 5]^2.
ExperimentGrid fig1_grid(const std::vector<int>& author_counts, int points, std::size_t reps,
                         const ScenarioSpec& base = default_scenario());

/// Duration: T in {8, 18, ..., 88}; Progress: start in {0, 0.1, ..., 1};
/// PositionMatrix: default ranges. Each for N = 2..8.
ExperimentGrid fig2_sweep(SweepKind kind, std::size_t reps,
                          const ScenarioSpec& base = default_scenario());

}  // namespace coauthor
