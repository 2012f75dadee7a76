// Round-based game loop and the replication runner.
#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "coauthor/model.hpp"
#include "coauthor/rng.hpp"

namespace coauthor {

/// Slack on the completion threshold and on the contribution normalization.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Runaway guard: a run stops after this many multiples of the horizon.
inline constexpr int kHorizonCapMultiple = 4;

/// One fully sampled game instance.
struct ProjectConfig {
    int n_authors = 2;
    int horizon_rounds = 10;    ///< T, in weeks
    double start_progress = 0;  ///< fraction of the project already done
    std::vector<AuthorParams> authors;
    DiscountParams discount;
    double threshold = 1.0;  ///< total contribution at which the manuscript is submitted
};

/// Throws std::invalid_argument describing the first violated invariant.
void validate(const ProjectConfig& config);

enum class EventOutcome { Accepted, RejectedWithdrawn, RejectedHeld };

std::string_view to_string(EventOutcome outcome);

struct UltimatumEvent {
    int round = 0;
    AuthorIndex issuer = 0;
    int from_position = 0;
    int to_position = 0;
    EventOutcome outcome = EventOutcome::Accepted;

    friend bool operator==(const UltimatumEvent&, const UltimatumEvent&) = default;
};

struct SimulationState {
    int round = 0;
    std::vector<AuthorState> authors;  ///< indexed by author id
    std::vector<AuthorIndex> order;    ///< order[p - 1] is the author at position p
    double total_contributed = 0.0;
    std::vector<UltimatumEvent> event_log;
    std::vector<double> penalties;  ///< withdrawal penalties charged so far, per author
    bool collapsed = false;         ///< an issuer held a rejected ultimatum
};

struct SimulationOutcome {
    bool completed = false;
    int rounds_elapsed = 0;  ///< rounds actually stepped
    std::vector<UltimatumEvent> events;
    std::vector<AuthorIndex> initial_order;
    std::vector<AuthorIndex> final_order;
    std::vector<double> payoffs;  ///< indexed by author id

    int n_authors() const { return static_cast<int>(initial_order.size()); }
    bool any_ultimatum() const { return !events.empty(); }

    friend bool operator==(const SimulationOutcome&, const SimulationOutcome&) = default;
};

/// Sets up the state at `start_progress` using expected accrual: each author
/// has contributed start_progress * T * w_mean and the clock reads
/// round(start_progress * T). The initial list ranks authors by w_mean,
/// descending, with ties going to the lower author id.
SimulationState init_project(const ProjectConfig& config);

/// Normal(w_mean, w_std) clamped below at zero.
double sample_contribution(const AuthorParams& author, RandomStream& rng);

/// One round. Authors contribute in a freshly shuffled order; unless the
/// project has just reached its threshold, each author who has not yet issued
/// then gets, in that same order, the chance to issue its best ultimatum,
/// resolved on the spot.
void step_round(SimulationState& state, const ProjectConfig& config, RandomStream& rng);

bool is_complete(const SimulationState& state, const ProjectConfig& config);

SimulationOutcome run_simulation(const ProjectConfig& config, RandomStream& rng);
SimulationOutcome run_simulation(const ProjectConfig& config, SeedPolicy seed);

/// Builds one replication's configuration from that replication's stream.
using ConfigSampler = std::function<ProjectConfig(RandomStream&)>;

/// Runs replications 0..n_reps-1. Replication r samples its configuration
/// and plays its game on the stream (master_seed, r); results are returned
/// in replication order and do not depend on `workers` (0 = hardware
/// concurrency).
std::vector<SimulationOutcome> simulate_replications(const ConfigSampler& sampler,
                                                     std::uint64_t master_seed,
                                                     std::size_t n_reps, unsigned workers = 0);

}  // namespace coauthor
