#include "coauthor/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace coauthor {

void validate(const ProjectConfig& config) {
    if (config.n_authors < 1) throw std::invalid_argument("n_authors must be >= 1");
    if (config.horizon_rounds < 1) throw std::invalid_argument("horizon_rounds must be >= 1");
    if (!(config.start_progress >= 0.0 && config.start_progress <= 1.0)) {
        throw std::invalid_argument("start_progress must lie in [0, 1]");
    }
    if (!(config.threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
    if (config.authors.size() != static_cast<std::size_t>(config.n_authors)) {
        throw std::invalid_argument("expected " + std::to_string(config.n_authors) +
                                    " authors, got " + std::to_string(config.authors.size()));
    }
    validate(config.discount);
    double per_round = 0.0;
    for (std::size_t i = 0; i < config.authors.size(); ++i) {
        if (config.authors[i].id != i) {
            throw std::invalid_argument("author ids must equal their index");
        }
        validate(config.authors[i]);
        per_round += config.authors[i].w_mean;
    }
    const double total = per_round * config.horizon_rounds;
    if (std::abs(total - config.threshold) > kNormalizationTolerance) {
        throw std::invalid_argument("expected contributions over the horizon sum to " +
                                    std::to_string(total) + ", not the threshold");
    }
}

std::string_view to_string(EventOutcome outcome) {
    switch (outcome) {
        case EventOutcome::Accepted: return "accepted";
        case EventOutcome::RejectedWithdrawn: return "withdrawn";
        case EventOutcome::RejectedHeld: return "held";
    }
    return "unknown";
}

SimulationState init_project(const ProjectConfig& config) {
    const auto n = config.authors.size();
    SimulationState state;
    state.round = static_cast<int>(std::lround(config.start_progress * config.horizon_rounds));
    state.order.resize(n);
    std::iota(state.order.begin(), state.order.end(), AuthorIndex{0});
    std::stable_sort(state.order.begin(), state.order.end(), [&](AuthorIndex a, AuthorIndex b) {
        return config.authors[a].w_mean > config.authors[b].w_mean;
    });

    const double elapsed = config.start_progress * config.horizon_rounds;
    state.authors.resize(n);
    state.penalties.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& a = state.authors[i];
        a.params = config.authors[i];
        a.contributed = elapsed * a.params.w_mean;
        state.total_contributed += a.contributed;
    }
    for (std::size_t p = 0; p < n; ++p) {
        state.authors[state.order[p]].position = static_cast<int>(p) + 1;
    }
    return state;
}

double sample_contribution(const AuthorParams& author, RandomStream& rng) {
    return std::max(0.0, rng.normal(author.w_mean, author.w_std));
}

namespace {

void resolve(SimulationState& state, const ProjectConfig& config, AuthorIndex issuer) {
    auto& author = state.authors[issuer];
    const auto proposal = best_ultimatum(author, state.authors, state.round,
                                         config.horizon_rounds, config.discount);
    if (!proposal) return;
    author.has_issued = true;

    UltimatumEvent event{state.round, issuer, proposal->from_position, proposal->to_position,
                         EventOutcome::Accepted};
    if (all_accept(state.authors, *proposal, config.discount)) {
        state.order = apply_ultimatum(state.order, *proposal);
        for (std::size_t p = 0; p < state.order.size(); ++p) {
            state.authors[state.order[p]].position = static_cast<int>(p) + 1;
        }
    } else if (withdraw_or_hold(author, state.round, config.horizon_rounds, config.discount) ==
               HoldDecision::Withdraw) {
        event.outcome = EventOutcome::RejectedWithdrawn;
        state.penalties[issuer] += config.discount.withdrawal_penalty * author.contributed;
    } else {
        event.outcome = EventOutcome::RejectedHeld;
        state.collapsed = true;
    }
    state.event_log.push_back(event);
}

}  // namespace

void step_round(SimulationState& state, const ProjectConfig& config, RandomStream& rng) {
    std::vector<AuthorIndex> turn(state.authors.size());
    std::iota(turn.begin(), turn.end(), AuthorIndex{0});
    rng.shuffle(std::span<AuthorIndex>(turn));

    for (auto i : turn) {
        const double c = sample_contribution(state.authors[i].params, rng);
        state.authors[i].contributed += c;
        state.total_contributed += c;
    }
    ++state.round;
    if (is_complete(state, config)) return;

    for (auto i : turn) {
        if (state.collapsed) break;
        if (!state.authors[i].has_issued) resolve(state, config, i);
    }
}

bool is_complete(const SimulationState& state, const ProjectConfig& config) {
    return state.total_contributed >= config.threshold - kNormalizationTolerance ||
           state.round >= kHorizonCapMultiple * config.horizon_rounds;
}

SimulationOutcome run_simulation(const ProjectConfig& config, RandomStream& rng) {
    validate(config);
    auto state = init_project(config);
    const int start_round = state.round;

    SimulationOutcome out;
    out.initial_order = state.order;
    while (!state.collapsed && !is_complete(state, config)) {
        step_round(state, config, rng);
    }
    out.completed =
        !state.collapsed && state.total_contributed >= config.threshold - kNormalizationTolerance;
    out.rounds_elapsed = state.round - start_round;
    out.final_order = state.order;
    out.events = std::move(state.event_log);

    out.payoffs.resize(state.authors.size());
    const int remaining = remaining_rounds(state.round, config.horizon_rounds);
    for (std::size_t i = 0; i < state.authors.size(); ++i) {
        const auto& a = state.authors[i];
        out.payoffs[i] =
            out.completed ? discounted_completion_utility(a.params.u0, config.discount, remaining) *
                                    position_utility(a.params.u1, a.position) -
                                state.penalties[i]
                          : -a.contributed;
    }
    return out;
}

SimulationOutcome run_simulation(const ProjectConfig& config, SeedPolicy seed) {
    RandomStream rng(seed);
    return run_simulation(config, rng);
}

std::vector<SimulationOutcome> simulate_replications(const ConfigSampler& sampler,
                                                     std::uint64_t master_seed,
                                                     std::size_t n_reps, unsigned workers) {
    if (n_reps == 0) throw std::invalid_argument("n_reps must be >= 1");
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_reps));

    std::vector<SimulationOutcome> outcomes(n_reps);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try {
            for (std::size_t r = next.fetch_add(1); r < n_reps; r = next.fetch_add(1)) {
                RandomStream rng(SeedPolicy{master_seed, r});
                const ProjectConfig config = sampler(rng);
                outcomes[r] = run_simulation(config, rng);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n_reps);
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return outcomes;
}

}  // namespace coauthor
