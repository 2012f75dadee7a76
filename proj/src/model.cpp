#include "coauthor/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace coauthor {

void validate(const PositionUtilityParams& params) {
    auto in_range = [](double r) { return r >= 0.0 && r <= kMaxPositionNoise; };
    if (!in_range(params.r1) || !in_range(params.r2)) {
        throw std::invalid_argument("position utility noise must lie in [0, 0.25]");
    }
}

void validate(const AuthorParams& params) {
    if (!(params.u0 > 0.0)) {
        throw std::invalid_argument("author " + std::to_string(params.id) +
                                    ": completion utility must be positive");
    }
    if (!(params.w_mean >= 0.0) || !(params.w_std >= 0.0)) {
        throw std::invalid_argument("author " + std::to_string(params.id) +
                                    ": contribution moments must be non-negative");
    }
    validate(params.u1);
}

void validate(const DiscountParams& params) {
    if (!(params.discount_rate >= 0.0 && params.discount_rate <= 1.0)) {
        throw std::invalid_argument("discount_rate must lie in [0, 1]");
    }
    if (!(params.withdrawal_penalty >= 0.0 && params.withdrawal_penalty <= 1.0)) {
        throw std::invalid_argument("withdrawal_penalty must lie in [0, 1]");
    }
}

double position_utility(const PositionUtilityParams& params, int position) {
    if (position < 1) {
        throw std::domain_error("position must be >= 1, got " + std::to_string(position));
    }
    return (1.0 - params.r1) / (static_cast<double>(position) + params.r2);
}

double discount_factor(const DiscountParams& d, int remaining_rounds) {
    if (remaining_rounds <= 0 || d.discount_rate == 0.0) return 1.0;
    return 1.0 / std::pow(1.0 + d.discount_rate, remaining_rounds);
}

double discounted_completion_utility(double u0, const DiscountParams& d, int remaining_rounds) {
    return u0 * discount_factor(d, remaining_rounds);
}

int displacement(const UltimatumProposal& proposal, int responder_position) {
    if (responder_position == proposal.from_position) {
        throw std::invalid_argument("responder cannot sit at the issuer's position");
    }
    if (responder_position >= proposal.to_position && responder_position < proposal.from_position) {
        return responder_position + 1;
    }
    return responder_position;
}

double responder_loss(const AuthorState& responder, const UltimatumProposal& proposal,
                      const DiscountParams& d) {
    const int now = responder.position;
    const int after = displacement(proposal, now);
    if (after == now) return 0.0;
    const auto& p = responder.params;
    return p.u0 * (position_utility(p.u1, now) - position_utility(p.u1, after)) *
           discount_factor(d, remaining_rounds(proposal.round, proposal.horizon));
}

bool responder_accepts(const AuthorState& responder, const UltimatumProposal& proposal,
                       const DiscountParams& d) {
    const double loss = responder_loss(responder, proposal, d);
    return loss == 0.0 || responder.contributed > loss;
}

double issuer_gain(const AuthorState& issuer, int to_position, int round, int horizon,
                   const DiscountParams& d) {
    const int from = issuer.position;
    if (to_position < 1 || to_position >= from) {
        throw std::domain_error("target position " + std::to_string(to_position) +
                                " does not improve on " + std::to_string(from));
    }
    const auto& p = issuer.params;
    return p.u0 * (position_utility(p.u1, to_position) - position_utility(p.u1, from)) *
           discount_factor(d, remaining_rounds(round, horizon));
}

bool all_accept(std::span<const AuthorState> authors, const UltimatumProposal& proposal,
                const DiscountParams& d) {
    for (const auto& a : authors) {
        if (a.params.id == proposal.issuer) continue;
        if (!responder_accepts(a, proposal, d)) return false;
    }
    return true;
}

std::optional<UltimatumProposal> best_ultimatum(const AuthorState& issuer,
                                                std::span<const AuthorState> authors, int round,
                                                int horizon, const DiscountParams& d) {
    const int j = issuer.position;
    if (j <= 1) return std::nullopt;

    std::vector<const AuthorState*> at_position(authors.size() + 1, nullptr);
    for (const auto& a : authors) {
        if (a.position >= 1 && static_cast<std::size_t>(a.position) <= authors.size()) {
            at_position[static_cast<std::size_t>(a.position)] = &a;
        }
    }

    std::optional<UltimatumProposal> best;
    for (int k = j - 1; k >= 1; --k) {
        const UltimatumProposal candidate{issuer.params.id, j, k, round, horizon};
        // Going from k+1 to k only displaces one more responder, the one at k.
        const AuthorState* newly_displaced = at_position[static_cast<std::size_t>(k)];
        if (newly_displaced == nullptr || !responder_accepts(*newly_displaced, candidate, d)) break;
        best = candidate;
    }
    return best;
}

HoldDecision withdraw_or_hold(const AuthorState& issuer, int round, int horizon,
                              const DiscountParams& d) {
    const auto& p = issuer.params;
    const double withdraw =
        discounted_completion_utility(p.u0, d, remaining_rounds(round, horizon)) *
            position_utility(p.u1, issuer.position) -
        d.withdrawal_penalty * issuer.contributed;
    const double hold = -issuer.contributed;
    return withdraw >= hold ? HoldDecision::Withdraw : HoldDecision::Hold;
}

std::vector<AuthorIndex> apply_ultimatum(std::span<const AuthorIndex> order,
                                         const UltimatumProposal& proposal) {
    const int j = proposal.from_position;
    const int k = proposal.to_position;
    const auto n = static_cast<int>(order.size());
    if (j < 2 || j > n || k < 1 || k >= j) {
        throw std::domain_error("ultimatum target " + std::to_string(k) + " is not in [1, " +
                                std::to_string(j - 1) + "]");
    }
    if (order[static_cast<std::size_t>(j - 1)] != proposal.issuer) {
        throw std::domain_error("issuer is not at position " + std::to_string(j));
    }
    std::vector<AuthorIndex> next(order.begin(), order.end());
    for (int p = j; p > k; --p) {
        next[static_cast<std::size_t>(p - 1)] = order[static_cast<std::size_t>(p - 2)];
    }
    next[static_cast<std::size_t>(k - 1)] = proposal.issuer;
    return next;
}

bool is_permutation_of_indices(std::span<const AuthorIndex> order) {
    std::vector<bool> seen(order.size(), false);
    for (auto idx : order) {
        if (idx >= order.size() || seen[idx]) return false;
        seen[idx] = true;
    }
    return true;
}

}  // namespace coauthor
