// Decision mathematics of the co-authorship ultimatum game.
//
// Everything here is a pure function of its arguments: utility curves,
// discounting, the displacement rule and the issue/accept/withdraw logic.
// Positions on the authors' list are 1-based; lower is better.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace coauthor {

using AuthorIndex = std::size_t;

/// Noise of the per-author position utility u1(x) = (1 - r1) / (x + r2).
struct PositionUtilityParams {
    double r1 = 0.0;
    double r2 = 0.0;
};

inline constexpr double kMaxPositionNoise = 0.25;

struct AuthorParams {
    AuthorIndex id = 0;
    double u0 = 1.0;  ///< utility from completing the project
    PositionUtilityParams u1;
    double w_mean = 0.0;  ///< per-round contribution mean (normalized units)
    double w_std = 0.0;
};

struct AuthorState {
    AuthorParams params;
    double contributed = 0.0;
    int position = 1;
    bool has_issued = false;
};

struct DiscountParams {
    double discount_rate = 0.0;       ///< per-round discount rate
    double withdrawal_penalty = 0.0;  ///< fraction of accrued contribution forfeited
};

struct UltimatumProposal {
    AuthorIndex issuer = 0;
    int from_position = 0;  ///< j
    int to_position = 0;    ///< k, with k < j
    int round = 0;
    int horizon = 0;

    friend bool operator==(const UltimatumProposal&, const UltimatumProposal&) = default;
};

enum class HoldDecision { Withdraw, Hold };

/// Throws std::invalid_argument when r1 or r2 fall outside [0, 0.25].
void validate(const PositionUtilityParams& params);
/// Throws std::invalid_argument on negative moments or non-positive u0.
void validate(const AuthorParams& params);
void validate(const DiscountParams& params);

/// (1 - r1) / (position + r2). Throws std::domain_error for position < 1.
double position_utility(const PositionUtilityParams& params, int position);

double discount_factor(const DiscountParams& d, int remaining_rounds);

double discounted_completion_utility(double u0, const DiscountParams& d, int remaining_rounds);

/// Rounds left until the expected horizon, clamped at zero once overdue.
inline int remaining_rounds(int round, int horizon) { return round < horizon ? horizon - round : 0; }

/// New position of a responder at `responder_position` if the proposal is
/// accepted. Positions k..j-1 move down by one; everyone else stays put.
/// Throws std::invalid_argument when the responder is the issuer.
int displacement(const UltimatumProposal& proposal, int responder_position);

/// Discounted loss in position value a responder suffers if the proposal passes.
double responder_loss(const AuthorState& responder, const UltimatumProposal& proposal,
                      const DiscountParams& d);

/// A responder accepts when it is not displaced, or when its sunk contribution
/// exceeds the discounted loss in position value.
bool responder_accepts(const AuthorState& responder, const UltimatumProposal& proposal,
                       const DiscountParams& d);

/// u0 * (u1(k) - u1(j)) discounted to the current round. Throws
/// std::domain_error unless 1 <= k < j.
double issuer_gain(const AuthorState& issuer, int to_position, int round, int horizon,
                   const DiscountParams& d);

/// True when every author other than the issuer accepts the proposal.
bool all_accept(std::span<const AuthorState> authors, const UltimatumProposal& proposal,
                const DiscountParams& d);

/// Best ultimatum available to `issuer` against the other authors: the
/// smallest target position that every responder accepts. `authors` is the
/// full roster and must contain the issuer at index issuer.params.id.
///
/// Feasible targets form a contiguous run ending at j-1: lowering k adds
/// displaced responders while every already-displaced responder still moves
/// from m to m+1. The scan walks k = j-1, j-2, ... and stops at the first
/// rejection.
std::optional<UltimatumProposal> best_ultimatum(const AuthorState& issuer,
                                                std::span<const AuthorState> authors, int round,
                                                int horizon, const DiscountParams& d);

/// Issuer's choice after a rejection: keep the discounted status-quo payoff
/// minus the withdrawal penalty, or hold and collapse the project. Ties withdraw.
HoldDecision withdraw_or_hold(const AuthorState& issuer, int round, int horizon,
                              const DiscountParams& d);

/// `order[p - 1]` is the author at position p. Moves the issuer from j to k and
/// shifts k..j-1 down by one. Throws std::domain_error if k is not in [1, j-1]
/// or the issuer is not at j.
std::vector<AuthorIndex> apply_ultimatum(std::span<const AuthorIndex> order,
                                         const UltimatumProposal& proposal);

/// True when `order` holds each of 0..n-1 exactly once.
bool is_permutation_of_indices(std::span<const AuthorIndex> order);

}  // namespace coauthor
