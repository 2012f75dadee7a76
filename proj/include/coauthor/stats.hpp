// Aggregation of simulation outcomes and the small set of estimators used on
// them: rates, least-squares fits with R^2, and the paired t-test.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coauthor/engine.hpp"

namespace coauthor {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  ///< sample (n - 1) standard deviation; 0 for a singleton
};

/// Throws std::invalid_argument on empty input.
MeanStd mean_std(std::span<const double> values);

/// Fraction of outcomes with at least one ultimatum and the sample standard
/// deviation of that 0/1 indicator. Throws std::invalid_argument when empty.
MeanStd iau_rate(std::span<const SimulationOutcome> outcomes);

/// Entry p-1: fraction of runs in which the author who started at position p
/// issued at least one ultimatum. Throws std::invalid_argument if any outcome
/// has a different author count.
std::vector<double> per_position_rates(std::span<const SimulationOutcome> outcomes,
                                       int n_authors);

struct ReplicationStats {
    std::size_t n = 0;
    double iau_rate = 0.0;
    double rate_std = 0.0;
    /// Empty unless every replication has the same author count.
    std::vector<double> per_position_rates;
    /// Mean payoff by initial position; empty under the same condition.
    std::vector<double> mean_payoffs;
};

ReplicationStats summarize(std::span<const SimulationOutcome> outcomes);

/// simulate_replications followed by an in-order reduction.
ReplicationStats run_replications(const ConfigSampler& sampler, std::uint64_t master_seed,
                                  std::size_t n_reps, unsigned workers = 0);

/// 1 - SS_res / SS_tot. With SS_tot = 0 the result is 1 for a perfect fit and
/// 0 otherwise. Throws std::invalid_argument on empty or mismatched input.
double r_squared(std::span<const double> predicted, std::span<const double> actual);

struct RegressionResult {
    std::vector<std::pair<std::string, double>> coefficients;
    double r_squared = 0.0;
    std::size_t n_points = 0;
    std::vector<double> fitted;
    std::vector<double> residuals;

    /// Throws std::out_of_range for an unknown name.
    double coefficient(const std::string& name) const;
};

/// Least squares of y on the given columns (no implicit intercept), via
/// Householder QR. Throws std::domain_error when the design is rank deficient.
RegressionResult least_squares(const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& columns,
                               std::span<const double> y);

struct PlanarPoint {
    double u = 0.0;  ///< utility spectrum width
    double c = 0.0;  ///< contribution spectrum width
    double p = 0.0;  ///< rate
};

/// p ~ intercept + u_slope * u + c_slope * c.
RegressionResult ols_fit_planar(std::span<const PlanarPoint> points);

struct LogPoint {
    double a = 1.0;  ///< author count, >= 1
    double p = 0.0;
};

/// p ~ intercept + slope * ln(a). Needs at least 3 points; throws
/// std::domain_error for a < 1.
RegressionResult log_fit(std::span<const LogPoint> points);

/// Regularized incomplete beta I_x(a, b), continued fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// Two-tailed p-value of Student's t with `df` degrees of freedom.
double student_t_two_tailed(double t, double df);

struct TTestResult {
    double t_statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
    bool two_tailed = true;
};

/// Two-tailed paired t-test on d = x - y. Identical samples give t = 0, p = 1.
/// Throws std::invalid_argument when n < 2, on length mismatch, or when the
/// differences are constant and nonzero.
TTestResult paired_t_test(std::span<const double> x, std::span<const double> y);

}  // namespace coauthor
