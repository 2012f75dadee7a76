#include "coauthor/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coauthor {

MeanStd mean_std(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean_std of an empty sample");
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

MeanStd iau_rate(std::span<const SimulationOutcome> outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("iau_rate of no outcomes");
    std::vector<double> indicator;
    indicator.reserve(outcomes.size());
    for (const auto& o : outcomes) indicator.push_back(o.any_ultimatum() ? 1.0 : 0.0);
    return mean_std(indicator);
}

std::vector<double> per_position_rates(std::span<const SimulationOutcome> outcomes,
                                       int n_authors) {
    if (n_authors < 1) throw std::invalid_argument("n_authors must be >= 1");
    const auto n = static_cast<std::size_t>(n_authors);
    std::vector<double> rates(n, 0.0);
    if (outcomes.empty()) return rates;
    std::vector<bool> issued(n);
    std::vector<int> start_position(n);
    for (const auto& o : outcomes) {
        if (o.n_authors() != n_authors) {
            throw std::invalid_argument("outcome has " + std::to_string(o.n_authors()) +
                                        " authors, expected " + std::to_string(n_authors));
        }
        for (std::size_t p = 0; p < n; ++p) start_position[o.initial_order[p]] = static_cast<int>(p);
        std::fill(issued.begin(), issued.end(), false);
        for (const auto& e : o.events) issued[static_cast<std::size_t>(start_position[e.issuer])] = true;
        for (std::size_t p = 0; p < n; ++p) {
            if (issued[p]) rates[p] += 1.0;
        }
    }
    for (auto& r : rates) r /= static_cast<double>(outcomes.size());
    return rates;
}

ReplicationStats summarize(std::span<const SimulationOutcome> outcomes) {
    const auto rate = iau_rate(outcomes);
    ReplicationStats stats;
    stats.n = outcomes.size();
    stats.iau_rate = rate.mean;
    stats.rate_std = rate.std;

    const int n_authors = outcomes.front().n_authors();
    const bool uniform = std::all_of(outcomes.begin(), outcomes.end(), [&](const auto& o) {
        return o.n_authors() == n_authors;
    });
    if (!uniform) return stats;

    stats.per_position_rates = per_position_rates(outcomes, n_authors);
    stats.mean_payoffs.assign(static_cast<std::size_t>(n_authors), 0.0);
    for (const auto& o : outcomes) {
        for (std::size_t p = 0; p < o.initial_order.size(); ++p) {
            stats.mean_payoffs[p] += o.payoffs[o.initial_order[p]];
        }
    }
    for (auto& m : stats.mean_payoffs) m /= static_cast<double>(outcomes.size());
    return stats;
}

ReplicationStats run_replications(const ConfigSampler& sampler, std::uint64_t master_seed,
                                  std::size_t n_reps, unsigned workers) {
    const auto outcomes = simulate_replications(sampler, master_seed, n_reps, workers);
    return summarize(outcomes);
}

double r_squared(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size()) {
        throw std::invalid_argument("r_squared: length mismatch");
    }
    if (actual.empty()) throw std::invalid_argument("r_squared: empty input");
    double mean = 0.0;
    for (double a : actual) mean += a;
    mean /= static_cast<double>(actual.size());
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        ss_res += (actual[i] - predicted[i]) * (actual[i] - predicted[i]);
        ss_tot += (actual[i] - mean) * (actual[i] - mean);
    }
    const bool constant =
        std::all_of(actual.begin(), actual.end(), [&](double a) { return a == actual[0]; });
    if (constant || ss_tot == 0.0) {
        // Fitted values of a constant response carry rounding noise; count
        // a few ulps per point as an exact fit.
        const double ulp = 64.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(actual[0]));
        return ss_res <= static_cast<double>(actual.size()) * ulp * ulp ? 1.0 : 0.0;
    }
    return 1.0 - ss_res / ss_tot;
}

double RegressionResult::coefficient(const std::string& name) const {
    for (const auto& [key, value] : coefficients) {
        if (key == name) return value;
    }
    throw std::out_of_range("no coefficient named '" + name + "'");
}

RegressionResult least_squares(const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& columns,
                               std::span<const double> y) {
    const std::size_t p = columns.size();
    const std::size_t m = y.size();
    if (names.size() != p) throw std::invalid_argument("least_squares: one name per column");
    for (const auto& col : columns) {
        if (col.size() != m) throw std::invalid_argument("least_squares: column length mismatch");
    }
    if (m < p || p == 0) {
        throw std::domain_error("least_squares: " + std::to_string(m) + " points cannot determine " +
                                std::to_string(p) + " coefficients");
    }

    // Householder QR applied in place to [A | y].
    auto a = columns;
    std::vector<double> rhs(y.begin(), y.end());
    double scale = 0.0;
    for (const auto& col : a) {
        for (double v : col) scale = std::max(scale, std::abs(v));
    }
    const double rank_tol = 1e-10 * std::max(scale, 1.0) * std::sqrt(static_cast<double>(m));

    std::vector<double> v(m);
    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += a[k][i] * a[k][i];
        norm = std::sqrt(norm);
        if (norm <= rank_tol) throw std::domain_error("least_squares: design matrix is rank deficient");
        const double alpha = a[k][k] > 0 ? -norm : norm;
        std::fill(v.begin(), v.end(), 0.0);
        for (std::size_t i = k; i < m; ++i) v[i] = a[k][i];
        v[k] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) vnorm2 += v[i] * v[i];
        auto reflect = [&](std::vector<double>& col) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += v[i] * col[i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i) col[i] -= f * v[i];
        };
        for (std::size_t j = k; j < p; ++j) reflect(a[j]);
        reflect(rhs);
    }

    std::vector<double> beta(p);
    for (std::size_t k = p; k-- > 0;) {
        double s = rhs[k];
        for (std::size_t j = k + 1; j < p; ++j) s -= a[j][k] * beta[j];
        beta[k] = s / a[k][k];
    }

    RegressionResult result;
    result.n_points = m;
    for (std::size_t k = 0; k < p; ++k) result.coefficients.emplace_back(names[k], beta[k]);
    result.fitted.assign(m, 0.0);
    for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t i = 0; i < m; ++i) result.fitted[i] += beta[k] * columns[k][i];
    }
    result.residuals.resize(m);
    for (std::size_t i = 0; i < m; ++i) result.residuals[i] = y[i] - result.fitted[i];
    result.r_squared = r_squared(result.fitted, y);
    return result;
}

RegressionResult ols_fit_planar(std::span<const PlanarPoint> points) {
    if (points.size() < 4) {
        throw std::domain_error("planar fit needs at least 4 points, got " +
                                std::to_string(points.size()));
    }
    std::vector<std::vector<double>> cols(3, std::vector<double>(points.size()));
    std::vector<double> y(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        cols[0][i] = 1.0;
        cols[1][i] = points[i].u;
        cols[2][i] = points[i].c;
        y[i] = points[i].p;
    }
    return least_squares({"intercept", "u", "c"}, cols, y);
}

RegressionResult log_fit(std::span<const LogPoint> points) {
    if (points.size() < 3) {
        throw std::domain_error("log fit needs at least 3 points, got " +
                                std::to_string(points.size()));
    }
    std::vector<std::vector<double>> cols(2, std::vector<double>(points.size()));
    std::vector<double> y(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].a >= 1.0)) {
            throw std::domain_error("log fit requires a >= 1, got " + std::to_string(points[i].a));
        }
        cols[0][i] = 1.0;
        cols[1][i] = std::log(points[i].a);
        y[i] = points[i].p;
    }
    return least_squares({"intercept", "slope"}, cols, y);
}

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete_beta: a, b must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("incomplete_beta: x must lie in [0, 1]");
    if (x == 0.0 || x == 1.0) return x;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed(double t, double df) {
    if (!(df > 0.0)) throw std::domain_error("student_t_two_tailed: df must be positive");
    if (std::isinf(t)) return 0.0;
    return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

TTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("paired_t_test: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("paired_t_test: need at least 2 pairs");
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    const auto [mean, sd] = mean_std(d);
    const int df = static_cast<int>(d.size()) - 1;
    if (sd == 0.0) {
        if (mean == 0.0) return {0.0, df, 1.0, true};
        throw std::invalid_argument("paired_t_test: differences have zero variance");
    }
    const double t = mean / (sd / std::sqrt(static_cast<double>(d.size())));
    return {t, df, student_t_two_tailed(t, df), true};
}

}  // namespace coauthor
