#include <cmath>
#include <numbers>
#include <stdexcept>

#include "coauthor/scenario.hpp"
#include "coauthor/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coauthor;
using doctest::Approx;

namespace {

SimulationOutcome outcome(int n, std::vector<std::size_t> issuers) {
    SimulationOutcome o;
    o.completed = true;
    for (int i = 0; i < n; ++i) o.initial_order.push_back(static_cast<AuthorIndex>(i));
    o.final_order = o.initial_order;
    o.payoffs.assign(static_cast<std::size_t>(n), 0.0);
    for (auto who : issuers) {
        UltimatumEvent e;
        e.issuer = who;
        e.round = 1;
        e.from_position = 2;
        e.to_position = 1;
        o.events.push_back(e);
    }
    return o;
}

}  // namespace

TEST_CASE("mean_std") {
    const std::vector<double> v{1.0, 3.0};
    const auto m = mean_std(v);
    CHECK(m.mean == 2.0);
    CHECK(m.std == Approx(std::sqrt(2.0)).epsilon(1e-12));
    const std::vector<double> one{4.0};
    CHECK(mean_std(one).std == 0.0);
    CHECK_THROWS_AS(mean_std(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("iau_rate and per-position rates") {
    const std::vector<SimulationOutcome> outs{outcome(3, {}), outcome(3, {2}), outcome(3, {}),
                                              outcome(3, {})};
    const auto rate = iau_rate(outs);
    CHECK(rate.mean == 0.25);
    CHECK(rate.std == Approx(0.5).epsilon(1e-12));

    CHECK(per_position_rates(std::vector<SimulationOutcome>{outcome(4, {2})}, 4) ==
          std::vector<double>{0.0, 0.0, 1.0, 0.0});
    const std::vector<SimulationOutcome> two{outcome(3, {1, 2}), outcome(3, {2})};
    CHECK(per_position_rates(two, 3) == std::vector<double>{0.0, 0.5, 1.0});
    CHECK_THROWS_AS(per_position_rates(two, 4), std::invalid_argument);

    const auto s = summarize(two);
    CHECK(s.n == 2);
    CHECK(s.iau_rate == 1.0);
    CHECK(s.rate_std == 0.0);
    CHECK(s.per_position_rates.size() == 3);

    const std::vector<SimulationOutcome> mixed{outcome(2, {1}), outcome(3, {})};
    const auto m = summarize(mixed);
    CHECK(m.iau_rate == 0.5);
    CHECK(m.per_position_rates.empty());
    CHECK(m.mean_payoffs.empty());
    CHECK_THROWS_AS(iau_rate(std::vector<SimulationOutcome>{}), std::invalid_argument);
}

TEST_CASE("r_squared") {
    const std::vector<double> actual{1, 2, 3};
    const std::vector<double> predicted{1, 2, 4};
    // SS_res = 1, SS_tot = 2.
    CHECK(r_squared(predicted, actual) == Approx(0.5).epsilon(1e-12));
    CHECK(r_squared(actual, actual) == 1.0);
    CHECK(r_squared(std::vector<double>(3, 2.0), actual) == 0.0);
    const std::vector<double> flat{2, 2, 2};
    CHECK(r_squared(flat, flat) == 1.0);
    CHECK(r_squared(actual, flat) == 0.0);
    CHECK_THROWS_AS(r_squared(actual, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("planar fit of a constant response") {
    std::vector<PlanarPoint> pts;
    for (double u = 1; u <= 3; u += 1) {
        for (double c = 1; c <= 3; c += 1) pts.push_back({u, c, 0.4});
    }
    const auto fit = ols_fit_planar(pts);
    CHECK(std::abs(fit.coefficient("u")) < 1e-12);
    CHECK(std::abs(fit.coefficient("c")) < 1e-12);
    CHECK(fit.r_squared == 1.0);
}

TEST_CASE("planar fit recovers an exact plane") {
    std::vector<PlanarPoint> pts;
    for (double u = 1; u <= 5; u += 1) {
        for (double c = 1; c <= 5; c += 1) pts.push_back({u, c, 0.2 - 0.05 * u + 0.1 * c});
    }
    const auto fit = ols_fit_planar(pts);
    CHECK(fit.coefficient("intercept") == Approx(0.2).epsilon(1e-9));
    CHECK(fit.coefficient("u") == Approx(-0.05).epsilon(1e-9));
    CHECK(fit.coefficient("c") == Approx(0.1).epsilon(1e-9));
    CHECK(fit.r_squared == Approx(1.0).epsilon(1e-12));
    CHECK(fit.n_points == 25);
    CHECK_THROWS_AS(fit.coefficient("slope"), std::out_of_range);
}

TEST_CASE("planar fit rejects degenerate designs") {
    const std::vector<PlanarPoint> line{{1, 1, 0.1}, {2, 2, 0.2}, {3, 3, 0.3}, {4, 4, 0.4}};
    CHECK_THROWS_AS(ols_fit_planar(line), std::domain_error);
    const std::vector<PlanarPoint> few{{1, 1, 0.1}, {2, 1, 0.2}, {1, 2, 0.3}};
    CHECK_THROWS(ols_fit_planar(few));
}

TEST_CASE("planar fit residuals are orthogonal to the design") {
    RandomStream rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<PlanarPoint> pts;
        for (int i = 0; i < 30; ++i) pts.push_back({rng.uniform(1, 5), rng.uniform(1, 5), rng.uniform01()});
        const auto fit = ols_fit_planar(pts);
        double s1 = 0, su = 0, sc = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            s1 += fit.residuals[i];
            su += fit.residuals[i] * pts[i].u;
            sc += fit.residuals[i] * pts[i].c;
        }
        REQUIRE(std::abs(s1) < 1e-10);
        REQUIRE(std::abs(su) < 1e-10);
        REQUIRE(std::abs(sc) < 1e-10);
        REQUIRE(fit.r_squared >= 0.0);
        REQUIRE(fit.r_squared <= 1.0);
    }
}

TEST_CASE("log fit") {
    std::vector<LogPoint> pts;
    for (int a = 2; a <= 8; ++a) pts.push_back({double(a), 0.18 * std::log(double(a)) + 0.12});
    const auto fit = log_fit(pts);
    CHECK(fit.coefficient("slope") == Approx(0.18).epsilon(1e-9));
    CHECK(fit.coefficient("intercept") == Approx(0.12).epsilon(1e-9));
    CHECK(fit.r_squared == Approx(1.0).epsilon(1e-12));
    const std::vector<LogPoint> bad{{0.5, 0.1}, {2, 0.2}, {3, 0.3}};
    CHECK_THROWS_AS(log_fit(bad), std::domain_error);
    const std::vector<LogPoint> two{{2, 0.1}, {3, 0.2}};
    CHECK_THROWS(log_fit(two));
}

TEST_CASE("simple regression R^2 equals squared correlation") {
    RandomStream rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x, y;
        for (int i = 0; i < 20; ++i) {
            x.push_back(rng.uniform(0, 10));
            y.push_back(0.3 * x.back() + rng.normal(0, 1));
        }
        const auto fit = least_squares({"intercept", "x"}, {std::vector<double>(20, 1.0), x}, y);
        double mx = 0, my = 0;
        for (int i = 0; i < 20; ++i) {
            mx += x[i] / 20;
            my += y[i] / 20;
        }
        double sxy = 0, sxx = 0, syy = 0;
        for (int i = 0; i < 20; ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        REQUIRE(fit.r_squared == Approx(sxy * sxy / (sxx * syy)).epsilon(1e-9));
    }
}

TEST_CASE("incomplete_beta") {
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I_x(1, 1) = x, I_x(a, 1) = x^a.
    CHECK(incomplete_beta(1.0, 1.0, 0.37) == Approx(0.37).epsilon(1e-12));
    CHECK(incomplete_beta(3.0, 1.0, 0.6) == Approx(0.216).epsilon(1e-12));
    for (double a : {0.5, 1.5, 4.0, 12.0}) {
        for (double b : {0.5, 2.0, 7.0}) {
            // Integrate the beta density; substitute x = s^2 to tame the a = 0.5 endpoint.
            auto f = [&](double s) {
                return 2.0 * std::pow(s, 2.0 * a - 1.0) * std::pow(1.0 - s * s, b - 1.0);
            };
            const double total = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
            for (double x : {0.1, 0.35, 0.6, 0.85}) {
                const double expected = oracle::simpson(f, 0.0, std::sqrt(x), 20000) / total;
                CHECK(incomplete_beta(a, b, x) == Approx(expected).epsilon(1e-7));
            }
        }
    }
    CHECK_THROWS(incomplete_beta(-1.0, 1.0, 0.5));
    CHECK_THROWS(incomplete_beta(1.0, 1.0, 1.5));
}

TEST_CASE("student_t_two_tailed matches closed forms") {
    for (double t : {0.0, 0.3, 1.0, 2.5, 7.0, -3.2}) {
        // df = 1 is Cauchy; df = 2 has an algebraic cdf.
        CHECK(student_t_two_tailed(t, 1) ==
              Approx(1.0 - 2.0 / std::numbers::pi * std::atan(std::abs(t))).epsilon(1e-12));
        CHECK(student_t_two_tailed(t, 2) ==
              Approx(1.0 - std::abs(t) / std::sqrt(t * t + 2.0)).epsilon(1e-12));
    }
    // Large df tends to the normal: P(|Z| > 1.959964) = 0.05.
    CHECK(student_t_two_tailed(1.959963984540054, 1e7) == Approx(0.05).epsilon(1e-5));
}

TEST_CASE("paired_t_test") {
    const std::vector<double> x{2, 3, 4};
    const std::vector<double> y{1, 1, 1};
    const auto r = paired_t_test(x, y);
    CHECK(r.t_statistic == Approx(3.4641016151377544).epsilon(1e-12));
    CHECK(r.degrees_of_freedom == 2);
    CHECK(r.p_value == Approx(1.0 - 3.4641016151377544 / std::sqrt(14.0)).epsilon(1e-9));
    CHECK(r.p_value == Approx(0.0742).epsilon(1e-3));
    CHECK(r.two_tailed);

    const auto same = paired_t_test(x, x);
    CHECK(same.t_statistic == 0.0);
    CHECK(same.p_value == 1.0);

    const std::vector<double> shifted{3, 4, 5};
    CHECK_THROWS_AS(paired_t_test(shifted, x), std::invalid_argument);
    CHECK_THROWS_AS(paired_t_test(std::vector<double>{1}, std::vector<double>{2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(paired_t_test(x, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("paired_t_test is antisymmetric") {
    RandomStream rng(6);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> a, b;
        const auto n = rng.uniform_int(2, 30);
        for (std::int64_t i = 0; i < n; ++i) {
            a.push_back(rng.uniform01());
            b.push_back(rng.uniform01());
        }
        const auto ab = paired_t_test(a, b);
        const auto ba = paired_t_test(b, a);
        REQUIRE(ab.t_statistic == Approx(-ba.t_statistic).epsilon(1e-12));
        REQUIRE(ab.p_value == Approx(ba.p_value).epsilon(1e-12));
        REQUIRE(ab.p_value >= 0.0);
        REQUIRE(ab.p_value <= 1.0);
    }
}

TEST_CASE("run_replications matches summarize over simulate_replications") {
    const ConfigSampler sampler = [](RandomStream& rng) { return default_config(rng); };
    const auto direct = summarize(simulate_replications(sampler, 3, 300, 2));
    const auto stats = run_replications(sampler, 3, 300, 1);
    CHECK(stats.iau_rate == direct.iau_rate);
    CHECK(stats.rate_std == direct.rate_std);
    CHECK(stats.n == 300);
}
