#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "coauthor/scenario.hpp"
#include "coauthor/stats.hpp"
#include "doctest.h"

using namespace coauthor;
using doctest::Approx;

TEST_CASE("case ids round-trip through text") {
    for (auto id : special_cases()) CHECK(parse_case_id(to_string(id)) == id);
    CHECK(parse_case_id("sa3") == CaseId::SA3);
    CHECK(parse_case_id("p4") == CaseId::P4);
    CHECK_FALSE(parse_case_id("SA9"));
    CHECK(special_cases().size() == 12);
    CHECK(parse_role_assignment("Paired") == RoleAssignment::PairedGroups);
    CHECK_FALSE(parse_role_assignment("shuffled"));
}

TEST_CASE("sample_spectrum_values") {
    RandomStream rng(3);
    SUBCASE("fixed width, two authors: just the endpoints") {
        CHECK(sample_spectrum_values(SpectrumSpec::fixed(3.0), 2, rng) == std::vector<double>{3.0, 1.0});
    }
    SUBCASE("single author gets the width") {
        CHECK(sample_spectrum_values(SpectrumSpec::fixed(2.5), 1, rng) == std::vector<double>{2.5});
    }
    SUBCASE("width one means everybody is equal") {
        CHECK(sample_spectrum_values(SpectrumSpec::fixed(1.0), 5, rng) ==
              std::vector<double>(5, 1.0));
    }
    SUBCASE("interior values stay inside the spectrum") {
        for (int trial = 0; trial < 2000; ++trial) {
            const auto v = sample_spectrum_values({1.0, 5.0, SpectrumMode::SampledWidth}, 8, rng);
            REQUIRE(v.size() == 8);
            REQUIRE(std::is_sorted(v.rbegin(), v.rend()));
            REQUIRE(v.back() == 1.0);
            REQUIRE(v.front() >= 1.0);
            REQUIRE(v.front() <= 5.0);
        }
    }
    CHECK_THROWS_AS(sample_spectrum_values(SpectrumSpec::fixed(2.0), 0, rng), std::invalid_argument);
}

TEST_CASE("default sampler ranges") {
    RandomStream rng(17);
    constexpr int kDraws = 100'000;
    std::array<int, 9> counts{};
    for (int i = 0; i < kDraws; ++i) {
        const auto c = default_config(rng);
        REQUIRE(c.n_authors >= 2);
        REQUIRE(c.n_authors <= 8);
        REQUIRE(c.horizon_rounds >= 8);
        REQUIRE(c.horizon_rounds <= 88);
        REQUIRE(c.start_progress >= 0.0);
        REQUIRE(c.start_progress <= 1.0);
        ++counts[static_cast<std::size_t>(c.n_authors)];
        if (i % 100 == 0) REQUIRE_NOTHROW(validate(c));
    }
    for (int n = 2; n <= 8; ++n) {
        const double share = static_cast<double>(counts[static_cast<std::size_t>(n)]) / kDraws;
        CHECK(std::abs(share - 1.0 / 7.0) <= 0.01);
    }
}

TEST_CASE("sampled configs meet the completion threshold exactly") {
    RandomStream rng(5);
    for (int i = 0; i < 5000; ++i) {
        const auto c = default_config(rng);
        double sum = 0.0;
        for (const auto& a : c.authors) {
            sum += a.w_mean * c.horizon_rounds;
            REQUIRE(a.w_std == Approx(kDefaultContributionStdRatio * a.w_mean));
            REQUIRE(a.u1.r1 >= 0.0);
            REQUIRE(a.u1.r1 <= kMaxPositionNoise);
            REQUIRE(a.u1.r2 >= 0.0);
            REQUIRE(a.u1.r2 <= kMaxPositionNoise);
        }
        REQUIRE(std::abs(sum - c.threshold) <= kNormalizationTolerance);
    }
}

TEST_CASE("ranked roles pair the largest utility with the largest contribution") {
    RandomStream rng(8);
    for (int i = 0; i < 1000; ++i) {
        const auto c = default_config(rng);
        for (std::size_t k = 1; k < c.authors.size(); ++k) {
            REQUIRE(c.authors[k - 1].u0 >= c.authors[k].u0);
            REQUIRE(c.authors[k - 1].w_mean >= c.authors[k].w_mean);
        }
    }
}

TEST_CASE("independent roles shuffle utility") {
    auto spec = default_scenario();
    spec.roles = RoleAssignment::Independent;
    spec.n_authors = {5, 5};
    RandomStream rng(8);
    int unsorted = 0;
    for (int i = 0; i < 500; ++i) {
        const auto c = sample_config(spec, rng);
        bool sorted = true;
        for (std::size_t k = 1; k < c.authors.size(); ++k) sorted &= c.authors[k - 1].u0 >= c.authors[k].u0;
        unsorted += !sorted;
    }
    CHECK(unsorted > 400);
}

TEST_CASE("special case specs") {
    SUBCASE("SA1: two authors, both spectra similar") {
        const auto s = case_scenario(CaseId::SA1);
        CHECK(s.n_authors == Range<int>{2, 2});
        CHECK(s.utility == SpectrumSpec{1.0, 1.5, SpectrumMode::SampledWidth});
        CHECK(s.contribution == SpectrumSpec{1.0, 1.5, SpectrumMode::SampledWidth});
        CHECK(s.roles == RoleAssignment::Ranked);
        RandomStream rng(1);
        for (int i = 0; i < 1000; ++i) {
            const auto c = sample_config(s, rng);
            REQUIRE(c.authors[0].u0 <= 1.5);
            REQUIRE(c.authors[1].u0 == 1.0);
            const double ratio = c.authors[0].w_mean / c.authors[1].w_mean;
            REQUIRE(ratio >= 1.0 - 1e-12);
            REQUIRE(ratio <= 1.5 + 1e-12);
        }
    }
    SUBCASE("SA7: three authors, utility different, contribution similar") {
        const auto s = case_scenario(CaseId::SA7);
        CHECK(s.n_authors == Range<int>{3, 3});
        CHECK(s.utility == SpectrumSpec{1.5, 3.0, SpectrumMode::SampledWidth});
        CHECK(s.contribution == SpectrumSpec{1.0, 1.5, SpectrumMode::SampledWidth});
    }
    SUBCASE("P2: two pairs, contribution gap between the groups") {
        const auto s = case_scenario(CaseId::P2);
        CHECK(s.n_authors == Range<int>{4, 4});
        CHECK(s.roles == RoleAssignment::PairedGroups);
        RandomStream rng(1);
        for (int i = 0; i < 1000; ++i) {
            const auto c = sample_config(s, rng);
            REQUIRE(c.authors[0].w_mean == c.authors[1].w_mean);
            REQUIRE(c.authors[2].w_mean == c.authors[3].w_mean);
            REQUIRE(c.authors[0].u0 == c.authors[1].u0);
            REQUIRE(c.authors[2].u0 == c.authors[3].u0);
            const double gap = c.authors[0].w_mean / c.authors[2].w_mean;
            REQUIRE(gap >= 1.5 - 1e-12);
            REQUIRE(gap <= 3.0 + 1e-12);
            REQUIRE(c.authors[0].u0 <= 1.5);
        }
    }
    SUBCASE("SAk and SAk+4 differ only in the author count") {
        for (int k = 0; k < 4; ++k) {
            auto small = case_scenario(static_cast<CaseId>(k));
            auto large = case_scenario(static_cast<CaseId>(k + 4));
            CHECK(small.n_authors == Range<int>{2, 2});
            CHECK(large.n_authors == Range<int>{3, 3});
            small.n_authors = large.n_authors;
            small.case_id = large.case_id;
            CHECK(small == large);
        }
    }
    CHECK_THROWS_AS(case_scenario(CaseId::Default), std::invalid_argument);
    CHECK_THROWS_AS(case_scenario(CaseId::Custom), std::invalid_argument);
}

TEST_CASE("validate(ScenarioSpec) names the field") {
    auto expect = [](ScenarioSpec s, const std::string& field) {
        try {
            validate(s);
            FAIL("accepted an invalid spec for " << field);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).rfind(field + ":", 0) == 0);
        }
    };
    auto s = default_scenario();
    s.n_authors = {3, 2};
    expect(s, "n_authors");
    s = default_scenario();
    s.duration = {0, 5};
    expect(s, "duration");
    s = default_scenario();
    s.start_progress = {0.2, 1.1};
    expect(s, "start_progress");
    s = default_scenario();
    s.utility = {0.5, 2.0, SpectrumMode::SampledWidth};
    expect(s, "utility");
    s = default_scenario();
    s.discount_rate = -0.1;
    expect(s, "discount_rate");
    s = case_scenario(CaseId::P1);
    s.n_authors = {5, 5};
    expect(s, "n_authors");
    CHECK_THROWS_AS(make_sampler(s), std::invalid_argument);
}

TEST_CASE("lattice") {
    CHECK(lattice(1.0, 5.0, 5) == std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0});
    CHECK(lattice(0.0, 1.0, 11)[3] == Approx(0.3));
    CHECK(lattice(0.0, 1.0, 11).back() == 1.0);
    CHECK(lattice(2.0, 9.0, 1) == std::vector<double>{2.0});
}

TEST_CASE("fig1 grid") {
    const auto grid = fig1_grid({2, 5, 8}, 5, 10);
    CHECK(grid.kind == GridKind::Fig1);
    REQUIRE(grid.cells.size() == 75);
    CHECK(grid.cells.front().u_width == 1.0);
    CHECK(grid.cells.front().c_width == 1.0);
    CHECK(grid.cells.back().u_width == 5.0);
    CHECK(grid.cells.back().c_width == 5.0);
    for (const auto& cell : grid.cells) {
        CHECK(cell.scenario.n_authors == Range<int>{cell.authors, cell.authors});
        CHECK(cell.scenario.utility == SpectrumSpec::fixed(cell.u_width));
        CHECK(cell.scenario.contribution == SpectrumSpec::fixed(cell.c_width));
    }
    CHECK_THROWS_AS(fig1_grid({}, 5, 10), std::invalid_argument);
}

TEST_CASE("fig2 sweeps") {
    const auto duration = fig2_sweep(SweepKind::Duration, 10);
    CHECK(duration.cells.size() == 7 * 9);
    CHECK(duration.cells.front().duration == 8);
    CHECK(duration.cells.back().duration == 88);
    CHECK(duration.cells.back().authors == 8);
    const auto progress = fig2_sweep(SweepKind::Progress, 10);
    CHECK(progress.cells.size() == 7 * 11);
    CHECK(progress.cells.back().progress == 1.0);
    const auto matrix = fig2_sweep(SweepKind::PositionMatrix, 10);
    CHECK(matrix.cells.size() == 7);
}

TEST_CASE("a project that starts finished never sees an ultimatum") {
    for (const auto& cell : fig2_sweep(SweepKind::Progress, 200).cells) {
        if (cell.progress != 1.0) continue;
        const auto stats = run_replications(make_sampler(cell.scenario), 1, 200, 1);
        CHECK(stats.iau_rate == 0.0);
    }
}
