#include "coauthor/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace coauthor {

namespace {

struct CaseName {
    CaseId id;
    std::string_view name;
};

constexpr CaseName kCaseNames[] = {
    {CaseId::SA1, "SA1"}, {CaseId::SA2, "SA2"}, {CaseId::SA3, "SA3"},
    {CaseId::SA4, "SA4"}, {CaseId::SA5, "SA5"}, {CaseId::SA6, "SA6"},
    {CaseId::SA7, "SA7"}, {CaseId::SA8, "SA8"}, {CaseId::P1, "P1"},
    {CaseId::P2, "P2"},   {CaseId::P3, "P3"},   {CaseId::P4, "P4"},
    {CaseId::Default, "default"}, {CaseId::Custom, "custom"},
};

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

// Ranges for the "similar" and "different" columns of the special cases.
constexpr SpectrumSpec kSimilar{1.0, 1.5, SpectrumMode::SampledWidth};
constexpr SpectrumSpec kDifferent{1.5, 3.0, SpectrumMode::SampledWidth};

void check_spectrum(const SpectrumSpec& s, const char* name) {
    if (!(s.low >= 1.0 && s.low <= s.high)) {
        throw std::invalid_argument(std::string(name) + ": spectrum requires 1 <= low <= high");
    }
}

double draw_width(const SpectrumSpec& spec, RandomStream& rng) {
    return spec.mode == SpectrumMode::FixedWidth ? spec.low : rng.uniform(spec.low, spec.high);
}

}  // namespace

std::string_view to_string(CaseId id) {
    for (const auto& c : kCaseNames) {
        if (c.id == id) return c.name;
    }
    return "unknown";
}

std::optional<CaseId> parse_case_id(std::string_view text) {
    for (const auto& c : kCaseNames) {
        if (iequals(c.name, text)) return c.id;
    }
    return std::nullopt;
}

std::string_view to_string(RoleAssignment roles) {
    switch (roles) {
        case RoleAssignment::Ranked: return "ranked";
        case RoleAssignment::Independent: return "independent";
        case RoleAssignment::PairedGroups: return "paired";
    }
    return "unknown";
}

std::optional<RoleAssignment> parse_role_assignment(std::string_view text) {
    for (auto r : {RoleAssignment::Ranked, RoleAssignment::Independent,
                   RoleAssignment::PairedGroups}) {
        if (iequals(to_string(r), text)) return r;
    }
    return std::nullopt;
}

const std::vector<CaseId>& special_cases() {
    static const std::vector<CaseId> cases = {CaseId::SA1, CaseId::SA2, CaseId::SA3, CaseId::SA4,
                                              CaseId::SA5, CaseId::SA6, CaseId::SA7, CaseId::SA8,
                                              CaseId::P1,  CaseId::P2,  CaseId::P3,  CaseId::P4};
    return cases;
}

void validate(const ScenarioSpec& spec) {
    if (spec.n_authors.low < 1 || spec.n_authors.low > spec.n_authors.high) {
        throw std::invalid_argument("n_authors: need 1 <= low <= high");
    }
    if (spec.duration.low < 1 || spec.duration.low > spec.duration.high) {
        throw std::invalid_argument("duration: need 1 <= low <= high");
    }
    if (!(spec.start_progress.low >= 0.0 && spec.start_progress.low <= spec.start_progress.high &&
          spec.start_progress.high <= 1.0)) {
        throw std::invalid_argument("start_progress: need 0 <= low <= high <= 1");
    }
    check_spectrum(spec.contribution, "contribution");
    check_spectrum(spec.utility, "utility");
    if (!(spec.discount_rate >= 0.0 && spec.discount_rate <= 1.0)) {
        throw std::invalid_argument("discount_rate: must lie in [0, 1]");
    }
    if (!(spec.withdrawal_penalty >= 0.0 && spec.withdrawal_penalty <= 1.0)) {
        throw std::invalid_argument("withdrawal_penalty: must lie in [0, 1]");
    }
    if (!(spec.contribution_std_ratio >= 0.0)) {
        throw std::invalid_argument("contribution_std_ratio: must be non-negative");
    }
    if (spec.roles == RoleAssignment::PairedGroups &&
        (spec.n_authors.low != 4 || spec.n_authors.high != 4)) {
        throw std::invalid_argument("n_authors: paired groups need exactly 4 authors");
    }
}

ScenarioSpec default_scenario() { return ScenarioSpec{}; }

ScenarioSpec case_scenario(CaseId id) {
    const auto index = static_cast<int>(id);
    if (index > static_cast<int>(CaseId::P4)) {
        throw std::invalid_argument("no special case named '" + std::string(to_string(id)) + "'");
    }
    ScenarioSpec spec;
    spec.case_id = id;
    int row;  // 0..3: similar/similar, different/similar, similar/different, different/different
    if (id <= CaseId::SA4) {
        spec.n_authors = {2, 2};
        spec.roles = RoleAssignment::Ranked;
        row = index;
    } else if (id <= CaseId::SA8) {
        spec.n_authors = {3, 3};
        spec.roles = RoleAssignment::Ranked;
        row = index - 4;
    } else {
        spec.n_authors = {4, 4};
        spec.roles = RoleAssignment::PairedGroups;
        row = index - 8;
    }
    spec.contribution = (row % 2 == 0) ? kSimilar : kDifferent;
    spec.utility = (row < 2) ? kSimilar : kDifferent;
    return spec;
}

std::vector<double> sample_spectrum_values(const SpectrumSpec& spec, int n, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("spectrum needs at least one value");
    const double width = draw_width(spec, rng);
    if (n == 1) return {width};
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    values.push_back(width);
    for (int i = 0; i < n - 2; ++i) values.push_back(rng.uniform(1.0, width));
    values.push_back(1.0);
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

ProjectConfig sample_config(const ScenarioSpec& spec, RandomStream& rng) {
    ProjectConfig config;
    config.n_authors = static_cast<int>(rng.uniform_int(spec.n_authors.low, spec.n_authors.high));
    config.horizon_rounds = static_cast<int>(rng.uniform_int(spec.duration.low, spec.duration.high));
    config.start_progress = rng.uniform(spec.start_progress.low, spec.start_progress.high);
    config.discount = {spec.discount_rate, spec.withdrawal_penalty};

    const int n = config.n_authors;
    const auto un = static_cast<std::size_t>(n);
    std::vector<double> utility;
    std::vector<double> contribution;

    if (spec.roles == RoleAssignment::PairedGroups) {
        const double c_width = draw_width(spec.contribution, rng);
        const double u_width = draw_width(spec.utility, rng);
        contribution = {c_width, c_width, 1.0, 1.0};
        utility = {u_width, u_width, 1.0, 1.0};
    } else {
        utility = sample_spectrum_values(spec.utility, n, rng);
        contribution = sample_spectrum_values(spec.contribution, n, rng);
        // Both lists come back sorted descending, so under Ranked author 0
        // (the student, in the special cases) holds the high endpoint of each.
        if (spec.roles == RoleAssignment::Independent) {
            rng.shuffle(std::span<double>(utility));
        }
    }

    const double per_round_total =
        std::accumulate(contribution.begin(), contribution.end(), 0.0) * config.horizon_rounds;
    config.authors.resize(un);
    for (std::size_t i = 0; i < un; ++i) {
        auto& a = config.authors[i];
        a.id = i;
        a.u0 = utility[i];
        a.w_mean = contribution[i] / per_round_total;
        a.w_std = spec.contribution_std_ratio * a.w_mean;
        a.u1.r1 = rng.uniform(0.0, kMaxPositionNoise);
        a.u1.r2 = rng.uniform(0.0, kMaxPositionNoise);
    }
    return config;
}

ProjectConfig default_config(RandomStream& rng) { return sample_config(default_scenario(), rng); }

ProjectConfig case_config(CaseId id, RandomStream& rng) {
    return sample_config(case_scenario(id), rng);
}

ConfigSampler make_sampler(ScenarioSpec spec) {
    validate(spec);
    return [spec = std::move(spec)](RandomStream& rng) { return sample_config(spec, rng); };
}

std::vector<double> lattice(double low, double high, int points) {
    if (points < 1) throw std::invalid_argument("lattice needs at least one point");
    if (points == 1) return {low};
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        out[static_cast<std::size_t>(i)] = low + (high - low) * i / (points - 1);
    }
    out.back() = high;
    return out;
}

ExperimentGrid fig1_grid(const std::vector<int>& author_counts, int points, std::size_t reps,
                         const ScenarioSpec& base) {
    if (author_counts.empty()) throw std::invalid_argument("fig1 grid needs author counts");
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    ExperimentGrid grid{GridKind::Fig1, {}, reps};
    const auto widths = lattice(1.0, 5.0, points);
    for (int n : author_counts) {
        for (double u : widths) {
            for (double c : widths) {
                GridCell cell;
                cell.authors = n;
                cell.u_width = u;
                cell.c_width = c;
                cell.scenario = base;
                cell.scenario.case_id = CaseId::Custom;
                cell.scenario.n_authors = {n, n};
                cell.scenario.utility = SpectrumSpec::fixed(u);
                cell.scenario.contribution = SpectrumSpec::fixed(c);
                validate(cell.scenario);
                grid.cells.push_back(cell);
            }
        }
    }
    return grid;
}

ExperimentGrid fig2_sweep(SweepKind kind, std::size_t reps, const ScenarioSpec& base) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    ExperimentGrid grid;
    grid.reps = reps;
    for (int n = 2; n <= 8; ++n) {
        GridCell cell;
        cell.authors = n;
        cell.scenario = base;
        cell.scenario.case_id = CaseId::Custom;
        cell.scenario.n_authors = {n, n};
        switch (kind) {
            case SweepKind::Duration:
                grid.kind = GridKind::Duration;
                for (int t = 8; t <= 88; t += 10) {
                    auto c = cell;
                    c.duration = t;
                    c.scenario.duration = {t, t};
                    grid.cells.push_back(c);
                }
                break;
            case SweepKind::Progress:
                grid.kind = GridKind::Progress;
                for (double p : lattice(0.0, 1.0, 11)) {
                    auto c = cell;
                    c.progress = p;
                    c.scenario.start_progress = {p, p};
                    grid.cells.push_back(c);
                }
                break;
            case SweepKind::PositionMatrix:
                grid.kind = GridKind::PositionMatrix;
                grid.cells.push_back(cell);
                break;
        }
    }
    for (const auto& c : grid.cells) validate(c.scenario);
    return grid;
}

}  // namespace coauthor
