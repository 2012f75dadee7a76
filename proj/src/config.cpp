#include "coauthor/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <variant>

#include "coauthor/results.hpp"

namespace coauthor {

namespace {

constexpr std::pair<Command, std::string_view> kCommandNames[] = {
    {Command::Run, "run"},   {Command::Fig1, "fig1"}, {Command::Fig2, "fig2"},
    {Command::Fig3, "fig3"}, {Command::Fit, "fit"},   {Command::Case, "case"},
};

struct Value {
    std::string raw;  // as written, for error messages and exact integers
    std::variant<double, bool, std::string, std::vector<double>> data;
    bool integral = false;
    int line = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_real(std::string_view text, double& out, bool& integral) {
    text = trim(text);
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc{} || ptr != end) return false;
    integral = text.find_first_of(".eE") == std::string_view::npos &&
               text.find("inf") == std::string_view::npos &&
               text.find("nan") == std::string_view::npos;
    return true;
}

// Strips a trailing `# comment` that is not inside a string.
std::string_view strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

Value parse_value(const std::string& key, std::string_view text, int line) {
    Value v;
    v.raw = std::string(text);
    v.line = line;
    if (text.empty()) throw ConfigError(key, "missing value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"') throw ConfigError(key, "unterminated string");
        const auto inner = text.substr(1, text.size() - 2);
        if (inner.find('"') != std::string_view::npos) {
            throw ConfigError(key, "strings may not contain quotes");
        }
        v.data = std::string(inner);
        return v;
    }
    if (text == "true" || text == "false") {
        v.data = (text == "true");
        return v;
    }
    if (text.front() == '[') {
        if (text.back() != ']') throw ConfigError(key, "unterminated list");
        std::vector<double> items;
        auto body = trim(text.substr(1, text.size() - 2));
        bool all_integral = true;
        while (!body.empty()) {
            const auto comma = body.find(',');
            const auto item = trim(body.substr(0, comma));
            double x;
            bool integral;
            if (!parse_real(item, x, integral)) {
                throw ConfigError(key, "list items must be numbers, got '" + std::string(item) + "'");
            }
            all_integral = all_integral && integral;
            items.push_back(x);
            if (comma == std::string_view::npos) break;
            body = trim(body.substr(comma + 1));
            if (body.empty()) throw ConfigError(key, "trailing comma in list");
        }
        v.integral = all_integral;
        v.data = std::move(items);
        return v;
    }
    double x;
    bool integral;
    if (!parse_real(text, x, integral)) {
        throw ConfigError(key, "cannot parse value '" + std::string(text) + "'");
    }
    v.integral = integral;
    v.data = x;
    return v;
}

class Document {
public:
    explicit Document(std::string_view text) {
        std::string section;
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto nl = text.find('\n', pos);
            const auto raw =
                text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;
            const auto line = trim(strip_comment(raw));
            if (line.empty()) continue;
            if (line.front() == '[' && line.find('=') == std::string_view::npos) {
                if (line.back() != ']') {
                    throw ConfigError("", "line " + std::to_string(line_no) + ": bad section header");
                }
                section = std::string(trim(line.substr(1, line.size() - 2)));
                if (section != "model" && section != "grid") {
                    throw ConfigError("[" + section + "]", "unknown section");
                }
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
            }
            const auto bare = std::string(trim(line.substr(0, eq)));
            const auto key = section.empty() ? bare : section + "." + bare;
            if (bare.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
            if (values_.contains(key)) throw ConfigError(key, "duplicate key");
            values_.emplace(key, parse_value(key, trim(line.substr(eq + 1)), line_no));
        }
    }

    bool has(const std::string& key) const { return values_.contains(key); }

    const Value* take(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) return nullptr;
        taken_.push_back(key);
        return &it->second;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : values_) {
            if (std::find(taken_.begin(), taken_.end(), key) == taken_.end()) {
                throw ConfigError(key, "unknown key");
            }
        }
    }

private:
    std::map<std::string, Value> values_;
    std::vector<std::string> taken_;
};

double as_real(const std::string& key, const Value& v) {
    if (const auto* x = std::get_if<double>(&v.data)) return *x;
    throw ConfigError(key, "expected a number");
}

std::int64_t as_int(const std::string& key, const Value& v) {
    const auto* x = std::get_if<double>(&v.data);
    if (x == nullptr || !v.integral) throw ConfigError(key, "expected an integer");
    std::int64_t out;
    auto [ptr, ec] = std::from_chars(v.raw.data(), v.raw.data() + v.raw.size(), out);
    if (ec != std::errc{} || ptr != v.raw.data() + v.raw.size()) {
        throw ConfigError(key, "integer out of range");
    }
    return out;
}

std::uint64_t as_u64(const std::string& key, const Value& v) {
    std::uint64_t out;
    auto [ptr, ec] = std::from_chars(v.raw.data(), v.raw.data() + v.raw.size(), out);
    if (!v.integral || ec != std::errc{} || ptr != v.raw.data() + v.raw.size()) {
        throw ConfigError(key, "expected an unsigned 64-bit integer");
    }
    return out;
}

bool as_bool(const std::string& key, const Value& v) {
    if (const auto* b = std::get_if<bool>(&v.data)) return *b;
    throw ConfigError(key, "expected true or false");
}

std::string as_string(const std::string& key, const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
    throw ConfigError(key, "expected a quoted string");
}

// A single number means [x, x].
Range<double> as_real_range(const std::string& key, const Value& v) {
    if (const auto* x = std::get_if<double>(&v.data)) return {*x, *x};
    const auto* list = std::get_if<std::vector<double>>(&v.data);
    if (list == nullptr || list->size() != 2) throw ConfigError(key, "expected a number or [low, high]");
    if ((*list)[0] > (*list)[1]) throw ConfigError(key, "low exceeds high");
    return {(*list)[0], (*list)[1]};
}

Range<int> as_int_range(const std::string& key, const Value& v) {
    if (!v.integral) throw ConfigError(key, "expected integers");
    const auto r = as_real_range(key, v);
    if (std::abs(r.low) > 1e9 || std::abs(r.high) > 1e9) throw ConfigError(key, "out of range");
    return {static_cast<int>(r.low), static_cast<int>(r.high)};
}

std::vector<int> as_int_list(const std::string& key, const Value& v) {
    const auto* list = std::get_if<std::vector<double>>(&v.data);
    if (list == nullptr || !v.integral || list->empty()) {
        throw ConfigError(key, "expected a non-empty list of integers");
    }
    return {list->begin(), list->end()};
}

std::string quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

template <typename T>
std::string render_range(const Range<T>& r) {
    if constexpr (std::is_same_v<T, int>) {
        return "[" + std::to_string(r.low) + ", " + std::to_string(r.high) + "]";
    } else {
        return "[" + format_number(r.low) + ", " + format_number(r.high) + "]";
    }
}

std::string_view mode_name(SpectrumMode m) {
    return m == SpectrumMode::FixedWidth ? "fixed" : "sampled";
}

SpectrumMode parse_mode(const std::string& key, const std::string& text) {
    if (text == "fixed") return SpectrumMode::FixedWidth;
    if (text == "sampled") return SpectrumMode::SampledWidth;
    throw ConfigError(key, "expected \"sampled\" or \"fixed\"");
}

}  // namespace

std::string_view to_string(Command command) {
    for (const auto& [c, name] : kCommandNames) {
        if (c == command) return name;
    }
    return "unknown";
}

std::optional<Command> parse_command(std::string_view text) {
    for (const auto& [c, name] : kCommandNames) {
        if (name == text) return c;
    }
    return std::nullopt;
}

std::size_t default_reps(Command command) {
    switch (command) {
        case Command::Fig2:
        case Command::Fig3: return 100'000;
        default: return 10'000;
    }
}

RunSpec parse_config(std::string_view text) {
    Document doc(text);
    RunSpec spec;

    if (const auto* v = doc.take("command")) {
        const auto name = as_string("command", *v);
        const auto command = parse_command(name);
        if (!command) throw ConfigError("command", "unknown command '" + name + "'");
        spec.command = *command;
    }
    if (const auto* v = doc.take("seed")) spec.seed = as_u64("seed", *v);
    if (const auto* v = doc.take("reps")) {
        const auto reps = as_int("reps", *v);
        if (reps < 1) throw ConfigError("reps", "must be >= 1");
        spec.reps = static_cast<std::size_t>(reps);
    }
    if (const auto* v = doc.take("out")) {
        spec.output_dir = as_string("out", *v);
        if (spec.output_dir.empty()) throw ConfigError("out", "must not be empty");
    }
    if (const auto* v = doc.take("workers")) {
        const auto w = as_int("workers", *v);
        if (w < 0 || w > 4096) throw ConfigError("workers", "must lie in [0, 4096]");
        spec.workers = static_cast<unsigned>(w);
    }
    if (const auto* v = doc.take("log_events")) spec.log_events = as_bool("log_events", *v);
    if (const auto* v = doc.take("input")) spec.input = as_string("input", *v);
    if (const auto* v = doc.take("case")) {
        const auto name = as_string("case", *v);
        const auto id = parse_case_id(name);
        if (!id || *id == CaseId::Default || *id == CaseId::Custom) {
            throw ConfigError("case", "unknown case '" + name + "'");
        }
        spec.case_id = *id;
        spec.scenario = case_scenario(*id);
    }

    auto& s = spec.scenario;
    const ScenarioSpec baseline = s;
    auto model = [&](const char* name) { return doc.take(std::string("model.") + name); };
    if (const auto* v = model("n_authors")) s.n_authors = as_int_range("n_authors", *v);
    if (const auto* v = model("duration")) s.duration = as_int_range("duration", *v);
    if (const auto* v = model("start_progress")) {
        s.start_progress = as_real_range("start_progress", *v);
    }
    if (const auto* v = model("utility_spectrum")) {
        const auto r = as_real_range("utility_spectrum", *v);
        s.utility.low = r.low;
        s.utility.high = r.high;
    }
    if (const auto* v = model("contribution_spectrum")) {
        const auto r = as_real_range("contribution_spectrum", *v);
        s.contribution.low = r.low;
        s.contribution.high = r.high;
    }
    if (const auto* v = model("utility_mode")) {
        s.utility.mode = parse_mode("utility_mode", as_string("utility_mode", *v));
    }
    if (const auto* v = model("contribution_mode")) {
        s.contribution.mode = parse_mode("contribution_mode", as_string("contribution_mode", *v));
    }
    if (const auto* v = model("roles")) {
        const auto name = as_string("roles", *v);
        const auto roles = parse_role_assignment(name);
        if (!roles) throw ConfigError("roles", "unknown role assignment '" + name + "'");
        s.roles = *roles;
    }
    if (const auto* v = model("discount_rate")) s.discount_rate = as_real("discount_rate", *v);
    if (const auto* v = model("withdrawal_penalty")) {
        s.withdrawal_penalty = as_real("withdrawal_penalty", *v);
    }
    if (const auto* v = model("contribution_std_ratio")) {
        s.contribution_std_ratio = as_real("contribution_std_ratio", *v);
    }
    if (s != baseline) s.case_id = CaseId::Custom;

    if (const auto* v = doc.take("grid.authors")) spec.grid_authors = as_int_list("authors", *v);
    if (const auto* v = doc.take("grid.points")) {
        const auto points = as_int("points", *v);
        if (points < 1 || points > 1000) throw ConfigError("points", "must lie in [1, 1000]");
        spec.grid_points = static_cast<int>(points);
    }

    doc.reject_unknown();
    validate(spec);
    return spec;
}

void validate(const RunSpec& spec) {
    try {
        validate(spec.scenario);
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        const auto colon = what.find(':');
        throw ConfigError(colon == std::string::npos ? "" : what.substr(0, colon),
                          colon == std::string::npos ? what : what.substr(colon + 2));
    }
    if (spec.reps && *spec.reps < 1) throw ConfigError("reps", "must be >= 1");
    if (spec.command == Command::Case && !spec.case_id) {
        throw ConfigError("case", "required by the case command");
    }
    if (spec.command == Command::Fit && spec.input.empty()) {
        throw ConfigError("input", "required by the fit command");
    }
    if (spec.command == Command::Fig1 || spec.command == Command::Fig2) {
        const auto& n = spec.scenario.n_authors;
        if (n.low < kFigureAuthorRange.low || n.high > kFigureAuthorRange.high) {
            throw ConfigError("n_authors", "must lie in [2, 8] for " +
                                               std::string(to_string(spec.command)));
        }
        for (int a : spec.grid_authors) {
            if (a < kFigureAuthorRange.low || a > kFigureAuthorRange.high) {
                throw ConfigError("authors", "grid author counts must lie in [2, 8]");
            }
        }
    }
}

std::string render_config(const RunSpec& spec) {
    std::ostringstream out;
    out << "command = " << quoted(to_string(spec.command)) << "\n";
    if (spec.seed) out << "seed = " << *spec.seed << "\n";
    if (spec.reps) out << "reps = " << *spec.reps << "\n";
    out << "out = " << quoted(spec.output_dir) << "\n";
    out << "workers = " << spec.workers << "\n";
    out << "log_events = " << (spec.log_events ? "true" : "false") << "\n";
    if (spec.case_id) out << "case = " << quoted(to_string(*spec.case_id)) << "\n";
    if (!spec.input.empty()) out << "input = " << quoted(spec.input) << "\n";

    const auto& s = spec.scenario;
    out << "\n[model]\n";
    out << "n_authors = " << render_range(s.n_authors) << "\n";
    out << "duration = " << render_range(s.duration) << "\n";
    out << "start_progress = " << render_range(s.start_progress) << "\n";
    out << "utility_spectrum = " << render_range(Range<double>{s.utility.low, s.utility.high}) << "\n";
    out << "utility_mode = " << quoted(mode_name(s.utility.mode)) << "\n";
    out << "contribution_spectrum = "
        << render_range(Range<double>{s.contribution.low, s.contribution.high}) << "\n";
    out << "contribution_mode = " << quoted(mode_name(s.contribution.mode)) << "\n";
    out << "roles = " << quoted(to_string(s.roles)) << "\n";
    out << "discount_rate = " << format_number(s.discount_rate) << "\n";
    out << "withdrawal_penalty = " << format_number(s.withdrawal_penalty) << "\n";
    out << "contribution_std_ratio = " << format_number(s.contribution_std_ratio) << "\n";

    out << "\n[grid]\nauthors = [";
    for (std::size_t i = 0; i < spec.grid_authors.size(); ++i) {
        out << (i ? ", " : "") << spec.grid_authors[i];
    }
    out << "]\npoints = " << spec.grid_points << "\n";
    return out.str();
}

}  // namespace coauthor
