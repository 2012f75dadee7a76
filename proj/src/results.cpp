#include "coauthor/results.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace coauthor {

namespace fs = std::filesystem;

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0 as well
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw std::runtime_error("cannot format number");
    return std::string(buf.data(), ptr);
}

const std::vector<std::string>& schema_columns(std::string_view schema) {
    static const std::map<std::string, std::vector<std::string>, std::less<>> schemas = {
        {"fig1", {"authors", "u_width", "c_width", "iau_rate", "n"}},
        {"fig2a", {"authors", "duration_weeks", "mean", "std", "n"}},
        {"fig2b", {"authors", "progress", "mean", "std", "n"}},
        {"fig2c", {"authors", "position", "rate", "n"}},
        {"fig3", {"case", "mean", "std", "n"}},
        {"case", {"case", "mean", "std", "n"}},
        {"run", {"iau_rate", "std", "n"}},
        {"events", {"rep", "round", "issuer", "from", "to", "outcome"}},
    };
    const auto it = schemas.find(schema);
    if (it == schemas.end()) throw std::invalid_argument("unknown schema '" + std::string(schema) + "'");
    return it->second;
}

void validate(const ResultTable& table) {
    if (table.columns != schema_columns(table.schema)) {
        throw std::invalid_argument("columns do not match schema '" + table.schema + "'");
    }
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("table '" + table.schema + "' is not rectangular");
        }
    }
}

namespace {

std::string render_cell(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string to_csv(const ResultTable& table) {
    validate(table);
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += render_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string provenance_json(const ResultTable& table) {
    nlohmann::ordered_json j;
    j["schema"] = table.schema;
    j["tool_version"] = std::string(kToolVersion);
    j["command"] = table.provenance.command;
    j["seed"] = table.provenance.seed;
    j["reps"] = table.provenance.reps;
    j["columns"] = table.columns;
    j["rows"] = table.rows.size();
    j["config"] = table.provenance.config_text;
    return j.dump(2) + "\n";
}

fs::path write_results(const ResultTable& table, const fs::path& dir) {
    const auto csv = to_csv(table);
    const auto json = provenance_json(table);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
    const auto csv_path = dir / (table.schema + ".csv");
    write_file(csv_path, csv);
    write_file(dir / (table.schema + ".json"), json);
    return csv_path;
}

std::size_t CsvData::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::invalid_argument("missing column '" + std::string(name) + "'");
}

CsvData read_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    auto split = [](const std::string& line) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        return fields;
    };
    CsvData data;
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path.string() + "' is empty");
    data.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line);
        if (fields.size() != data.header.size()) {
            throw IoError("'" + path.string() + "': ragged row");
        }
        data.rows.push_back(std::move(fields));
    }
    return data;
}

}  // namespace coauthor
