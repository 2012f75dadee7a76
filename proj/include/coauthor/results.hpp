// Result tables and their on-disk form: a CSV file plus a sibling JSON file
// carrying provenance. Output bytes depend only on the table contents.
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace coauthor {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Provenance {
    std::string command;
    std::uint64_t seed = 0;
    std::size_t reps = 0;
    std::string config_text;  ///< resolved config; feeding it back regenerates the file
};

struct ResultTable {
    std::string schema;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    Provenance provenance;
};

/// Column layout of a documented schema. Throws std::invalid_argument for an
/// unknown id.
const std::vector<std::string>& schema_columns(std::string_view schema);

/// Schema id must be documented, columns must match it, rows rectangular.
void validate(const ResultTable& table);

std::string to_csv(const ResultTable& table);
std::string provenance_json(const ResultTable& table);

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes `<dir>/<schema>.csv` and `<dir>/<schema>.json`, creating `dir` if
/// needed. Returns the CSV path. Throws IoError with the path on failure.
std::filesystem::path write_results(const ResultTable& table, const std::filesystem::path& dir);

struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Throws std::invalid_argument if the column is missing.
    std::size_t column(std::string_view name) const;
};

/// Minimal reader for the files written above (no quoting). Throws IoError.
CsvData read_csv(const std::filesystem::path& path);

}  // namespace coauthor
