#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qe {

inline constexpr const char* kVersion = "0.1.0";

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Assertion {
    std::string name;
    bool passed;
    std::string detail;
};

/// Tabular experiment record. Rows may carry a boolean "pass" column; the
/// report fails if any such cell or any assertion is false.
struct ExperimentReport {
    std::string experiment;
    nlohmann::json config = nlohmann::json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json summary = nlohmann::json::object();
    std::vector<Assertion> assertions;

    void add_row(std::vector<Cell> row);
    void check(std::string name, bool passed, std::string detail = {});
    bool all_passed() const;
    std::string config_hash() const;
};

enum class ReportFormat { csv, json };

/// Shortest decimal string that reads back to the same double.
std::string format_number(double x);

std::string to_csv(const ExperimentReport& report);
nlohmann::json to_json(const ExperimentReport& report);

/// Writes the report; throws std::runtime_error if the file cannot be written.
void emit_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path);

/// FNV-1a 64 of the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

} // namespace qe
