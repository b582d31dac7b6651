#include "qe/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qe {

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, double>)
                return format_number(v);
            else if constexpr (std::is_same_v<T, std::string>)
                return csv_field(v);
            else
                return std::to_string(v);
        },
        c);
}

nlohmann::json cell_json(const Cell& c)
{
    return std::visit([](const auto& v) { return nlohmann::json(v); }, c);
}

} // namespace

void ExperimentReport::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::logic_error("ExperimentReport: row width does not match columns");
    rows.push_back(std::move(row));
}

void ExperimentReport::check(std::string name, bool passed, std::string detail)
{
    assertions.push_back({std::move(name), passed, std::move(detail)});
}

bool ExperimentReport::all_passed() const
{
    for (const auto& a : assertions)
        if (!a.passed)
            return false;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] != "pass")
            continue;
        for (const auto& row : rows)
            if (const bool* b = std::get_if<bool>(&row[c]); b && !*b)
                return false;
    }
    return true;
}

std::string ExperimentReport::config_hash() const { return qe::config_hash(config); }

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string to_csv(const ExperimentReport& report)
{
    std::string out;
    for (std::size_t c = 0; c < report.columns.size(); ++c)
        out += (c ? "," : "") + csv_field(report.columns[c]);
    out += '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out += (c ? "," : "") + cell_text(row[c]);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const ExperimentReport& report)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row)
            r.push_back(cell_json(c));
        rows.push_back(std::move(r));
    }
    nlohmann::json assertions = nlohmann::json::array();
    for (const auto& a : report.assertions)
        assertions.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
    return {
        {"experiment", report.experiment},
        {"version", kVersion},
        {"config_hash", report.config_hash()},
        {"config", report.config},
        {"columns", report.columns},
        {"rows", std::move(rows)},
        {"summary", report.summary},
        {"assertions", std::move(assertions)},
        {"passed", report.all_passed()},
    };
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write report to '" + path.string() + "'");
    if (format == ReportFormat::csv)
        out << to_csv(report);
    else
        out << to_json(report).dump(2) << '\n';
    if (!out)
        throw std::runtime_error("failed writing report to '" + path.string() + "'");
}

std::string config_hash(const nlohmann::json& config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace qe
