#include "zeno/cli/table_writer.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

#include "json.hpp"

#include "zeno/errors.hpp"

namespace zeno::cli {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw UsageError(fmt::format("table '{}': row has {} cells, expected {}", command, row.size(), columns.size()));
    rows.push_back(std::move(row));
}

std::string format_real(double v) {
    if (!std::isfinite(v)) throw NumericalError("non-finite value in output table");
    return fmt::format("{:.17g}", v);
}

namespace {

std::string csv_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
        std::string operator()(const std::string& v) const {
            if (v.find_first_of(",\"\n") == std::string::npos) return v;
            std::string q = "\"";
            for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const {
            // Through the same 17-digit text as CSV so both formats agree bit for bit.
            return nlohmann::ordered_json::parse(format_real(v));
        }
        nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    std::string buf;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) buf += ',';
        buf += table.columns[i];
    }
    buf += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) buf += ',';
            buf += csv_cell(row[i]);
        }
        buf += '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_json(const Table& table, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["command"] = table.command;
    auto params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.parameters) params[k] = json_cell(v);
    doc["parameters"] = params;
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) r.push_back(json_cell(c));
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    const std::string text = doc.dump(1) + "\n";
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace zeno::cli
