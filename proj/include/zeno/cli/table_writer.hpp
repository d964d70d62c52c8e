#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace zeno::cli {

/// Empty, real, integer or text.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> parameters;

    void add_row(std::vector<Cell> row);
};

/// Reals with 17 significant digits, empty cells as nothing, LF endings.
void write_csv(const Table& table, std::ostream& out);

/// {"command", "parameters", "columns", "rows"}; empty cells become null.
void write_json(const Table& table, std::ostream& out);

/// Shortest round-trip text is not used on purpose: fixed %.17g keeps files
/// byte-identical across standard libraries.
std::string format_real(double v);

}  // namespace zeno::cli
