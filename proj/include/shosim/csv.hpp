#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "shosim/experiments.hpp"
#include "shosim/format.hpp"

namespace shosim {

/// CSV layout: one "# key = value" line per metadata key in sorted order,
/// then the column names, then one line per row.
inline void write_csv(const Table& table, std::ostream& out)
{
    for (const auto& [key, value] : table.metadata) {
        out << "# " << key << " = " << value << '\n';
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_number(row[c]);
        }
        out << '\n';
    }
}

inline std::string to_csv(const Table& table)
{
    std::ostringstream out;
    write_csv(table, out);
    return out.str();
}

inline void emit_csv(const Table& table, const std::filesystem::path& path)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    write_csv(table, file);
    file.flush();
    if (!file) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

} // namespace shosim
