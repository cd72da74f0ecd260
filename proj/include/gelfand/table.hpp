#pragma once

/**
 * @file table.hpp
 * @brief Column-oriented result tables and their deterministic CSV
 *        rendering: fixed column order, 17 significant digits (binary64
 *        round-trip), '.' decimal point, LF line endings.
 */

#include <cstdio>
#include <string>
#include <vector>

namespace gelfand {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Shortest text that still round-trips a binary64 exactly under strtod.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string to_csv(const Table& table) {
    std::string out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace gelfand
