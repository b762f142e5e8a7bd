#include "crn/result_table.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace crn {

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buffer, ptr);
}

namespace {

std::string cell_text(const Cell& cell) {
    if (std::holds_alternative<double>(cell)) {
        return format_double(std::get<double>(cell));
    }
    return std::get<std::string>(cell);
}

bool needs_quoting(const std::string& text) {
    return text.find_first_of(",\"\n") != std::string::npos;
}

std::string csv_escape(const std::string& text) {
    if (!needs_quoting(text)) {
        return text;
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

Cell parse_cell(const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc{} && ptr == end && !text.empty()) {
        return value;
    }
    return text;
}

}  // namespace

std::string to_csv(const ResultTable& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) {
            out << ',';
        }
        out << csv_escape(table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out << ',';
            }
            out << csv_escape(cell_text(row[c]));
        }
        out << '\n';
    }
    return out.str();
}

ResultTable from_csv(const std::string& text) {
    ResultTable table;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto fields = split_csv_line(line);
        if (header) {
            table.columns = std::move(fields);
            header = false;
            continue;
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& field : fields) {
            row.push_back(parse_cell(field));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string to_json(const ResultTable& table) {
    std::ostringstream out;
    auto emit_string = [&out](const std::string& s) {
        out << '"';
        for (char c : s) {
            switch (c) {
                case '"': out << "\\\""; break;
                case '\\': out << "\\\\"; break;
                case '\n': out << "\\n"; break;
                default: out << c;
            }
        }
        out << '"';
    };
    out << "{\"columns\":[";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) {
            out << ',';
        }
        emit_string(table.columns[c]);
    }
    out << "],\"rows\":[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (r > 0) {
            out << ',';
        }
        out << '[';
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c > 0) {
                out << ',';
            }
            const auto& cell = table.rows[r][c];
            if (std::holds_alternative<double>(cell)) {
                out << format_double(std::get<double>(cell));
            } else {
                emit_string(std::get<std::string>(cell));
            }
        }
        out << ']';
    }
    out << "]}";
    return out.str();
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x00000100000001b3ull;
    }
    return hash;
}

std::string hash_hex(const std::string& data) {
    static const char digits[] = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

std::string join_ids(const std::vector<int>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += std::to_string(ids[i]);
    }
    return out;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
    std::string out;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += std::to_string(seeds[i]);
    }
    return out;
}

}  // namespace crn
