#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace crn {

// One table cell: numeric, or a string for set-valued columns (relay id
// lists, seed lists). Numbers are serialized with shortest round-trip
// formatting so identical runs emit identical bytes.
using Cell = std::variant<double, std::string>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;  // rectangular: every row matches columns
};

std::string format_double(double value);

// CSV with a header line, comma separators and LF line endings. Cells
// containing commas, quotes or newlines are quoted.
std::string to_csv(const ResultTable& table);

// Lossless inverse of to_csv for rectangular tables; cells that parse fully
// as doubles come back numeric.
ResultTable from_csv(const std::string& text);

// {"columns": [...], "rows": [[...], ...]} with keys in insertion order.
std::string to_json(const ResultTable& table);

// FNV-1a 64-bit, hex-encoded; used to stamp output rows with the
// configuration they came from.
std::uint64_t fnv1a64(const std::string& data);
std::string hash_hex(const std::string& data);

// "a;b;c" for set-valued cells.
std::string join_ids(const std::vector<int>& ids);
std::string join_seeds(const std::vector<std::uint64_t>& seeds);

}  // namespace crn
