#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace cohstate {

/// Empty cells (std::monostate) mark values that do not exist, e.g. an
/// angular momentum not present in a representation.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// RFC 4180 CSV with a header row, LF line endings and doubles printed with
/// 12 significant digits.
void write_csv(const Table& table, std::ostream& out);
std::string format_csv(const Table& table);

/// Writes the table to `path`; throws std::runtime_error on I/O failure.
void emit_csv(const Table& table, const std::filesystem::path& path);

}  // namespace cohstate
