#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ofdm::harness {

/// A CSV cell. Doubles print with 12 significant digits via std::to_chars
/// (locale-independent); non-finite values print as inf, -inf or nan.
using Cell = std::variant<double, std::int64_t, std::string>;

struct CsvTable {
  std::vector<std::string> columns;  // names carry units, e.g. "ebn0_db"
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  /// Header row then one line per row, '\n' terminated, ',' separated.
  std::string to_string() const;
};

std::string format_double(double v);

}  // namespace ofdm::harness
