#include "ofdm/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ofdm::harness {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("CsvTable: row width != column count");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out += format_double(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
              out += std::to_string(v);
            } else {
              out += v;
            }
          },
          row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace ofdm::harness
