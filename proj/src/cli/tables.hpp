#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "transnn/matrix.hpp"

namespace transnn::cli {

/// A labeled numeric table: one row per step, one column per series.
struct Table {
  std::string name;
  std::vector<std::string> columns;  ///< excludes the leading "step" column
  Matrix values;                     ///< steps × columns

  /// Columns node_1 .. node_n.
  static Table per_node(std::string name, Matrix values);
};

enum class Format { csv, json };

/// Shortest round-trip decimal; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

std::string render_csv(const Table& table);
std::string render_json(const Table& table);

/// Writes <dir>/<name>.<csv|json>; returns the file path.
std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, Format format);

}  // namespace transnn::cli
