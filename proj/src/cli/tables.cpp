#include "tables.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "transnn/error.hpp"

namespace transnn::cli {

Table Table::per_node(std::string name, Matrix values) {
  Table t{std::move(name), {}, std::move(values)};
  for (std::size_t i = 0; i < t.values.cols(); ++i) t.columns.push_back("node_" + std::to_string(i + 1));
  return t;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string render_csv(const Table& table) {
  std::ostringstream os;
  os << "step";
  for (const auto& c : table.columns) os << ',' << c;
  os << '\n';
  for (std::size_t r = 0; r < table.values.rows(); ++r) {
    os << r;
    for (std::size_t c = 0; c < table.values.cols(); ++c) os << ',' << format_number(table.values(r, c));
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Table& table) {
  std::ostringstream os;
  os << "{\n  \"name\": \"" << table.name << "\",\n  \"columns\": [\"step\"";
  for (const auto& c : table.columns) os << ", \"" << c << '"';
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.values.rows(); ++r) {
    os << (r == 0 ? "\n    [" : ",\n    [") << r;
    for (std::size_t c = 0; c < table.values.cols(); ++c) {
      const double v = table.values(r, c);
      os << ", ";
      if (std::isfinite(v)) {
        os << format_number(v);
      } else {
        os << '"' << format_number(v) << '"';
      }
    }
    os << ']';
  }
  os << "\n  ]\n}\n";
  return os.str();
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, Format format) {
  const auto path = dir / (table.name + (format == Format::csv ? ".csv" : ".json"));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << (format == Format::csv ? render_csv(table) : render_json(table));
  return path;
}

}  // namespace transnn::cli
