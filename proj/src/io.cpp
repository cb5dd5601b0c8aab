#include "gga/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gga/errors.hpp"

namespace gga {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

CsvTable CsvTable::parse(const std::string& text) {
  CsvTable table;
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw UsageError("csv: missing header");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line)) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw UsageError("csv: bad number '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != table.header.size()) throw UsageError("csv: ragged row");
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable history_table(const EnsembleResult& result) {
  CsvTable t;
  t.header = {"generation", "mean_best_fitness", "stderr_best_fitness", "mean_best_x",
              "mean_best_y"};
  for (std::size_t g = 0; g < result.mean_best_fitness.size(); ++g) {
    const auto& p = result.mean_best_point[g];
    t.rows.push_back({static_cast<double>(g), result.mean_best_fitness[g],
                      result.stderr_best_fitness[g], p.size() > 0 ? p[0] : 0.0,
                      p.size() > 1 ? p[1] : 0.0});
  }
  return t;
}

CsvTable bifurcation_table(const BifurcationReport& report) {
  CsvTable t;
  t.header = {"lambda", "switch_fraction", "n_runs"};
  for (std::size_t i = 0; i < report.lambda_grid.size(); ++i)
    t.rows.push_back({report.lambda_grid[i], report.switch_fraction[i],
                      static_cast<double>(report.n_runs[i])});
  return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_history_csv(const EnsembleResult& result, const std::filesystem::path& path) {
  write_text(path, history_table(result).to_string());
}

void write_bifurcation_csv(const BifurcationReport& report, const std::filesystem::path& path) {
  write_text(path, bifurcation_table(report).to_string());
}

}  // namespace gga
