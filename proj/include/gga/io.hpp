#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gga/experiments.hpp"

namespace gga {

/// Plain numeric table with a fixed header. Values print as %.17g so a
/// parsed table re-serializes to identical bytes.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_string() const;
  static CsvTable parse(const std::string& text);
};

/// generation,mean_best_fitness,stderr_best_fitness,mean_best_x,mean_best_y
CsvTable history_table(const EnsembleResult& result);
/// lambda,switch_fraction,n_runs
CsvTable bifurcation_table(const BifurcationReport& report);

void write_history_csv(const EnsembleResult& result, const std::filesystem::path& path);
void write_bifurcation_csv(const BifurcationReport& report, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Formats with 17 significant digits.
std::string format_number(double v);

}  // namespace gga
