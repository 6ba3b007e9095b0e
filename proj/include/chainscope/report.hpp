#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace chainscope {

/// Numeric table written as CSV. Header row of column names, then one row per
/// record, every value printed with %.17g so parsing restores the exact double.
/// Non-finite values are written as inf, -inf and nan.
struct CsvTable {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::string to_string() const;
  /// Throws InputError on a malformed header, ragged rows or unparsable cells.
  static CsvTable parse(const std::string& text, std::string name = "");
};

/// One line per series: columns (x, y) of table `table`.
struct PlotSeries {
  std::string table;
  std::string x;
  std::string y;
  std::string title;
  std::string style = "lines";
};

struct PlotSpec {
  std::string name;  // output stem of the script and of the image it renders
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<PlotSeries> series;
};

/// gnuplot script rendering `plot` to <name>.png from the CSV files next to it.
std::string gnuplot_script(const PlotSpec& plot, const std::vector<CsvTable>& tables);

struct Report {
  std::string command;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<CsvTable> tables;
  std::vector<PlotSpec> plots;

  /// Writes summary.json, <table>.csv and <plot>.gp into dir (created if
  /// missing). Output bytes depend only on the report contents.
  void write(const std::string& dir) const;
};

std::string format_double(double v);

}  // namespace chainscope
