#include "chainscope/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chainscope/config.hpp"
#include "chainscope/errors.hpp"

namespace chainscope {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

double parse_cell(const std::string& raw, std::size_t line) {
  const std::string s = trim(raw);
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InputError("CSV line " + std::to_string(line) + ": cannot parse '" + s + "'");
  return v;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << text;
}

}  // namespace

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw InputError("row width does not match table " + name);
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j) s += ',';
    s += columns[j];
  }
  s += '\n';
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) s += ',';
      s += format_double(r[j]);
    }
    s += '\n';
  }
  return s;
}

CsvTable CsvTable::parse(const std::string& text, std::string name) {
  CsvTable t;
  t.name = std::move(name);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      for (const auto& c : split(line, ',')) {
        const std::string col = trim(c);
        if (col.empty()) throw InputError("CSV header has an empty column name");
        t.columns.push_back(col);
      }
      if (t.columns.empty()) throw InputError("CSV header is empty");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != t.columns.size())
      throw InputError("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                       " cells, expected " + std::to_string(t.columns.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c, lineno));
    t.rows.push_back(std::move(row));
  }
  if (header) throw InputError("CSV text is empty");
  return t;
}

std::string gnuplot_script(const PlotSpec& plot, const std::vector<CsvTable>& tables) {
  auto column_of = [&](const std::string& table, const std::string& col) -> std::size_t {
    for (const auto& t : tables)
      if (t.name == table)
        for (std::size_t j = 0; j < t.columns.size(); ++j)
          if (t.columns[j] == col) return j + 1;
    throw InputError("plot refers to unknown column " + table + "." + col);
  };
  std::ostringstream s;
  s << "set datafile separator ','\n";
  s << "set terminal pngcairo size 900,600\n";
  s << "set output '" << plot.name << ".png'\n";
  s << "set title '" << plot.title << "'\n";
  s << "set xlabel '" << plot.xlabel << "'\n";
  s << "set ylabel '" << plot.ylabel << "'\n";
  s << "set key outside\n";
  s << "plot ";
  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const auto& ser = plot.series[i];
    if (i) s << ", \\\n     ";
    s << "'" << ser.table << ".csv' every ::1 using " << column_of(ser.table, ser.x) << ":"
      << column_of(ser.table, ser.y) << " with " << ser.style << " title '" << ser.title << "'";
  }
  s << "\n";
  return s.str();
}

void Report::write(const std::string& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
  nlohmann::json j = summary;
  j["command"] = command;
  for (const auto& t : tables) j["files"]["tables"].push_back(t.name + ".csv");
  for (const auto& p : plots) j["files"]["plots"].push_back(p.name + ".gp");
  write_file(fs::path(dir) / "summary.json", j.dump(2) + "\n");
  for (const auto& t : tables) write_file(fs::path(dir) / (t.name + ".csv"), t.to_string());
  for (const auto& p : plots) write_file(fs::path(dir) / (p.name + ".gp"), gnuplot_script(p, tables));
}

}  // namespace chainscope
