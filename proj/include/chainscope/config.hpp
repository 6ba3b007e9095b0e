#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace chainscope {

/// Plain key=value parameters. Lines starting with '#' and blank lines are
/// ignored; whitespace around keys and values is trimmed.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  /// Entries of `over` replace entries here.
  void merge(const Config& over);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated list of positive integers, e.g. "64,32".
  std::vector<std::size_t> get_counts(const std::string& key, std::vector<std::size_t> fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);

}  // namespace chainscope
