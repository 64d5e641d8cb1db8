#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ttlab {

/// Ordered `key = value` lines.
class Report {
 public:
  void add(std::string key, std::string value) { lines_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, long value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, double value);
  void append(const Report& other, const std::string& prefix = "");

  const std::vector<std::pair<std::string, std::string>>& lines() const { return lines_; }
  /// First value stored under `key`, or empty.
  std::string get(const std::string& key) const;
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

}  // namespace ttlab
