#include "ttlab/report.hpp"

#include "ttlab/rational.hpp"

namespace ttlab {

void Report::add(std::string key, double value) { add(std::move(key), format_double(value)); }

void Report::append(const Report& other, const std::string& prefix) {
  for (const auto& [k, v] : other.lines_) lines_.emplace_back(prefix + k, v);
}

std::string Report::get(const std::string& key) const {
  for (const auto& [k, v] : lines_)
    if (k == key) return v;
  return "";
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : lines_) out += k + " = " + v + "\n";
  return out;
}

}  // namespace ttlab
