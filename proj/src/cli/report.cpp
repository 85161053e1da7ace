#include "liesplit/cli/report.hpp"

#include <cstdio>

namespace liesplit::cli {

Report::Report(const std::string& command) {
  lines_.push_back("liesplit report");
  kv("command", command);
}

void Report::line(const std::string& text) {
  lines_.push_back(std::string(static_cast<size_t>(2 * depth_), ' ') + text);
}

void Report::kv(const std::string& key, const std::string& value) {
  line(key + ": " + value);
}

void Report::kv(const std::string& key, const char* value) {
  kv(key, std::string(value));
}

void Report::kv(const std::string& key, double value) { kv(key, num(value)); }

void Report::kv(const std::string& key, long value) {
  kv(key, std::to_string(value));
}

void Report::kv(const std::string& key, int value) {
  kv(key, std::to_string(value));
}

void Report::kv(const std::string& key, bool value) {
  kv(key, value ? std::string("true") : std::string("false"));
}

void Report::open(const std::string& section) {
  line(section + ":");
  ++depth_;
}

void Report::close() {
  if (depth_ > 0) --depth_;
}

void Report::table(const std::string& name, const std::vector<std::string>& headers,
                   const std::vector<std::vector<std::string>>& rows) {
  line(name + ":");
  std::vector<size_t> width(headers.size());
  for (size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size() && c < width.size(); ++c)
      if (row[c].size() > width[c]) width[c] = row[c].size();

  auto emit = [&](const std::vector<std::string>& row) {
    std::string text;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) text += "  ";
      text += std::string(width[c] - row[c].size(), ' ') + row[c];
    }
    line("  " + text);
  };
  emit(headers);
  for (const auto& row : rows) emit(row);
}

std::string Report::num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Report::render() const {
  std::string out;
  for (const auto& l : lines_) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace liesplit::cli
