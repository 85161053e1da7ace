#pragma once

#include <string>
#include <vector>

namespace liesplit::cli {

// Key/value tree with embedded aligned tables, rendered as plain text.
// Doubles go through %.17g so that a report is a byte-stable golden file
// whenever its inputs are.
class Report {
public:
  explicit Report(const std::string& command);

  void kv(const std::string& key, const std::string& value);
  void kv(const std::string& key, const char* value);
  void kv(const std::string& key, double value);
  void kv(const std::string& key, long value);
  void kv(const std::string& key, int value);
  void kv(const std::string& key, bool value);

  void open(const std::string& section);
  void close();

  // A named table: header row plus data rows, columns right-aligned.
  void table(const std::string& name, const std::vector<std::string>& headers,
             const std::vector<std::vector<std::string>>& rows);

  static std::string num(double v);

  std::string render() const;

private:
  void line(const std::string& text);

  int depth_ = 0;
  std::vector<std::string> lines_;
};

}  // namespace liesplit::cli
