#pragma once

#include <string>
#include <utility>
#include <vector>

namespace liesplit::cli {

// Canonical record of one invocation: the command plus its effective option
// set, held sorted by key. render() emits a single line
//   liesplit solve --matrix a.mtx --tol 1e-10 --no-timestamp
// and parse() inverts it, so parse(render(m)) == m. Values are stored as the
// strings that appeared on the command line; an empty value renders as a
// bare flag.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> options;

  void set(const std::string& key, const std::string& value);
  void set_flag(const std::string& key) { set(key, ""); }
  const std::string* find(const std::string& key) const;
  bool has(const std::string& key) const { return find(key) != nullptr; }

  std::string render() const;
  static RunManifest parse(const std::string& line);

  bool operator==(const RunManifest&) const = default;
};

}  // namespace liesplit::cli
