#include "liesplit/cli/manifest.hpp"

#include <algorithm>
#include <sstream>

#include "liesplit/errors.hpp"

namespace liesplit::cli {
namespace {

bool needs_quotes(const std::string& v) {
  if (v.empty()) return false;
  if (v.rfind("--", 0) == 0) return true;  // would read as an option
  return v.find_first_of(" \t\"\\") != std::string::npos;
}

std::string quoted(const std::string& v) {
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

struct Token {
  std::string text;
  bool quoted = false;
};

// Splits a rendered line into tokens, honoring double quotes and backslash
// escapes inside them. Quoted tokens are never options.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> toks;
  size_t i = 0;
  const size_t n = line.size();
  while (i < n) {
    while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= n) break;
    Token tok;
    bool in_quotes = false;
    for (; i < n; ++i) {
      char c = line[i];
      if (in_quotes) {
        if (c == '\\' && i + 1 < n) {
          tok.text += line[++i];
        } else if (c == '"') {
          in_quotes = false;
        } else {
          tok.text += c;
        }
      } else if (c == '"') {
        in_quotes = true;
        tok.quoted = true;
      } else if (c == ' ' || c == '\t') {
        break;
      } else {
        tok.text += c;
      }
    }
    if (in_quotes) throw ParseError(1, "unterminated quote in manifest line");
    toks.push_back(std::move(tok));
  }
  return toks;
}

bool is_option(const Token& t) {
  return !t.quoted && t.text.size() > 2 && t.text.rfind("--", 0) == 0;
}

}  // namespace

void RunManifest::set(const std::string& key, const std::string& value) {
  auto it = std::lower_bound(options.begin(), options.end(), key,
                             [](const auto& p, const std::string& k) { return p.first < k; });
  if (it != options.end() && it->first == key) {
    it->second = value;
  } else {
    options.insert(it, {key, value});
  }
}

const std::string* RunManifest::find(const std::string& key) const {
  for (const auto& [k, v] : options)
    if (k == key) return &v;
  return nullptr;
}

std::string RunManifest::render() const {
  std::ostringstream ss;
  ss << "liesplit " << command;
  for (const auto& [k, v] : options) {
    ss << " --" << k;
    if (!v.empty()) ss << ' ' << (needs_quotes(v) ? quoted(v) : v);
  }
  return ss.str();
}

RunManifest RunManifest::parse(const std::string& line) {
  std::vector<Token> toks = tokenize(line);
  if (toks.size() < 2 || toks[0].text != "liesplit" || toks[0].quoted || toks[1].quoted)
    throw ParseError(1, "manifest line must start with 'liesplit <command>'");
  RunManifest m;
  m.command = toks[1].text;
  size_t i = 2;
  while (i < toks.size()) {
    if (!is_option(toks[i]))
      throw ParseError(1, "expected an option, got '" + toks[i].text + "'");
    std::string key = toks[i].text.substr(2);
    std::string value;
    if (i + 1 < toks.size() && !is_option(toks[i + 1])) {
      value = toks[i + 1].text;
      i += 2;
    } else {
      i += 1;
    }
    m.set(key, value);
  }
  return m;
}

}  // namespace liesplit::cli
