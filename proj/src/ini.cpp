#include "qploc/ini.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <utility>

#include "qploc/error.hpp"

namespace qploc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

}  // namespace

std::vector<IniEntry> parse_ini(const std::string& text) {
  std::vector<IniEntry> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_name(section)) throw ConfigError("", line_no, "bad section name '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("", line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_name(key)) throw ConfigError(key, line_no, "bad key name");
    if (section.empty()) throw ConfigError(key, line_no, "key outside of any section");
    if (!seen.insert({section, key}).second)
      throw ConfigError(section + "." + key, line_no, "key repeated");
    out.push_back({section, key, trim(line.substr(eq + 1)), line_no});
  }
  return out;
}

}  // namespace qploc
