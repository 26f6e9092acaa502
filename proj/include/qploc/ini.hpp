#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qploc {

// One key = value line of an INI document.
struct IniEntry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line = 0;  // 0 for entries that did not come from a file
};

// Sections in brackets, "key = value" lines, '#' or ';' comments. Throws
// ConfigError with the line number on malformed input or a repeated key.
std::vector<IniEntry> parse_ini(const std::string& text);

}  // namespace qploc
