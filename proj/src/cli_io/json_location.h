#pragma once

// Source positions for JSON values, keyed by JSON pointer. nlohmann's DOM
// drops positions, so a SAX pass over a counting iterator collects them.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace oneclock::detail {

std::pair<std::size_t, std::size_t> LineColumn(std::string_view text,
                                               std::size_t offset);

struct LocationMap {
  std::map<std::string, std::pair<std::size_t, std::size_t>> at;

  // Falls back to the closest recorded ancestor.
  std::pair<std::size_t, std::size_t> Find(std::string pointer) const;
};

struct DuplicateKey {
  std::string field;
  std::size_t line = 0, column = 0;
};

// Throws nlohmann::json::parse_error on bad syntax and DuplicateKey when an
// object repeats a key.
LocationMap LocateValues(std::string_view text);

}  // namespace oneclock::detail
