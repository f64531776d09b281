#pragma once

// Text formats.
//
// Instance (UTF-8, line based, '#' starts a comment):
//
//   men 4
//   women 4
//   tiecap 2            # optional, before the lists
//   m 1: (1 4)          # one line per man, bare id or ( id id ... ) tie group
//   ...
//   w 4: (1 2) 4        # one line per woman
//
// Matching: one "<man> <woman>" pair per line, 1-based.

#include <filesystem>
#include <string>
#include <string_view>

#include "smti/instance.hpp"

namespace smti {

class ParseError : public InvalidInstance {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

// Parses and validates against `inst`. Syntax problems raise ParseError,
// semantic ones (non-edge, repeated person) InvalidMatching.
Matching parse_matching(std::string_view text, const Instance& inst);
std::string serialize_matching(const Matching& m);

// Whole-file read; throws std::runtime_error if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace smti
