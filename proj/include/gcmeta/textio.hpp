#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gcmeta/core.hpp"

namespace gcmeta {

/// Parses a program in DLV-style syntax.
///
///   rule    := [name ':'] head [':-' body] '.'  |  ':-' body '.'
///   head    := literal ('v' literal)*
///   body    := element (',' element)*
///   element := literal | 'not' literal | term op expr
///
/// Unnamed rules are named r1, r2, ... in source order. Throws ParseError.
Program parse(std::string_view text);

/// Reads and parses a file.
Program parse_file(const std::string& path);

/// One rule per line, in program order, no trailing newline.
std::string print(const Program& p);
std::string print_rule(const Rule& r);

enum class AnswerSetFormat { Text, Json };

/// Text: one `{l1, l2}` line per set. Json: an array of arrays of literal strings.
std::string print_answer_sets(const std::vector<AnswerSet>& sets, AnswerSetFormat format);

/// Reads a whole file into a string; throws Error if unreadable.
std::string read_file(const std::string& path);

}  // namespace gcmeta
