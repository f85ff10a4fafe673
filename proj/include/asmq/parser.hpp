#pragma once

#include "asmq/instruction.hpp"

#include <string>
#include <vector>

namespace asmq {

struct Token {
    enum class Kind { Ident, Immediate, RegList, MemRef, Label };

    Kind kind = Kind::Ident;
    std::string text;                // Ident/Label name, canonical upper case
    std::uint64_t value = 0;         // Immediate
    std::vector<std::string> names;  // RegList
    std::string base;                // MemRef base register
    long long offset = 0;            // MemRef offset
    int line = 0;
};

struct HeaderResult {
    Config config;
    std::string body;          // source with the header removed
    int body_start_line = 1;   // 1-based line of the first body line
    std::vector<std::string> warnings;
};

/// Splits the optional leading JSON block off the source text. Absent header
/// yields an all-defaults Config and the unchanged text.
HeaderResult parse_header(const std::string& text);

/// Lexes a single source line. Comments (`;`) are stripped; blank lines yield
/// an empty token list.
std::vector<Token> tokenize(const std::string& line, int line_no = 0);

/// Parses assembly text whose header has already been stripped.
Program parse_program(const std::string& body, const Config& config, int first_line = 1);

/// Front door: header + program in one call.
Program parse_source(const std::string& text);

/// Canonical source form of a program (header JSON plus one instruction per
/// line, oracle markers included). Re-parsing the result reproduces the
/// program structure.
std::string to_source(const Program& program);

} // namespace asmq
