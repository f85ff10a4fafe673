#include "asmq/parser.hpp"

#include "asmq/diagnostics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace asmq {

namespace {

using nlohmann::json;

std::string to_upper(std::string s) {
    for (auto& c : s)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

bool is_data_register(const std::string& name) {
    if (name.size() < 2 || name[0] != 'R')
        return false;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            return false;
    return true;
}

bool is_classical_register(const std::string& name) {
    if (name.size() < 3 || name[0] != 'C' || name[1] != 'R')
        return false;
    for (std::size_t i = 2; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            return false;
    return true;
}

bool is_flag_name(const std::string& name) {
    return name == "N" || name == "Z" || name == "C" || name == "V";
}

bool is_psr_name(const std::string& name) { return name == "PSR" || name == "CPSR"; }

int require_int(const json& val, const std::string& key) {
    if (!val.is_number_integer())
        fail(Errc::MalformedHeader, "configuration key \"" + key + "\" must be an integer", 1);
    return val.get<int>();
}

bool require_bool(const json& val, const std::string& key) {
    if (!val.is_boolean())
        fail(Errc::MalformedHeader, "configuration key \"" + key + "\" must be a boolean", 1);
    return val.get<bool>();
}

Config parse_config_json(const std::string& text, std::vector<std::string>& warnings) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(Errc::MalformedHeader, std::string("malformed JSON header: ") + e.what(), 1);
    }
    if (!j.is_object())
        fail(Errc::MalformedHeader, "JSON header must be an object", 1);

    Config cfg;
    for (const auto& [key, val] : j.items()) {
        if (key == "register_size") {
            const int v = require_int(val, key);
            if (v < 1 || v > 8)
                fail(Errc::OutOfRange, "register_size must be between 1 and 8", 1);
            cfg.register_size = v;
        } else if (key == "decode") {
            cfg.decode = require_bool(val, key);
        } else if (key == "execute") {
            cfg.execute = require_bool(val, key);
        } else if (key == "display") {
            if (!val.is_string())
                fail(Errc::MalformedHeader, "configuration key \"display\" must be a string", 1);
            const std::string mode = val.get<std::string>();
            if (mode == "none")
                cfg.display = DisplayMode::None;
            else if (mode == "text")
                cfg.display = DisplayMode::Text;
            else if (mode == "qasm")
                cfg.display = DisplayMode::Qasm;
            else if (mode == "both")
                cfg.display = DisplayMode::Both;
            else
                fail(Errc::OutOfRange, "display must be one of none, text, qasm, both", 1);
        } else if (key == "shots") {
            const int v = require_int(val, key);
            if (v < 1)
                fail(Errc::OutOfRange, "shots must be at least 1", 1);
            cfg.shots = v;
        } else if (key == "seed") {
            if (!val.is_number_integer() || (val.is_number_integer() && !val.is_number_unsigned() &&
                                             val.get<long long>() < 0))
                fail(Errc::OutOfRange, "seed must be a non-negative integer", 1);
            cfg.seed = val.get<std::uint64_t>();
        } else if (key == "maintain_coherence") {
            cfg.maintain_coherence = require_bool(val, key);
        } else if (key == "grover_iterations") {
            const int v = require_int(val, key);
            if (v < 1)
                fail(Errc::OutOfRange, "grover_iterations must be at least 1", 1);
            cfg.grover_iterations = v;
        } else if (key == "memory") {
            if (!val.is_object())
                fail(Errc::MalformedHeader, "configuration key \"memory\" must be an object", 1);
            for (const auto& [addr, cell] : val.items()) {
                std::uint64_t address = 0;
                try {
                    std::size_t used = 0;
                    address = std::stoull(addr, &used);
                    if (used != addr.size())
                        throw std::invalid_argument(addr);
                } catch (const std::exception&) {
                    fail(Errc::MalformedHeader,
                         "memory address \"" + addr + "\" is not a decimal integer", 1);
                }
                if (!cell.is_number_integer() ||
                    (!cell.is_number_unsigned() && cell.get<long long>() < 0))
                    fail(Errc::OutOfRange, "memory value at address " + addr +
                                               " must be a non-negative integer", 1);
                cfg.memory[address] = cell.get<std::uint64_t>();
            }
        } else {
            warnings.push_back("unknown configuration key \"" + key + "\" (ignored)");
        }
    }
    return cfg;
}

// Branch condition suffixes recognized after a leading 'B'.
const std::set<std::string> kConditionSuffixes = {
    "EQ", "NE", "CS", "CC", "MI", "PL", "VS", "VC", "HI", "LS", "GE", "LT", "GT", "LE", "AL",
};

// Returns a diagnostic for known-but-unsupported mnemonics, or empty.
std::string unsupported_reason(const std::string& word) {
    if (word == "B" || word == "BL" || word == "BX")
        return "branch instructions cannot be lowered to a circuit; "
               "unravel the branch before compiling";
    if (word.size() >= 2 && word[0] == 'B' && kConditionSuffixes.count(word.substr(1)))
        return "conditional branches cannot be lowered to a circuit; unravel the branch "
               "and use controlled gates for the conditional operations before compiling";
    if (word == "LDM" || word == "STM")
        return "stack manipulation has no quantum transformation; expand it by hand";
    if (word == "SWP")
        return "register/memory swap has no quantum transformation";
    if (word == "SWI")
        return "software interrupts are not supported";
    if (word == "CDP" || word == "LDC" || word == "MCR" || word == "MRC" || word == "STC")
        return "coprocessor instructions are not supported";
    return {};
}

Operand operand_from_token(const Token& token, Mnemonic mnemonic) {
    switch (token.kind) {
    case Token::Kind::Immediate:
        return Operand::imm(token.value);
    case Token::Kind::RegList:
        return Operand::reg_list(token.names);
    case Token::Kind::MemRef:
        return Operand::mem(token.base, token.offset);
    case Token::Kind::Ident: {
        const std::string& name = token.text;
        if (is_classical_register(name))
            return Operand::creg(name);
        if (is_psr_name(name))
            return Operand::reg("PSR");
        if (is_data_register(name) || is_flag_name(name))
            return Operand::reg(name);
        if (name == "TARGET")
            fail(Errc::ArityMismatch,
                 "\"target\" is reserved for the oracle target qubit", token.line);
        fail(Errc::ArityMismatch,
             "\"" + name + "\" is not a register name (expected R<n>, CR<n>, or PSR) in " +
                 std::string(mnemonic_name(mnemonic)),
             token.line);
    }
    case Token::Kind::Label:
        fail(Errc::ArityMismatch, "unexpected label in operand position", token.line);
    }
    fail(Errc::BadToken, "unrecognized token", token.line);
}

[[noreturn]] void arity_error(Mnemonic m, const std::string& what, int line) {
    fail(Errc::ArityMismatch, std::string(mnemonic_name(m)) + ": " + what, line);
}

void expect_count(const std::vector<Operand>& ops, std::size_t n, Mnemonic m, int line) {
    if (ops.size() != n)
        arity_error(m, "expected " + std::to_string(n) + " operand(s), got " +
                           std::to_string(ops.size()), line);
}

void expect_data_register(const Operand& op, int index, Mnemonic m, int line) {
    if (op.kind != Operand::Kind::Register || !is_data_register(op.name))
        arity_error(m, "operand " + std::to_string(index + 1) + " must be a register", line);
}

void expect_reg_or_imm(const Operand& op, int index, Mnemonic m, int line) {
    if (op.kind == Operand::Kind::Immediate)
        return;
    expect_data_register(op, index, m, line);
}

// Validates operand count and kinds against the mnemonic's signature.
void validate_signature(Mnemonic m, const std::vector<Operand>& ops, int line) {
    switch (m) {
    case Mnemonic::Adc:
    case Mnemonic::Add:
    case Mnemonic::And:
    case Mnemonic::Bic:
    case Mnemonic::Eor:
    case Mnemonic::Orr:
    case Mnemonic::Rsb:
    case Mnemonic::Rsc:
    case Mnemonic::Sbc:
    case Mnemonic::Sub:
        expect_count(ops, 3, m, line);
        expect_data_register(ops[0], 0, m, line);
        expect_data_register(ops[1], 1, m, line);
        expect_reg_or_imm(ops[2], 2, m, line);
        break;
    case Mnemonic::Mul:
        expect_count(ops, 3, m, line);
        for (int i = 0; i < 3; ++i)
            expect_data_register(ops[i], i, m, line);
        break;
    case Mnemonic::Mla:
        expect_count(ops, 4, m, line);
        for (int i = 0; i < 4; ++i)
            expect_data_register(ops[i], i, m, line);
        break;
    case Mnemonic::Lsl:
    case Mnemonic::Lsr:
        expect_count(ops, 3, m, line);
        expect_data_register(ops[0], 0, m, line);
        expect_data_register(ops[1], 1, m, line);
        if (ops[2].kind != Operand::Kind::Immediate)
            arity_error(m, "the shift amount must be an immediate", line);
        break;
    case Mnemonic::Mov:
    case Mnemonic::Mvn:
        expect_count(ops, 2, m, line);
        expect_data_register(ops[0], 0, m, line);
        expect_reg_or_imm(ops[1], 1, m, line);
        break;
    case Mnemonic::Ldr:
        expect_count(ops, 2, m, line);
        expect_data_register(ops[0], 0, m, line);
        if (ops[1].kind != Operand::Kind::MemoryRef)
            arity_error(m, "operand 2 must be a memory reference [Rn, offset]", line);
        break;
    case Mnemonic::Str:
        expect_count(ops, 2, m, line);
        if (ops[0].kind == Operand::Kind::ClassicalRegister) {
            expect_data_register(ops[1], 1, m, line);
        } else if (ops[1].kind == Operand::Kind::MemoryRef) {
            expect_data_register(ops[0], 0, m, line);
        } else {
            arity_error(m, "expected STR CRd, Rn or STR Rd, [Rn, offset]", line);
        }
        break;
    case Mnemonic::Mrs:
        expect_count(ops, 2, m, line);
        expect_data_register(ops[0], 0, m, line);
        if (ops[1].kind != Operand::Kind::Register || ops[1].name != "PSR")
            arity_error(m, "operand 2 must be PSR or CPSR", line);
        break;
    case Mnemonic::Msr:
        expect_count(ops, 2, m, line);
        if (ops[0].kind != Operand::Kind::Register || ops[0].name != "PSR")
            arity_error(m, "operand 1 must be PSR or CPSR", line);
        expect_data_register(ops[1], 1, m, line);
        break;
    case Mnemonic::Cmp:
    case Mnemonic::Cmn:
    case Mnemonic::Teq:
    case Mnemonic::Tst:
        expect_count(ops, 2, m, line);
        expect_data_register(ops[0], 0, m, line);
        expect_reg_or_imm(ops[1], 1, m, line);
        break;
    case Mnemonic::Had:
    case Mnemonic::Xxx:
    case Mnemonic::Mct:
        expect_count(ops, 1, m, line);
        expect_data_register(ops[0], 0, m, line);
        break;
    case Mnemonic::Tgt:
        expect_count(ops, 1, m, line);
        if (ops[0].kind != Operand::Kind::Register ||
            (!is_data_register(ops[0].name) && !is_flag_name(ops[0].name)))
            arity_error(m, "operand must be a register or a flag (N, Z, C, V)", line);
        break;
    case Mnemonic::Dif:
        expect_count(ops, 1, m, line);
        if (ops[0].kind != Operand::Kind::RegisterList)
            arity_error(m, "operand must be a register list {R1, ...}", line);
        for (const auto& name : ops[0].names)
            if (!is_data_register(name))
                arity_error(m, "register list entry \"" + name + "\" is not a register", line);
        break;
    case Mnemonic::Bar:
    case Mnemonic::Nop:
        expect_count(ops, 0, m, line);
        break;
    }
}

} // namespace

HeaderResult parse_header(const std::string& text) {
    HeaderResult result;
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    if (i >= text.size() || text[i] != '{') {
        result.body = text;
        return result;
    }

    // Balanced-brace scan, string-aware.
    std::size_t depth = 0;
    bool in_string = false;
    bool escaped = false;
    std::size_t end = std::string::npos;
    for (std::size_t j = i; j < text.size(); ++j) {
        const char c = text[j];
        if (in_string) {
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                in_string = false;
        } else if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            if (--depth == 0) {
                end = j;
                break;
            }
        }
    }
    if (end == std::string::npos)
        fail(Errc::MalformedHeader, "unterminated JSON header", 1);

    result.config = parse_config_json(text.substr(i, end - i + 1), result.warnings);

    std::size_t body_pos = end + 1;
    while (body_pos < text.size() && (text[body_pos] == ' ' || text[body_pos] == '\t' ||
                                      text[body_pos] == '\r'))
        ++body_pos;
    if (body_pos < text.size() && text[body_pos] == '\n')
        ++body_pos;
    result.body = text.substr(body_pos);
    result.body_start_line = 1 + static_cast<int>(std::count(text.begin(),
                                                             text.begin() + static_cast<long>(body_pos), '\n'));
    return result;
}

std::vector<Token> tokenize(const std::string& line, int line_no) {
    std::vector<Token> tokens;
    const std::size_t n = line.size();
    std::size_t i = 0;

    auto skip_spaces = [&] {
        while (i < n && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
    };

    while (i < n) {
        const char c = line[i];
        if (c == ';')
            break;
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            continue;
        }
        if (c == '#') {
            ++i;
            const std::size_t start = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(line[i])))
                ++i;
            if (i == start)
                fail(Errc::BadToken, "expected decimal digits after '#'", line_no);
            Token t;
            t.kind = Token::Kind::Immediate;
            t.line = line_no;
            try {
                t.value = std::stoull(line.substr(start, i - start));
            } catch (const std::out_of_range&) {
                fail(Errc::BadToken, "immediate value does not fit in 64 bits", line_no);
            }
            tokens.push_back(std::move(t));
            continue;
        }
        if (c == '{') {
            ++i;
            std::vector<std::string> names;
            std::string current;
            bool closed = false;
            while (i < n) {
                const char d = line[i];
                if (d == '}') {
                    closed = true;
                    ++i;
                    break;
                }
                if (d == ',' || d == ' ' || d == '\t') {
                    if (!current.empty()) {
                        names.push_back(to_upper(current));
                        current.clear();
                    }
                    ++i;
                    continue;
                }
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
                    current += d;
                    ++i;
                    continue;
                }
                fail(Errc::BadToken, std::string("unexpected character '") + d +
                                         "' inside register list", line_no);
            }
            if (!current.empty())
                names.push_back(to_upper(current));
            if (!closed)
                fail(Errc::BadToken, "unterminated register list", line_no);
            if (names.empty())
                fail(Errc::BadToken, "empty register list", line_no);
            Token t;
            t.kind = Token::Kind::RegList;
            t.names = std::move(names);
            t.line = line_no;
            tokens.push_back(std::move(t));
            continue;
        }
        if (c == '[') {
            ++i;
            skip_spaces();
            std::string base;
            while (i < n && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
                base += line[i++];
            if (base.empty())
                fail(Errc::BadToken, "expected a base register after '['", line_no);
            skip_spaces();
            if (i >= n || line[i] != ',')
                fail(Errc::BadToken, "expected ',' in memory reference", line_no);
            ++i;
            skip_spaces();
            if (i < n && line[i] == '#')
                ++i;
            bool negative = false;
            if (i < n && line[i] == '-') {
                negative = true;
                ++i;
            }
            const std::size_t digits_start = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(line[i])))
                ++i;
            if (i == digits_start)
                fail(Errc::BadToken, "expected an offset in memory reference", line_no);
            long long offset = std::stoll(line.substr(digits_start, i - digits_start));
            if (negative)
                offset = -offset;
            skip_spaces();
            if (i >= n || line[i] != ']')
                fail(Errc::BadToken, "unterminated memory reference", line_no);
            ++i;
            Token t;
            t.kind = Token::Kind::MemRef;
            t.base = to_upper(base);
            t.offset = offset;
            t.line = line_no;
            tokens.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = i;
            while (i < n && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
                ++i;
            Token t;
            t.text = to_upper(line.substr(start, i - start));
            t.line = line_no;
            if (i < n && line[i] == ':') {
                ++i;
                t.kind = Token::Kind::Label;
            } else {
                t.kind = Token::Kind::Ident;
            }
            tokens.push_back(std::move(t));
            continue;
        }
        fail(Errc::BadToken, std::string("unrecognized character '") + c + "'", line_no);
    }
    return tokens;
}

Program parse_program(const std::string& body, const Config& config, int first_line) {
    Program program;
    program.config = config;

    bool oracle_open = false;
    bool oracle_closed = false;
    int oracle_start = -1;
    int oracle_end = -1;

    std::istringstream lines(body);
    std::string line;
    int line_no = first_line - 1;
    while (std::getline(lines, line)) {
        ++line_no;
        auto tokens = tokenize(line, line_no);
        if (tokens.empty())
            continue;
        if (tokens.front().kind == Token::Kind::Label) {
            // Labels are lexed and discarded; branches are rejected anyway.
            tokens.erase(tokens.begin());
            if (tokens.empty())
                continue;
        }
        const Token& head = tokens.front();
        if (head.kind != Token::Kind::Ident)
            fail(Errc::BadToken, "expected a mnemonic at the start of the line", line_no);

        const std::string& word = head.text;
        if (word == "ORACLE") {
            if (tokens.size() != 1)
                fail(Errc::ArityMismatch, "ORACLE takes no operands", line_no);
            if (oracle_open || oracle_closed)
                fail(Errc::OracleStructure, "at most one ORACLE block is allowed", line_no);
            oracle_open = true;
            oracle_start = static_cast<int>(program.instructions.size());
            continue;
        }
        if (word == "END_ORACLE") {
            if (tokens.size() != 1)
                fail(Errc::ArityMismatch, "END_ORACLE takes no operands", line_no);
            if (!oracle_open)
                fail(Errc::OracleStructure, "END_ORACLE without a matching ORACLE", line_no);
            oracle_open = false;
            oracle_closed = true;
            oracle_end = static_cast<int>(program.instructions.size());
            continue;
        }
        if (word == "REVERSE_ORACLE") {
            if (tokens.size() != 1)
                fail(Errc::ArityMismatch, "REVERSE_ORACLE takes no operands", line_no);
            if (oracle_open)
                fail(Errc::OracleStructure, "REVERSE_ORACLE must come after END_ORACLE", line_no);
            if (!oracle_closed)
                fail(Errc::OracleStructure, "REVERSE_ORACLE without a preceding oracle block",
                     line_no);
            if (program.reverse_position)
                fail(Errc::OracleStructure, "the oracle can be reversed at most once", line_no);
            program.reverse_position = static_cast<int>(program.instructions.size());
            program.reverse_line = line_no;
            continue;
        }

        const auto mnemonic = mnemonic_from_name(word);
        if (!mnemonic) {
            const std::string reason = unsupported_reason(word);
            if (!reason.empty())
                fail(Errc::UnsupportedInstruction,
                     "unsupported instruction " + word + ": " + reason, line_no);
            fail(Errc::UnknownMnemonic, "unknown mnemonic \"" + word + "\"", line_no);
        }

        Instruction inst;
        inst.mnemonic = *mnemonic;
        inst.source_line = line_no;
        inst.in_oracle = oracle_open;
        for (std::size_t t = 1; t < tokens.size(); ++t)
            inst.operands.push_back(operand_from_token(tokens[t], *mnemonic));
        validate_signature(*mnemonic, inst.operands, line_no);
        program.instructions.push_back(std::move(inst));
    }

    if (oracle_open)
        fail(Errc::OracleStructure, "ORACLE block is never closed (missing END_ORACLE)", line_no);
    if (oracle_closed)
        program.oracle_span = std::make_pair(oracle_start, oracle_end);
    return program;
}

Program parse_source(const std::string& text) {
    HeaderResult header = parse_header(text);
    Program program = parse_program(header.body, header.config, header.body_start_line);
    program.warnings = std::move(header.warnings);
    return program;
}

std::string to_source(const Program& program) {
    json j;
    j["register_size"] = program.config.register_size;
    j["decode"] = program.config.decode;
    j["execute"] = program.config.execute;
    j["display"] = display_mode_name(program.config.display);
    j["shots"] = program.config.shots;
    j["seed"] = program.config.seed;
    j["maintain_coherence"] = program.config.maintain_coherence;
    j["grover_iterations"] = program.config.grover_iterations;
    json mem = json::object();
    for (const auto& [addr, value] : program.config.memory)
        mem[std::to_string(addr)] = value;
    j["memory"] = mem;

    std::ostringstream out;
    out << j.dump() << "\n";
    const int count = static_cast<int>(program.instructions.size());
    for (int idx = 0; idx <= count; ++idx) {
        if (program.oracle_span && program.oracle_span->first == idx)
            out << "ORACLE\n";
        if (program.oracle_span && program.oracle_span->second == idx)
            out << "END_ORACLE\n";
        if (program.reverse_position && *program.reverse_position == idx)
            out << "REVERSE_ORACLE\n";
        if (idx < count)
            out << program.instructions[static_cast<std::size_t>(idx)].to_string() << "\n";
    }
    return out.str();
}

} // namespace asmq
