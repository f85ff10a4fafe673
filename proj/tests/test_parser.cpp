#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asmq/diagnostics.hpp"
#include "asmq/parser.hpp"

#include <random>
#include <string>

using namespace asmq;

namespace {

const char* kGroverSource = R"({"register_size": 2}
HAD R1          ; uniform superposition
BAR
ORACLE
    MOV R1, #1  ; mark the searched value
END_ORACLE
BAR
MCT R1          ; kick the phase back onto the target
REVERSE_ORACLE
DIF {R1}        ; inversion about the mean
STR CR1, R1
)";

bool same_structure(const Program& a, const Program& b) {
    if (a.config != b.config || a.oracle_span != b.oracle_span ||
        a.reverse_position != b.reverse_position)
        return false;
    if (a.instructions.size() != b.instructions.size())
        return false;
    for (std::size_t i = 0; i < a.instructions.size(); ++i) {
        const Instruction& x = a.instructions[i];
        const Instruction& y = b.instructions[i];
        if (x.mnemonic != y.mnemonic || x.operands != y.operands || x.in_oracle != y.in_oracle)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("header: register_size plus body") {
    const auto result = parse_header("{\"register_size\": 2}\nHAD R1");
    CHECK(result.config.register_size == 2);
    CHECK(result.config.shots == 1024);
    CHECK(result.config.execute);
    CHECK(!result.config.decode);
    CHECK(result.config.display == DisplayMode::Text);
    CHECK(result.config.seed == 0);
    CHECK(!result.config.maintain_coherence);
    CHECK(result.body == "HAD R1");
    CHECK(result.body_start_line == 2);
}

TEST_CASE("header: empty input gives all defaults") {
    const auto result = parse_header("");
    CHECK(result.config == Config{});
    CHECK(result.body.empty());
}

TEST_CASE("header: absent header leaves the text untouched") {
    const auto result = parse_header("MOV R1, #1\n");
    CHECK(result.config == Config{});
    CHECK(result.body == "MOV R1, #1\n");
    CHECK(result.body_start_line == 1);
}

TEST_CASE("header: register_size out of range") {
    CHECK_THROWS_WITH_AS(parse_header("{\"register_size\": 9}"),
                         "register_size must be between 1 and 8", CompileError);
    CHECK_THROWS_AS(parse_header("{\"register_size\": 0}"), CompileError);
    try {
        parse_header("{\"register_size\": 9}");
    } catch (const CompileError& e) {
        CHECK(e.code() == Errc::OutOfRange);
    }
}

TEST_CASE("header: malformed JSON") {
    try {
        parse_header("{\"register_size\": }\nHAD R1");
        FAIL("expected CompileError");
    } catch (const CompileError& e) {
        CHECK(e.code() == Errc::MalformedHeader);
    }
    try {
        parse_header("{\"register_size\": 2");
        FAIL("expected CompileError");
    } catch (const CompileError& e) {
        CHECK(e.code() == Errc::MalformedHeader);
    }
}

TEST_CASE("header: unknown keys warn but do not fail") {
    const auto result = parse_header("{\"register_size\": 3, \"frobnicate\": true}\nBAR");
    CHECK(result.config.register_size == 3);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].find("frobnicate") != std::string::npos);
}

TEST_CASE("header: full option set") {
    const auto result = parse_header(
        R"({"register_size": 4, "decode": true, "execute": false, "display": "both",
            "shots": 77, "seed": 12345, "maintain_coherence": true,
            "grover_iterations": 2, "memory": {"0": 3, "4": 9}})");
    CHECK(result.config.register_size == 4);
    CHECK(result.config.decode);
    CHECK(!result.config.execute);
    CHECK(result.config.display == DisplayMode::Both);
    CHECK(result.config.shots == 77);
    CHECK(result.config.seed == 12345);
    CHECK(result.config.maintain_coherence);
    CHECK(result.config.grover_iterations == 2);
    CHECK(result.config.memory.at(0) == 3);
    CHECK(result.config.memory.at(4) == 9);
}

TEST_CASE("tokenize: instruction with comment") {
    const auto tokens = tokenize("ADD R3, R1, R2  ; R3 = R1 + R2", 1);
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0].text == "ADD");
    CHECK(tokens[1].text == "R3");
    CHECK(tokens[2].text == "R1");
    CHECK(tokens[3].text == "R2");
}

TEST_CASE("tokenize: comment-only and blank lines") {
    CHECK(tokenize("; comment only", 1).empty());
    CHECK(tokenize("", 1).empty());
    CHECK(tokenize("   \t  ", 1).empty());
}

TEST_CASE("tokenize: register list") {
    const auto tokens = tokenize("DIF {R1}", 3);
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[1].kind == Token::Kind::RegList);
    CHECK(tokens[1].names == std::vector<std::string>{"R1"});

    const auto multi = tokenize("DIF {R1, R2}", 3);
    CHECK(multi[1].names == std::vector<std::string>{"R1", "R2"});
}

TEST_CASE("tokenize: immediates, memory refs, labels") {
    const auto imm = tokenize("MOV R1, #42", 1);
    CHECK(imm[2].kind == Token::Kind::Immediate);
    CHECK(imm[2].value == 42);

    const auto mem = tokenize("LDR R1, [R0, 4]", 1);
    CHECK(mem[2].kind == Token::Kind::MemRef);
    CHECK(mem[2].base == "R0");
    CHECK(mem[2].offset == 4);

    const auto mem_hash = tokenize("LDR R1, [R0, #-2]", 1);
    CHECK(mem_hash[2].offset == -2);

    const auto label = tokenize("LOOP: ADD R1, R1, R2", 1);
    CHECK(label[0].kind == Token::Kind::Label);
    CHECK(label[0].text == "LOOP");
}

TEST_CASE("tokenize: bad tokens carry the line number") {
    try {
        tokenize("MOV R1, #x", 7);
        FAIL("expected CompileError");
    } catch (const CompileError& e) {
        CHECK(e.code() == Errc::BadToken);
        CHECK(e.line() == 7);
    }
    CHECK_THROWS_AS(tokenize("ADD R1, R2, 3", 1), CompileError);   // bare decimal
    CHECK_THROWS_AS(tokenize("DIF {R1", 1), CompileError);          // unterminated list
    CHECK_THROWS_AS(tokenize("LDR R1, [R0, 4", 1), CompileError);   // unterminated memref
    CHECK_THROWS_AS(tokenize("MOV R1, @2", 1), CompileError);       // stray character
}

TEST_CASE("parse: the search listing yields 7 instructions and the oracle span") {
    const Program program = parse_source(kGroverSource);
    REQUIRE(program.instructions.size() == 7);
    CHECK(program.instructions[0].mnemonic == Mnemonic::Had);
    CHECK(program.instructions[1].mnemonic == Mnemonic::Bar);
    CHECK(program.instructions[2].mnemonic == Mnemonic::Mov);
    CHECK(program.instructions[3].mnemonic == Mnemonic::Bar);
    CHECK(program.instructions[4].mnemonic == Mnemonic::Mct);
    CHECK(program.instructions[5].mnemonic == Mnemonic::Dif);
    CHECK(program.instructions[6].mnemonic == Mnemonic::Str);

    REQUIRE(program.oracle_span.has_value());
    CHECK(program.oracle_span->first == 2);
    CHECK(program.oracle_span->second == 3);
    CHECK(program.instructions[2].in_oracle);
    CHECK(!program.instructions[3].in_oracle);
    REQUIRE(program.reverse_position.has_value());
    CHECK(*program.reverse_position == 5);
}

TEST_CASE("parse: branches are rejected with unrolling guidance") {
    try {
        parse_source("MOV R1, #1\nBNE somewhere\n");
        FAIL("expected CompileError");
    } catch (const CompileError& e) {
        CHECK(e.code() == Errc::UnsupportedInstruction);
        CHECK(std::string(e.what()).find("unravel the branch") != std::string::npos);
        CHECK(e.line() == 2);
    }
}

TEST_CASE("parse: the pre-unrolled loop body lexes up to the branch") {
    // Labels and the compare parse fine; the conditional branch is the first
    // diagnostic.
    const char* source = R"(
    MOV R1, #0
    MOV R2, #1
    MOV R3, #5
    MOV R4, #1
FIB_LOOP:
    CMP R4, R3
    BGE FIB_DONE
)";
    try {
        parse_source(source);
        FAIL("expected CompileError");
    } catch (const CompileError& e) {
        CHECK(e.code() == Errc::UnsupportedInstruction);
        CHECK(e.line() == 8);
    }
}

TEST_CASE("parse: stack, swap, interrupt, and coprocessor ops are rejected") {
    for (const char* line : {"LDM R1, {R2}", "STM R1, {R2}", "SWP R1, R2, [R3, 0]",
                             "SWI #3", "CDP", "LDC", "MCR", "MRC", "STC"}) {
        try {
            parse_source(line);
            FAIL("expected CompileError for: ", line);
        } catch (const CompileError& e) {
            CHECK(e.code() == Errc::UnsupportedInstruction);
        }
    }
}

TEST_CASE("parse: arity mismatches") {
    try {
        parse_source("ADD R1, R2\n");
        FAIL("expected CompileError");
    } catch (const CompileError& e) {
        CHECK(e.code() == Errc::ArityMismatch);
        CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(parse_source("MOV R1\n"), CompileError);
    CHECK_THROWS_AS(parse_source("MOV #1, R1\n"), CompileError);      // dest must be a register
    CHECK_THROWS_AS(parse_source("LSL R1, R2, R3\n"), CompileError);  // shift amount immediate
    CHECK_THROWS_AS(parse_source("BAR R1\n"), CompileError);
    CHECK_THROWS_AS(parse_source("DIF R1\n"), CompileError);          // needs a register list
    CHECK_THROWS_AS(parse_source("MRS R1, R2\n"), CompileError);      // PSR expected
}

TEST_CASE("parse: unknown mnemonics") {
    try {
        parse_source("FROB R1\n");
        FAIL("expected CompileError");
    } catch (const CompileError& e) {
        CHECK(e.code() == Errc::UnknownMnemonic);
    }
}

TEST_CASE("parse: oracle structure violations") {
    auto code_of = [](const char* src) {
        try {
            parse_source(src);
            return Errc::FileNotFound; // anything unexpected
        } catch (const CompileError& e) {
            return e.code();
        }
    };
    CHECK(code_of("ORACLE\nMOV R1, #1\n") == Errc::OracleStructure);             // unclosed
    CHECK(code_of("END_ORACLE\n") == Errc::OracleStructure);                     // unopened
    CHECK(code_of("REVERSE_ORACLE\n") == Errc::OracleStructure);                 // no oracle
    CHECK(code_of("ORACLE\nREVERSE_ORACLE\nEND_ORACLE\n") == Errc::OracleStructure);
    CHECK(code_of("ORACLE\nEND_ORACLE\nORACLE\nEND_ORACLE\n") == Errc::OracleStructure);
    CHECK(code_of("ORACLE\nEND_ORACLE\nREVERSE_ORACLE\nREVERSE_ORACLE\n") ==
          Errc::OracleStructure);
}

TEST_CASE("parse: mnemonics and registers are case-insensitive") {
    const Program program = parse_source("mov r1, #1\nadd R2, r1, r1\n");
    CHECK(program.instructions[0].mnemonic == Mnemonic::Mov);
    CHECK(program.instructions[0].operands[0].name == "R1");
    CHECK(program.instructions[1].operands[1].name == "R1");
}

TEST_CASE("parse: STR accepts both forms") {
    const Program a = parse_source("STR CR1, R1\n");
    CHECK(a.instructions[0].operands[0].kind == Operand::Kind::ClassicalRegister);
    const Program b = parse_source("STR R1, [R0, 3]\n");
    CHECK(b.instructions[0].operands[1].kind == Operand::Kind::MemoryRef);
    CHECK(b.instructions[0].operands[1].offset == 3);
}

TEST_CASE("parse: TGT accepts flags and registers") {
    CHECK(parse_source("TGT Z\n").instructions[0].operands[0].name == "Z");
    CHECK(parse_source("TGT R1\n").instructions[0].operands[0].name == "R1");
    CHECK_THROWS_AS(parse_source("TGT Q\n"), CompileError);
}

TEST_CASE("parse: source_line maps back to a non-empty line") {
    const char* source = "\n; header comment\nMOV R1, #1\n\nADD R2, R1, R1\n";
    const Program program = parse_source(source);
    REQUIRE(program.instructions.size() == 2);
    CHECK(program.instructions[0].source_line == 3);
    CHECK(program.instructions[1].source_line == 5);
}

TEST_CASE("round-trip: print then reparse is structurally identical") {
    const Program original = parse_source(kGroverSource);
    const std::string printed = to_source(original);
    const Program reparsed = parse_source(printed);
    CHECK(same_structure(original, reparsed));
    CHECK(to_source(reparsed) == printed); // printer fixpoint
}

TEST_CASE("round-trip: arithmetic program") {
    const char* source = R"({"register_size": 3, "memory": {"2": 5}}
MOV R1, #0
MOV R2, #1
ADD R3, R1, R2
SUB R4, R3, #1
LDR R5, [R0, 2]
LSL R6, R5, #1
STR CR1, R6
)";
    const Program original = parse_source(source);
    const Program reparsed = parse_source(to_source(original));
    CHECK(same_structure(original, reparsed));
}

TEST_CASE("fuzz: parsing is total (diagnostic or program, never a crash)") {
    std::mt19937 rng(20240817);
    const std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
                                 "0123456789 \t,#{}[]:;-_\"\n";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 120);
    for (int iter = 0; iter < 500; ++iter) {
        std::string source;
        const int length = len(rng);
        for (int i = 0; i < length; ++i)
            source += alphabet[pick(rng)];
        try {
            const Program program = parse_source(source);
            (void)program;
        } catch (const CompileError&) {
            // a diagnostic is a valid outcome
        }
    }
}
